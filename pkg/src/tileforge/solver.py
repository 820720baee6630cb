"""Finite-region tiling by translated copies: decide / enumerate / count,
bounded rectangle search, plane semi-decision, minimal-rectangle order.

The search is exact-cover backtracking that always branches on the least
uncovered cell in a fixed scan order (top row first, left to right:
lexicographic on (-y, x)), trying tiles in tileset order and anchor
cells in sorted order.  That makes witnesses, counts, and enumeration
order canonical for fixed inputs; the tilesets built elsewhere in this
package propagate their constraints downward, which this scan follows.

Budgets are honest: hitting the node budget yields a distinct
BudgetExceeded result and is never reported as Untileable.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass, field

from .core import OPPOSITE, SIDE_DELTA, Cell, Polyomino, Rect, Region
from .wang import (
    GENWANG,
    POLYOMINO,
    WANG,
    Color,
    DecoratedRegion,
    Tileset,
    WangSquare,
    white_rectangle,
)

DEFAULT_NODE_BUDGET = int(os.environ.get("TILEFORGE_NODE_BUDGET", "2000000"))

TRANSLATIONS = "translations-only"
ISOMETRIES = "all-isometries"

ORIENTATIONS = ("r0", "r90", "r180", "r270", "m0", "m90", "m180", "m270")

_TRANSFORMS = {
    "r0": lambda x, y: (x, y),
    "r90": lambda x, y: (-y, x),
    "r180": lambda x, y: (-x, -y),
    "r270": lambda x, y: (y, -x),
    "m0": lambda x, y: (-x, y),
    "m90": lambda x, y: (-y, -x),
    "m180": lambda x, y: (x, -y),
    "m270": lambda x, y: (y, x),
}


@dataclass(frozen=True)
class Placement:
    """One tile copy: a tileset tile name, an orientation, and the offset
    of the (normalized) oriented shape."""

    tile: str
    offset: Cell
    orientation: str = "r0"


@dataclass(frozen=True)
class Tiling:
    placements: tuple[Placement, ...]

    def __len__(self) -> int:
        return len(self.placements)


@dataclass(frozen=True)
class SearchOptions:
    mode: str = "decide"  # decide | enumerate | count
    symmetry: str = TRANSLATIONS
    node_budget: int = DEFAULT_NODE_BUDGET
    enumerate_cap: int = 10000

    def __post_init__(self):
        if self.node_budget <= 0 or self.enumerate_cap <= 0:
            raise ValueError("budgets must be positive")


# Search results ------------------------------------------------------------


@dataclass(frozen=True)
class Tileable:
    witness: Tiling


@dataclass(frozen=True)
class Untileable:
    pass


@dataclass(frozen=True)
class CountResult:
    count: int


@dataclass(frozen=True)
class Enumeration:
    tilings: tuple[Tiling, ...]
    complete: bool


@dataclass(frozen=True)
class BudgetExceeded:
    nodes: int


@dataclass(frozen=True)
class FoundRect:
    w: int
    h: int
    witness: Tiling


@dataclass(frozen=True)
class NoneUpTo:
    bound: int


@dataclass(frozen=True)
class PlanePeriodic:
    k: int
    fundamental: Tiling


@dataclass(frozen=True)
class PlaneEmpty:
    n: int


@dataclass(frozen=True)
class PlaneUnknown:
    max_n: int
    budget_hit: bool = False


@dataclass(frozen=True)
class Order:
    k: int
    rect: Rect
    witness: Tiling


class _BudgetHit(Exception):
    pass


# Variant machinery ---------------------------------------------------------


@dataclass(frozen=True)
class Variant:
    orientation: str
    cells: tuple[Cell, ...]  # sorted, normalized to min x = min y = 0
    edges: tuple | None  # ((cx, cy, side, color, dx, dy), ...) or None


def _oriented_cells(cells, orientation: str) -> tuple[Cell, ...]:
    f = _TRANSFORMS[orientation]
    moved = [f(x, y) for x, y in cells]
    dx = -min(x for x, _ in moved)
    dy = -min(y for _, y in moved)
    return tuple(sorted((x + dx, y + dy) for x, y in moved))


def orientation_cells(shape: Polyomino, orientation: str) -> frozenset[Cell]:
    """The normalized cell set of a shape under one of the 8 isometries."""
    return frozenset(_oriented_cells(shape.cells, orientation))


def _edge_tuple(edges: dict) -> tuple:
    out = []
    for (cell, side), color in sorted(edges.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        dx, dy = SIDE_DELTA[side]
        out.append((cell[0], cell[1], side, color, dx, dy))
    return tuple(out)


def tile_variants(ts: Tileset, symmetry: str = TRANSLATIONS) -> list[tuple[str, list[Variant]]]:
    """Per tile, the list of placeable variants under the symmetry mode.

    Isometries are supported for uncolored tiles only; colored species
    always place by translation.  Symmetric shapes are deduplicated so a
    tiling is never counted once per coincident orientation.
    """
    if symmetry not in (TRANSLATIONS, ISOMETRIES):
        raise ValueError(f"unknown symmetry mode {symmetry!r}")
    out = []
    for tile in ts.tiles:
        if ts.species == POLYOMINO:
            base = tile.shape.cells
            if symmetry == TRANSLATIONS:
                out.append((tile.name, [Variant("r0", tuple(sorted(base)), None)]))
            else:
                seen = set()
                variants = []
                for orient in ORIENTATIONS:
                    cells = _oriented_cells(base, orient)
                    if cells in seen:
                        continue
                    seen.add(cells)
                    variants.append(Variant(orient, cells, None))
                out.append((tile.name, variants))
        else:
            if symmetry != TRANSLATIONS:
                raise ValueError("isometry mode applies to uncolored tiles only")
            if ts.species == WANG:
                cells = ((0, 0),)
                edges = {((0, 0), side): tile.color(side) for side in ("N", "E", "S", "W")}
            else:
                cells = tuple(sorted(tile.shape.cells))
                edges = dict(tile.edges)
            out.append((tile.name, [Variant("r0", cells, _edge_tuple(edges))]))
    return out


def placement_cells(ts: Tileset, p: Placement) -> frozenset[Cell]:
    tile = ts.by_name(p.tile)
    if ts.species == WANG:
        base: tuple[Cell, ...] = ((0, 0),)
    else:
        base = tuple(tile.shape.cells)
    cells = _oriented_cells(base, p.orientation)
    ox, oy = p.offset
    return frozenset((x + ox, y + oy) for x, y in cells)


def _placement_edges(ts: Tileset, p: Placement) -> dict:
    """Absolute (cell, side) -> color for a colored placement."""
    tile = ts.by_name(p.tile)
    if p.orientation != "r0":
        raise ValueError("colored tiles place by translation only")
    if ts.species == WANG:
        edges = {((0, 0), side): tile.color(side) for side in ("N", "E", "S", "W")}
    else:
        edges = dict(tile.edges)
    ox, oy = p.offset
    return {((cx + ox, cy + oy), side): color for ((cx, cy), side), color in edges.items()}


# Core search ---------------------------------------------------------------


def _check_target(ts: Tileset, target):
    if ts.species == POLYOMINO:
        if isinstance(target, DecoratedRegion):
            raise ValueError("uncolored tiles tile plain regions, not decorated ones")
        if not isinstance(target, Region):
            raise ValueError("target must be a Region")
        return target.cells, {}
    if not isinstance(target, DecoratedRegion):
        raise ValueError("colored tiles need a decorated region target (Free edges allowed)")
    return target.region.cells, dict(target.constraints)


def _ensure_recursion_room(depth: int):
    need = depth * 3 + 200
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


def tile_region(ts: Tileset, target, opts: SearchOptions = SearchOptions()):
    """Decide, enumerate, or count tilings of a finite target.

    Returns Tileable/Untileable, Enumeration, CountResult, or
    BudgetExceeded.  Deterministic for fixed inputs.
    """
    target_cells, constraints = _check_target(ts, target)
    variants = tile_variants(ts, opts.symmetry)

    order = sorted(target_cells, key=lambda c: (-c[1], c[0]))
    total = len(order)
    _ensure_recursion_room(total)
    target_set = frozenset(target_cells)
    covered: set[Cell] = set()
    edge_colors: dict = {}
    placements: list[Placement] = []
    found: list[Tiling] = []
    state = {"nodes": 0, "count": 0}
    mode = opts.mode
    if mode not in ("decide", "enumerate", "count"):
        raise ValueError(f"unknown mode {mode!r}")

    flat = []
    for name, vs in variants:
        for v in vs:
            flat.append((name, v))

    def rec(start: int) -> bool:
        i = start
        while i < total and order[i] in covered:
            i += 1
        if i == total:
            state["count"] += 1
            if mode == "decide":
                found.append(Tiling(tuple(placements)))
                return True
            if mode == "enumerate":
                found.append(Tiling(tuple(placements)))
                if len(found) >= opts.enumerate_cap:
                    return True
            return False
        cx, cy = order[i]
        for name, v in flat:
            for vx, vy in v.cells:
                ox, oy = cx - vx, cy - vy
                abs_cells = [(x + ox, y + oy) for x, y in v.cells]
                ok = True
                for ac in abs_cells:
                    if ac not in target_set or ac in covered:
                        ok = False
                        break
                if not ok:
                    continue
                if v.edges is not None:
                    for ecx, ecy, side, color, dx, dy in v.edges:
                        ax, ay = ecx + ox, ecy + oy
                        nb = (ax + dx, ay + dy)
                        if nb in covered:
                            if edge_colors.get((nb, OPPOSITE[side])) != color:
                                ok = False
                                break
                        elif nb not in target_set:
                            want = constraints.get(((ax, ay), side))
                            if want is not None and want != color:
                                ok = False
                                break
                    if not ok:
                        continue
                state["nodes"] += 1
                if state["nodes"] > opts.node_budget:
                    raise _BudgetHit
                covered.update(abs_cells)
                if v.edges is not None:
                    for ecx, ecy, side, color, dx, dy in v.edges:
                        edge_colors[((ecx + ox, ecy + oy), side)] = color
                placements.append(Placement(name, (ox, oy), v.orientation))
                if rec(i):
                    return True
                placements.pop()
                if v.edges is not None:
                    for ecx, ecy, side, color, dx, dy in v.edges:
                        del edge_colors[((ecx + ox, ecy + oy), side)]
                covered.difference_update(abs_cells)
        return False

    try:
        stopped = rec(0)
    except _BudgetHit:
        return BudgetExceeded(state["nodes"])

    if mode == "decide":
        if found:
            ok, problems = validate_tiling(ts, target, found[0])
            if not ok:
                raise AssertionError(f"witness failed validation: {problems}")
            return Tileable(found[0])
        return Untileable()
    if mode == "count":
        return CountResult(state["count"])
    return Enumeration(tuple(found), complete=not stopped)


def validate_tiling(ts: Tileset, target, tiling: Tiling) -> tuple[bool, list[str]]:
    """Check that a tiling is a partition of the target by tileset tiles,
    with matching colors where the species has them.  Returns (ok,
    diagnostics); diagnostics carry the violations found."""
    problems: list[str] = []
    try:
        target_cells, constraints = _check_target(ts, target)
    except ValueError as exc:
        return False, [str(exc)]
    names = set(ts.names())
    covered: dict[Cell, str] = {}
    colored = ts.species in (WANG, GENWANG)
    all_edges: dict = {}
    for p in tiling.placements:
        if p.tile not in names:
            problems.append(f"unknown tile {p.tile!r}")
            return False, problems
        if p.orientation not in ORIENTATIONS:
            problems.append(f"unknown orientation {p.orientation!r}")
            return False, problems
        if colored and p.orientation != "r0":
            problems.append(f"colored tile {p.tile!r} placed with an isometry")
            return False, problems
        cells = placement_cells(ts, p)
        for c in cells:
            if c in covered:
                problems.append(f"overlap at cell {c}")
                return False, problems
            covered[c] = p.tile
        if colored:
            all_edges.update(_placement_edges(ts, p))
    extra = set(covered) - set(target_cells)
    missing = set(target_cells) - set(covered)
    if extra:
        problems.append(f"cell outside target: {sorted(extra)[0]}")
    if missing:
        problems.append(f"uncovered cell: {sorted(missing)[0]}")
    if problems:
        return False, problems
    if colored:
        for (cell, side), color in all_edges.items():
            dx, dy = SIDE_DELTA[side]
            nb = (cell[0] + dx, cell[1] + dy)
            if nb in covered:
                other = all_edges.get((nb, OPPOSITE[side]))
                if other != color:
                    problems.append(
                        f"color mismatch at {cell} side {side}: {color!r} vs {other!r}"
                    )
                    return False, problems
            else:
                want = constraints.get((cell, side))
                if want is not None and want != color:
                    problems.append(
                        f"boundary constraint at {cell} side {side}: "
                        f"want {want!r}, got {color!r}"
                    )
                    return False, problems
    return True, problems


# Rectangle search ----------------------------------------------------------


def rect_candidates(max_area: int):
    """(w, h) pairs in increasing area, ties by increasing width."""
    for area in range(1, max_area + 1):
        for w in range(1, area + 1):
            if area % w == 0:
                yield w, area // w


def find_rectangle(ts: Tileset, max_area: int, opts: SearchOptions = SearchOptions()):
    """First tileable rectangle by increasing area (ties by width).

    Colored species search rectangles whose whole boundary is
    constrained white.  Raises if the node budget is ever hit, since
    NoneUpTo would then be unsound.
    """
    colored = ts.species in (WANG, GENWANG)
    for w, h in rect_candidates(max_area):
        if colored:
            target = white_rectangle(w, h)
        else:
            target = Rect(w, h).region()
        res = tile_region(ts, target, SearchOptions(
            mode="decide", symmetry=opts.symmetry, node_budget=opts.node_budget))
        if isinstance(res, BudgetExceeded):
            raise RuntimeError(
                f"node budget exceeded while searching the {w}x{h} rectangle; "
                f"result would be unsound")
        if isinstance(res, Tileable):
            return FoundRect(w, h, res.witness)
    return NoneUpTo(max_area)


def tileset_min_rect_area(ts: Tileset, max_area: int,
                          opts: SearchOptions = SearchOptions()):
    """Minimum area of a tileable rectangle, or NoneUpTo(max_area)."""
    res = find_rectangle(ts, max_area, opts)
    if isinstance(res, FoundRect):
        return res.w * res.h
    return res


def polyomino_order(p: Polyomino, max_area: int, symmetry: str = ISOMETRIES,
                    node_budget: int = DEFAULT_NODE_BUDGET):
    """Minimum number of copies of one shape that tile some rectangle.

    The classical definition admits rotations and reflections, so the
    default symmetry mode is all-isometries.
    """
    from .wang import PolyTile

    ts = Tileset.of(POLYOMINO, [PolyTile("P", p)])
    res = find_rectangle(ts, max_area, SearchOptions(symmetry=symmetry,
                                                     node_budget=node_budget))
    if isinstance(res, FoundRect):
        k = (res.w * res.h) // len(p)
        return Order(k, Rect(res.w, res.h), res.witness)
    return res


# Plane semi-decision -------------------------------------------------------


def torus_tiling(ts: Tileset, k: int, node_budget: int = DEFAULT_NODE_BUDGET):
    """A k x k block of Wang squares whose opposite boundary colors match
    (so it tiles the plane periodically), or None, or BudgetExceeded."""
    if ts.species != WANG:
        raise ValueError("torus search needs Wang squares")
    squares: list[WangSquare] = list(ts.tiles)
    order = [(i, j) for i in range(k) for j in range(k)]
    assign: dict[Cell, WangSquare] = {}
    nodes = 0

    def rec(idx: int):
        nonlocal nodes
        if idx == len(order):
            return True
        cell = order[idx]
        x, y = cell
        for sq in squares:
            nodes += 1
            if nodes > node_budget:
                raise _BudgetHit
            assign[cell] = sq
            ok = True
            for side in ("N", "E", "S", "W"):
                dx, dy = SIDE_DELTA[side]
                nb = ((x + dx) % k, (y + dy) % k)
                other = assign.get(nb)
                if other is not None and sq.color(side) != other.color(OPPOSITE[side]):
                    ok = False
                    break
            if ok and rec(idx + 1):
                return True
            del assign[cell]
        return False

    _ensure_recursion_room(k * k)
    try:
        if rec(0):
            return Tiling(tuple(Placement(assign[c].name, c) for c in order))
    except _BudgetHit:
        return BudgetExceeded(nodes)
    return None


def check_torus(ts: Tileset, tiling: Tiling, k: int) -> bool:
    """Verify the wraparound matching condition of a k x k block."""
    by_cell = {}
    for p in tiling.placements:
        tile = ts.by_name(p.tile)
        by_cell[p.offset] = tile
    if set(by_cell) != {(i, j) for i in range(k) for j in range(k)}:
        return False
    for (x, y), sq in by_cell.items():
        for side in ("N", "E"):
            dx, dy = SIDE_DELTA[side]
            nb = by_cell[((x + dx) % k, (y + dy) % k)]
            if sq.color(side) != nb.color(OPPOSITE[side]):
                return False
    return True


def plane_semidecide(ts: Tileset, max_n: int,
                     node_budget: int = DEFAULT_NODE_BUDGET):
    """One-sided test for plane tileability by Wang squares.

    For n = 1..max_n: if some n x n block satisfies the wraparound
    matching condition, the plane is tileable periodically; if the n x n
    square admits no tiling at all (Free boundary), the plane is not
    tileable.  Anything else stays Unknown; a budget hit on a window is
    never converted into a verdict.
    """
    if ts.species != WANG:
        raise ValueError("plane semidecision needs Wang squares")
    budget_hit = False
    for n in range(1, max_n + 1):
        free = tile_region(ts, DecoratedRegion(Rect(n, n).region(), {}),
                           SearchOptions(mode="decide", node_budget=node_budget))
        if isinstance(free, BudgetExceeded):
            budget_hit = True
        elif isinstance(free, Untileable):
            return PlaneEmpty(n)
        wrapped = torus_tiling(ts, n, node_budget)
        if isinstance(wrapped, BudgetExceeded):
            budget_hit = True
        elif wrapped is not None:
            assert check_torus(ts, wrapped, n)
            return PlanePeriodic(n, wrapped)
    return PlaneUnknown(max_n, budget_hit)
