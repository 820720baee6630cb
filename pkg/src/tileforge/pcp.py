"""Compiler from word-pair correspondence instances to generalized Wang
tilesets whose white-rectangle tileability matches instance solvability,
plus witness construction, solution extraction, and a bounded solver.

The compiled tileset, for an instance with n word pairs over m letters:

  * per pair t: a horizontal bar for the top word (upper edges U, lower
    edges the word's letters with the first letter tagged (x,t), ends V)
    and the mirror-image bar for the bottom word (tag on top, D below);
  * per letter x: a pass-through square (x above and below, ends V);
  * per (letter, pair) a five-square tag relay: emit/receive moving the
    tag one column right, a holder that keeps it in place, and
    emit/receive moving it left;
  * eight border tiles, the only tiles with white edges, which can
    frame any rectangle whose inside reads U on top, D on the bottom,
    and V on the sides.  The top-left corner is a 1 x 2 bar that
    overhangs the first interior column; a frame therefore cannot
    close around an empty interior, which would otherwise make every
    instance trivially tile a 2-wide white rectangle.

Total 2n + m + 5nm + 8 tiles.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from .core import Cell, Polyomino, Rect
from .wang import (
    GENWANG,
    WHITE,
    Color,
    DecoratedRegion,
    GenWangTile,
    Tileset,
    compound,
    white_rectangle,
)
from .solver import Placement, Tiling, placement_cells, validate_tiling

RESERVED_COLORS = {"U", "D", "V", "T", "L", "R", "B", WHITE, "mono"}


@dataclass(frozen=True)
class PcpInstance:
    alphabet: tuple[str, ...]
    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("instance needs at least one word pair")
        letters = set(self.alphabet)
        if not letters:
            raise ValueError("empty alphabet")
        for x in letters:
            if len(x) != 1:
                raise ValueError(f"letters must be single characters, got {x!r}")
            if x in RESERVED_COLORS or x.startswith("white"):
                raise ValueError(f"letter {x!r} collides with a reserved color")
        for top, bottom in self.pairs:
            if not top or not bottom:
                raise ValueError("words must be nonempty")
            for ch in top + bottom:
                if ch not in letters:
                    raise ValueError(f"word letter {ch!r} not in the alphabet")

    @property
    def n(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class PcpSolution:
    indices: tuple[int, ...]  # 1-based pair indices

    def __post_init__(self):
        if not self.indices:
            raise ValueError("a solution has at least one index")


@dataclass(frozen=True)
class PcpNoneUpTo:
    max_depth: int


def concatenations(inst: PcpInstance, sol: PcpSolution) -> tuple[str, str]:
    top = "".join(inst.pairs[i - 1][0] for i in sol.indices)
    bottom = "".join(inst.pairs[i - 1][1] for i in sol.indices)
    return top, bottom


def solution_valid(inst: PcpInstance, sol: PcpSolution) -> bool:
    if any(not 1 <= i <= inst.n for i in sol.indices):
        return False
    top, bottom = concatenations(inst, sol)
    return top == bottom


def _bar(name: str, word: str, *, tag: int, tag_on_top: bool) -> GenWangTile:
    """A 1 x len(word) bar; the word runs along one long side with its
    first letter tagged, the other long side is uniform U (top bars) or
    D (bottom bars), the two ends are V."""
    cells = [(i, 0) for i in range(len(word))]
    shape = Polyomino.of(cells)
    edges: dict = {}
    for i, ch in enumerate(word):
        lettered = compound(ch, str(tag)) if i == 0 else ch
        if tag_on_top:
            edges[((i, 0), "N")] = lettered
            edges[((i, 0), "S")] = "D"
        else:
            edges[((i, 0), "N")] = "U"
            edges[((i, 0), "S")] = lettered
    edges[((0, 0), "W")] = "V"
    edges[((len(word) - 1, 0), "E")] = "V"
    return GenWangTile(name, shape, edges)


def _sq(name: str, n: Color, e: Color, s: Color, w: Color) -> GenWangTile:
    shape = Polyomino.of([(0, 0)])
    return GenWangTile(name, shape, {((0, 0), "N"): n, ((0, 0), "E"): e,
                                     ((0, 0), "S"): s, ((0, 0), "W"): w})


BORDER_NAMES = ("TL", "T", "TR", "L", "R", "BL", "B", "BR")


def border_tiles() -> list[GenWangTile]:
    W = WHITE
    tl = GenWangTile(
        "TL",
        Polyomino.of([(0, 0), (1, 0)]),
        {
            ((0, 0), "N"): W, ((1, 0), "N"): W, ((0, 0), "W"): W,
            ((0, 0), "S"): "L", ((1, 0), "S"): "U", ((1, 0), "E"): "T",
        },
    )
    return [
        tl,
        _sq("T", n=W, e="T", s="U", w="T"),
        _sq("TR", n=W, e=W, s="R", w="T"),
        _sq("L", n="L", e="V", s="L", w=W),
        _sq("R", n="R", e=W, s="R", w="V"),
        _sq("BL", n="L", e="B", s=W, w=W),
        _sq("B", n="D", e="B", s=W, w="B"),
        _sq("BR", n="R", e=W, s=W, w="B"),
    ]


def build_pcp_tileset(inst: PcpInstance) -> Tileset:
    tiles: list[GenWangTile] = []
    for t, (top, bottom) in enumerate(inst.pairs, 1):
        tiles.append(_bar(f"J{t}", top, tag=t, tag_on_top=False))
        tiles.append(_bar(f"K{t}", bottom, tag=t, tag_on_top=True))
    for x in inst.alphabet:
        tiles.append(_sq(f"pass:{x}", n=x, e="V", s=x, w="V"))
    for x in inst.alphabet:
        for t in range(1, inst.n + 1):
            xt = compound(x, str(t))
            tiles.append(_sq(f"er:{x},{t}", n=xt, e=compound(str(t), "R"), s=x, w="V"))
            tiles.append(_sq(f"rr:{x},{t}", n=x, e="V", s=xt, w=compound(str(t), "R")))
            tiles.append(_sq(f"fx:{x},{t}", n=xt, e="V", s=xt, w="V"))
            tiles.append(_sq(f"el:{x},{t}", n=xt, e="V", s=x, w=compound(str(t), "L")))
            tiles.append(_sq(f"rl:{x},{t}", n=x, e=compound(str(t), "L"), s=xt, w="V"))
    tiles.extend(border_tiles())
    return Tileset.of(GENWANG, tiles)


def _tag_positions(inst: PcpInstance, sol: PcpSolution, which: int) -> list[int]:
    """1-based column of each occurrence's tag in the concatenated word."""
    pos = []
    col = 1
    for i in sol.indices:
        pos.append(col)
        col += len(inst.pairs[i - 1][which])
    return pos


def pcp_witness(inst: PcpInstance, sol: PcpSolution) -> tuple[Rect, Tiling]:
    """Bordered rectangle tiling realizing a valid solution.

    Interior: the top-word bars, one relay row per unit of tag travel
    (tags that must move right travel first, rightmost first; then
    leftward tags, leftmost first; every relay row moves exactly one tag
    one column), then the bottom-word bars.  A border ring wraps the
    interior; the result validates against an all-white boundary.
    """
    if not solution_valid(inst, sol):
        raise ValueError("invalid solution for this instance")
    word, _ = concatenations(inst, sol)
    w = len(word)
    jpos = _tag_positions(inst, sol, 0)
    kpos = _tag_positions(inst, sol, 1)
    d = len(sol.indices)

    moves: list[tuple[int, int]] = []  # (occurrence index, step of +1/-1)
    right_movers = [i for i in range(d) if kpos[i] > jpos[i]]
    left_movers = [i for i in range(d) if kpos[i] < jpos[i]]
    for i in sorted(right_movers, reverse=True):
        moves.extend((i, 1) for _ in range(kpos[i] - jpos[i]))
    for i in sorted(left_movers):
        moves.extend((i, -1) for _ in range(jpos[i] - kpos[i]))
    tau = len(moves)
    height = tau + 4

    placements: list[Placement] = []
    top_y = height - 1
    # border ring; TL is a domino covering columns 0 and 1
    placements.append(Placement("TL", (0, top_y)))
    placements.extend(Placement("T", (x, top_y)) for x in range(2, w + 1))
    placements.append(Placement("TR", (w + 1, top_y)))
    for y in range(1, top_y):
        placements.append(Placement("L", (0, y)))
        placements.append(Placement("R", (w + 1, y)))
    placements.append(Placement("BL", (0, 0)))
    placements.extend(Placement("B", (x, 0)) for x in range(1, w + 1))
    placements.append(Placement("BR", (w + 1, 0)))
    # top-word row
    col = 1
    for i in sol.indices:
        placements.append(Placement(f"J{i}", (col, top_y - 1)))
        col += len(inst.pairs[i - 1][0])
    # relay rows
    cur = list(jpos)
    y = top_y - 2
    for occ, step in moves:
        t = sol.indices[occ]
        src = cur[occ]
        dst = src + step
        if dst in cur:
            raise AssertionError("tag relay collision; schedule is unsound")
        for x in range(1, w + 1):
            letter = word[x - 1]
            if x == src:
                name = f"er:{letter},{t}" if step == 1 else f"el:{letter},{t}"
            elif x == dst:
                name = f"rr:{letter},{t}" if step == 1 else f"rl:{letter},{t}"
            elif x in cur:
                other = sol.indices[cur.index(x)]
                name = f"fx:{letter},{other}"
            else:
                name = f"pass:{letter}"
            placements.append(Placement(name, (x, y)))
        cur[occ] = dst
        y -= 1
    if cur != kpos:
        raise AssertionError("tag relay did not reach the bottom positions")
    # bottom-word row
    col = 1
    for i in sol.indices:
        placements.append(Placement(f"K{i}", (col, 1)))
        col += len(inst.pairs[i - 1][1])
    rect = Rect(w + 2, height)
    tiling = Tiling(tuple(placements))
    ts = build_pcp_tileset(inst)
    ok, problems = validate_tiling(ts, white_rectangle(rect.w, rect.h), tiling)
    if not ok:
        raise AssertionError(f"constructed witness is invalid: {problems}")
    return rect, tiling


def extract_pcp_solution(inst: PcpInstance, tiling: Tiling) -> PcpSolution:
    """Read the solution back from a border-framed white-rectangle tiling.

    The tiling must validate with an all-white boundary and be in framed
    normal form: border tiles exactly on the boundary ring.  Minimal
    rectangles found by the search are always in this form.
    """
    ts = build_pcp_tileset(inst)
    cells: set[Cell] = set()
    for p in tiling.placements:
        cells |= placement_cells(ts, p)
    if not cells:
        raise ValueError("empty tiling")
    x0 = min(x for x, _ in cells)
    y0 = min(y for _, y in cells)
    x1 = max(x for x, _ in cells)
    y1 = max(y for _, y in cells)
    w, h = x1 - x0 + 1, y1 - y0 + 1
    if len(cells) != w * h:
        raise ValueError("tiling does not cover a rectangle")
    target = white_rectangle(w, h, at=(x0, y0))
    ok, problems = validate_tiling(ts, target, tiling)
    if not ok:
        raise ValueError(f"not a white-rectangle tiling: {problems}")
    border = set(BORDER_NAMES)
    by_cell: dict[Cell, str] = {}
    for p in tiling.placements:
        for c in placement_cells(ts, p):
            by_cell[c] = p.tile
    for (x, y), name in by_cell.items():
        on_ring = x in (x0, x1) or y in (y0, y1)
        if on_ring != (name in border):
            raise ValueError("non-normal tiling")
    top_row = sorted(
        {p for p in tiling.placements if p.offset[1] == y1 - 1 and p.tile not in border},
        key=lambda p: p.offset[0],
    )
    bottom_row = sorted(
        {p for p in tiling.placements if p.offset[1] == y0 + 1 and p.tile not in border},
        key=lambda p: p.offset[0],
    )
    top_idx = []
    for p in top_row:
        if not p.tile.startswith("J"):
            raise ValueError("non-normal tiling")
        top_idx.append(int(p.tile[1:]))
    bottom_idx = []
    for p in bottom_row:
        if not p.tile.startswith("K"):
            raise ValueError("non-normal tiling")
        bottom_idx.append(int(p.tile[1:]))
    if top_idx != bottom_idx:
        raise ValueError("top and bottom index sequences disagree")
    sol = PcpSolution(tuple(top_idx))
    if not solution_valid(inst, sol):
        raise ValueError("extracted sequence fails the concatenation check")
    return sol


def solve_pcp_bounded(inst: PcpInstance, max_depth: int):
    """Breadth-first search over index sequences, pruning incompatible
    prefixes; sound and complete up to the depth bound."""
    # state: (side, overhang): side "T" means the top concatenation is
    # ahead by the overhang string, "B" the bottom one.
    start: dict = {}
    parents: dict = {}
    queue: deque = deque()
    for t, (top, bottom) in enumerate(inst.pairs, 1):
        if top == bottom:
            return PcpSolution((t,))
        state = None
        if top.startswith(bottom):
            state = ("T", top[len(bottom):])
        elif bottom.startswith(top):
            state = ("B", bottom[len(top):])
        if state is not None and state not in parents:
            parents[state] = (None, t)
            queue.append((state, 1))
    while queue:
        state, depth = queue.popleft()
        if depth >= max_depth:
            continue
        side, over = state
        for t, (top, bottom) in enumerate(inst.pairs, 1):
            if side == "T":
                a, b = over + top, bottom
            else:
                a, b = top, over + bottom
            if a == b:
                seq = [t]
                s = state
                while s is not None:
                    s, i = parents[s]
                    seq.append(i)
                return PcpSolution(tuple(reversed(seq)))
            if a.startswith(b):
                nxt = ("T", a[len(b):])
            elif b.startswith(a):
                nxt = ("B", b[len(a):])
            else:
                continue
            if nxt not in parents:
                parents[nxt] = (state, t)
                queue.append((nxt, depth + 1))
    return PcpNoneUpTo(max_depth)


def instance_to_json(inst: PcpInstance) -> dict:
    return {"alphabet": list(inst.alphabet), "pairs": [list(p) for p in inst.pairs]}


def instance_from_json(obj: dict) -> PcpInstance:
    if not isinstance(obj, dict) or "alphabet" not in obj or "pairs" not in obj:
        raise ValueError("instance file must carry 'alphabet' and 'pairs'")
    return PcpInstance(tuple(obj["alphabet"]), tuple((p[0], p[1]) for p in obj["pairs"]))


def load_instance(path: str) -> PcpInstance:
    with open(path) as f:
        return instance_from_json(json.load(f))
