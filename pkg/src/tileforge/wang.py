"""Colors, Wang squares, generalized Wang tiles, decorated regions, tilesets.

A color is a plain symbol string.  "white" is an ordinary color that
matches itself; constructions that must keep boundary tiles out of the
interior instead use the four directional whites (white-N/E/S/W), which
never match one another because opposite faces carry different names.
Compound colors are structured strings "(a,b)" whose components stay
retrievable via parse_compound.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .core import (
    OPPOSITE,
    SIDE_DELTA,
    SIDE_ORDER,
    SIDES,
    Cell,
    Polyomino,
    Region,
    is_simply_connected,
)

Color = str

WHITE: Color = "white"
MONO: Color = "mono"

Edge = tuple[Cell, str]  # (cell, side); the unit edge on that side of the cell


def directional_white(side: str) -> Color:
    """The non-matching white for an edge facing the given side."""
    if side not in SIDES:
        raise ValueError(f"bad side {side!r}")
    return f"white-{side}"


def compound(a: str, b: str) -> Color:
    return f"({a},{b})"


def parse_compound(color: Color) -> tuple[str, str] | None:
    """Components of a compound color "(a,b)", or None for plain colors."""
    if not (color.startswith("(") and color.endswith(")")):
        return None
    inner = color[1:-1]
    if "," not in inner:
        return None
    a, b = inner.split(",", 1)
    return a, b


@dataclass(frozen=True)
class WangSquare:
    """A unit square with one color per side."""

    name: str
    n: Color
    e: Color
    s: Color
    w: Color

    def color(self, side: str) -> Color:
        return {"N": self.n, "E": self.e, "S": self.s, "W": self.w}[side]


@dataclass(frozen=True)
class GenWangTile:
    """A simply connected shape with a color on every boundary unit edge."""

    name: str
    shape: Polyomino
    edges: Mapping[Edge, Color]

    def __post_init__(self):
        object.__setattr__(self, "edges", dict(self.edges))


@dataclass(frozen=True)
class PolyTile:
    """A named uncolored tile."""

    name: str
    shape: Polyomino


POLYOMINO = "polyomino"
WANG = "wang"
GENWANG = "genwang"
SPECIES = (POLYOMINO, WANG, GENWANG)


@dataclass(frozen=True)
class Tileset:
    species: str
    tiles: tuple

    @staticmethod
    def of(species: str, tiles: Iterable) -> "Tileset":
        if species not in SPECIES:
            raise ValueError(f"unknown species {species!r}")
        ts = Tileset(species, tuple(tiles))
        if not ts.tiles:
            raise ValueError("tileset must be nonempty")
        return ts

    def names(self) -> list[str]:
        return [t.name for t in self.tiles]

    def by_name(self, name: str):
        for t in self.tiles:
            if t.name == name:
                return t
        raise KeyError(name)


@dataclass(frozen=True)
class DecoratedRegion:
    """A region with color constraints on some of its boundary edges.

    Edges absent from the constraint map are Free: a tile edge placed
    there may carry any color.  Free edges are the finite-window
    interface to problems on infinite regions.
    """

    region: Region
    constraints: Mapping[Edge, Color] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "constraints", dict(self.constraints))
        boundary = set(boundary_edges(self.region.cells))
        for edge in self.constraints:
            if edge not in boundary:
                raise ValueError(f"constraint on non-boundary edge {edge}")


def boundary_edges(cells: frozenset[Cell] | set[Cell] | Polyomino) -> list[Edge]:
    """Unit edges between a cell of the set and a non-cell, in canonical
    order: lexicographic by cell, then N, E, S, W."""
    cs = cells.cells if isinstance(cells, Polyomino) else cells
    if not cs:
        raise ValueError("empty shape has no boundary")
    out = []
    for cell in sorted(cs):
        x, y = cell
        for side in SIDES:
            dx, dy = SIDE_DELTA[side]
            if (x + dx, y + dy) not in cs:
                out.append((cell, side))
    return out


def wang_to_gen(square: WangSquare) -> GenWangTile:
    shape = Polyomino.of([(0, 0)])
    edges = {((0, 0), side): square.color(side) for side in SIDES}
    return GenWangTile(square.name, shape, edges)


def gen_to_wang(tile: GenWangTile) -> WangSquare:
    if tile.shape.cells != frozenset({(0, 0)}):
        raise ValueError("only a 1x1 generalized Wang tile is a Wang square")
    e = tile.edges
    return WangSquare(
        tile.name,
        n=e[((0, 0), "N")],
        e=e[((0, 0), "E")],
        s=e[((0, 0), "S")],
        w=e[((0, 0), "W")],
    )


def validate_tileset(ts: Tileset) -> list[str]:
    """Well-formedness check; returns a list of violations (empty = ok)."""
    violations = []
    if ts.species not in SPECIES:
        return [f"unknown species {ts.species!r}"]
    seen = set()
    for t in ts.tiles:
        if t.name in seen:
            violations.append(f"duplicate name {t.name!r}")
        seen.add(t.name)
    expected = {POLYOMINO: PolyTile, WANG: WangSquare, GENWANG: GenWangTile}[ts.species]
    for t in ts.tiles:
        if not isinstance(t, expected):
            violations.append(f"tile {getattr(t, 'name', '?')!r} is not a {ts.species} tile")
    if violations:
        return violations
    if ts.species == POLYOMINO:
        for t in ts.tiles:
            if not is_simply_connected(t.shape.cells):
                violations.append(f"tile {t.name!r} is not simply connected")
    elif ts.species == GENWANG:
        for t in ts.tiles:
            if not is_simply_connected(t.shape.cells):
                violations.append(f"tile {t.name!r} is not simply connected")
            boundary = set(boundary_edges(t.shape.cells))
            missing = boundary - set(t.edges)
            extra = set(t.edges) - boundary
            for edge in sorted(missing):
                violations.append(f"tile {t.name!r}: uncovered edge {edge}")
            for edge in sorted(extra):
                violations.append(f"tile {t.name!r}: color on non-boundary edge {edge}")
    return violations


def white_rectangle(w: int, h: int, at: Cell = (0, 0), color: Color = WHITE) -> DecoratedRegion:
    """A w x h rectangle whose every boundary edge is constrained to one color."""
    x0, y0 = at
    cells = frozenset((x0 + i, y0 + j) for i in range(w) for j in range(h))
    constraints = {edge: color for edge in boundary_edges(cells)}
    return DecoratedRegion(Region(cells), constraints)


def directional_white_rectangle(w: int, h: int, at: Cell = (0, 0)) -> DecoratedRegion:
    """A rectangle whose boundary edges carry the facing directional white."""
    x0, y0 = at
    cells = frozenset((x0 + i, y0 + j) for i in range(w) for j in range(h))
    constraints = {
        (cell, side): directional_white(side) for (cell, side) in boundary_edges(cells)
    }
    return DecoratedRegion(Region(cells), constraints)


# ---------------------------------------------------------------------------
# JSON file formats


def tileset_to_json(ts: Tileset) -> dict:
    tiles = []
    if ts.species == POLYOMINO:
        for t in ts.tiles:
            tiles.append({"name": t.name, "cells": sorted([x, y] for x, y in t.shape.cells)})
    elif ts.species == WANG:
        for t in ts.tiles:
            tiles.append({"name": t.name, "n": t.n, "e": t.e, "s": t.s, "w": t.w})
    else:
        for t in ts.tiles:
            tiles.append(
                {
                    "name": t.name,
                    "cells": sorted([x, y] for x, y in t.shape.cells),
                    "edges": [
                        {"cell": [cx, cy], "side": side, "color": color}
                        for ((cx, cy), side), color in sorted(
                            t.edges.items(), key=lambda kv: (kv[0][0], SIDE_ORDER[kv[0][1]])
                        )
                    ],
                }
            )
    return {"kind": ts.species, "tiles": tiles}


def tileset_from_json(obj: dict) -> Tileset:
    if not isinstance(obj, dict) or "kind" not in obj or "tiles" not in obj:
        raise ValueError("tileset file must be an object with 'kind' and 'tiles'")
    kind = obj["kind"]
    tiles = []
    if kind == POLYOMINO:
        for t in obj["tiles"]:
            tiles.append(PolyTile(t["name"], Polyomino.of((c[0], c[1]) for c in t["cells"])))
    elif kind == WANG:
        for t in obj["tiles"]:
            tiles.append(WangSquare(t["name"], n=t["n"], e=t["e"], s=t["s"], w=t["w"]))
    elif kind == GENWANG:
        for t in obj["tiles"]:
            shape = Polyomino.of((c[0], c[1]) for c in t["cells"])
            edges = {
                ((e["cell"][0], e["cell"][1]), e["side"]): e["color"] for e in t["edges"]
            }
            tiles.append(GenWangTile(t["name"], shape, edges))
    else:
        raise ValueError(f"unknown tileset kind {kind!r}")
    return Tileset.of(kind, tiles)


def decorated_region_to_json(dr: DecoratedRegion) -> dict:
    return {
        "cells": sorted([x, y] for x, y in dr.region.cells),
        "constraints": [
            {"cell": [cx, cy], "side": side, "color": color}
            for ((cx, cy), side), color in sorted(
                dr.constraints.items(), key=lambda kv: (kv[0][0], SIDE_ORDER[kv[0][1]])
            )
        ],
    }


def decorated_region_from_json(obj: dict) -> DecoratedRegion:
    if not isinstance(obj, dict) or "cells" not in obj:
        raise ValueError("decorated region file must be an object with 'cells'")
    region = Region.of((c[0], c[1]) for c in obj["cells"])
    constraints = {}
    for e in obj.get("constraints", []):
        if e.get("color") is None:
            continue  # explicit Free
        constraints[((e["cell"][0], e["cell"][1]), e["side"])] = e["color"]
    return DecoratedRegion(region, constraints)


def load_tileset(path: str) -> Tileset:
    with open(path) as f:
        return tileset_from_json(json.load(f))


def save_tileset(ts: Tileset, path: str) -> None:
    with open(path, "w") as f:
        json.dump(tileset_to_json(ts), f, indent=1)
        f.write("\n")


def load_decorated_region(path: str) -> DecoratedRegion:
    with open(path) as f:
        return decorated_region_from_json(json.load(f))


def save_decorated_region(dr: DecoratedRegion, path: str) -> None:
    with open(path, "w") as f:
        json.dump(decorated_region_to_json(dr), f, indent=1)
        f.write("\n")
