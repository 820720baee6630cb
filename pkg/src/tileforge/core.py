"""Integer-grid geometry: cells, regions, normalization, connectivity.

Coordinate convention, used everywhere in this package: x grows to the
right, y grows upward.  A cell (x, y) stands for the closed unit square
[x, x+1] x [y, y+1].  Constructions that stack rows "below" a seed row
therefore walk toward decreasing y.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

Cell = tuple[int, int]

SIDES = ("N", "E", "S", "W")
SIDE_DELTA: dict[str, Cell] = {"N": (0, 1), "E": (1, 0), "S": (0, -1), "W": (-1, 0)}
OPPOSITE = {"N": "S", "S": "N", "E": "W", "W": "E"}
SIDE_ORDER = {s: i for i, s in enumerate(SIDES)}


def neighbors4(cell: Cell) -> tuple[Cell, Cell, Cell, Cell]:
    x, y = cell
    return ((x, y + 1), (x + 1, y), (x, y - 1), (x - 1, y))


@dataclass(frozen=True)
class Region:
    """A finite set of grid cells.  May be empty, may be disconnected."""

    cells: frozenset[Cell]

    @staticmethod
    def of(cells: Iterable[Cell]) -> "Region":
        return Region(frozenset((int(x), int(y)) for x, y in cells))

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell: Cell) -> bool:
        return cell in self.cells

    def bounding_box(self) -> tuple[int, int, int, int]:
        """(min_x, min_y, max_x, max_y); error on the empty region."""
        if not self.cells:
            raise ValueError("empty region has no bounding box")
        xs = [c[0] for c in self.cells]
        ys = [c[1] for c in self.cells]
        return min(xs), min(ys), max(xs), max(ys)

    def translate(self, dx: int, dy: int) -> "Region":
        return Region(frozenset((x + dx, y + dy) for x, y in self.cells))


@dataclass(frozen=True)
class Polyomino:
    """A nonempty cell set normalized so that min x = min y = 0.

    Simple connectivity is a property to check, not an invariant: the
    solver accepts arbitrary shapes, flagging non-simply-connected ones
    at tileset validation instead of at construction.
    """

    cells: frozenset[Cell]

    def __post_init__(self):
        if not self.cells:
            raise ValueError("polyomino must be nonempty")
        if min(x for x, _ in self.cells) != 0 or min(y for _, y in self.cells) != 0:
            raise ValueError("polyomino cells must be normalized to min x = min y = 0")

    @staticmethod
    def of(cells: Iterable[Cell]) -> "Polyomino":
        cs = {(int(x), int(y)) for x, y in cells}
        if not cs:
            raise ValueError("polyomino must be nonempty")
        dx = -min(x for x, _ in cs)
        dy = -min(y for _, y in cs)
        return Polyomino(frozenset((x + dx, y + dy) for x, y in cs))

    def __len__(self) -> int:
        return len(self.cells)

    def width(self) -> int:
        return 1 + max(x for x, _ in self.cells)

    def height(self) -> int:
        return 1 + max(y for _, y in self.cells)


@dataclass(frozen=True)
class Rect:
    """An axis-aligned w x h rectangle tile, placed by translation only."""

    w: int
    h: int

    def __post_init__(self):
        if self.w < 1 or self.h < 1:
            raise ValueError("rectangle sides must be >= 1")

    def cells_at(self, at: Cell) -> frozenset[Cell]:
        x0, y0 = at
        return frozenset((x0 + i, y0 + j) for i in range(self.w) for j in range(self.h))

    def region(self) -> Region:
        return Region(self.cells_at((0, 0)))

    def area(self) -> int:
        return self.w * self.h


def normalize_region(cells: Iterable[Cell]) -> tuple[Region, Cell]:
    """Merge duplicates and shift to min x = min y = 0.

    Returns the normalized region together with the anchor (the
    translation that was subtracted); the empty input yields the empty
    region with anchor (0, 0).  Idempotent: a normalized region comes
    back unchanged with anchor (0, 0).
    """
    cs = {(int(x), int(y)) for x, y in cells}
    if not cs:
        return Region(frozenset()), (0, 0)
    ax = min(x for x, _ in cs)
    ay = min(y for _, y in cs)
    return Region(frozenset((x - ax, y - ay) for x, y in cs)), (ax, ay)


def is_connected(cells: frozenset[Cell] | set[Cell]) -> bool:
    """Edge-connectivity of a cell set; cells touching only at a corner
    do not count as connected.  The empty set counts as connected."""
    if not cells:
        return True
    seen = set()
    stack = [next(iter(cells))]
    while stack:
        c = stack.pop()
        if c in seen:
            continue
        seen.add(c)
        for n in neighbors4(c):
            if n in cells and n not in seen:
                stack.append(n)
    return len(seen) == len(cells)


def is_simply_connected(r: Region | frozenset[Cell] | set[Cell]) -> bool:
    """True iff the shape is connected and encloses no hole.

    Connectivity of the shape is edge-connectivity; the complement is
    judged the same way, by flood-filling the complement cells inside a
    bounding box padded by one ring and checking that every complement
    cell is reachable from the outside.  Raises on the empty region.
    """
    cells = r.cells if isinstance(r, Region) else frozenset(r)
    if not cells:
        raise ValueError("empty")
    if not is_connected(cells):
        return False
    xs = [c[0] for c in cells]
    ys = [c[1] for c in cells]
    x0, x1 = min(xs) - 1, max(xs) + 1
    y0, y1 = min(ys) - 1, max(ys) + 1
    seen = set()
    stack = [(x0, y0)]
    while stack:
        c = stack.pop()
        if c in seen:
            continue
        seen.add(c)
        for n in neighbors4(c):
            nx, ny = n
            if x0 <= nx <= x1 and y0 <= ny <= y1 and n not in cells and n not in seen:
                stack.append(n)
    box_count = (x1 - x0 + 1) * (y1 - y0 + 1)
    return len(seen) == box_count - len(cells)


def dilate(cells: Iterable[Cell], k: int) -> frozenset[Cell]:
    """Scale a cell set by an integer factor: each cell becomes a k x k block."""
    if k < 1:
        raise ValueError("dilation factor must be >= 1")
    out = set()
    for x, y in cells:
        for i in range(k):
            for j in range(k):
                out.add((k * x + i, k * y + j))
    return frozenset(out)


def region_to_json(r: Region) -> dict:
    return {"cells": sorted([x, y] for x, y in r.cells)}


def region_from_json(obj: dict) -> Region:
    if not isinstance(obj, dict) or "cells" not in obj:
        raise ValueError("region file must be an object with a 'cells' list")
    return Region.of((c[0], c[1]) for c in obj["cells"])


def load_region(path: str) -> Region:
    with open(path) as f:
        return region_from_json(json.load(f))


def save_region(r: Region, path: str) -> None:
    with open(path, "w") as f:
        json.dump(region_to_json(r), f, indent=1)
        f.write("\n")
