"""Reduction chain between tile species, preserving tileability:

  polyominoes -> generalized Wang tiles   (monochromatic boundary)
  generalized Wang tiles -> Wang squares  (fresh glue colors per interior edge)
  Wang squares -> polyominoes             (geometric boundary encoding)

The last step turns each unit square into an S x S block (S = r + 8)
whose sides carry two kinds of relief:

  * fixed corner hooks near the ends of every side.  A hook bulges
    outward on one side exactly where it is carved inward on the
    opposite side of a neighboring block, so any two blocks that touch
    must align on the S-lattice, in matching orientation.
  * an r-unit code segment in the middle of every side.  The side's
    color is written there in binary: a 1-bit adds a unit square
    outward on the south and east sides and carves one inward on the
    north and west sides, so two abutting sides fit iff their codes
    (hence colors) are equal.  Bits run bottom-to-top on vertical
    sides and left-to-right on horizontal sides, position j at offset
    4 + j from the side's low corner.

Under the "flat-white" profile the reserved color white is not coded:
white sides stay perfectly straight and drop their corner hooks, so
blocks with white sides can sit flush against a plain rectangle
boundary.  Under "zigzag-all" white is an ordinary coded color.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import SIDE_DELTA, SIDES, Cell, Polyomino, Region, is_simply_connected
from .wang import (
    GENWANG,
    MONO,
    POLYOMINO,
    WANG,
    WHITE,
    Color,
    DecoratedRegion,
    GenWangTile,
    PolyTile,
    Tileset,
    WangSquare,
    boundary_edges,
    validate_tileset,
)
from .solver import Placement, Tiling

ZIGZAG_ALL = "zigzag-all"
FLAT_WHITE = "flat-white"


@dataclass(frozen=True)
class ReductionParams:
    """m colors, r code bits (least integer with 2**(r-1) > m, at least 2),
    block side s = r + 8."""

    m: int
    r: int
    s: int
    profile: str

    def __post_init__(self):
        if self.profile not in (ZIGZAG_ALL, FLAT_WHITE):
            raise ValueError(f"unknown profile {self.profile!r}")
        if self.r < 2 or self.s != self.r + 8:
            raise ValueError("inconsistent reduction parameters")


def bits_for_colors(m: int) -> int:
    r = 2
    while not (1 << (r - 1)) > m:
        r += 1
    return r


def params_for(m: int, profile: str = ZIGZAG_ALL) -> ReductionParams:
    r = bits_for_colors(m)
    return ReductionParams(m=m, r=r, s=r + 8, profile=profile)


# Boundary relief templates ---------------------------------------------------
#
# Cells are given relative to a block anchored at (0, 0) with side s.
# "adds" are cells the block gains outside its base square; "removes"
# are base cells it gives up.  Opposite sides carry the same template
# shifted by s, which is what makes neighboring blocks interlock; the
# profile test suite asserts those translation identities.

BIT_LOW_OFFSET = 4  # code segment occupies offsets 4 .. 4 + r - 1 of each side
BIT_ADD_SIDES = ("S", "E")  # 1-bits bulge outward here, carve inward on N/W


@dataclass(frozen=True)
class BoundaryProfile:
    s: int
    adds: dict
    removes: dict

    def bit_cell(self, side: str, j: int) -> Cell:
        s = self.s
        if side == "S":
            return (BIT_LOW_OFFSET + j, -1)
        if side == "N":
            return (BIT_LOW_OFFSET + j, s - 1)
        if side == "W":
            return (0, BIT_LOW_OFFSET + j)
        if side == "E":
            return (s, BIT_LOW_OFFSET + j)
        raise ValueError(f"bad side {side!r}")

    def feature_balance(self, side: str) -> int:
        return len(self.adds[side]) - len(self.removes[side])


def boundary_profile(s: int) -> BoundaryProfile:
    adds = {
        "W": frozenset({(-3, s - 3), (-2, s - 3), (-3, s - 2), (-2, s - 2), (-1, s - 2)}),
        "E": frozenset({(s, 1), (s + 1, 1), (s + 2, 1), (s + 2, 2)}),
        "S": frozenset({(2, -1), (1, -2), (2, -2)}),
        "N": frozenset(
            {(s - 3, s), (s - 4, s + 1), (s - 3, s + 1), (s - 2, s + 1),
             (s - 4, s + 2), (s - 2, s + 2)}
        ),
    }
    removes = {
        "W": frozenset({(0, 1), (1, 1), (2, 1), (2, 2)}),
        "E": frozenset(
            {(s - 3, s - 3), (s - 2, s - 3), (s - 3, s - 2), (s - 2, s - 2),
             (s - 1, s - 2)}
        ),
        "S": frozenset(
            {(s - 3, 0), (s - 4, 1), (s - 3, 1), (s - 2, 1), (s - 4, 2), (s - 2, 2)}
        ),
        "N": frozenset({(1, s - 2), (2, s - 2), (2, s - 1)}),
    }
    return BoundaryProfile(s, adds, removes)


def color_code_table(ts: Tileset, profile: str) -> dict[Color, int]:
    """Binary code per color, assigned in first-appearance order (tiles in
    list order, sides N, E, S, W).  Under flat-white, white gets no code."""
    if ts.species != WANG:
        raise ValueError("color coding applies to Wang squares")
    table: dict[Color, int] = {}
    for sq in ts.tiles:
        for side in SIDES:
            color = sq.color(side)
            if profile == FLAT_WHITE and color == WHITE:
                continue
            if color not in table:
                table[color] = len(table)
    return table


def _shift(cells, dx, dy):
    return {(x + dx, y + dy) for x, y in cells}


def _deform_side(cells: set, side: str, code: int, prof: BoundaryProfile, r: int,
                 dx: int = 0, dy: int = 0):
    cells |= _shift(prof.adds[side], dx, dy)
    cells -= _shift(prof.removes[side], dx, dy)
    for j in range(r):
        if (code >> j) & 1:
            cx, cy = prof.bit_cell(side, j)
            if side in BIT_ADD_SIDES:
                cells.add((cx + dx, cy + dy))
            else:
                cells.discard((cx + dx, cy + dy))


def encode_square_cells(sq: WangSquare, table: dict[Color, int],
                        params: ReductionParams) -> frozenset[Cell]:
    """Footprint of one encoded block, anchored so the base square is
    [0, s) x [0, s).  May reach outside the base square (hooks, bulges)."""
    prof = boundary_profile(params.s)
    cells = {(x, y) for x in range(params.s) for y in range(params.s)}
    for side in SIDES:
        color = sq.color(side)
        if params.profile == FLAT_WHITE and color == WHITE:
            continue  # straight side, no hooks, no code
        if color not in table:
            raise ValueError(f"color {color!r} has no code")
        _deform_side(cells, side, table[color], prof, params.r)
    return frozenset(cells)


def expected_block_area(sq: WangSquare, table: dict[Color, int],
                        params: ReductionParams) -> int:
    """Exact area of an encoded block: s^2, plus one per 1-bit on the
    south/east codes, minus one per 1-bit on the north/west codes, plus
    the hook balance of each non-straight side (the four hook balances
    cancel when every side is coded)."""
    prof = boundary_profile(params.s)
    area = params.s * params.s
    for side in SIDES:
        color = sq.color(side)
        if params.profile == FLAT_WHITE and color == WHITE:
            continue
        ones = bin(table[color]).count("1")
        area += prof.feature_balance(side)
        area += ones if side in BIT_ADD_SIDES else -ones
    return area


@dataclass(frozen=True)
class WangPolyEncoding:
    """Result of encoding a Wang-square tileset as polyominoes."""

    tileset: Tileset  # polyomino species, one tile per input square
    params: ReductionParams
    table: dict[Color, int]
    origins: dict[str, Cell]  # per tile: base-square corner in normalized coords

    def code_strings(self) -> dict[Color, str]:
        """Color table as bit strings, position 0 (low end of the side) first."""
        return {
            color: "".join(str((code >> j) & 1) for j in range(self.params.r))
            for color, code in self.table.items()
        }


def wang_to_poly(ts: Tileset, profile: str = ZIGZAG_ALL,
                 params: ReductionParams | None = None) -> WangPolyEncoding:
    """Encode every Wang square as an interlocking polyomino block.

    Distinct colors get distinct codes by construction; the resulting
    shapes must come out simply connected or the encoding is rejected.
    """
    table = color_code_table(ts, profile)
    if params is None:
        params = params_for(len(table), profile)
    elif params.m != len(table):
        raise ValueError(f"params.m={params.m} but the tileset uses {len(table)} colors")
    if len(set(table.values())) != len(table):
        raise ValueError("two distinct colors assigned the same code")
    tiles = []
    origins = {}
    for sq in ts.tiles:
        cells = encode_square_cells(sq, table, params)
        ox = min(x for x, _ in cells)
        oy = min(y for _, y in cells)
        shape = Polyomino(frozenset((x - ox, y - oy) for x, y in cells))
        if not is_simply_connected(shape.cells):
            raise ValueError(f"encoded block for {sq.name!r} is not simply connected")
        tiles.append(PolyTile(sq.name, shape))
        origins[sq.name] = (-ox, -oy)  # base corner (0,0) in normalized coords
    return WangPolyEncoding(Tileset.of(POLYOMINO, tiles), params, table, origins)


def encode_region(dr: DecoratedRegion, enc: WangPolyEncoding) -> Region:
    """Polyomino-level target corresponding to a decorated region.

    Each cell becomes a full base block; every constrained boundary edge
    is reshaped into the complementary relief of a virtual neighbor
    carrying the constraint color, so a Wang tiling of the decorated
    region corresponds exactly to a block tiling of the result.  Free
    edges are legal only under flat-white, where they render straight
    (indistinguishable from a white constraint).
    """
    params = enc.params
    prof = boundary_profile(params.s)
    s = params.s
    cells: set[Cell] = set()
    for gx, gy in dr.region.cells:
        cells |= {(s * gx + i, s * gy + j) for i in range(s) for j in range(s)}
    for (gcell, side) in boundary_edges(dr.region.cells):
        color = dr.constraints.get((gcell, side))
        if color is None:
            if params.profile != FLAT_WHITE:
                raise ValueError(
                    f"free boundary edge {(gcell, side)} needs the flat-white profile")
            continue
        if params.profile == FLAT_WHITE and color == WHITE:
            continue
        if color not in enc.table:
            raise ValueError(f"constraint color {color!r} not in the color table")
        gx, gy = gcell
        _deform_side(cells, side, enc.table[color], prof, params.r, s * gx, s * gy)
    return Region(frozenset(cells))


def transport_to_poly(enc: WangPolyEncoding, tiling: Tiling) -> Tiling:
    """Map a Wang-square tiling onto the encoded blocks."""
    s = enc.params.s
    out = []
    for p in tiling.placements:
        ox, oy = enc.origins[p.tile]
        gx, gy = p.offset
        out.append(Placement(p.tile, (s * gx - ox, s * gy - oy)))
    return Tiling(tuple(out))


def transport_to_wang(enc: WangPolyEncoding, tiling: Tiling) -> Tiling:
    """Map a block tiling back to Wang squares; offsets must sit on the
    block lattice."""
    s = enc.params.s
    out = []
    for p in tiling.placements:
        ox, oy = enc.origins[p.tile]
        px, py = p.offset
        if (px + ox) % s or (py + oy) % s:
            raise ValueError(f"placement {p} is off the block lattice")
        out.append(Placement(p.tile, ((px + ox) // s, (py + oy) // s)))
    return Tiling(tuple(out))


def transport_tiling(enc: WangPolyEncoding, tiling: Tiling, direction: str) -> Tiling:
    if direction == "wang-to-poly":
        return transport_to_poly(enc, tiling)
    if direction == "poly-to-wang":
        return transport_to_wang(enc, tiling)
    raise ValueError(f"unknown direction {direction!r}")


# Species conversions up the chain -------------------------------------------


def poly_to_genwang(ts: Tileset) -> Tileset:
    """Uncolored tiles as generalized Wang tiles with a single reserved
    boundary color, preserving tileability of every target."""
    if ts.species != POLYOMINO:
        raise ValueError("expects an uncolored tileset")
    problems = validate_tileset(ts)
    if problems:
        raise ValueError("; ".join(problems))
    tiles = []
    for t in ts.tiles:
        edges = {edge: MONO for edge in boundary_edges(t.shape.cells)}
        tiles.append(GenWangTile(t.name, t.shape, edges))
    return Tileset.of(GENWANG, tiles)


def genwang_to_wangsquares(ts: Tileset) -> tuple[Tileset, dict[str, tuple[str, Cell]]]:
    """Split every generalized Wang tile into unit squares.

    Each interior edge of a tile gets a fresh glue color used on its two
    sides and nowhere else, so the squares can only reassemble into the
    original shapes.  Returns the squares plus a provenance map
    square name -> (tile name, cell).
    """
    if ts.species != GENWANG:
        raise ValueError("expects generalized Wang tiles")
    existing = {color for t in ts.tiles for color in t.edges.values()}
    squares = []
    provenance: dict[str, tuple[str, Cell]] = {}
    for t in ts.tiles:
        shape = t.shape.cells
        glue: dict[tuple[Cell, str], Color] = {}
        k = 0
        for cell in sorted(shape):
            x, y = cell
            for side in ("N", "E"):
                dx, dy = SIDE_DELTA[side]
                nb = (x + dx, y + dy)
                if nb in shape:
                    color = f"{t.name}#{k}"
                    if color in existing:
                        raise ValueError(f"glue color {color!r} collides with a tileset color")
                    glue[(cell, side)] = color
                    glue[(nb, "S" if side == "N" else "W")] = color
                    k += 1
        for cell in sorted(shape):
            name = f"{t.name}@{cell[0]},{cell[1]}"
            colors = {}
            for side in SIDES:
                dx, dy = SIDE_DELTA[side]
                nb = (cell[0] + dx, cell[1] + dy)
                if nb in shape:
                    colors[side] = glue[(cell, side)]
                else:
                    colors[side] = t.edges[(cell, side)]
            squares.append(WangSquare(name, n=colors["N"], e=colors["E"],
                                      s=colors["S"], w=colors["W"]))
            provenance[name] = (t.name, cell)
    return Tileset.of(WANG, squares), provenance
