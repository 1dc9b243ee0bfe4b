"""Tiles, bars, finite patches and the n - c parameter.

Colors are plain strings.  Tokens read from files must match ``[A-Za-z0-9_]+``;
tokens starting with ``@`` are reserved for colors generated by this package
(seam colors of :func:`split_bars`, markers of the 44-bar encoding).

A tile is the quadruple ``(east, west, north, south)``.  Patches are indexed
``(x, y)`` with ``x`` growing eastwards and ``y`` growing northwards, so the
north neighbour of ``(x, y)`` is ``(x, y + 1)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence

TOKEN_RE = re.compile(r"[A-Za-z0-9_]+\Z")
RESERVED_PREFIX = "@"

Color = str
Word = tuple  # tuple[Color, ...]


def check_color(token, *, allow_reserved: bool = True) -> Color:
    if not isinstance(token, str) or not token:
        raise ValueError(f"invalid color {token!r}")
    if token.startswith(RESERVED_PREFIX):
        if not allow_reserved:
            raise ValueError(f"color {token!r} uses the reserved '@' prefix")
        return token
    if not TOKEN_RE.match(token):
        raise ValueError(f"invalid color token {token!r}")
    return token


@dataclass(frozen=True)
class WangTile:
    east: Color
    west: Color
    north: Color
    south: Color

    def __post_init__(self):
        for side in (self.east, self.west, self.north, self.south):
            check_color(side)

    def as_tuple(self) -> tuple:
        return (self.east, self.west, self.north, self.south)

    def rotated(self) -> "WangTile":
        # one counterclockwise quarter turn: (e, w, n, s) -> (n, s, w, e)
        return WangTile(self.north, self.south, self.west, self.east)

    def __str__(self):
        return "({},{},{},{})".format(*self.as_tuple())


@dataclass(frozen=True)
class WangBar:
    east: Color
    west: Color
    north: Word
    south: Word

    def __post_init__(self):
        object.__setattr__(self, "north", tuple(self.north))
        object.__setattr__(self, "south", tuple(self.south))
        if len(self.north) != len(self.south):
            raise ValueError("unequal word lengths")
        if not self.north:
            raise ValueError("a bar needs length >= 1")
        for side in (self.east, self.west, *self.north, *self.south):
            check_color(side)

    def __len__(self):
        return len(self.north)

    @classmethod
    def from_tile(cls, tile: WangTile) -> "WangBar":
        return cls(tile.east, tile.west, (tile.north,), (tile.south,))

    def __str__(self):
        return "({},{},{},{})".format(
            self.east, self.west, "".join(self.north), "".join(self.south))


class _ItemSet:
    """Ordered, duplicate-free, immutable collection."""

    _kind = "item"

    def __init__(self, items=()):
        items = tuple(items)
        seen = set()
        for item in items:
            if item in seen:
                raise ValueError(f"duplicate {self._kind}: {item}")
            seen.add(item)
        self._items = items

    def __len__(self):
        return len(self._items)

    def __iter__(self):
        return iter(self._items)

    def __getitem__(self, i):
        return self._items[i]

    def __eq__(self, other):
        return type(self) is type(other) and self._items == other._items

    def __hash__(self):
        return hash((type(self).__name__, self._items))

    def index(self, item) -> int:
        return self._items.index(item)

    def __repr__(self):
        return f"{type(self).__name__}({list(self._items)!r})"


class Tileset(_ItemSet):
    _kind = "tile"

    def __init__(self, tiles=()):
        tiles = [t if isinstance(t, WangTile) else WangTile(*t) for t in tiles]
        super().__init__(tiles)

    @property
    def tiles(self) -> tuple:
        return self._items


class Barset(_ItemSet):
    _kind = "bar"

    def __init__(self, bars=()):
        bars = [b if isinstance(b, WangBar) else WangBar(*b) for b in bars]
        super().__init__(bars)

    @property
    def bars(self) -> tuple:
        return self._items


class ParameterReport(NamedTuple):
    n: int
    side_counts: tuple  # distinct colors on (E, W, N, S)
    c: int
    parameter: int

    def __str__(self):
        return f"n={self.n} c={self.c} parameter={self.parameter}"


def parameter(ts: Tileset) -> ParameterReport:
    if len(ts) == 0:
        raise ValueError("empty input")
    counts = tuple(len({t.as_tuple()[side] for t in ts}) for side in range(4))
    c = max(counts)
    return ParameterReport(len(ts), counts, c, len(ts) - c)


def rotate(ts: Tileset, quarter_turns: int) -> Tileset:
    k = quarter_turns % 4
    tiles = list(ts)
    for _ in range(k):
        tiles = [t.rotated() for t in tiles]
    return Tileset(tiles)


def west_rotation(ts: Tileset) -> int:
    """Smallest number of quarter turns putting the most colorful side on west."""
    report = parameter(ts)
    e, w, n, s = report.side_counts
    # west after k turns: k=0 west, k=1 south, k=2 east, k=3 north
    for k, count in enumerate((w, s, e, n)):
        if count == report.c:
            return k
    raise AssertionError("unreachable")


def canonical_west(ts: Tileset) -> Tileset:
    return rotate(ts, west_rotation(ts))


# ----------------------------------------------------------------------------
# patches


@dataclass(frozen=True)
class Patch:
    """Rectangular assignment of tile indices, stored row by row (``rows[y][x]``)."""

    width: int
    height: int
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if self.width < 1 or self.height < 1:
            raise ValueError("patch dimensions must be positive")
        if len(rows) != self.height or any(len(r) != self.width for r in rows):
            raise ValueError("patch is not total over its rectangle")

    @classmethod
    def from_function(cls, width, height, fn) -> "Patch":
        return cls(width, height, [[fn(x, y) for x in range(width)] for y in range(height)])

    def __getitem__(self, xy):
        x, y = xy
        return self.rows[y][x]

    def cells(self) -> Iterator[tuple]:
        for y, row in enumerate(self.rows):
            for x, v in enumerate(row):
                yield (x, y), v


@dataclass(frozen=True)
class BarPatch:
    """Finite window onto a bar tiling: bar index and 1-based position per cell."""

    width: int
    height: int
    bar_rows: tuple
    pos_rows: tuple

    def __post_init__(self):
        bar_rows = tuple(tuple(int(v) for v in r) for r in self.bar_rows)
        pos_rows = tuple(tuple(int(v) for v in r) for r in self.pos_rows)
        object.__setattr__(self, "bar_rows", bar_rows)
        object.__setattr__(self, "pos_rows", pos_rows)
        if self.width < 1 or self.height < 1:
            raise ValueError("patch dimensions must be positive")
        for rows in (bar_rows, pos_rows):
            if len(rows) != self.height or any(len(r) != self.width for r in rows):
                raise ValueError("bar patch is not total over its rectangle")

    def bar_at(self, x, y) -> int:
        return self.bar_rows[y][x]

    def pos_at(self, x, y) -> int:
        return self.pos_rows[y][x]


class Violation(NamedTuple):
    cell: tuple
    other: tuple | None
    kind: str
    detail: str = ""

    def __str__(self):
        where = f"{self.cell}" if self.other is None else f"{self.cell}/{self.other}"
        return f"{where}: {self.kind}" + (f" ({self.detail})" if self.detail else "")


def _check_index(value, limit, what, cell):
    if not 0 <= value < limit:
        raise IndexError(f"{what} index {value} out of range at {cell}")


def _neighbours(width, height, wrap):
    """Yield (cell, east neighbour or None, north neighbour or None)."""
    for y in range(height):
        for x in range(width):
            east = north = None
            if x + 1 < width:
                east = (x + 1, y)
            elif wrap:
                east = (0, y)
            if y + 1 < height:
                north = (x, y + 1)
            elif wrap:
                north = (x, 0)
            yield (x, y), east, north


def validate_patch(p: Patch, ts: Tileset, *, wrap: bool = False) -> list:
    """List every mismatched shared edge of ``p``; with ``wrap`` the patch is a torus."""
    tiles = ts.tiles
    for cell, v in p.cells():
        _check_index(v, len(tiles), "tile", cell)
    out = []
    for (x, y), east, north in _neighbours(p.width, p.height, wrap):
        here = tiles[p[x, y]]
        if east is not None:
            there = tiles[p[east]]
            if here.east != there.west:
                out.append(Violation((x, y), east, "east/west mismatch",
                                     f"{here.east} != {there.west}"))
        if north is not None:
            there = tiles[p[north]]
            if here.north != there.south:
                out.append(Violation((x, y), north, "north/south mismatch",
                                     f"{here.north} != {there.south}"))
    return out


def validate_bar_patch(bp: BarPatch, bs: Barset, *, wrap: bool = False) -> list:
    """Check the four conditions of a bar tiling wherever both cells are in the window."""
    bars = bs.bars
    out = []
    for y in range(bp.height):
        for x in range(bp.width):
            _check_index(bp.bar_at(x, y), len(bars), "bar", (x, y))
            pos = bp.pos_at(x, y)
            if not 0 < pos <= len(bars[bp.bar_at(x, y)]):
                out.append(Violation((x, y), None, "position range",
                                     f"position {pos} outside bar of length "
                                     f"{len(bars[bp.bar_at(x, y)])}"))
    if out:
        return out
    for (x, y), east, north in _neighbours(bp.width, bp.height, wrap):
        bar = bars[bp.bar_at(x, y)]
        pos = bp.pos_at(x, y)
        if east is not None:
            nbar_i, npos = bp.bar_at(*east), bp.pos_at(*east)
            if pos < len(bar):
                if npos != pos + 1 or nbar_i != bp.bar_at(x, y):
                    out.append(Violation((x, y), east, "interior continuation",
                                         f"bar {bp.bar_at(x, y)} pos {pos} followed by "
                                         f"bar {nbar_i} pos {npos}"))
            else:
                if npos != 1:
                    out.append(Violation((x, y), east, "bar start",
                                         f"bar ends but next position is {npos}"))
                elif bar.east != bars[nbar_i].west:
                    out.append(Violation((x, y), east, "horizontal colors",
                                         f"{bar.east} != {bars[nbar_i].west}"))
        if north is not None:
            above = bars[bp.bar_at(*north)]
            top = bar.north[pos - 1]
            bottom = above.south[bp.pos_at(*north) - 1]
            if top != bottom:
                out.append(Violation((x, y), north, "vertical colors", f"{top} != {bottom}"))
    return out


# ----------------------------------------------------------------------------
# bars -> tiles


def seam_color(bar_index: int, seam: int) -> Color:
    return f"{RESERVED_PREFIX}b{bar_index}_{seam}"


@dataclass(frozen=True)
class SplitResult:
    tileset: Tileset
    # provenance[tile index] = (bar index, 1-based position)
    provenance: tuple
    tile_of: dict = field(compare=False)  # (bar index, position) -> tile index

    def __iter__(self):
        # allows ``tiles, prov = split_bars(bs)``
        return iter((self.tileset, self.provenance))


def split_bars(bs: Barset) -> SplitResult:
    """Cut every bar into unit tiles chained by fresh seam colors."""
    if len(bs) == 0:
        raise ValueError("empty input")
    tiles, prov, tile_of = [], [], {}
    for i, bar in enumerate(bs):
        length = len(bar)
        for j in range(1, length + 1):
            west = bar.west if j == 1 else seam_color(i, j - 1)
            east = bar.east if j == length else seam_color(i, j)
            tile_of[i, j] = len(tiles)
            tiles.append(WangTile(east, west, bar.north[j - 1], bar.south[j - 1]))
            prov.append((i, j))
    return SplitResult(Tileset(tiles), tuple(prov), tile_of)


def expand_bar_patch(bp: BarPatch, split: SplitResult) -> Patch:
    """Bar-level witness -> tile-level witness of the split tileset."""
    return Patch.from_function(
        bp.width, bp.height,
        lambda x, y: split.tile_of[bp.bar_at(x, y), bp.pos_at(x, y)])


def collapse_patch(p: Patch, split: SplitResult) -> BarPatch:
    """Tile-level witness of the split tileset -> bar-level witness."""
    bars = [[split.provenance[v][0] for v in row] for row in p.rows]
    pos = [[split.provenance[v][1] for v in row] for row in p.rows]
    return BarPatch(p.width, p.height, bars, pos)


def unrotate_patch(p: Patch, quarter_turns: int) -> Patch:
    """Turn a patch of ``rotate(ts, k)`` into the same tiling seen as a patch of ``ts``.

    Tile indices are unchanged; only the grid is rotated back.
    """
    for _ in range(quarter_turns % 4):
        w, h = p.width, p.height
        src = p
        # a rotated-frame cell (x', y') sits at original (h - 1 - y', x')
        p = Patch.from_function(h, w, lambda x, y, src=src, h=h: src[y, h - 1 - x])
    return p


def bars_from_tiles(ts: Tileset) -> Barset:
    return Barset(WangBar.from_tile(t) for t in ts)


def tiles_from_unit_bars(bs: Sequence[WangBar]) -> Tileset:
    for b in bs:
        if len(b) != 1:
            raise ValueError("only length-1 bars are tiles")
    return Tileset(WangTile(b.east, b.west, b.north[0], b.south[0]) for b in bs)
