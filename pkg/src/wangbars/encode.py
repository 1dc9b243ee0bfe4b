"""The 44-bar encoding of an arbitrary tileset, and its forward simulation.

Every bar has the same east and west color, so only the north/south words
matter.  The 43 fixed bars force polyomino-shaped blocks: an H-shaped box
whose two cavities hold the content bar and the fillers that shift it, and
two handles that carry yellow markers from one simulated tile to its north
and west neighbours.  The content bar spells every tile's four colors in
unary; the cells of the content that sit between two boxes decide which
tile a block simulates.

In a simulated tiling the block of the tile at ``(i, j)`` has its box at
``(-H(i+j), 6(j-i))`` with ``H = A + C + 2``: north neighbours sit up-left,
west neighbours up-right.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .core import RESERVED_PREFIX, BarPatch, Barset, Tileset, WangBar, WangTile, validate_patch
from .search import TorusTiling


def _r(name: str) -> str:
    return RESERVED_PREFIX + name


EW = _r("ew")
BLANK = _r("blank")
GREEN, LGREEN, LRED = _r("green"), _r("lgreen"), _r("lred")
ZERO, TWO, YELLOW, BLUE = _r("0"), _r("2"), _r("Y"), _r("B")

# colors that glue exactly one pair of bars together
PAIRING = tuple(_r(x) for x in (
    "a", "b", "c", "d", "f", "g",                           # base bars
    "h", "i", "j", "k", "l", "m", "n", "o", "p", "q",       # box
    "r", "s", "t", "u",                                     # fillers
    "v", "w", "x", "y", "z", "alpha", "beta", "gamma",      # handles
))
_P = {c[1:]: c for c in PAIRING}


@dataclass(frozen=True)
class EncodingParams:
    n: int
    C: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("the encoding needs at least one tile")
        if self.C < 1:
            raise ValueError("the encoding needs at least one color")

    @property
    def unit_len(self) -> int:
        return 2 * self.C + 1

    @property
    def arm_len(self) -> int:
        return (2 * self.C + 1) * (self.n - 1)


def color_numbering(ts: Tileset) -> dict:
    """Joint numbering 1..C of every color of ``ts`` (numeric tokens in numeric order)."""
    colors = {c for t in ts for c in t.as_tuple()}
    key = lambda c: (0, int(c), c) if c.isdigit() else (1, 0, c)  # noqa: E731
    return {c: i + 1 for i, c in enumerate(sorted(colors, key=key))}


def unary_words(a: int, b: int, c: int, d: int, C: int) -> tuple:
    """Unary code of a tile whose (north, west, east, south) colors are (a, b, c, d)."""
    for v in (a, b, c, d):
        if not 1 <= v <= C:
            raise ValueError(f"color {v} out of range 1..{C}")

    def half(fill, x):
        return (fill,) * (x - 1) + (YELLOW,) + (fill,) * (C - x)

    north = half(ZERO, a) + (BLUE,) + half(ZERO, b)
    south = half(TWO, c) + (BLUE,) + half(TWO, d)
    return north, south


def tile_words(tile: WangTile, numbering: dict, C: int) -> tuple:
    num = numbering
    return unary_words(num[tile.north], num[tile.west], num[tile.east], num[tile.south], C)


def build_content(ts: Tileset, params: EncodingParams, numbering: dict | None = None) -> WangBar:
    numbering = numbering or color_numbering(ts)
    north, south = [BLANK], [BLANK]
    for t in ts:
        nt, st = tile_words(t, numbering, params.C)
        north.extend(nt)
        south.extend(st)
    north.append(BLANK)
    south.append(BLANK)
    return WangBar(EW, EW, north, south)


# ----------------------------------------------------------------------------
# fixed bars

# (block, name, length formula, south word, north word); words are built from
# runs so that they read like the drawings.
def _fixed_specs(params: EncodingParams) -> list:
    U, A = params.unit_len, params.arm_len
    p = _P
    specs = [
        # filler columns above the parts of a unary north word made of 0s
        ("base", "filla1", "1", [ZERO], [p["a"]]),
        ("base", "filla2", "1", [p["a"]], [BLANK]),
        ("base", "fillb1", "1", [ZERO], [p["b"]]),
        ("base", "fillb2", "1", [p["b"]], [p["c"]]),
        ("base", "fillb3", "1", [p["c"]], [LRED]),
        # filler columns below the parts of a unary south word made of 2s
        ("base", "fillc1", "1", [LRED], [p["d"]]),
        ("base", "fillc2", "1", [p["d"]], [TWO]),
        ("base", "filld1", "1", [BLANK], [p["f"]]),
        ("base", "filld2", "1", [p["f"]], [p["g"]]),
        ("base", "filld3", "1", [p["g"]], [TWO]),
        # one cell between a content letter and a box arm
        ("base", "cap0", "1", [ZERO], [GREEN]),
        ("base", "capB", "1", [BLUE], [GREEN]),
        ("base", "capY", "1", [YELLOW], [GREEN]),
        ("base", "cup2", "1", [LGREEN], [TWO]),
        ("base", "cupB", "1", [LGREEN], [BLUE]),
        ("base", "cupY", "1", [LGREEN], [YELLOW]),
        # the box, bottom to top
        ("box", "box_stem1", "1", [BLUE], [p["h"]]),
        ("box", "box_stem2", "1", [p["h"]], [p["i"]]),
        ("box", "box_stem3", "1", [p["i"]], [p["j"]]),
        ("box", "box_arm0", "2A+3",
         [LRED] * (A + 1) + [p["j"]] + [LRED] * (A + 1),
         [LGREEN] * A + [p["k"]] * 3 + [LGREEN] * A),
        ("box", "box_r1", "3", [p["k"]] * 3, [BLANK, p["l"], BLANK]),
        ("box", "box_r2", "1", [p["l"]], [p["m"]]),
        ("box", "box_r3", "3", [BLANK, p["m"], BLANK], [p["n"]] * 3),
        ("box", "box_arm4", "2A+3",
         [GREEN] * A + [p["n"]] * 3 + [GREEN] * A,
         [BLANK] * (A + 1) + [p["o"]] + [BLANK] * (A + 1)),
        ("box", "box_top1", "1", [p["o"]], [p["p"]]),
        ("box", "box_top2", "1", [p["p"]], [p["q"]]),
        ("box", "box_top3", "1", [p["q"]], [BLUE]),
        # right-cavity filler: a staircase of three bars of length U
        ("fillers", "filler_bottom", "U", [LGREEN] * U, [p["r"]] * (U - 1) + [BLANK]),
        ("fillers", "filler_middle", "U", [BLANK] + [p["r"]] * (U - 1), [BLANK] + [p["s"]] * (U - 1)),
        ("fillers", "filler_top", "U", [p["s"]] * (U - 1) + [BLANK], [GREEN] * U),
        # left-cavity filler, the mirror image
        ("fillers_sym", "fillersym_bottom", "U", [LGREEN] * U, [BLANK] + [p["t"]] * (U - 1)),
        ("fillers_sym", "fillersym_middle", "U", [p["t"]] * (U - 1) + [BLANK], [p["u"]] * (U - 1) + [BLANK]),
        ("fillers_sym", "fillersym_top", "U", [BLANK] + [p["u"]] * (U - 1), [GREEN] * U),
        # handle: rises from a north yellow, runs west, rises to a south yellow
        ("handle", "handle_low1", "1", [YELLOW], [p["v"]]),
        ("handle", "handle_low2", "1", [p["v"]], [p["w"]]),
        ("handle", "handle_bar", "A+2", [BLANK] * (A + 1) + [p["w"]], [p["x"]] + [LRED] * (A + 1)),
        ("handle", "handle_up1", "1", [p["x"]], [p["y"]]),
        ("handle", "handle_up2", "1", [p["y"]], [YELLOW]),
        # mirrored handle: runs east instead
        ("handle_sym", "handlesym_low1", "1", [YELLOW], [p["z"]]),
        ("handle_sym", "handlesym_low2", "1", [p["z"]], [p["alpha"]]),
        ("handle_sym", "handlesym_bar", "A+2", [p["alpha"]] + [BLANK] * (A + 1), [LRED] * (A + 1) + [p["beta"]]),
        ("handle_sym", "handlesym_up1", "1", [p["beta"]], [p["gamma"]]),
        ("handle_sym", "handlesym_up2", "1", [p["gamma"]], [YELLOW]),
    ]
    return specs


BLOCKS = ("base", "box", "fillers", "fillers_sym", "handle", "handle_sym")


def _pairing_counts(bars) -> dict:
    counts = {c: 0 for c in PAIRING}
    for bar in bars:
        for word in (bar.north, bar.south):
            for c in set(word) & counts.keys():
                counts[c] += 1
    return counts


def build_fixed_bars(params: EncodingParams) -> tuple:
    """The 43 bars that do not depend on the tileset, as ``(names, bars, blocks)``."""
    specs = _fixed_specs(params)
    names = tuple(s[1] for s in specs)
    bars = tuple(WangBar(EW, EW, north, south) for _, _, _, south, north in specs)
    blocks = {b: tuple(s[1] for s in specs if s[0] == b) for b in BLOCKS}
    assert len(bars) == 43 and len(blocks["base"]) == 16
    assert sum(len(v) for k, v in blocks.items() if k != "base") == 27
    bad = {c: k for c, k in _pairing_counts(bars).items() if k != 2}
    assert not bad, f"pairing colors not on exactly two bar sides: {bad}"
    return names, bars, blocks


@dataclass(frozen=True)
class EncodedBarset:
    params: EncodingParams
    numbering: dict
    names: tuple  # name of every bar of ``all``, content last
    blocks: dict  # block -> bar names
    content: WangBar
    all: Barset

    def bar(self, name: str) -> WangBar:
        return self.all[self.index(name)]

    def index(self, name: str) -> int:
        return self.names.index(name)

    @property
    def base16(self) -> tuple:
        return tuple(self.bar(n) for n in self.blocks["base"])


def encode44(ts: Tileset) -> EncodedBarset:
    if len(ts) == 0:
        raise ValueError("empty input")
    numbering = color_numbering(ts)
    params = EncodingParams(len(ts), len(numbering))
    names, bars, blocks = build_fixed_bars(params)
    content = build_content(ts, params, numbering)
    assert len(content) == params.n * params.unit_len + 2
    return EncodedBarset(params, numbering, names + ("content",), blocks, content,
                         Barset(bars + (content,)))


def _runs(word) -> str:
    out, i = [], 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        out.append(word[i] if j - i == 1 else f"{word[i]}^{j - i}")
        i = j
    return " ".join(out)


def encoding_ledger(enc: EncodedBarset) -> str:
    """Deterministic, human-readable table of all 44 bars."""
    p = enc.params
    lines = [
        "# 44-bar encoding",
        f"# n={p.n} C={p.C} U=2C+1={p.unit_len} A=(2C+1)(n-1)={p.arm_len}",
        f"# every bar has east = west = {EW}",
        "# colors: " + " ".join(f"{c}={i}" for c, i in enc.numbering.items()),
        "#",
        "# block        name               length          south | north",
    ]
    formulas = {s[1]: s[2] for s in _fixed_specs(p)}
    formulas["content"] = "nU+2"
    block_of = {n: b for b, names in enc.blocks.items() for n in names}
    block_of["content"] = "content"
    for name, bar in zip(enc.names, enc.all):
        f = formulas[name]
        length = f if f.isdigit() else f"{f}={len(bar)}"
        lines.append(f"{block_of[name]:<13} {name:<18} {length:<15} "
                     f"{_runs(bar.south)} | {_runs(bar.north)}")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------------
# forward simulation


class _Canvas:
    def __init__(self, enc: EncodedBarset, width: int, height: int):
        self.enc, self.width, self.height = enc, width, height
        self.cells = {}

    def place(self, name: str, x0: int, y: int):
        i = self.enc.index(name)
        for k in range(len(self.enc.all[i])):
            key = ((x0 + k) % self.width, y % self.height)
            if key in self.cells:
                raise ValueError(f"layout collision at {key}: {name} over "
                                 f"{self.enc.names[self.cells[key][0]]}")
            self.cells[key] = (i, k + 1)

    def column(self, names, x: int, y0: int):
        for k, name in enumerate(names):
            self.place(name, x, y0 + k)

    def patch(self) -> BarPatch:
        missing = self.width * self.height - len(self.cells)
        if missing:
            raise ValueError(f"layout leaves {missing} cells uncovered")
        bars = [[self.cells[x, y][0] for x in range(self.width)] for y in range(self.height)]
        pos = [[self.cells[x, y][1] for x in range(self.width)] for y in range(self.height)]
        return BarPatch(self.width, self.height, bars, pos)


def _block(cv: _Canvas, X: int, Y: int, idx: int, tile: WangTile):
    enc = cv.enc
    p = enc.params
    U, A, C, n = p.unit_len, p.arm_len, p.C, p.n
    num = enc.numbering
    a, b, c, d = num[tile.north], num[tile.west], num[tile.east], num[tile.south]

    # box
    mid = X + A + 1
    cv.column(["box_stem1", "box_stem2", "box_stem3"], mid, Y - 5)
    cv.place("box_arm0", X, Y - 2)
    cv.place("box_r1", X + A, Y - 1)
    cv.place("box_r2", mid, Y)
    cv.place("box_r3", X + A, Y + 1)
    cv.place("box_arm4", X, Y + 2)
    cv.column(["box_top1", "box_top2", "box_top3"], mid, Y + 3)

    # fillers in the right cavity, then the content, then mirrored fillers in
    # the next box's left cavity; the exposed word lands between the boxes
    f = n - 1 - idx
    for k in range(f):
        m = X + A + 2 + k * U
        cv.place("filler_bottom", m + 1, Y - 1)
        cv.place("filler_middle", m, Y)
        cv.place("filler_top", m + 1, Y + 1)
    x0 = X + A + 2 + f * U
    cv.place("content", x0, Y)
    nxt = X + 2 * A + 3 + U
    for k in range(idx):
        o = nxt + A + 1 - k * U
        cv.place("fillersym_bottom", o - U - 1, Y - 1)
        cv.place("fillersym_middle", o - U, Y)
        cv.place("fillersym_top", o - U - 1, Y + 1)

    gap0 = X + 2 * A + 2  # gap column g sits at x = gap0 + g, g = 1..U
    exposed = range(gap0 + 1, gap0 + U + 1)
    content = enc.content
    for k in range(1, len(content) - 1):
        x = x0 + k
        if x in exposed:
            continue
        cv.place({ZERO: "cap0", BLUE: "capB", YELLOW: "capY"}[content.north[k]], x, Y + 1)
        cv.place({TWO: "cup2", BLUE: "cupB", YELLOW: "cupY"}[content.south[k]], x, Y - 1)

    # above the exposed north word: handle at a, handle_sym at C+1+b; the
    # column C+1 belongs to the box of the west neighbour
    cv.column(["handle_low1", "handle_low2"], gap0 + a, Y + 1)
    cv.place("handle_bar", gap0 + a - A - 1, Y + 3)
    cv.column(["handle_up1", "handle_up2"], gap0 + a - A - 1, Y + 4)
    s = gap0 + C + 1 + b
    cv.column(["handlesym_low1", "handlesym_low2"], s, Y + 1)
    cv.place("handlesym_bar", s, Y + 3)
    cv.column(["handlesym_up1", "handlesym_up2"], s + A + 1, Y + 4)
    for g in [*range(1, a), *range(C + 2 + b, U + 1)]:
        cv.column(["filla1", "filla2"], gap0 + g, Y + 1)
    for g in [*range(a + 1, C + 1), *range(C + 2, C + 1 + b)]:
        cv.column(["fillb1", "fillb2", "fillb3"], gap0 + g, Y + 1)

    # below the exposed south word; columns c, C+1 and C+1+d are taken by
    # the handles and box of the lower neighbours
    for g in [*range(1, c), *range(C + 2 + d, U + 1)]:
        cv.column(["fillc1", "fillc2"], gap0 + g, Y - 2)
    for g in [*range(c + 1, C + 1), *range(C + 2, C + 1 + d)]:
        cv.column(["filld1", "filld2", "filld3"], gap0 + g, Y - 3)


def simulate(ts: Tileset, tt: TorusTiling, enc: EncodedBarset | None = None) -> BarPatch:
    """Build the bar tiling that mirrors a periodic tiling of ``ts``.

    The result is a torus (check it with ``validate_bar_patch(..., wrap=True)``)
    of width ``(4A + 6 + 2C) * L`` and height ``12 * L`` with ``L = lcm(p, q)``.
    """
    if validate_patch(tt.as_patch(), ts, wrap=True):
        raise ValueError("invalid input torus")
    enc = enc or encode44(ts)
    p = enc.params
    H = p.arm_len + p.C + 2
    L = lcm(tt.p, tt.q)
    cv = _Canvas(enc, 2 * H * L, 12 * L)
    for u in range(2 * L):
        for v in range(u % 2, 2 * L, 2):
            i, j = (u - v) // 2, (u + v) // 2
            idx = tt[i, j]
            _block(cv, -H * u, 6 * v, idx, ts[idx])
    return cv.patch()
