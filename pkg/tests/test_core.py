from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wangbars import (BarPatch, Barset, Patch, Tileset, WangBar, WangTile, canonical_west,
                      collapse_patch, expand_bar_patch, parameter, rotate, split_bars,
                      validate_bar_patch, validate_patch)
from wangbars.core import seam_color, unrotate_patch, west_rotation

from fixtures import bs, kari_culik, three_bars, ts


def test_color_tokens():
    with pytest.raises(ValueError):
        WangTile("a", "b", "c", "")
    with pytest.raises(ValueError):
        WangTile("a b", "b", "c", "d")
    assert WangTile("ab", "Ab", "c", "d").west != WangTile("ab", "ab", "c", "d").west


def test_bar_invariants():
    with pytest.raises(ValueError, match="unequal word lengths"):
        WangBar("0", "0", ["a"], ["a", "b"])
    with pytest.raises(ValueError):
        WangBar("0", "0", [], [])
    assert len(WangBar("0", "0", "abc", "xyz")) == 3


def test_sets_reject_duplicates():
    with pytest.raises(ValueError, match="duplicate"):
        ts((1, 1, 1, 1), (1, 1, 1, 1))
    with pytest.raises(ValueError, match="duplicate"):
        bs((0, 0, "ab", "ab"), (0, 0, "ab", "ab"))


def test_parameter_examples():
    rep = parameter(kari_culik())
    assert (rep.n, rep.c, rep.parameter) == (13, 5, 8)
    assert rep.side_counts == (5, 5, 4, 4)
    assert str(rep) == "n=13 c=5 parameter=8"
    assert parameter(ts(("a", "a", "a", "a")))[1:] == ((1, 1, 1, 1), 1, 0)
    with pytest.raises(ValueError, match="empty input"):
        parameter(Tileset())


def test_rotation_convention():
    t = ts(("e", "w", "n", "s"))
    assert rotate(t, 0) == t
    assert rotate(t, 1)[0].as_tuple() == ("n", "s", "w", "e")
    assert rotate(t, 4) == t
    assert parameter(rotate(kari_culik(), 1)).parameter == 8


def test_canonical_west():
    assert west_rotation(kari_culik()) == 0
    assert canonical_west(kari_culik()) == kari_culik()
    three_north = ts(("a", "a", 1, "a"), ("a", "a", 2, "a"), ("a", "a", 3, "a"))
    k = west_rotation(three_north)
    assert parameter(canonical_west(three_north)).side_counts[1] == 3
    assert k == 3


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(*[st.sampled_from("abc")] * 4), min_size=1, max_size=8, unique=True),
       st.integers(0, 7))
def test_parameter_rotation_invariant(tiles, k):
    t = Tileset(tiles)
    assert parameter(rotate(t, k)).parameter == parameter(t).parameter


def test_validate_patch_examples():
    t = ts((2, 3, 1, 2), (3, 2, 1, 2), (1, 1, 2, 1))
    # bottom row t3 t3, top row t1 t2
    p = Patch(2, 2, [[2, 2], [0, 1]])
    assert validate_patch(p, t) == []
    assert validate_patch(Patch(1, 1, [[0]]), t) == []
    bad = ts((1, 2, "n", "s"))
    v = validate_patch(Patch(2, 1, [[0, 0]]), bad)
    assert len(v) == 1 and v[0].kind == "east/west mismatch"
    assert v[0].cell == (0, 0) and v[0].other == (1, 0)
    with pytest.raises(IndexError):
        validate_patch(Patch(1, 1, [[5]]), t)


def test_validate_patch_wrap():
    t = ts((1, 2, "n", "n"), (2, 1, "n", "n"))
    p = Patch(2, 1, [[0, 1]])
    assert validate_patch(p, t, wrap=True) == []
    assert len(validate_patch(Patch(3, 1, [[0, 1, 0]]), t, wrap=True)) == 1


def fragment():
    """The drawn fragment of a tiling by bars A, B, C (9 cells wide, 4 rows)."""
    A, B, C = 0, 1, 2
    rows = [
        [(A, 1), (A, 2), (A, 3)] * 3,
        [(C, 3), (C, 4), (B, 1), (B, 2), (C, 1), (C, 2), (C, 3), (C, 4), (B, 1)],
        [(A, 3), (A, 1), (A, 2), (A, 3), (A, 1), (A, 2), (A, 3), (A, 1), (A, 2)],
        [(B, 1), (B, 2), (C, 1), (C, 2), (C, 3), (C, 4), (B, 1), (B, 2), (C, 1)],
    ]
    bp = BarPatch(9, 4, [[c[0] for c in r] for r in rows], [[c[1] for c in r] for r in rows])
    return three_bars(), bp


def test_validate_bar_patch_examples():
    bars, bp = fragment()
    assert validate_bar_patch(bp, bars) == []
    one = Barset([WangBar("0", "0", "abcd", "abcd")])
    assert validate_bar_patch(BarPatch(4, 1, [[0] * 4], [[1, 2, 3, 4]]), one) == []
    jump = BarPatch(4, 1, [[0] * 4], [[1, 3, 4, 1]])
    kinds = {v.kind for v in validate_bar_patch(jump, one)}
    assert "interior continuation" in kinds


def test_validate_bar_patch_truncated_edges():
    one = Barset([WangBar("0", "0", "abcd", "abcd")])
    # a window may start in the middle of a bar and end before it is finished
    assert validate_bar_patch(BarPatch(3, 1, [[0] * 3], [[3, 4, 1]]), one) == []
    assert [v.kind for v in validate_bar_patch(BarPatch(1, 1, [[0]], [[5]]), one)] == ["position range"]


def test_validate_bar_patch_colors():
    two = bs((0, 0, "a", "b"), (1, 0, "b", "c"))
    # bar 0 ends with east 0, bar 1 starts with west 0: fine; bar 1 east 1 != west 0
    bp = BarPatch(3, 1, [[0, 1, 0]], [[1, 1, 1]])
    assert [v.kind for v in validate_bar_patch(bp, two)] == ["horizontal colors"]
    stacked = BarPatch(1, 2, [[0], [0]], [[1], [1]])
    assert [v.kind for v in validate_bar_patch(stacked, two)] == ["vertical colors"]
    # bar 1 (north b) below bar 0 (south b)
    assert validate_bar_patch(BarPatch(1, 2, [[1], [0]], [[1], [1]]), two) == []


# exhaustive: validate agrees with a direct reading of the definition
def _tiles_ok(p, t):
    for (x, y), v in p.cells():
        if x + 1 < p.width and t[v].east != t[p[x + 1, y]].west:
            return False
        if y + 1 < p.height and t[v].north != t[p[x, y + 1]].south:
            return False
    return True


def test_validate_patch_exhaustive():
    rng = random.Random(3)
    for _ in range(12):
        tiles = set()
        while len(tiles) < 2:
            tiles.add(tuple(rng.choice("01") for _ in range(4)))
        t = Tileset(sorted(tiles))
        for w, h in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2), (3, 3)]:
            for cells in itertools.product(range(2), repeat=w * h):
                p = Patch(w, h, [cells[y * w:(y + 1) * w] for y in range(h)])
                assert (validate_patch(p, t) == []) == _tiles_ok(p, t)


def _bars_ok(bp, bars):
    for y in range(bp.height):
        for x in range(bp.width):
            b, pos = bars[bp.bar_at(x, y)], bp.pos_at(x, y)
            if not 0 < pos <= len(b):
                return False
    for y in range(bp.height):
        for x in range(bp.width):
            b, pos = bars[bp.bar_at(x, y)], bp.pos_at(x, y)
            if x + 1 < bp.width:
                nb, npos = bars[bp.bar_at(x + 1, y)], bp.pos_at(x + 1, y)
                if pos < len(b):
                    if (bp.bar_at(x + 1, y), npos) != (bp.bar_at(x, y), pos + 1):
                        return False
                elif npos != 1 or b.east != nb.west:
                    return False
            if y + 1 < bp.height:
                ab, apos = bars[bp.bar_at(x, y + 1)], bp.pos_at(x, y + 1)
                if b.north[pos - 1] != ab.south[apos - 1]:
                    return False
    return True


def test_validate_bar_patch_exhaustive():
    bars = bs((0, 0, "ab", "ba"), (0, 1, "a", "b"))
    cells = [(0, 1), (0, 2), (1, 1), (0, 3)]
    for w, h in [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2), (2, 3)]:
        for choice in itertools.product(range(len(cells)), repeat=w * h):
            rows = [[cells[choice[y * w + x]] for x in range(w)] for y in range(h)]
            bp = BarPatch(w, h, [[c[0] for c in r] for r in rows], [[c[1] for c in r] for r in rows])
            assert (validate_bar_patch(bp, bars) == []) == _bars_ok(bp, bars)


def test_split_examples():
    unit = bs((1, 2, "a", "b"), (2, 1, "c", "d"))
    split = split_bars(unit)
    assert [t.as_tuple() for t in split.tileset] == [("1", "2", "a", "b"), ("2", "1", "c", "d")]
    one = bs((0, 0, "abc", "xyz"))
    tiles, prov = split_bars(one)
    f1, f2 = seam_color(0, 1), seam_color(0, 2)
    assert [t.as_tuple() for t in tiles] == [(f1, "0", "a", "x"), (f2, f1, "b", "y"), ("0", f2, "c", "z")]
    assert prov == ((0, 1), (0, 2), (0, 3))


def test_split_three_bars():
    split = split_bars(three_bars())
    rep = parameter(split.tileset)
    assert (rep.n, rep.c, rep.parameter) == (9, 8, 1)
    west = {t.west for t in split.tileset}
    assert west >= {"0", "1"} and len(west) == 8


bar_strategy = st.lists(
    st.integers(1, 5).flatmap(lambda k: st.tuples(
        st.sampled_from("0123"), st.sampled_from("0123"),
        st.lists(st.sampled_from("0123"), min_size=k, max_size=k),
        st.lists(st.sampled_from("0123"), min_size=k, max_size=k))),
    min_size=1, max_size=6, unique_by=lambda b: (b[0], b[1], tuple(b[2]), tuple(b[3]))),


@settings(max_examples=100, deadline=None)
@given(*bar_strategy)
def test_split_parameter_bound(bars):
    b = Barset(bars)
    assert parameter(split_bars(b).tileset).parameter <= len(b) - 1


def test_split_roundtrip_witness():
    bars, bp = fragment()
    split = split_bars(bars)
    p = expand_bar_patch(bp, split)
    assert validate_patch(p, split.tileset) == validate_bar_patch(bp, bars) == []
    assert collapse_patch(p, split) == bp


def test_unrotate_patch_inverts_rotation():
    p = Patch(3, 2, [[0, 1, 2], [1, 0, 2]])
    for k in range(4):
        assert unrotate_patch(_rotate_view(p, k), k) == p


def _rotate_view(p, k):
    # inverse of unrotate_patch for one turn: original (X, Y) -> rotated (Y, W-1-X)
    for _ in range(k % 4):
        w, src = p.width, p
        p = Patch.from_function(p.height, w, lambda x, y, src=src, w=w: src[w - 1 - y, x])
    return p


def test_rotated_tiling_stays_valid():
    t = ts((2, 3, 1, 2), (3, 2, 1, 2), (1, 1, 2, 1))
    p = Patch(2, 2, [[2, 2], [0, 1]])
    for k in range(4):
        assert validate_patch(_rotate_view(p, k), rotate(t, k), wrap=True) == []
