"""Deciders: periodic search on tori, patch refutation, and their dovetail.

Every search is a generator that yields once per node expansion (one
candidate tile placed) and returns its result, so the deciders can
interleave searches fairly and charge them against a step quota.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import lcm
from typing import Iterator

from .core import (BarPatch, Barset, Patch, SplitResult, Tileset, collapse_patch,
                   expand_bar_patch, parameter, split_bars, unrotate_patch,
                   validate_bar_patch, validate_patch)
from .graph import wang_to_bars

DEFAULT_SAFETY_QUOTA = 200_000_000


class Outcome(enum.Enum):
    TILES = "TILES"
    NO_TILING = "NO_TILING"
    UNKNOWN = "UNKNOWN"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class TorusTiling:
    """A p x q patch whose adjacencies also match across both wrap-around seams."""

    p: int
    q: int
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.q or any(len(r) != self.p for r in rows):
            raise ValueError("torus cells do not match its periods")

    def __getitem__(self, xy):
        x, y = xy
        return self.rows[y % self.q][x % self.p]

    def as_patch(self) -> Patch:
        return Patch(self.p, self.q, self.rows)

    def unrolled(self, rx: int = 1, ry: int = 1) -> Patch:
        return Patch.from_function(self.p * rx, self.q * ry, lambda x, y: self[x, y])

    @classmethod
    def from_patch(cls, p: Patch) -> "TorusTiling":
        return cls(p.width, p.height, p.rows)


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    witness: TorusTiling | None = None
    refuted_size: int | None = None
    steps: int = 0
    bar_witness: BarPatch | None = None

    def summary(self) -> str:
        if self.outcome is Outcome.TILES:
            w = self.witness
            return f"torus {w.p}x{w.q} after {self.steps} steps"
        if self.outcome is Outcome.NO_TILING:
            return f"no valid {self.refuted_size}x{self.refuted_size} patch after {self.steps} steps"
        return f"budget exhausted after {self.steps} steps"


# ----------------------------------------------------------------------------
# backtracking kernel


class _Tables:
    """Tile sides as small integers plus candidate lists keyed by constraints."""

    def __init__(self, ts: Tileset):
        ids = {}
        intern = lambda c: ids.setdefault(c, len(ids))  # noqa: E731
        self.n = len(ts)
        self.east = [intern(t.east) for t in ts]
        self.west = [intern(t.west) for t in ts]
        self.north = [intern(t.north) for t in ts]
        self.south = [intern(t.south) for t in ts]
        cand = {}
        for i in range(self.n):
            w, s = self.west[i], self.south[i]
            for key in ((None, None), (w, None), (None, s), (w, s)):
                cand.setdefault(key, []).append(i)
        self.cand = {k: tuple(v) for k, v in cand.items()}


def _backtrack(tb: _Tables, width: int, height: int, wrap: bool):
    """Row-major depth-first search; returns the lexicographically least grid or None."""
    total = width * height
    grid = [0] * total
    options = [()] * total
    cursor = [0] * total
    east, west, north, south = tb.east, tb.west, tb.north, tb.south

    def candidates(k):
        x, y = k % width, k // width
        w_req = east[grid[k - 1]] if x > 0 else None
        s_req = north[grid[k - width]] if y > 0 else None
        opts = tb.cand.get((w_req, s_req), ())
        if wrap:
            if x == width - 1:
                if width == 1:
                    opts = tuple(t for t in opts if east[t] == west[t])
                else:
                    first = west[grid[k - x]]
                    opts = tuple(t for t in opts if east[t] == first)
            if y == height - 1:
                if height == 1:
                    opts = tuple(t for t in opts if north[t] == south[t])
                else:
                    bottom = south[grid[x]]
                    opts = tuple(t for t in opts if north[t] == bottom)
        return opts

    k = 0
    options[0] = candidates(0)
    while k >= 0:
        if cursor[k] >= len(options[k]):
            cursor[k] = 0
            k -= 1
            continue
        grid[k] = options[k][cursor[k]]
        cursor[k] += 1
        yield
        if k == total - 1:
            return [grid[y * width:(y + 1) * width] for y in range(height)]
        k += 1
        options[k] = candidates(k)
        cursor[k] = 0
    return None


def _run(gen):
    """Drive a search generator to completion; returns (result, steps)."""
    steps = 0
    while True:
        try:
            next(gen)
        except StopIteration as stop:
            return stop.value, steps
        steps += 1


def _torus_sizes(max_period: int | None) -> Iterator[tuple]:
    area = 1
    while max_period is None or area <= max_period * max_period:
        for p in range(1, area + 1):
            if area % p:
                continue
            q = area // p
            if max_period is None or (p <= max_period and q <= max_period):
                yield p, q
        area += 1


def _torus_sizes_bounded(p_max, q_max) -> list:
    sizes = [(p, q) for p in range(1, p_max + 1) for q in range(1, q_max + 1)]
    return sorted(sizes, key=lambda pq: (pq[0] * pq[1], pq[0]))


def find_torus(ts: Tileset, p_max: int, q_max: int) -> TorusTiling | None:
    """Least valid torus with p <= p_max, q <= q_max, by (area, p, cells)."""
    if p_max < 1 or q_max < 1:
        raise ValueError("periods must be >= 1")
    tb = _Tables(ts)
    for p, q in _torus_sizes_bounded(p_max, q_max):
        grid, _ = _run(_backtrack(tb, p, q, wrap=True))
        if grid is not None:
            return TorusTiling(p, q, grid)
    return None


def find_torus_of_size(ts: Tileset, p: int, q: int) -> TorusTiling | None:
    grid, _ = _run(_backtrack(_Tables(ts), p, q, wrap=True))
    return None if grid is None else TorusTiling(p, q, grid)


def find_patch(ts: Tileset, n: int) -> Patch | None:
    """Any valid n x n patch; None proves the tileset cannot tile the plane."""
    if n < 1:
        raise ValueError("patch size must be >= 1")
    grid, _ = _run(_backtrack(_Tables(ts), n, n, wrap=False))
    return None if grid is None else Patch(n, n, grid)


# ----------------------------------------------------------------------------
# dovetailing


def _torus_arm(tb, max_period):
    for p, q in _torus_sizes(max_period):
        grid = yield from _backtrack(tb, p, q, wrap=True)
        if grid is not None:
            return TorusTiling(p, q, grid)
    return None


def _patch_arm(tb, max_patch):
    n = 1
    while max_patch is None or n <= max_patch:
        grid = yield from _backtrack(tb, n, n, wrap=False)
        if grid is None:
            return n
        n += 1
    return None


def decide(ts: Tileset, budget: int = 10**6, *, max_period: int | None = None,
           max_patch: int | None = None) -> Verdict:
    """Interleave torus search and patch refutation, one node expansion each in turn.

    The schedule does not depend on ``budget``, so a definite verdict reached
    with some quota is reached identically with any larger quota; a verdict
    reporting ``steps`` node expansions is already reached with quota ``steps``.
    """
    tb = _Tables(ts)
    arms = [_torus_arm(tb, max_period), _patch_arm(tb, max_patch)]
    alive = [True, True]
    steps = 0
    while any(alive):
        for i, arm in enumerate(arms):
            if not alive[i]:
                continue
            try:
                next(arm)
            except StopIteration as stop:
                if stop.value is None:
                    alive[i] = False
                elif i == 0:
                    return Verdict(Outcome.TILES, witness=stop.value, steps=steps)
                else:
                    return Verdict(Outcome.NO_TILING, refuted_size=stop.value, steps=steps)
                continue
            if steps == budget:
                return Verdict(Outcome.UNKNOWN, steps=steps)
            steps += 1
    return Verdict(Outcome.UNKNOWN, steps=steps)


def _with_bar_witness(v: Verdict, split: SplitResult) -> Verdict:
    if v.outcome is not Outcome.TILES:
        return v
    bp = collapse_patch(v.witness.as_patch(), split)
    return Verdict(v.outcome, v.witness, v.refuted_size, v.steps, bp)


def decide_bars(bs: Barset, budget: int = 10**6, *, max_period: int | None = None,
                max_patch: int | None = None) -> Verdict:
    """Decide a barset through its split tileset; the torus is mapped back to bars.

    ``witness`` is the torus over ``split_bars(bs).tileset``; ``bar_witness``
    is the same tiling as a wrap-valid :class:`BarPatch` over ``bs``.
    """
    if len(bs) == 0:
        raise ValueError("empty input")
    split = split_bars(bs)
    v = decide(split.tileset, budget, max_period=max_period, max_patch=max_patch)
    return _with_bar_witness(v, split)


# ----------------------------------------------------------------------------
# two bars


def _row_types(bs: Barset):
    """Bar sequences that rows are forced to repeat, or None if rows are unconstrained.

    With at most two bars, unless all east/west colors coincide, every
    bi-infinite row is a repetition of a single bar or of the pair.
    """
    bars = bs.bars
    link = lambda i, j: bars[i].east == bars[j].west  # noqa: E731
    if len(bars) == 1:
        return [(0,)] if link(0, 0) else []
    if all(link(i, j) for i in range(2) for j in range(2)):
        return None
    types = [(i,) for i in range(2) if link(i, i)]
    if link(0, 1) and link(1, 0):
        types.append((0, 1))
    return types


def _row_word(bs, seq, side):
    return tuple(c for i in seq for c in getattr(bs[i], side))


def _find_cycle(succ: dict) -> list | None:
    """Some cycle of the state graph (as a list of states), smallest start first."""
    for start in sorted(succ):
        parent = {}
        frontier = [start]
        while frontier:
            nxt = []
            for s in frontier:
                for t in succ[s]:
                    if t == start:
                        path = [s]
                        while path[-1] != start:
                            path.append(parent[path[-1]])
                        return path[::-1]
                    if t not in parent:
                        parent[t] = s
                        nxt.append(t)
            frontier = nxt
    return None


def _periodic_rows(bs: Barset, types: list) -> BarPatch | None:
    """Exact search over forced periodic rows: states are (row type, horizontal offset)."""
    norths = [_row_word(bs, seq, "north") for seq in types]
    souths = [_row_word(bs, seq, "south") for seq in types]
    periods = [len(w) for w in norths]
    states = [(t, s) for t in range(len(types)) for s in range(periods[t])]

    def fits(lower, upper):
        (t, s), (u, r) = lower, upper
        span = lcm(periods[t], periods[u])
        return all(norths[t][(x - s) % periods[t]] == souths[u][(x - r) % periods[u]]
                   for x in range(span))

    succ = {a: [b for b in states if fits(a, b)] for a in states}
    cycle = _find_cycle(succ)
    if cycle is None:
        return None
    width = lcm(*(periods[t] for t, _ in cycle))
    bar_rows, pos_rows = [], []
    for t, s in cycle:
        layout = [(i, j) for i in types[t] for j in range(1, len(bs[i]) + 1)]
        row = [layout[(x - s) % periods[t]] for x in range(width)]
        bar_rows.append([b for b, _ in row])
        pos_rows.append([p for _, p in row])
    return BarPatch(width, len(cycle), bar_rows, pos_rows)


def _refute(tb: _Tables, quota: int) -> tuple:
    arm = _patch_arm(tb, None)
    steps = 0
    while True:
        try:
            next(arm)
        except StopIteration as stop:
            return stop.value, steps
        steps += 1
        if steps > quota:
            raise RuntimeError("safety quota exhausted while refuting")


def decide_two_bars(bs: Barset, safety_quota: int = DEFAULT_SAFETY_QUOTA) -> Verdict:
    """Total decision procedure for one or two bars.

    Two bars tile the plane iff they tile it periodically, so the dovetail
    always halts; ``safety_quota`` only guards against bugs.
    """
    if not 1 <= len(bs) <= 2:
        raise ValueError("not a two-bar instance")
    split = split_bars(bs)
    types = _row_types(bs)
    if types is None:
        v = decide_bars(bs, safety_quota)
        if v.outcome is Outcome.UNKNOWN:
            raise RuntimeError("safety quota exhausted on a two-bar instance")
        return v
    bp = _periodic_rows(bs, types) if types else None
    if bp is not None:
        assert not validate_bar_patch(bp, bs, wrap=True)
        torus = TorusTiling.from_patch(expand_bar_patch(bp, split))
        return Verdict(Outcome.TILES, witness=torus, bar_witness=bp)
    n, steps = _refute(_Tables(split.tileset), safety_quota)
    return Verdict(Outcome.NO_TILING, refuted_size=n, steps=steps)


def decide_low_parameter(ts: Tileset, safety_quota: int = DEFAULT_SAFETY_QUOTA) -> Verdict:
    """Total decision procedure for tilesets of parameter at most one."""
    if parameter(ts).parameter > 1:
        raise ValueError("termination not guaranteed")
    outcome = wang_to_bars(ts)
    if len(outcome.barset):
        v = decide_two_bars(outcome.barset, safety_quota)
        if v.outcome is Outcome.TILES:
            bp = v.bar_witness
            rotated = Patch.from_function(
                bp.width, bp.height,
                lambda x, y: outcome.provenance[bp.bar_at(x, y)][bp.pos_at(x, y) - 1])
            patch = unrotate_patch(rotated, outcome.rotation)
            assert not validate_patch(patch, ts, wrap=True)
            return Verdict(Outcome.TILES, witness=TorusTiling.from_patch(patch), steps=v.steps)
    v = decide(ts, safety_quota)
    if v.outcome is Outcome.UNKNOWN:
        raise RuntimeError("safety quota exhausted on a parameter <= 1 tileset")
    return v
