from __future__ import annotations

import random

import pytest

from wangbars import (Barset, LabeledGraph, contract, eliminate_cycle_classes, from_graph,
                      iter_contract, prune_unreturnable, scc, to_graph, wang_to_bars)
from wangbars.core import parameter, rotate
from wangbars.graph import Edge

from fixtures import example_i, kari_culik, ts
from oracles import reachability_classes

GRAPH_I = {("3", "1", "2", "3"), ("1", "3", "2", "2"), ("5", "3", "2", "3"), ("6", "2", "1", "2"),
           ("4", "2", "1", "3"), ("4", "6", "1", "2"), ("2", "4", "4", "1"), ("4", "7", "3", "2"),
           ("8", "7", "2", "1"), ("9", "8", "2", "4"), ("9", "8", "4", "1"), ("7", "9", "3", "2")}


def _edge_set(g):
    return {(e.src, e.dst, "".join(e.north), "".join(e.south)) for e in g.edges}


def _weak_components(g):
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v

    for e in g.edges:
        parent[find(e.src)] = find(e.dst)
    return len({find(v) for v in g.vertices})


def test_kari_culik_graph():
    g = to_graph(kari_culik())
    assert len(g.vertices) == 5 and len(g.edges) == 13
    assert g.is_one_labeled
    assert _weak_components(g) == 2


def test_single_tile_graph():
    g = to_graph(ts(("a", "b", "n", "s")))
    assert g.vertices == {"a", "b"}
    assert [(e.src, e.dst, e.north, e.south, e.provenance) for e in g.edges] == \
        [("b", "a", ("n",), ("s",), (0,))]


def test_example_graph():
    g = to_graph(example_i())
    assert len(g.vertices) == 9 and len(g.edges) == 12
    assert _edge_set(g) == GRAPH_I


def test_from_graph_roundtrip():
    t = kari_culik()
    g = to_graph(t)
    bars = from_graph(g)
    assert len(bars) == 13
    assert _edge_set(to_graph(bars)) == _edge_set(g)
    assert len(from_graph(LabeledGraph(set(), []))) == 0


def test_from_graph_merges_identical_labels():
    e = Edge("u", "u", ("a",), ("a",), (0,))
    g = LabeledGraph({"u"}, [e, e._replace(provenance=(1,))])
    assert len(from_graph(g)) == 1


def test_scc_examples():
    part = scc(to_graph(example_i()))
    assert set(part.classes) == {frozenset("13"), frozenset("246"), frozenset("789"), frozenset("5")}
    assert part.class_of["1"] == part.class_of["3"]
    assert len(scc(LabeledGraph({"u"}, [])).classes) == 1
    two = LabeledGraph({"u", "v"}, [Edge("u", "v", ("a",), ("a",), (0,)),
                                    Edge("v", "u", ("a",), ("a",), (1,))])
    assert scc(two).classes == (frozenset("uv"),)


def _random_graph(rng, nv, ne):
    vs = [f"v{i}" for i in range(nv)]
    edges = [Edge(rng.choice(vs), rng.choice(vs), (rng.choice("ab"),), (rng.choice("ab"),), (k,))
             for k in range(ne)]
    return LabeledGraph(vs, edges)


def test_scc_matches_reachability():
    rng = random.Random(11)
    for _ in range(300):
        g = _random_graph(rng, rng.randint(1, 8), rng.randint(0, 14))
        got = set(scc(g).classes)
        assert got == reachability_classes(g.vertices, [(e.src, e.dst) for e in g.edges])


def test_scc_deep_path():
    n = 5000
    edges = [Edge(f"{i:05}", f"{i + 1:05}", ("a",), ("a",), (i,)) for i in range(n)]
    edges.append(Edge(f"{n:05}", "00000", ("a",), ("a",), (n,)))
    g = LabeledGraph({f"{i:05}" for i in range(n + 1)}, edges)
    assert len(scc(g)) == 1


def test_prune_example():
    g, removed = prune_unreturnable(to_graph(example_i()))
    assert {(e.src, e.dst) for e in removed} == {("5", "3"), ("4", "7")}
    assert "5" not in g.vertices
    assert _edge_set(g) == GRAPH_I - {("5", "3", "2", "3"), ("4", "7", "3", "2")}


def test_prune_trivial():
    g = to_graph(kari_culik())
    pruned, removed = prune_unreturnable(g)
    # each component of the Kari-Culik graph is strongly connected
    assert removed == () and pruned == g
    single = LabeledGraph({"u", "v"}, [Edge("u", "v", ("a",), ("a",), (0,))])
    pruned, removed = prune_unreturnable(single)
    assert len(removed) == 1 and pruned.vertices == frozenset() and pruned.edges == ()


def test_eliminate_example():
    g, _ = prune_unreturnable(to_graph(example_i()))
    g3, removed = eliminate_cycle_classes(g)
    assert removed == (frozenset("13"),)
    assert g3.vertices == frozenset("246789")
    assert len(g3.edges) == 8


def test_contract_example_steps():
    g, _ = prune_unreturnable(to_graph(example_i()))
    g, _ = eliminate_cycle_classes(g)
    steps = list(iter_contract(g))
    assert [u for u, _ in steps] == ["2", "6", "7", "8"]
    final = steps[-1][1]
    assert final.vertices == frozenset("49")
    assert _edge_set(final) == {("4", "4", "114", "221"), ("4", "4", "14", "31"),
                                ("9", "9", "223", "412"), ("9", "9", "423", "112")}


def test_contract_requires_pruned_graph():
    with pytest.raises(ValueError, match="not pruned"):
        contract(to_graph(example_i()))
    g, _ = prune_unreturnable(to_graph(example_i()))
    with pytest.raises(ValueError, match="cycle"):
        contract(g)


def _random_pruned(rng):
    """Random graph, pruned and without cycle classes; may be empty."""
    g = _random_graph(rng, rng.randint(1, 7), rng.randint(1, 16))
    g, _ = prune_unreturnable(g)
    g, _ = eliminate_cycle_classes(g)
    return g


def test_contraction_invariants_random():
    rng = random.Random(7)
    seen = 0
    for _ in range(300):
        g = _random_pruned(rng)
        if not g.edges:
            continue
        seen += 1
        before = len(g.edges) - len(g.vertices)
        for _, h in iter_contract(g):
            assert len(h.edges) - len(h.vertices) == before
        final = contract(g)
        part = scc(final)
        for c in part.classes:
            assert sum(1 for e in final.edges if e.src in c) >= 2 * len(c)
    assert seen > 100


def test_provenance_spells_labels():
    t = example_i()
    out = wang_to_bars(t)
    rot = rotate(t, out.rotation)
    for bar, prov in zip(out.barset, out.provenance):
        assert tuple(rot[i].north for i in prov) == bar.north
        assert tuple(rot[i].south for i in prov) == bar.south


def test_wang_to_bars_example():
    out = wang_to_bars(example_i())
    got = {(b.east, b.west, "".join(b.north), "".join(b.south)) for b in out.barset}
    assert got == {("4", "4", "114", "221"), ("4", "4", "14", "31"),
                   ("9", "9", "223", "412"), ("9", "9", "423", "112")}
    assert out.removed_classes == (frozenset("13"),)
    assert not out.complete
    assert out.contracted == ("2", "6", "7", "8")


def test_wang_to_bars_bound_random():
    rng = random.Random(19)
    for _ in range(300):
        tiles = set()
        n = rng.randint(1, 7)
        while len(tiles) < n:
            tiles.add(tuple(rng.choice("0123") for _ in range(4)))
        t = ts(*sorted(tiles))
        out = wang_to_bars(t)
        assert len(out.barset) <= 2 * parameter(t).parameter
        assert isinstance(out.barset, Barset)


def test_dot_export():
    dot = to_graph(ts(("a", "b", "n", "s"))).to_dot()
    assert '"b" -> "a" [label="(n,s)"];' in dot
    assert dot.startswith("digraph")
