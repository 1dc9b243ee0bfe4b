"""Labeled-graph view of tilesets and barsets, and the tileset -> barset reduction.

Vertices are horizontal colors.  A tile (or bar) with west color ``u`` and
east color ``v`` is an edge ``u -> v`` labeled by its (north, south) words, so
a row of a tiling is a bi-infinite walk.  Every edge also remembers which
original tiles it is made of, which lets bar witnesses be expanded back into
tile witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterator, NamedTuple

from .core import Barset, Tileset, WangBar, parameter, rotate, west_rotation


class Edge(NamedTuple):
    src: str
    dst: str
    north: tuple
    south: tuple
    provenance: tuple  # original tile index for each letter of the label

    def label(self) -> str:
        return "({},{})".format(",".join(self.north), ",".join(self.south))


@dataclass(frozen=True)
class LabeledGraph:
    vertices: frozenset
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        for e in self.edges:
            if not (len(e.north) == len(e.south) == len(e.provenance) >= 1):
                raise ValueError(f"malformed edge label {e}")
            if e.src not in self.vertices or e.dst not in self.vertices:
                raise ValueError(f"edge {e.src}->{e.dst} leaves the vertex set")

    @property
    def is_one_labeled(self) -> bool:
        return all(len(e.north) == 1 for e in self.edges)

    def out_degree(self, v) -> int:
        return sum(1 for e in self.edges if e.src == v)

    def successors(self, v) -> Iterator[str]:
        return (e.dst for e in self.edges if e.src == v)

    def to_dot(self, name: str = "G") -> str:
        lines = [f"digraph {name} {{"]
        for v in sorted(self.vertices):
            lines.append(f'  "{v}";')
        for e in self.edges:
            lines.append(f'  "{e.src}" -> "{e.dst}" [label="{e.label()}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def to_graph(items) -> LabeledGraph:
    """Graph of a tileset (1-labeled) or of a barset (word-labeled).

    Provenance refers to positions in ``items``.
    """
    edges, vertices = [], set()
    for i, it in enumerate(items):
        north = it.north if isinstance(it, WangBar) else (it.north,)
        south = it.south if isinstance(it, WangBar) else (it.south,)
        vertices.update((it.west, it.east))
        edges.append(Edge(it.west, it.east, tuple(north), tuple(south), (i,) * len(north)))
    return LabeledGraph(vertices, edges)


def from_graph(g: LabeledGraph) -> Barset:
    """One bar per edge.  Parallel edges with identical labels give a single bar."""
    return Barset(_unique_bars(g)[0])


def _unique_bars(g):
    bars, kept, seen = [], [], set()
    for e in g.edges:
        bar = WangBar(e.dst, e.src, e.north, e.south)
        if bar in seen:
            continue
        seen.add(bar)
        bars.append(bar)
        kept.append(e)
    return bars, kept


# ----------------------------------------------------------------------------
# strongly connected components


@dataclass(frozen=True)
class ClassPartition:
    classes: tuple  # tuple of frozensets, ordered by smallest member
    class_of: dict

    def __len__(self):
        return len(self.classes)


def scc(g: LabeledGraph) -> ClassPartition:
    """Tarjan's algorithm, iterative so deep graphs do not hit the recursion limit."""
    adj = {v: [] for v in g.vertices}
    for e in g.edges:
        adj[e.src].append(e.dst)

    index, low, on_stack = {}, {}, set()
    stack, found = [], []
    counter = 0
    for root in sorted(g.vertices):
        if root in index:
            continue
        work = [(root, iter(adj[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(adj[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                found.append(frozenset(comp))
    classes = tuple(sorted(found, key=min))
    class_of = {v: i for i, c in enumerate(classes) for v in c}
    return ClassPartition(classes, class_of)


def prune_unreturnable(g: LabeledGraph):
    """Drop every edge u -> v with no path back from v to u, then isolated vertices.

    Returns ``(pruned graph, removed edges)``.
    """
    part = scc(g)
    kept, removed = [], []
    for e in g.edges:
        (kept if part.class_of[e.src] == part.class_of[e.dst] else removed).append(e)
    used = {e.src for e in kept} | {e.dst for e in kept}
    return LabeledGraph(used, kept), tuple(removed)


def _cycle_classes(g: LabeledGraph, part: ClassPartition) -> list:
    outdeg = {v: 0 for v in g.vertices}
    for e in g.edges:
        outdeg[e.src] += 1
    return [c for c in part.classes if all(outdeg[v] == 1 for v in c)]


def eliminate_cycle_classes(g: LabeledGraph):
    """Remove the classes in which every vertex has outdegree exactly one.

    Returns ``(graph, removed classes)``.  This step does not preserve
    tileability on its own: a removed class may be the only way to tile.
    """
    part = scc(g)
    removed = _cycle_classes(g, part)
    gone = set().union(*removed) if removed else set()
    edges = [e for e in g.edges if e.src not in gone]
    return LabeledGraph(g.vertices - gone, edges), tuple(removed)


def _check_contractible(g: LabeledGraph, part: ClassPartition):
    for e in g.edges:
        if part.class_of[e.src] != part.class_of[e.dst]:
            raise ValueError(f"graph is not pruned: edge {e.src}->{e.dst} joins two classes")
    if _cycle_classes(g, part):
        raise ValueError("graph still contains a class that is a cycle")


def iter_contract(g: LabeledGraph) -> Iterator[tuple]:
    """Yield ``(contracted vertex, graph)`` after every contraction step."""
    part = scc(g)
    _check_contractible(g, part)
    while True:
        outdeg = {v: 0 for v in g.vertices}
        edges_in_class = [0] * len(part)
        for e in g.edges:
            outdeg[e.src] += 1
            edges_in_class[part.class_of[e.src]] += 1
        sparse = {i for i, c in enumerate(part.classes) if edges_in_class[i] < 2 * len(c)}
        if not sparse:
            return
        u = min(v for v in g.vertices if outdeg[v] == 1 and part.class_of[v] in sparse)
        (out,) = [e for e in g.edges if e.src == u]
        assert out.dst != u, "outdegree-one vertex of a non-cycle class loops on itself"
        edges = []
        for e in g.edges:
            if e is out:
                continue
            if e.dst == u:
                e = Edge(e.src, out.dst, e.north + out.north, e.south + out.south,
                         e.provenance + out.provenance)
            edges.append(e)
        g = LabeledGraph(g.vertices - {u}, edges)
        part = scc(g)
        yield u, g


def contract(g: LabeledGraph) -> LabeledGraph:
    for _, g in iter_contract(g):
        pass
    return g


@dataclass(frozen=True)
class ReductionOutcome:
    barset: Barset
    removed_edges: tuple
    removed_classes: tuple
    provenance: tuple  # per bar, the original tile indices it is made of
    rotation: int  # quarter turns applied to the input tileset
    contracted: tuple  # vertices contracted, in order

    @property
    def complete(self) -> bool:
        """True when no cycle class was dropped, i.e. barset tiles iff the tileset does."""
        return not self.removed_classes


def wang_to_bars(ts: Tileset) -> ReductionOutcome:
    """Reduce a tileset of parameter k to at most 2k bars.

    If the outcome dropped cycle classes, the input tiles the plane iff the
    barset tiles it, or the input tiles periodically.
    """
    if len(ts) == 0:
        raise ValueError("empty input")
    k = west_rotation(ts)
    g = to_graph(rotate(ts, k))
    g, removed_edges = prune_unreturnable(g)
    g, removed_classes = eliminate_cycle_classes(g)
    contracted = []
    for u, g in iter_contract(g):
        contracted.append(u)
    bars, kept = _unique_bars(g)
    bound = 2 * parameter(ts).parameter
    assert len(bars) <= bound, (len(bars), bound)
    return ReductionOutcome(Barset(bars), removed_edges, removed_classes,
                            tuple(e.provenance for e in kept), k, tuple(contracted))


def relabel(g: LabeledGraph, mapping) -> LabeledGraph:
    """Rename vertices; used by tests to compare graphs up to vertex names."""
    return replace(g, vertices={mapping[v] for v in g.vertices},
                   edges=[e._replace(src=mapping[e.src], dst=mapping[e.dst]) for e in g.edges])
