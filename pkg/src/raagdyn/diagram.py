"""The automorphism diagram and the structures built on it.

The diagram of ``phi`` is the directed graph on the generators with an arc
``s -> t`` whenever ``t != s`` occurs in the reduced image ``phi(s)``.
Cycles (repeated vertices allowed) are handled through strongly connected
components: a vertex lies on a cycle iff its component carries an arc.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Optional

import networkx as nx

from .automorphism import Automorphism
from .graphs import DirectedGraph, GraphError, Kind, SimplicialGraph, classify_induced
from .words import Word, reduce, support


class DiagramError(ValueError):
    pass


class CyclePresent(DiagramError):
    def __init__(self, where=None):
        msg = "diagram contains a directed cycle"
        if where:
            msg += f" (among {sorted(where)})"
        super().__init__(msg)


class Violation(DiagramError):
    """The complete-or-empty dichotomy failed; the input is not a pure
    square map."""

    def __init__(self, vertices, witness):
        self.vertices = frozenset(vertices)
        self.witness = witness
        super().__init__(
            f"vertex set {sorted(vertices)} is neither complete nor empty "
            f"(commuting pair {witness[0]}, non-commuting pair {witness[1]})")


@dataclass(frozen=True)
class AutomorphismDiagram:
    underlying: DirectedGraph
    automorphism: Automorphism

    @property
    def vertices(self):
        return self.underlying.vertices

    def arcs(self) -> list:
        """Arcs in declaration order."""
        return self.underlying.arc_list()

    def __repr__(self):
        arcs = ", ".join(f"{u}->{v}" for u, v in self.arcs())
        return f"AutomorphismDiagram([{arcs}])"


def build_diagram(phi: Automorphism) -> AutomorphismDiagram:
    G = phi.graph
    arcs = []
    for s in G.vertices:
        for t in G.ordered(support(phi.images[s])):
            if t != s:
                arcs.append((s, t))
    return AutomorphismDiagram(DirectedGraph(G.vertices, arcs), phi)


def _diagram_graph(D) -> DirectedGraph:
    return D.underlying if isinstance(D, AutomorphismDiagram) else D


def down_set(D, s: str) -> frozenset:
    try:
        return _diagram_graph(D).reachable(s)
    except GraphError as exc:
        raise DiagramError(str(exc)) from None


def trim(D, S) -> frozenset:
    """Delete source vertices of the sub-diagram on ``S`` until none remain.

    Empty exactly when the sub-diagram on ``S`` is acyclic.
    """
    dg = _diagram_graph(D)
    current = set(S)
    while True:
        sources = {v for v in current
                   if not any(u in current for u in dg.predecessors[v])}
        if not sources:
            return frozenset(current)
        current -= sources


def is_acyclic(D, S=None) -> bool:
    dg = _diagram_graph(D)
    return not trim(dg, dg.vertices if S is None else S)


@dataclass(frozen=True)
class TerminalPartition:
    layers: tuple

    @property
    def height(self) -> int:
        return len(self.layers) - 1

    def layer_of(self, s: str) -> int:
        for i, layer in enumerate(self.layers):
            if s in layer:
                return i
        raise DiagramError(f"unknown vertex {s!r}")

    def lower(self, i: int) -> frozenset:
        """Union of layers strictly below ``i``."""
        return frozenset().union(*self.layers[:i])


def terminal_partition(D, within=None) -> TerminalPartition:
    """Peel terminal vertices (no outgoing arcs) layer by layer."""
    dg = _diagram_graph(D)
    remaining = set(dg.vertices if within is None else within)
    layers = []
    while remaining:
        layer = frozenset(v for v in remaining
                          if not any(t in remaining for t in dg.successors[v]))
        if not layer:
            raise CyclePresent(remaining)
        layers.append(layer)
        remaining -= layer
    if not layers:
        layers.append(frozenset())
    return TerminalPartition(tuple(layers))


class CycleKind(enum.Enum):
    COMPLETE = "complete"
    EMPTY = "empty"
    VIOLATION = "violation"


@dataclass(frozen=True)
class CycleClass:
    vertices: frozenset
    kind: CycleKind
    witness: Optional[tuple] = None  # (commuting pair, non-commuting pair)


@dataclass(frozen=True)
class CycleClassification:
    sccs: tuple

    @property
    def violations(self) -> list:
        return [c for c in self.sccs if c.kind is CycleKind.VIOLATION]

    @property
    def cycle_vertices(self) -> frozenset:
        return frozenset().union(*(c.vertices for c in self.sccs))


def cyclic_sccs(D, within=None) -> list:
    """Strongly connected components carrying at least one arc, ordered by
    their first vertex in declaration order."""
    dg = _diagram_graph(D)
    if within is not None:
        dg = dg.restrict(within)
    g = nx.DiGraph()
    g.add_nodes_from(dg.vertices)
    g.add_edges_from(dg.arc_list())
    comps = [frozenset(c) for c in nx.strongly_connected_components(g) if len(c) > 1]
    return sorted(comps, key=lambda c: min(dg.index[v] for v in c))


def _mixed_witness(G: SimplicialGraph, S) -> tuple:
    order = G.ordered(S)
    pairs = [(u, v) for i, u in enumerate(order) for v in order[i + 1:]]
    yes = next(p for p in pairs if G.adjacent(*p))
    no = next(p for p in pairs if not G.adjacent(*p))
    return yes, no


def cycle_analysis(G: SimplicialGraph, D, within=None) -> CycleClassification:
    out = []
    for comp in cyclic_sccs(D, within):
        kind = classify_induced(G, comp)
        if kind is Kind.COMPLETE:
            out.append(CycleClass(comp, CycleKind.COMPLETE))
        elif kind is Kind.EMPTY:
            out.append(CycleClass(comp, CycleKind.EMPTY))
        else:
            out.append(CycleClass(comp, CycleKind.VIOLATION, _mixed_witness(G, comp)))
    return CycleClassification(tuple(out))


def components(D) -> list:
    """Connected components of the underlying undirected graph."""
    return _diagram_graph(D).weak_components()


# -- image decomposition over the terminal partition ---------------------------


@dataclass(frozen=True)
class Decomposition:
    generator: str
    t0: Word
    epsilon: int
    t1: Word
    layer: int
    lower_ok: bool  # supports of t0, t1 lie in the union of lower layers


@dataclass(frozen=True)
class NotSimple:
    generator: str
    occurrences: int


def decompose_image(phi: Automorphism, T: TerminalPartition, s: str):
    """Write ``phi(s) = t0 s^e t1`` by locating the single ``s``-letter in
    the reduced image.  Returns :class:`NotSimple` when the image does not
    contain exactly one ``s``-letter."""
    G = phi.graph
    if s not in G.index:
        raise DiagramError(f"unknown vertex {s!r}")
    covered = frozenset().union(*T.layers)
    if covered != frozenset(G.vertices):
        raise CyclePresent(frozenset(G.vertices) - covered)
    i = T.layer_of(s)
    img = reduce(phi.images[s])
    code = G.index[s] + 1
    hits = [k for k, c in enumerate(img.codes.tolist()) if abs(c) == code]
    if len(hits) != 1:
        return NotSimple(s, len(hits))
    k = hits[0]
    t0 = Word._trusted(G, img.codes[:k].copy(), True)
    t1 = Word._trusted(G, img.codes[k + 1:].copy(), True)
    lower = T.lower(i)
    ok = support(t0) <= lower and support(t1) <= lower
    return Decomposition(s, t0, 1 if img.codes[k] > 0 else -1, t1, i, ok)


# -- invariant subgraph ----------------------------------------------------------


class SubgraphKind(enum.Enum):
    COMPLETE = "complete"
    EMPTY_CORE = "empty-core"
    ACYCLIC = "acyclic"


@dataclass(frozen=True)
class InvariantSubgraphResult:
    starting_generator: str
    down_set: frozenset
    trimmed: frozenset
    delta: frozenset  # the connected component of the trimmed set that is used
    kind: SubgraphKind
    core: Optional[frozenset] = None  # union of cycle vertices, EMPTY_CORE only


def _pick_component(G, comps, dilatation):
    if dilatation:
        def score(c):
            return max(dilatation.get(v, 0.0) for v in c)
        comps = sorted(comps, key=lambda c: min(G.index[v] for v in c))
        best = max(score(c) for c in comps)
        return next(c for c in comps if score(c) == best)
    least = min(v for c in comps for v in c)
    return next(c for c in comps if least in c)


def invariant_subgraph(G: SimplicialGraph, phi: Automorphism, starting: str,
                       dilatation: Optional[Mapping] = None,
                       diagram: Optional[AutomorphismDiagram] = None) -> InvariantSubgraphResult:
    """Invariant complete-or-free subgraph reached from ``starting``.

    Takes the down-set of ``starting``, trims sources, keeps one connected
    component (highest estimated dilatation when ``dilatation`` is given,
    else the one holding the least vertex name) and classifies the union
    of its cycles.
    """
    if starting not in G.index:
        raise DiagramError(f"unknown vertex {starting!r}")
    D = diagram if diagram is not None else build_diagram(phi)
    d = down_set(D, starting)
    t = trim(D, d)
    if not t:
        return InvariantSubgraphResult(starting, d, t, frozenset(), SubgraphKind.ACYCLIC)
    comps = D.underlying.restrict(t).weak_components()
    delta = _pick_component(G, comps, dilatation)
    core = frozenset().union(*cyclic_sccs(D, delta))
    kind = classify_induced(G, core)
    if kind is Kind.MIXED:
        raise Violation(core, _mixed_witness(G, core))
    if kind is Kind.COMPLETE:
        if classify_induced(G, delta) is not Kind.COMPLETE:
            raise Violation(delta, _mixed_witness(G, delta))
        return InvariantSubgraphResult(starting, d, t, delta, SubgraphKind.COMPLETE)
    return InvariantSubgraphResult(starting, d, t, delta, SubgraphKind.EMPTY_CORE, core)


def is_invariant(phi: Automorphism, S) -> bool:
    S = frozenset(S)
    return all(support(phi.images[s]) <= S for s in S)


# -- checks of the structural lemmas for pure square maps -------------------------


def path_commuting_failures(G: SimplicialGraph, D) -> list:
    """Walks ``s0 -> s1 -> ...`` with ``s0, s1`` adjacent in ``G`` whose vertex
    set is not complete.  Returns ``(s0, s1, x, y)`` for each bad pair."""
    dg = _diagram_graph(D)
    reach = {v: dg.reachable(v) for v in dg.vertices}
    bad = []
    for s0, s1 in dg.arc_list():
        if not G.adjacent(s0, s1):
            continue
        for y in G.ordered(reach[s1]):
            if not G.commute(s0, y):
                bad.append((s0, s1, s0, y))
        for x in G.ordered(reach[s1]):
            for y in G.ordered(reach[x]):
                if not G.commute(x, y):
                    bad.append((s0, s1, x, y))
    return bad


def com_persist_failures(G: SimplicialGraph, D) -> list:
    """Pairs ``v in d(A)``, ``w in d(B)`` for an edge ``{A, B}`` that do not
    commute.  Returns ``(A, B, v, w)`` tuples."""
    dg = _diagram_graph(D)
    bad = []
    for a, b in G.edge_list():
        ra, rb = G.ordered(dg.reachable(a)), G.ordered(dg.reachable(b))
        for v in ra:
            for w in rb:
                if not G.commute(v, w):
                    bad.append((a, b, v, w))
    return bad
