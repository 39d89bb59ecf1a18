"""Finite simple graphs and directed graphs.

A :class:`SimplicialGraph` is the defining graph of a right-angled Artin
group: vertices are generators, edges are commutation relations.  Vertex
sets are plain ``frozenset`` objects of vertex names; functions that take
one check membership against the ambient graph themselves.
"""
from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

_FORBIDDEN = set("^-#")

VertexSet = frozenset


class GraphError(ValueError):
    pass


def check_vertex_name(name) -> None:
    if not isinstance(name, str) or not name:
        raise GraphError(f"vertex name must be a nonempty string, got {name!r}")
    if any(ch.isspace() or ch in _FORBIDDEN for ch in name):
        raise GraphError(f"vertex name {name!r} contains whitespace or one of ^ - #")
    if name == "1":
        raise GraphError("vertex name '1' is reserved for the empty word")


@dataclass(frozen=True)
class SimplicialGraph:
    """Simple graph with ordered vertices.

    Edges are stored as frozensets of two names, so ``{u, v}`` membership
    does not depend on pair order.  Vertex order is declaration order and is
    used for every deterministic iteration downstream.
    """

    vertices: tuple
    edges: frozenset

    def __init__(self, vertices: Iterable[str], edges: Iterable = ()):
        vertices = tuple(vertices)
        seen = set()
        for v in vertices:
            check_vertex_name(v)
            if v in seen:
                raise GraphError(f"duplicate vertex {v!r}")
            seen.add(v)
        edge_set = set()
        for e in edges:
            pair = tuple(e)
            if len(pair) != 2:
                raise GraphError(f"edge {e!r} is not a pair")
            u, v = pair
            for x in pair:
                if x not in seen:
                    raise GraphError(f"edge {e!r} uses unknown vertex {x!r}")
            if u == v:
                raise GraphError(f"non-simple edge: loop at {u!r}")
            edge_set.add(frozenset(pair))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", frozenset(edge_set))

    def __repr__(self):
        es = ", ".join(f"{u}-{v}" for u, v in self.edge_list())
        return f"SimplicialGraph({list(self.vertices)}, [{es}])"

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _adj(self) -> dict:
        adj = {v: set() for v in self.vertices}
        for e in self.edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(s) for v, s in adj.items()}

    @cached_property
    def noncommuting_csr(self):
        """CSR arrays listing, for vertex ``i``, every ``j != i`` with no edge."""
        n = len(self.vertices)
        ptr = np.zeros(n + 1, dtype=np.int64)
        idx = []
        for i, v in enumerate(self.vertices):
            row = [j for j, u in enumerate(self.vertices) if u != v and u not in self._adj[v]]
            idx.extend(row)
            ptr[i + 1] = ptr[i] + len(row)
        return ptr, np.asarray(idx, dtype=np.int64)

    @cached_property
    def name_rank(self) -> np.ndarray:
        """Generator indices sorted by vertex name (normal-form letter order)."""
        order = sorted(range(len(self.vertices)), key=lambda i: self.vertices[i])
        return np.asarray(order, dtype=np.int64)

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self.index

    def require(self, v: str) -> None:
        if v not in self.index:
            raise GraphError(f"unknown vertex {v!r}")

    def require_all(self, vs: Iterable[str]) -> frozenset:
        s = frozenset(vs)
        for v in s:
            self.require(v)
        return s

    def adjacent(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    def commute(self, u: str, v: str) -> bool:
        return u == v or frozenset((u, v)) in self.edges

    def link(self, v: str) -> frozenset:
        self.require(v)
        return self._adj[v]

    def star(self, v: str) -> frozenset:
        return self.link(v) | {v}

    def sorted_pair(self, e) -> tuple:
        return tuple(sorted(e, key=self.index.__getitem__))

    def edge_list(self) -> list:
        """Edges as ordered pairs, sorted by declaration order."""
        pairs = [self.sorted_pair(e) for e in self.edges]
        return sorted(pairs, key=lambda p: (self.index[p[0]], self.index[p[1]]))

    def ordered(self, vs: Iterable[str]) -> list:
        return sorted(vs, key=self.index.__getitem__)

    def components(self, within: Optional[Iterable[str]] = None) -> list:
        """Connected components of the subgraph induced on ``within``."""
        keep = set(self.vertices if within is None else within)
        return _components(self.ordered(keep), lambda v: self._adj[v] & keep)


@dataclass(frozen=True)
class DirectedGraph:
    """Directed graph without self-arcs; ``(u, v)`` and ``(v, u)`` may coexist."""

    vertices: tuple
    arcs: frozenset

    def __init__(self, vertices: Iterable[str], arcs: Iterable = ()):
        vertices = tuple(vertices)
        known = set(vertices)
        if len(known) != len(vertices):
            raise GraphError("duplicate vertex in directed graph")
        arc_set = set()
        for u, v in arcs:
            if u not in known or v not in known:
                raise GraphError(f"arc ({u!r}, {v!r}) uses unknown vertex")
            if u == v:
                raise GraphError(f"self-arc at {u!r}")
            arc_set.add((u, v))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "arcs", frozenset(arc_set))

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def successors(self) -> dict:
        out = {v: [] for v in self.vertices}
        for u, v in self.arc_list():
            out[u].append(v)
        return out

    @cached_property
    def predecessors(self) -> dict:
        inc = {v: [] for v in self.vertices}
        for u, v in self.arc_list():
            inc[v].append(u)
        return inc

    def arc_list(self) -> list:
        return sorted(self.arcs, key=lambda a: (self.index[a[0]], self.index[a[1]]))

    def reachable(self, s: str) -> frozenset:
        if s not in self.index:
            raise GraphError(f"unknown vertex {s!r}")
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for v in self.successors[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return frozenset(seen)

    def restrict(self, keep: Iterable[str]) -> "DirectedGraph":
        keep = set(keep)
        return DirectedGraph(
            [v for v in self.vertices if v in keep],
            [(u, v) for u, v in self.arcs if u in keep and v in keep],
        )

    def weak_components(self) -> list:
        nbrs = {v: set(self.successors[v]) | set(self.predecessors[v]) for v in self.vertices}
        return _components(list(self.vertices), nbrs.__getitem__)


def _components(order: list, nbrs) -> list:
    seen = set()
    comps = []
    for v in order:
        if v in seen:
            continue
        comp = {v}
        seen.add(v)
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in nbrs(u):
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        comps.append(frozenset(comp))
    return comps


class Kind(enum.Enum):
    COMPLETE = "complete"
    EMPTY = "empty"
    MIXED = "mixed"


@dataclass(frozen=True)
class JoinAnalysis:
    complement: SimplicialGraph
    is_join: bool
    join_parts: Optional[tuple]


def induced_subgraph(G: SimplicialGraph, S: Iterable[str]) -> SimplicialGraph:
    S = G.require_all(S)
    return SimplicialGraph(
        [v for v in G.vertices if v in S],
        [e for e in G.edges if e <= S],
    )


def neighborhood(G: SimplicialGraph, v: str) -> tuple:
    """Return ``(link, star)`` of ``v``."""
    return G.link(v), G.star(v)


def complement(G: SimplicialGraph) -> SimplicialGraph:
    pairs = [(u, v) for u, v in itertools.combinations(G.vertices, 2) if not G.adjacent(u, v)]
    return SimplicialGraph(G.vertices, pairs)


def complement_analysis(G: SimplicialGraph) -> JoinAnalysis:
    """Complement of ``G`` and whether ``G`` splits as a join.

    ``G`` is a join exactly when its complement is disconnected; the parts
    returned are the complement component holding the first vertex versus
    everything else.
    """
    comp = complement(G)
    parts = comp.components()
    if len(parts) < 2:
        return JoinAnalysis(comp, False, None)
    first = parts[0]
    return JoinAnalysis(comp, True, (first, frozenset(G.vertices) - first))


def classify_induced(G: SimplicialGraph, S: Iterable[str]) -> Kind:
    S = G.require_all(S)
    if not S:
        raise GraphError("cannot classify an empty vertex set")
    pairs = list(itertools.combinations(S, 2))
    hits = sum(G.adjacent(u, v) for u, v in pairs)
    if hits == len(pairs):
        return Kind.COMPLETE
    if hits == 0:
        return Kind.EMPTY
    return Kind.MIXED


def noncommuting_pair(G: SimplicialGraph, S1: Iterable[str], S2: Iterable[str]):
    """First pair ``(u, v)`` in declaration order with ``u != v`` and no edge, or None."""
    S1 = G.ordered(G.require_all(S1))
    S2 = G.ordered(G.require_all(S2))
    for u in S1:
        for v in S2:
            if not G.commute(u, v):
                return (u, v)
    return None


def supports_commute(G: SimplicialGraph, S1: Iterable[str], S2: Iterable[str]) -> bool:
    return noncommuting_pair(G, S1, S2) is None
