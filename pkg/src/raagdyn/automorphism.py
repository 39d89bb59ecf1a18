"""Endomorphisms and automorphisms of A(Gamma).

An :class:`Automorphism` is a table of reduced generator images, checked
against the defining relations on construction.  It is *verified* when an
inverse table is known and both composites fix every generator; otherwise it
is a homomorphism only and carries the ``unverified-automorphism`` warning.

Composition is ``compose(f, g) = f o g`` (apply ``g`` first).
"""
from __future__ import annotations

import enum
import itertools
import random as _random
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from . import _kernels
from .graphs import SimplicialGraph, noncommuting_pair
from .words import (
    Word,
    exponent_sums,
    is_cyclically_reduced,
    parse_word,
    reduce,
    support,
    words_equal,
)

UNVERIFIED = "unverified-automorphism"


class AutomorphismError(ValueError):
    pass


class RelationError(AutomorphismError):
    def __init__(self, edge, which="images"):
        self.edge = edge
        super().__init__(f"{which} violate the relation [{edge[0]}, {edge[1]}]")


class InverseError(AutomorphismError):
    pass


class SideConditionError(AutomorphismError):
    pass


class NotInvertibleMod2(AutomorphismError):
    """The mod-2 abelianisation matrix is singular: not an automorphism."""


class OrderExceeded(AutomorphismError):
    pass


class Level(enum.IntEnum):
    HOMOMORPHISM = 1
    AUTOMORPHISM = 2


# -- elementary generators ---------------------------------------------------


@dataclass(frozen=True)
class Inversion:
    v: str

    def check(self, G):
        G.require(self.v)

    def image_words(self, G):
        return {self.v: Word.generator(G, self.v, -1)}

    def inverse(self):
        return self


@dataclass(frozen=True)
class GraphSymmetry:
    perm: tuple  # sorted (source, target) pairs

    def __init__(self, perm: Union[Mapping, Sequence]):
        items = perm.items() if isinstance(perm, Mapping) else perm
        object.__setattr__(self, "perm", tuple(sorted((str(a), str(b)) for a, b in items)))

    def check(self, G):
        mapping = dict(self.perm)
        if set(mapping) != set(G.vertices) or set(mapping.values()) != set(G.vertices):
            raise SideConditionError(f"{self}: not a permutation of the vertices")
        for e in G.edges:
            u, v = tuple(e)
            if not G.adjacent(mapping[u], mapping[v]):
                raise SideConditionError(f"{self}: edge {u}-{v} is not preserved")

    def image_words(self, G):
        return {a: Word.generator(G, b) for a, b in self.perm}

    def inverse(self):
        return GraphSymmetry({b: a for a, b in self.perm})


@dataclass(frozen=True)
class Transvection:
    """``v -> w^sign v``; needs ``lk(v)`` inside ``st(w)``."""

    v: str
    w: str
    sign: int = 1

    def check(self, G):
        G.require(self.v)
        G.require(self.w)
        if self.v == self.w:
            raise SideConditionError(f"{self}: v and w must differ")
        if not G.link(self.v) <= G.star(self.w):
            raise SideConditionError(f"{self}: lk({self.v}) is not contained in st({self.w})")

    def image_words(self, G):
        return {self.v: Word.from_letters(G, [(self.w, self.sign), (self.v, 1)])}

    def inverse(self):
        return Transvection(self.v, self.w, -self.sign)


@dataclass(frozen=True)
class PartialConjugation:
    """Conjugate every vertex of ``component`` by ``w^sign``; the component
    must be a connected component of Gamma minus st(w)."""

    component: frozenset
    w: str
    sign: int = 1

    def __init__(self, component, w, sign=1):
        object.__setattr__(self, "component", frozenset(component))
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "sign", sign)

    def check(self, G):
        G.require(self.w)
        G.require_all(self.component)
        rest = set(G.vertices) - G.star(self.w)
        if self.component not in G.components(rest):
            raise SideConditionError(
                f"{self}: {sorted(self.component)} is not a component of Gamma minus st({self.w})")

    def image_words(self, G):
        s = self.sign
        return {
            v: Word.from_letters(G, [(self.w, s), (v, 1), (self.w, -s)])
            for v in G.ordered(self.component)
        }

    def inverse(self):
        return PartialConjugation(self.component, self.w, -self.sign)


LSGenerator = Union[Inversion, GraphSymmetry, Transvection, PartialConjugation]


# -- automorphism objects ----------------------------------------------------


def _as_word(G, w):
    if isinstance(w, Word):
        if w.graph != G:
            raise AutomorphismError("image word lives over a different graph")
        return reduce(w)
    return reduce(parse_word(G, w))


def _image_table(G, images):
    pieces = []
    for v in G.vertices:
        c = images[v].codes
        pieces.append(c)
        pieces.append(-c[::-1])
    lens = np.array([p.size for p in pieces], dtype=np.int64)
    ptr = np.concatenate([[0], np.cumsum(lens)]).astype(np.int64)
    data = np.concatenate(pieces).astype(np.int32) if pieces else np.empty(0, np.int32)
    return ptr, data


def _substitute(G, table, w: Word) -> Word:
    nc_ptr, nc_idx = G.noncommuting_csr
    out = _kernels.substitute_reduce(w.codes, table[0], table[1], nc_ptr, nc_idx, len(G))
    return Word._trusted(G, out, True)


@dataclass(frozen=True, eq=False)
class Automorphism:
    graph: SimplicialGraph
    images: Mapping
    inverse_images: Optional[Mapping] = None
    provenance: tuple = ("raw",)
    level: Level = Level.HOMOMORPHISM

    def image(self, v: str) -> Word:
        return self.images[v]

    @cached_property
    def table(self):
        return _image_table(self.graph, self.images)

    @property
    def warnings(self) -> list:
        return [UNVERIFIED] if self.level < Level.AUTOMORPHISM else []

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def inverse(self) -> "Automorphism":
        if self.inverse_images is None:
            raise AutomorphismError("no inverse is known for this map")
        return Automorphism(self.graph, self.inverse_images, self.images,
                            ("inverse",) + self.provenance, self.level)

    def max_image_length(self) -> int:
        return max((len(w) for w in self.images.values()), default=0)

    def __repr__(self):
        body = ", ".join(f"{v} -> {self.images[v]}" for v in self.graph.vertices)
        return f"Automorphism({body})"


def _check_relations(G, images, which="images"):
    for u, v in G.edge_list():
        a, b = images[u], images[v]
        if not words_equal(a * b, b * a):
            raise RelationError((u, v), which)


def _complete(G, images, name):
    missing = [v for v in G.vertices if v not in images]
    if missing:
        raise AutomorphismError(f"{name} missing for {missing}")
    extra = [v for v in images if v not in G.index]
    if extra:
        raise AutomorphismError(f"{name} given for unknown vertices {extra}")
    return {v: _as_word(G, images[v]) for v in G.vertices}


def from_images(G: SimplicialGraph, images: Mapping, inverse_images: Optional[Mapping] = None) -> Automorphism:
    """Build a map from generator images (``Word`` or word text).

    Relations are always checked.  With ``inverse_images`` the result is a
    verified automorphism, otherwise a homomorphism only.
    """
    imgs = _complete(G, images, "images")
    _check_relations(G, imgs)
    if inverse_images is None:
        return Automorphism(G, imgs)
    inv = _complete(G, inverse_images, "inverse images")
    _check_relations(G, inv, "inverse images")
    fwd, back = _image_table(G, imgs), _image_table(G, inv)
    for v in G.vertices:
        gen = Word.generator(G, v)
        if not words_equal(_substitute(G, fwd, inv[v]), gen):
            raise InverseError(f"phi(inverse({v})) != {v}")
        if not words_equal(_substitute(G, back, imgs[v]), gen):
            raise InverseError(f"inverse(phi({v})) != {v}")
    return Automorphism(G, imgs, inv, ("raw",), Level.AUTOMORPHISM)


def identity(G: SimplicialGraph) -> Automorphism:
    imgs = {v: Word.generator(G, v) for v in G.vertices}
    return Automorphism(G, imgs, imgs, ("identity",), Level.AUTOMORPHISM)


def _elementary(G, gen) -> Automorphism:
    gen.check(G)
    imgs = {v: Word.generator(G, v) for v in G.vertices}
    inv = dict(imgs)
    imgs.update(gen.image_words(G))
    inv.update(gen.inverse().image_words(G))
    return Automorphism(G, imgs, inv, (gen,), Level.AUTOMORPHISM)


def from_generators(G: SimplicialGraph, seq: Sequence) -> Automorphism:
    """Product ``g1 o g2 o ... o gk`` of Laurence-Servatius generators."""
    acc = identity(G)
    for gen in seq:
        acc = compose(acc, _elementary(G, gen))
    return Automorphism(G, acc.images, acc.inverse_images, tuple(seq), Level.AUTOMORPHISM)


def _check_ambient(a, b):
    if a is not b and a != b:
        raise AutomorphismError("ambient graphs differ")


def apply(phi: Automorphism, w: Word) -> Word:
    _check_ambient(phi.graph, w.graph)
    return _substitute(phi.graph, phi.table, w)


def compose(phi: Automorphism, psi: Automorphism) -> Automorphism:
    """``phi o psi``: apply ``psi`` first."""
    _check_ambient(phi.graph, psi.graph)
    G = phi.graph
    imgs = {v: apply(phi, psi.images[v]) for v in G.vertices}
    inv = None
    level = min(phi.level, psi.level)
    if phi.inverse_images is not None and psi.inverse_images is not None:
        psi_inv = _image_table(G, psi.inverse_images)
        inv = {v: _substitute(G, psi_inv, phi.inverse_images[v]) for v in G.vertices}
    else:
        level = Level.HOMOMORPHISM
    return Automorphism(G, imgs, inv, ("composite",), level)


def power(phi: Automorphism, k: int) -> Automorphism:
    if k < 0:
        return power(phi.inverse(), -k)
    result = identity(phi.graph)
    if phi.level < Level.AUTOMORPHISM:
        result = Automorphism(phi.graph, result.images, None, ("identity",), Level.HOMOMORPHISM)
    base = phi
    while k:
        if k & 1:
            result = compose(result, base)
        k >>= 1
        if k:
            base = compose(base, base)
    return result


def conjugate_by(phi: Automorphism, g: Word) -> Automorphism:
    """``phi^g``: ``v -> g phi(v) g^-1``."""
    G = phi.graph
    _check_ambient(G, g.graph)
    g = reduce(g)
    gi = g.inverse()
    imgs = {v: reduce(g * phi.images[v] * gi) for v in G.vertices}
    inv = None
    if phi.inverse_images is not None:
        back = _image_table(G, phi.inverse_images)
        h = _substitute(G, back, g)
        inv = {v: reduce(h.inverse() * phi.inverse_images[v] * h) for v in G.vertices}
    return Automorphism(G, imgs, inv, ("conjugate",) + phi.provenance, phi.level)


def same_map(phi: Automorphism, psi: Automorphism) -> bool:
    _check_ambient(phi.graph, psi.graph)
    return all(words_equal(phi.images[v], psi.images[v]) for v in phi.graph.vertices)


# -- classification ----------------------------------------------------------


@dataclass(frozen=True)
class PurityReport:
    pure: bool
    support_ok: dict
    cyclically_reduced_ok: dict

    @property
    def support_clause(self) -> bool:
        return all(self.support_ok.values())


@dataclass(frozen=True)
class SquareReport:
    square: bool
    witness: Optional[tuple] = None  # ((s1, s2), (u, v))


def is_positive(phi: Automorphism) -> bool:
    return all(bool((w.codes > 0).all()) for w in phi.images.values())


def is_pure(phi: Automorphism) -> PurityReport:
    sup = {s: s in support(phi.images[s]) for s in phi.graph.vertices}
    cyc = {s: is_cyclically_reduced(phi.images[s]) for s in phi.graph.vertices}
    return PurityReport(all(sup.values()) and all(cyc.values()), sup, cyc)


def is_square(phi: Automorphism) -> SquareReport:
    G = phi.graph
    supps = {v: support(phi.images[v]) for v in G.vertices}
    for s1, s2 in G.edge_list():
        pair = noncommuting_pair(G, supps[s1], supps[s2])
        if pair is not None:
            return SquareReport(False, ((s1, s2), pair))
    return SquareReport(True)


def mod2_matrix(phi: Automorphism) -> np.ndarray:
    """Entry ``(v, s)`` is the exponent sum of ``v`` in ``phi(s)`` mod 2."""
    G = phi.graph
    cols = [exponent_sums(phi.images[s]) % 2 for s in G.vertices]
    return np.array(cols, dtype=np.uint8).T.reshape(len(G), len(G))


def gf2_rank(M: np.ndarray) -> int:
    A = (np.array(M, dtype=np.uint8) % 2).copy()
    rows, cols = A.shape
    rank = 0
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if A[r, c]), None)
        if pivot is None:
            continue
        A[[rank, pivot]] = A[[pivot, rank]]
        for r in range(rows):
            if r != rank and A[r, c]:
                A[r] ^= A[rank]
        rank += 1
    return rank


def mod2_order(M: np.ndarray, max_exponent: int = 2 ** 20) -> int:
    n = M.shape[0]
    if gf2_rank(M) < n:
        raise NotInvertibleMod2("mod-2 matrix is singular; the map is not an automorphism")
    ident = np.eye(n, dtype=np.int64)
    A = M.astype(np.int64) % 2
    P = A.copy()
    for k in range(1, max_exponent + 1):
        if np.array_equal(P, ident):
            return k
        P = (P @ A) % 2
    raise OrderExceeded(f"mod-2 order exceeds {max_exponent}")


@dataclass(frozen=True)
class PurePower:
    N: int
    phi_N: Automorphism
    report: PurityReport


def pure_power(phi: Automorphism, max_exponent: int = 2 ** 20) -> PurePower:
    """Smallest ``N`` with ``A_phi^N = I`` over Z/2, and the purity report
    of ``phi^N``.  The support clause holds at ``phi^N``; cyclic reducedness
    is only checked."""
    N = mod2_order(mod2_matrix(phi), max_exponent)
    phiN = power(phi, N)
    return PurePower(N, phiN, is_pure(phiN))


# -- sampling ----------------------------------------------------------------


def elementary_generators(G: SimplicialGraph, symmetries: bool = True) -> list:
    """Every Laurence-Servatius generator of ``G`` (both signs for
    transvections and partial conjugations).  Graph symmetries are
    enumerated by brute force, so keep ``G`` small when asking for them."""
    gens = [Inversion(v) for v in G.vertices]
    for v, w in itertools.permutations(G.vertices, 2):
        if G.link(v) <= G.star(w):
            gens += [Transvection(v, w, 1), Transvection(v, w, -1)]
    for w in G.vertices:
        rest = set(G.vertices) - G.star(w)
        for comp in G.components(rest):
            gens += [PartialConjugation(comp, w, 1), PartialConjugation(comp, w, -1)]
    if symmetries:
        for perm in itertools.permutations(G.vertices):
            mapping = dict(zip(G.vertices, perm))
            if perm == G.vertices:
                continue
            if all(G.adjacent(mapping[u], mapping[v]) for u, v in G.edge_list()):
                gens.append(GraphSymmetry(mapping))
    return gens


def random_automorphism(G: SimplicialGraph, rng: _random.Random, max_length: int = 6,
                        symmetries: bool = True) -> Automorphism:
    pool = elementary_generators(G, symmetries)
    k = rng.randint(1, max_length)
    return from_generators(G, [rng.choice(pool) for _ in range(k)])

