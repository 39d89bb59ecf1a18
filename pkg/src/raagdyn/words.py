"""Words in a right-angled Artin group.

Token grammar for word text: whitespace-separated tokens ``NAME`` or
``NAME^INT`` (``INT`` a nonzero integer, sign allowed); ``NAME^k`` expands to
``|k|`` copies of ``NAME`` with the sign of ``k``.  The empty word is ``1``.
"""
from __future__ import annotations

import re
from collections import namedtuple
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from . import _kernels
from .graphs import SimplicialGraph

Letter = namedtuple("Letter", "generator sign")

_TOKEN = re.compile(r"^([^\s^#-]+)(?:\^([+-]?\d+))?$")


class WordError(ValueError):
    pass


class Word:
    """Immutable letter sequence over a graph.

    ``==`` compares spellings letter for letter; use :func:`words_equal` for
    equality of group elements.
    """

    __slots__ = ("graph", "codes", "reduced")

    def __init__(self, graph: SimplicialGraph, codes=(), reduced: bool = False):
        arr = np.array(codes, dtype=np.int32).reshape(-1)
        if arr.size and (np.abs(arr).min() < 1 or np.abs(arr).max() > len(graph)):
            raise WordError("letter code outside the generator range")
        arr.flags.writeable = False
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "codes", arr)
        object.__setattr__(self, "reduced", bool(reduced) or arr.size <= 1)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def _trusted(cls, graph, arr, reduced):
        w = object.__new__(cls)
        arr.flags.writeable = False
        object.__setattr__(w, "graph", graph)
        object.__setattr__(w, "codes", arr)
        object.__setattr__(w, "reduced", reduced or arr.size <= 1)
        return w

    @classmethod
    def from_letters(cls, graph: SimplicialGraph, letters: Iterable) -> "Word":
        codes = []
        for name, sign in letters:
            graph.require(name)
            if sign not in (1, -1):
                raise WordError(f"letter sign must be +1 or -1, got {sign!r}")
            codes.append(sign * (graph.index[name] + 1))
        return cls(graph, codes)

    @classmethod
    def generator(cls, graph: SimplicialGraph, name: str, sign: int = 1) -> "Word":
        return cls.from_letters(graph, [(name, sign)])

    @classmethod
    def identity(cls, graph: SimplicialGraph) -> "Word":
        return cls(graph, (), reduced=True)

    def __len__(self):
        return int(self.codes.size)

    def __iter__(self):
        names = self.graph.vertices
        for c in self.codes.tolist():
            yield Letter(names[abs(c) - 1], 1 if c > 0 else -1)

    def letters(self) -> list:
        return list(self)

    def __mul__(self, other: "Word") -> "Word":
        _same_graph(self, other)
        return Word._trusted(self.graph, np.concatenate([self.codes, other.codes]), False)

    def inverse(self) -> "Word":
        return Word._trusted(self.graph, -self.codes[::-1].copy(), self.reduced)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.graph == other.graph and np.array_equal(self.codes, other.codes)

    def __hash__(self):
        return hash((self.graph, self.codes.tobytes()))

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"


@dataclass(frozen=True)
class CyclicForm:
    core: Word
    conjugator: Word


def _same_graph(w1: Word, w2: Word) -> None:
    if w1.graph is not w2.graph and w1.graph != w2.graph:
        raise WordError("words live over different graphs")


def parse_word(graph: SimplicialGraph, text: str) -> Word:
    tokens = text.split()
    if tokens == ["1"]:
        return Word.identity(graph)
    codes = []
    for tok in tokens:
        m = _TOKEN.match(tok)
        if not m:
            raise WordError(f"bad token {tok!r}")
        name, exp = m.group(1), m.group(2)
        if name not in graph.index:
            raise WordError(f"unknown vertex {name!r} in token {tok!r}")
        k = 1 if exp is None else int(exp)
        if k == 0:
            raise WordError(f"zero exponent in token {tok!r}")
        code = graph.index[name] + 1
        codes.extend([code if k > 0 else -code] * abs(k))
    return Word(graph, codes)


def format_word(w: Word) -> str:
    """Inverse of :func:`parse_word`; runs of one letter print as ``x^k``."""
    if len(w) == 0:
        return "1"
    names = w.graph.vertices
    out = []
    codes = w.codes.tolist()
    i = 0
    while i < len(codes):
        j = i
        while j < len(codes) and codes[j] == codes[i]:
            j += 1
        c = codes[i]
        k = (j - i) * (1 if c > 0 else -1)
        name = names[abs(c) - 1]
        out.append(name if k == 1 else f"{name}^{k}")
        i = j
    return " ".join(out)


@lru_cache(maxsize=None)
def identity_table(n: int):
    ptr = np.arange(2 * n + 1, dtype=np.int64)
    data = np.empty(2 * n, dtype=np.int32)
    data[0::2] = np.arange(1, n + 1)
    data[1::2] = -np.arange(1, n + 1)
    return ptr, data


def reduce(w: Word) -> Word:
    """Shortest spelling of ``w`` (reduced form)."""
    if w.reduced:
        return w
    g = w.graph
    nc_ptr, nc_idx = g.noncommuting_csr
    ptr, data = identity_table(len(g))
    out = _kernels.substitute_reduce(w.codes, ptr, data, nc_ptr, nc_idx, len(g))
    return Word._trusted(g, out, True)


def normal_form(w: Word) -> Word:
    """Canonical spelling: reduce, then shuffle the least-named available
    letter to the front, repeatedly."""
    r = reduce(w)
    g = r.graph
    nc_ptr, nc_idx = g.noncommuting_csr
    out = _kernels.lex_normal_form(r.codes, nc_ptr, nc_idx, g.name_rank, len(g))
    return Word._trusted(g, out, True)


def words_equal(w1: Word, w2: Word) -> bool:
    _same_graph(w1, w2)
    a, b = reduce(w1), reduce(w2)
    if len(a) != len(b):
        return False
    return np.array_equal(normal_form(a).codes, normal_form(b).codes)


def support_and_length(w: Word) -> tuple:
    r = reduce(w)
    names = r.graph.vertices
    gens = np.unique(np.abs(r.codes)).tolist()
    return frozenset(names[c - 1] for c in gens), len(r)


def support(w: Word) -> frozenset:
    return support_and_length(w)[0]


def exponent_sums(w: Word) -> np.ndarray:
    """Exponent sum of each generator (abelianisation image)."""
    sums = np.zeros(len(w.graph), dtype=np.int64)
    np.add.at(sums, np.abs(w.codes) - 1, np.sign(w.codes))
    return sums


def _end_letters(codes: list, nc: list) -> dict:
    """Generators with a letter that can be shuffled to the front of
    ``codes``: maps generator index to ``(sign, position)``."""
    blocked = set()
    found = {}
    for pos, c in enumerate(codes):
        g = abs(c) - 1
        if g not in blocked:
            found[g] = (1 if c > 0 else -1, pos)
        blocked.add(g)
        blocked.update(nc[g])
    return found


def _strip_pair(codes: list, nc: list, rank: list):
    first = _end_letters(codes, nc)
    rev = _end_letters(codes[::-1], nc)
    for g in rank:
        if g in first and g in rev and first[g][0] == -rev[g][0]:
            return g, first[g][0], first[g][1], len(codes) - 1 - rev[g][1]
    return None


def _nc_lists(graph: SimplicialGraph) -> list:
    ptr, idx = graph.noncommuting_csr
    return [idx[ptr[i]:ptr[i + 1]].tolist() for i in range(len(graph))]


def is_cyclically_reduced(w: Word) -> bool:
    r = reduce(w)
    if len(r) != len(w):
        return False
    return _strip_pair(r.codes.tolist(), _nc_lists(r.graph), r.graph.name_rank.tolist()) is None


def cyclically_reduce(w: Word) -> CyclicForm:
    """Split ``w`` as ``conjugator * core * conjugator^-1`` with ``core``
    cyclically reduced.

    While some ``x^e`` can be shuffled to the front and ``x^-e`` to the back,
    both are stripped (least vertex name first) and ``x^e`` is appended to
    the conjugator.
    """
    r = reduce(w)
    g = r.graph
    nc = _nc_lists(g)
    rank = g.name_rank.tolist()
    codes = r.codes.tolist()
    conj = []
    while True:
        hit = _strip_pair(codes, nc, rank)
        if hit is None:
            break
        gen, sign, i, j = hit
        conj.append(sign * (gen + 1))
        codes = [c for k, c in enumerate(codes) if k != i and k != j]
    return CyclicForm(
        Word._trusted(g, np.asarray(codes, dtype=np.int32), True),
        Word._trusted(g, np.asarray(conj, dtype=np.int32), True),
    )
