"""Orbit lengths, dilatation estimates and growth classification."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from .automorphism import Automorphism, apply, is_pure, is_square
from .diagram import (
    InvariantSubgraphResult,
    build_diagram,
    down_set,
    invariant_subgraph,
    is_acyclic,
    terminal_partition,
)
from .graphs import SimplicialGraph
from .words import Word

DEFAULT_KMAX = 25
DEFAULT_CAP = 10 ** 7
EXP_THRESHOLD = 0.05
MIN_HORIZON = 20


class OrbitTooShort(ValueError):
    pass


def default_threads() -> int:
    raw = os.environ.get("RAAGDYN_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise ValueError(f"RAAGDYN_THREADS must be a positive integer, got {raw!r}")
    return n


@dataclass(frozen=True)
class OrbitLengths:
    generator: str
    lengths: tuple
    truncated: bool = False

    @property
    def k_last(self) -> int:
        return len(self.lengths) - 1


def _orbit(phi: Automorphism, s: str, k_max: int, cap: int) -> OrbitLengths:
    w = Word.generator(phi.graph, s)
    lengths = [1]
    for _ in range(k_max):
        w = apply(phi, w)
        if len(w) > cap:
            return OrbitLengths(s, tuple(lengths), True)
        lengths.append(len(w))
    return OrbitLengths(s, tuple(lengths), False)


def iterate_lengths(phi: Automorphism, k_max: int = DEFAULT_KMAX, length_cap: int = DEFAULT_CAP,
                    threads: Optional[int] = None) -> dict:
    """``|phi^k(s)|`` for every generator ``s`` and ``k = 0..k_max``.

    An orbit stops early, marked truncated, when its next length would
    exceed ``length_cap``.
    """
    if k_max < 1 or length_cap < 1:
        raise ValueError("k_max and length_cap must be at least 1")
    gens = phi.graph.vertices
    threads = default_threads() if threads is None else threads
    if threads <= 1 or len(gens) == 1:
        results = [_orbit(phi, s, k_max, length_cap) for s in gens]
    else:
        with ThreadPoolExecutor(max_workers=min(threads, len(gens))) as pool:
            results = list(pool.map(lambda s: _orbit(phi, s, k_max, length_cap), gens))
    return {o.generator: o for o in results}


def tail_window(n: int) -> tuple:
    """Index range ``(start, stop)`` of the last half of ``n`` points,
    widened to at least three."""
    start = n // 2
    if n - start < 3:
        start = max(0, n - 3)
    return start, n


@dataclass(frozen=True)
class GeneratorEstimate:
    lambda_hat: float
    window: tuple


@dataclass(frozen=True)
class DilatationEstimate:
    per_generator: dict
    lambda_phi_hat: float
    argmax_generator: str


def _slope(x, y):
    slope, icept = np.polyfit(x, y, 1)
    resid = y - (slope * x + icept)
    return float(slope), float(np.sqrt(np.mean(resid ** 2)))


def estimate_dilatation(orbits: Mapping) -> DilatationEstimate:
    """Least-squares slope of ``ln|phi^k(s)|`` against ``k`` on each orbit's
    tail, clamped at zero; the overall estimate is the maximum."""
    per = {}
    for s, orbit in orbits.items():
        n = len(orbit.lengths)
        if n < 4:
            raise OrbitTooShort(f"orbit of {s} has {n} points; need at least 4")
        a, b = tail_window(n)
        k = np.arange(a, b, dtype=float)
        y = np.log(np.asarray(orbit.lengths[a:b], dtype=float))
        lam, _ = _slope(k, y)
        per[s] = GeneratorEstimate(max(lam, 0.0), (a, b - 1))
    best = max(per, key=lambda s: per[s].lambda_hat)  # first maximum wins
    return DilatationEstimate(per, per[best].lambda_hat, best)


def fit_polynomial_degree(orbit: OrbitLengths) -> tuple:
    """Slope of ``ln|phi^k(s)|`` against ``ln k`` over the tail (``k >= 2``)
    and the RMS residual of that fit."""
    n = len(orbit.lengths)
    if n < 5:
        raise OrbitTooShort(f"orbit of {orbit.generator} has {n} points; need at least 5")
    a, b = tail_window(n)
    a = max(a, 2)
    k = np.arange(a, b, dtype=float)
    y = np.log(np.asarray(orbit.lengths[a:b], dtype=float))
    return _slope(np.log(k), y)


def looks_exponential(orbit: OrbitLengths, lambda_hat: float,
                      threshold: float = EXP_THRESHOLD) -> bool:
    """Exponential verdict for one orbit.

    Needs ``lambda_hat >= threshold`` over a long enough horizon (or a capped
    orbit), and the log-linear fit must beat the log-log fit on the tail:
    a polynomial orbit of degree d shows a finite-horizon slope near
    ``1.4 d / k``, which crosses the threshold for linear growth at k = 25.
    """
    if lambda_hat < threshold:
        return False
    if not (orbit.k_last >= MIN_HORIZON or orbit.truncated):
        return False
    if len(orbit.lengths) < 5:
        return True
    a, b = tail_window(len(orbit.lengths))
    a = max(a, 2)
    k = np.arange(a, b, dtype=float)
    y = np.log(np.asarray(orbit.lengths[a:b], dtype=float))
    _, exp_rms = _slope(k, y)
    _, poly_rms = _slope(np.log(k), y)
    return exp_rms < poly_rms


@dataclass(frozen=True)
class PolyBound:
    """Polynomial growth guaranteed by an acyclic down-set."""

    degree_bound: int


@dataclass(frozen=True)
class ExponentialEstimate:
    lambda_hat: float


@dataclass(frozen=True)
class PolynomialByTheorem:
    degree_bound: int
    degree_fits: dict = field(default_factory=dict)  # vertex -> (degree_hat, residual)

    name = "polynomial-by-theorem"


@dataclass(frozen=True)
class PerGeneratorMixed:
    per_generator: dict

    name = "per-generator"


@dataclass(frozen=True)
class Inconclusive:
    per_generator: dict

    name = "inconclusive"


@dataclass(frozen=True)
class GrowthReport:
    classification: object
    estimates: DilatationEstimate
    orbits: dict
    invariant_subgraph: Optional[InvariantSubgraphResult] = None
    warnings: tuple = ()


def precondition_warnings(phi: Automorphism) -> list:
    out = list(phi.warnings)
    purity = is_pure(phi)
    if not purity.support_clause:
        out.append("not-pure: support clause fails")
    if not all(purity.cyclically_reduced_ok.values()):
        out.append("not-pure: some image is not cyclically reduced")
    if not is_square(phi).square:
        out.append("not-square")
    return out


def classify_growth(G: SimplicialGraph, phi: Automorphism, k_max: int = DEFAULT_KMAX,
                    length_cap: int = DEFAULT_CAP, threads: Optional[int] = None,
                    threshold: float = EXP_THRESHOLD) -> GrowthReport:
    """Polynomial by the acyclicity theorem where the diagram allows it,
    otherwise exponential by estimate (``lambda_hat >= threshold`` with at
    least ``MIN_HORIZON`` iterates or a capped orbit), otherwise
    inconclusive.  For exponential growth the invariant subgraph is taken
    from the fastest-growing exponential generator."""
    if G != phi.graph:
        raise ValueError("graph does not match the automorphism's ambient graph")
    warnings = precondition_warnings(phi)
    D = build_diagram(phi)
    orbits = iterate_lengths(phi, k_max, length_cap, threads)
    for s, o in orbits.items():
        if o.truncated:
            warnings.append(f"truncated: orbit of {s} hit the length cap at k={o.k_last + 1}")
    est = estimate_dilatation(orbits)

    if is_acyclic(D):
        T = terminal_partition(D)
        fits = {s: fit_polynomial_degree(o) for s, o in orbits.items() if len(o.lengths) >= 5}
        return GrowthReport(PolynomialByTheorem(T.height, fits), est, orbits, None, tuple(warnings))

    per = {}
    exponential = []
    for s in G.vertices:
        d = down_set(D, s)
        if is_acyclic(D, d):
            per[s] = PolyBound(terminal_partition(D, d).height)
            continue
        lam = est.per_generator[s].lambda_hat
        per[s] = ExponentialEstimate(lam)
        if looks_exponential(orbits[s], lam, threshold):
            exponential.append(s)
    if not exponential:
        return GrowthReport(Inconclusive(per), est, orbits, None, tuple(warnings))
    lam = {s: est.per_generator[s].lambda_hat for s in G.vertices}
    start = max(exponential, key=lambda s: lam[s])
    sub = invariant_subgraph(G, phi, start, lam, D)
    return GrowthReport(PerGeneratorMixed(per), est, orbits, sub, tuple(warnings))


def restricted_estimate(phi: Automorphism, S, k_max: int = DEFAULT_KMAX,
                        length_cap: int = DEFAULT_CAP) -> float:
    """Estimated dilatation over the generators in ``S`` only (meaningful
    when ``S`` is invariant)."""
    orbits = {s: _orbit(phi, s, k_max, length_cap) for s in phi.graph.ordered(S)}
    return estimate_dilatation(orbits).lambda_phi_hat


def theorem_bound_ratios(orbit: OrbitLengths, height: int) -> list:
    """``lengths[k] / (k + 1)^height``; bounded when growth is polynomial of
    degree at most ``height``."""
    return [L / math.pow(k + 1, height) for k, L in enumerate(orbit.lengths)]
