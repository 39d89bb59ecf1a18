"""Acceptance suite.  Each test records a PASS/FAIL line that is printed
in the terminal summary."""
import itertools
import math
import random
import time

import numpy as np
import pytest

from acceptance_log import criterion
from oracles import RewritingOracle
from raagdyn import _kernels
from raagdyn.automorphism import (
    apply,
    conjugate_by,
    is_pure,
    is_square,
    pure_power,
    random_automorphism,
)
from raagdyn.diagram import (
    Decomposition,
    SubgraphKind,
    build_diagram,
    com_persist_failures,
    components,
    cycle_analysis,
    CycleKind,
    decompose_image,
    invariant_subgraph,
    is_acyclic,
    path_commuting_failures,
    terminal_partition,
)
from raagdyn.dynamics import (
    PolynomialByTheorem,
    classify_growth,
    estimate_dilatation,
    iterate_lengths,
    restricted_estimate,
)
from raagdyn.graphs import SimplicialGraph
from raagdyn.words import Word, reduce, words_equal
from strategies import random_graph

GOLDEN = (1 + math.sqrt(5)) / 2
SAMPLE_SEED = 20261016
SAMPLE_SIZE = 300


def lam(phi, k_max):
    return estimate_dilatation(iterate_lengths(phi, k_max, threads=1)).lambda_phi_hat


@pytest.fixture(scope="module")
def square_sample():
    """Random products of at most 6 elementary generators on random graphs
    with at most 6 vertices, raised to their pure power; square ones kept."""
    rng = random.Random(SAMPLE_SEED)
    kept = []
    for _ in range(SAMPLE_SIZE):
        G = random_graph(rng, 6)
        phi = random_automorphism(G, rng, 6)
        pp = pure_power(phi)
        if is_square(pp.phi_N).square:
            kept.append((phi, pp))
    return kept


def test_c1_word_engine_matches_rewriting_bfs():
    with criterion(1, "words_equal vs rewriting BFS, 64 graphs, words <= 6") as notes:
        start = time.perf_counter()
        names = "abcd"
        pairs = list(itertools.combinations(range(4), 2))
        rng = np.random.default_rng(1)
        oracle = RewritingOracle(4, 6)
        # oracle letters 2g+1 / 2g+2 -> package codes +(g+1) / -(g+1)
        rows = []
        for L, arr in oracle.words.items():
            pad = np.zeros((len(arr), 6), dtype=np.int32)
            g = (arr - 1) // 2 + 1
            pad[:, :L] = np.where((arr - 1) % 2 == 0, g, -g)
            rows.append((pad, np.full(len(arr), L, dtype=np.int64), oracle.encode(arr)))
        W = np.concatenate([r[0] for r in rows])
        lengths = np.concatenate([r[1] for r in rows])
        codes = np.concatenate([r[2] for r in rows])
        total = 0
        for mask in range(64):
            edges = [p for i, p in enumerate(pairs) if mask >> i & 1]
            adj = np.zeros((4, 4), dtype=bool)
            for i, j in edges:
                adj[i, j] = adj[j, i] = True
            labels = oracle.labels(adj)
            G = SimplicialGraph(names, [(names[i], names[j]) for i, j in edges])
            nc_ptr, nc_idx = G.noncommuting_csr
            forms, _ = _kernels.batch_normal_form(W, lengths, nc_ptr, nc_idx, G.name_rank, 4)
            lab = labels[codes]
            # one integer per form: code c -> digit 2c-1 (c > 0) or -2c (c < 0)
            digits = np.where(forms > 0, 2 * forms - 1, -2 * forms).astype(np.int64)
            form_id = digits @ oracle.powers
            n_lab = len(np.unique(lab))
            n_form = len(np.unique(form_id))
            n_pair = len(np.unique(lab.astype(np.int64) * oracle.size + form_id))
            assert n_lab == n_form == n_pair, f"partition mismatch on edges {edges}"

            # direct words_equal calls: same-class pairs and random pairs
            order = np.argsort(lab, kind="stable")
            same = np.flatnonzero(lab[order][1:] == lab[order][:-1])
            picks = rng.choice(same, size=min(150, len(same)), replace=False)
            idx_pairs = [(order[p], order[p + 1]) for p in picks]
            idx_pairs += [tuple(rng.integers(0, len(W), 2)) for _ in range(150)]
            for i, j in idx_pairs:
                u = Word(G, W[i, :lengths[i]])
                v = Word(G, W[j, :lengths[j]])
                assert words_equal(u, v) == (lab[i] == lab[j])
            total += len(W)
        elapsed = time.perf_counter() - start
        notes.append(f"{total} words checked in {elapsed:.1f}s")
        assert elapsed < 60


def test_c2_fibonacci(f2, sigma):
    with criterion(2, "sigma orbit lengths are Fibonacci up to 17711"):
        start = time.perf_counter()
        got = iterate_lengths(sigma, 20, threads=1)["a"].lengths
        # direct iteration with plain lists, no reduction needed (positive map)
        w = ["a"]
        want = [1]
        for _ in range(20):
            w = [x for c in w for x in ({"a": ["a", "b"], "b": ["a"]}[c])]
            want.append(len(w))
        assert list(got) == want
        assert got[-1] == 17711
        assert time.perf_counter() - start < 5


@pytest.mark.parametrize("which, k_max", [("psi", 20), ("tau", 15)])
def test_c3_dilatation_accuracy(request, which, k_max):
    phi = request.getfixturevalue(which)
    # eigenvalue oracles: letter-count matrix for psi, abelianisation for tau
    M = [[2, 1], [1, 1]] if which == "psi" else [[1, 1], [1, 2]]
    target = math.log(max(abs(np.linalg.eigvals(np.array(M, dtype=float)))))
    assert abs(target - 2 * math.log(GOLDEN)) < 1e-12
    with criterion(3,  f"lambda_hat of {which} at k={k_max}") as notes:
        start = time.perf_counter()
        got = lam(phi, k_max)
        notes.append(f"lambda_hat={got:.4f} target={target:.4f}")
        assert abs(got - target) <= 0.01
        assert time.perf_counter() - start < 30


def test_c4_rho_polynomial(e3, rho):
    with criterion(4, "rho is PolynomialByTheorem(2) with closed-form lengths") as notes:
        rep = classify_growth(e3, rho, 50, threads=1)
        cls = rep.classification
        assert isinstance(cls, PolynomialByTheorem) and cls.degree_bound == 2
        assert rep.orbits["a"].lengths == tuple(1 + k * (k + 1) // 2 for k in range(51))
        deg = cls.degree_fits["a"][0]
        notes.append(f"degree fit {deg:.3f}")
        assert 1.7 <= deg <= 2.3


def test_c5_example_pipeline(gp, phi_p):
    with criterion(5, "example map: square, diagram, cycle class, purity"):
        assert is_square(phi_p).square
        D = build_diagram(phi_p)
        assert set(D.arcs()) == {("a", "b"), ("b", "a")}
        assert sorted(components(D), key=sorted) == [frozenset("ab"), frozenset("c")]
        C = cycle_analysis(gp, D)
        assert [(c.vertices, c.kind) for c in C.sccs] == [(frozenset("ab"), CycleKind.EMPTY)]
        rep = is_pure(phi_p)
        assert rep.support_ok == {"a": True, "b": True, "c": True}
        assert rep.cyclically_reduced_ok["a"] is False


def test_c6_invariant_subgraph(t3, chi, z2, tau):
    with criterion(6, "invariant subgraph for chi and tau") as notes:
        r = invariant_subgraph(t3, chi, "s")
        assert "s" in r.down_set and "s" not in r.trimmed
        assert r.delta == {"a", "b"}
        assert r.kind is SubgraphKind.EMPTY_CORE and r.core == {"a", "b"}
        full = lam(chi, 20)
        sub = restricted_estimate(chi, r.delta, 20)
        notes.append(f"full={full:.4f} restricted={sub:.4f}")
        assert abs(full - sub) <= 0.02
        r = invariant_subgraph(z2, tau, "a")
        assert r.kind is SubgraphKind.COMPLETE and r.delta == {"a", "b"}


def test_c7_structural_lemmas(square_sample):
    with criterion(7, "no violations, path-commuting, comPersist on square pure powers") as notes:
        notes.append(f"{len(square_sample)} square samples of {SAMPLE_SIZE}")
        assert len(square_sample) >= 200
        failures = []
        for phi, pp in square_sample:
            G = phi.graph
            D = build_diagram(pp.phi_N)
            if cycle_analysis(G, D).violations:
                failures.append(("violation", phi))
            if path_commuting_failures(G, D):
                failures.append(("path-commuting", phi))
            if com_persist_failures(G, D):
                failures.append(("comPersist", phi))
        assert not failures, failures[:3]


def _naive_mod2(psi):
    G = psi.graph
    n = len(G)
    A = np.zeros((n, n), dtype=np.int64)
    for j, s in enumerate(G.vertices):
        for name, e in psi.images[s]:
            A[G.index[name], j] ^= 1
    return A


def test_c8_pure_power(square_sample, sigma):
    with criterion(8, "pure_power gives identity mod 2 and the support clause") as notes:
        for phi, pp in square_sample:
            # recompute the mod-2 matrix of phi^N from its images, letter by letter
            assert np.array_equal(_naive_mod2(pp.phi_N), np.eye(len(phi.graph), dtype=np.int64))
            # and phi^N by plain repeated application
            for v in phi.graph.vertices:
                w = Word.generator(phi.graph, v)
                for _ in range(pp.N):
                    w = apply(phi, w)
                assert words_equal(w, pp.phi_N.images[v])
                assert v in {name for name, _ in reduce(w)}
        assert pure_power(sigma).N == 3
        notes.append(f"N values seen: {sorted({pp.N for _, pp in square_sample})}")


def test_c9_representative_invariance(f2, psi, z2, tau):
    with criterion(9, "lambda_hat unchanged under conjugation, |g| <= 3") as notes:
        rng = random.Random(7)
        worst = 0.0
        for G, phi, k in [(f2, psi, 20), (z2, tau, 15)]:
            base = lam(phi, k)
            for _ in range(12):
                n = rng.randint(1, 3)
                g = Word.from_letters(G, [(rng.choice("ab"), rng.choice([1, -1])) for _ in range(n)])
                d = abs(lam(conjugate_by(phi, g), k) - base)
                worst = max(worst, d)
        notes.append(f"max difference {worst:.4f}")
        assert worst <= 0.05


def test_c10_simple_product(square_sample):
    with criterion(10, "decompose_image on pure maps with acyclic diagrams") as notes:
        rng = random.Random(SAMPLE_SEED + 1)
        pool = [pp.phi_N for _, pp in square_sample]
        # widen the sample with pure powers that need not be square
        for _ in range(200):
            G = random_graph(rng, 6)
            pool.append(pure_power(random_automorphism(G, rng, 6)).phi_N)
        checked = 0
        for psi in pool:
            if not is_pure(psi).pure:
                continue
            D = build_diagram(psi)
            if not is_acyclic(D):
                continue
            T = terminal_partition(D)
            G = psi.graph
            for s in G.vertices:
                d = decompose_image(psi, T, s)
                assert isinstance(d, Decomposition), (psi, s)
                rebuilt = d.t0 * Word.generator(G, s, d.epsilon) * d.t1
                assert words_equal(rebuilt, psi.images[s])
                lower = T.lower(d.layer)
                assert {n for n, _ in d.t0} <= lower and {n for n, _ in d.t1} <= lower
            checked += 1
        notes.append(f"{checked} pure acyclic maps")
        assert checked >= 50
