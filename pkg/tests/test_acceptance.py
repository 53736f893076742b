"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

The lines are collected in conftest and printed in the terminal summary.
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from zeropattern.cli import main
from zeropattern.core import ComplexMatrix, frobenius_norm_sq, quadratic_form
from zeropattern.extremal import (
    check_equality_conditions,
    clique_plus_isolated,
    proposition_matrix,
    turan_norm_sq_formula,
    turan_partite_filled,
)
from zeropattern.motzkin import (
    general_simplex_max,
    lemma1_bound,
    replicator_max,
    saturate,
    symmetrize_support,
)
from zeropattern.numradius import numerical_radius, sampled_lower_bound, spectral_radius_hermitian
from zeropattern.pattern import PatternGraph, omega, omega_bruteforce, omega_exact
from zeropattern.verify import (
    EnsembleSpec,
    check_theorem2,
    check_turan_edge_bound,
    generate_matrix,
    sweep,
)

from conftest import random_complex, random_hermitian


def random_zero_one(rng, n, density):
    a = (rng.random((n, n)) < density).astype(float)
    np.fill_diagonal(a, 0.0)
    return a


def random_symmetric_zero_one(rng, n, density):
    upper = np.triu(rng.random((n, n)) < density, k=1)
    return (upper | upper.T).astype(float)


def test_criterion_01_theorem1_sharpness(record_criterion):
    worst = 0.0
    count = 0
    for n in range(2, 21):
        for r in range(2, n + 1):
            A = clique_plus_isolated(n, r)
            eta = numerical_radius(A).value
            norm_sq = frobenius_norm_sq(A)
            assert norm_sq == r * (r - 1)
            worst = max(worst, abs(eta**2 - (1 - 1 / r) * norm_sq) / norm_sq)
            count += 1
    passed = worst <= 1e-7
    record_criterion(1, passed, f"{count} clique-plus-isolated cases, worst relative gap {worst:.2e} (tol 1e-7)")
    assert passed


def test_criterion_02_theorem2_tightness(record_criterion):
    worst = 0.0
    for n, r in [(4, 2), (6, 2), (6, 3), (8, 2), (8, 4), (12, 3)]:
        A = turan_partite_filled(n, r)
        eta = numerical_radius(A).value
        norm_sq = frobenius_norm_sq(A)
        gap = abs(eta**2 - (1 - 1 / (2 * r) - 1 / (2 * n)) * norm_sq) / norm_sq
        worst = max(worst, gap)
        assert check_theorem2(A).holds
    passed = worst <= 1e-6
    record_criterion(2, passed, f"6 partite-filled cases with r | n, worst relative gap {worst:.2e} (tol 1e-6)")
    assert passed


def test_criterion_03_gap_term(record_criterion):
    failures = []
    count = 0
    for n in range(3, 17):
        for r in range(2, n):
            A = turan_partite_filled(n, r)
            norm_sq = frobenius_norm_sq(A)
            if Fraction(norm_sq) != turan_norm_sq_formula(n, r):
                failures.append((n, r, "norm"))
                continue
            lhs = norm_sq**2 / n**2
            rhs = (1 - 1 / (2 * r) - 1 / (2 * n) - r / (8 * n * n)) * norm_sq
            if lhs < rhs - 1e-9:
                failures.append((n, r, lhs - rhs))
            count += 1
    passed = not failures
    record_criterion(3, passed, f"{count} (n, r) pairs, exact norm formula and gap bound, failures {failures[:3]}")
    assert passed


def test_criterion_04_lemma1_compliance(record_criterion):
    rng = np.random.default_rng(4)
    densities = (0.2, 0.5, 0.8)
    start = time.perf_counter()
    violations = []
    for t in range(500):
        n = 3 + t % 8
        A = random_zero_one(rng, n, densities[t % 3])
        w = omega(A)
        value = general_simplex_max(A).value
        if value > lemma1_bound(w, n) + 1e-8:
            violations.append((t, value, lemma1_bound(w, n)))
    elapsed = time.perf_counter() - start
    passed = not violations and elapsed <= 60.0
    record_criterion(4, passed, f"500 matrices, {len(violations)} violations, {elapsed:.1f}s (limit 60s)")
    assert passed, violations[:3]


def test_criterion_05_motzkin_straus_exactness(record_criterion):
    rng = np.random.default_rng(5)
    misses = []
    for t in range(200):
        n = int(rng.integers(2, 11))
        A = random_symmetric_zero_one(rng, n, rng.uniform(0.1, 0.9))
        target = 1 - 1 / omega(A)
        value = replicator_max(A, restarts=20).value
        if not target - 1e-4 <= value <= target + 1e-9:
            misses.append((t, n, value, target))
    passed = not misses
    record_criterion(5, passed, f"200 graphs, {len(misses)} outside [1-1/omega-1e-4, 1-1/omega+1e-9]")
    assert passed, misses[:3]


def test_criterion_06_decomposition_identities(record_criterion):
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 11))
        A = saturate(random_zero_one(rng, n, rng.uniform(0.1, 0.9)))
        B, C = symmetrize_support(A)
        for x in rng.dirichlet(np.ones(n), size=20):
            sq = float(x @ x)
            bx = quadratic_form(B, x).real
            cx = quadratic_form(C, x).real
            ax = quadratic_form(A, x).real
            worst = max(worst, abs(bx + 2 * cx - (1 - sq)), abs(ax - (0.5 * (1 - sq) + 0.5 * bx)))
    passed = worst <= 1e-12
    record_criterion(6, passed, f"4000 simplex points, worst identity residual {worst:.1e} (tol 1e-12)")
    assert passed


def test_criterion_07_omega_oracles(record_criterion):
    rng = np.random.default_rng(7)
    mismatches = []
    for t in range(500):
        n = int(rng.integers(1, 13))
        G = PatternGraph.from_adjacency(random_symmetric_zero_one(rng, n, rng.random()))
        if omega_exact(G) != omega_bruteforce(G):
            mismatches.append(t)
    passed = not mismatches
    record_criterion(7, passed, f"500 graphs, {len(mismatches)} branch-and-bound vs brute-force mismatches")
    assert passed


def test_criterion_08_numerical_radius_kernel(record_criterion):
    rng = np.random.default_rng(8)
    worst_a = 0.0
    for _ in range(200):
        H = random_hermitian(rng, int(rng.integers(1, 13)), zero_diag=False)
        swept = numerical_radius(H, hermitian_shortcut=False).value
        worst_a = max(worst_a, abs(swept - spectral_radius_hermitian(H)))
    nil = numerical_radius([[0, 1], [0, 0]]).value
    worst_c = -np.inf
    for _ in range(50):
        A = random_complex(rng, int(rng.integers(2, 9)))
        worst_c = max(worst_c, sampled_lower_bound(A, 10_000, rng) - numerical_radius(A).value)
    ok_a, ok_b, ok_c = worst_a <= 1e-7, abs(nil - 0.5) <= 1e-9, worst_c <= 1e-8
    passed = ok_a and ok_b and ok_c
    record_criterion(
        8,
        passed,
        f"(a) Hermitian gap {worst_a:.1e}; (b) nilpotent {nil:.12f}; (c) sampling excess {worst_c:.1e}",
    )
    assert passed


def test_criterion_09_randomized_compliance(record_criterion):
    # sweep raises CounterexampleError carrying the matrix JSON on any violation
    for kind, bound in (("hermitian_gaussian", "theorem1"), ("complex_gaussian", "theorem2")):
        for t in range(500):
            spec = EnsembleSpec(kind, n=2 + t % 11, trials=1, seed=t)
            sweep(spec, bound, abort_on_violation=True)
    record_criterion(9, True, "500 Hermitian (theorem1) and 500 complex (theorem2) trials, no violations")


def random_configuration(rng, r):
    labels = []
    for k in range(1, r + 1):
        labels += [k] * int(rng.integers(1, 4))
    labels += [0] * int(rng.integers(0, 3))
    labels = list(rng.permutation(labels))
    lab = np.array(labels)
    x = np.zeros(len(labels), dtype=complex)
    for k in range(1, r + 1):
        idx = np.flatnonzero(lab == k)
        mass = rng.dirichlet(np.ones(idx.size)) / r
        x[idx] = np.sqrt(mass) * np.exp(2j * np.pi * rng.random(idx.size))
    return [int(v) for v in labels], x


def test_criterion_10_proposition_round_trip(record_criterion):
    rng = np.random.default_rng(10)
    cert_fail = eq_fail = 0
    for _ in range(100):
        r = int(rng.integers(2, 6))
        labels, x = random_configuration(rng, r)
        c = rng.uniform(0.5, 2.0) * np.exp(2j * np.pi * rng.random())
        A = proposition_matrix(labels, x, c)
        cert = check_equality_conditions(A, x)
        cert_fail += not cert.overall
        norm_sq = frobenius_norm_sq(A)
        eta = numerical_radius(A).value
        eq_fail += abs(eta**2 - (1 - 1 / r) * norm_sq) > 1e-7 * norm_sq
    passed = cert_fail == 0 and eq_fail == 0
    record_criterion(
        10,
        passed,
        f"100 configurations with non-real c: {cert_fail} certificate failures, {eq_fail} without equality"
        + ("" if passed else " (equality needs real cyclic products a_ij a_jk a_ki)"),
    )
    assert passed


def complete_multipartite(n, r):
    labels = np.arange(n) * r // n
    return (labels[:, None] != labels[None, :]).astype(float)


def test_criterion_11_turan_corollary(record_criterion):
    rng = np.random.default_rng(11)
    failures = 0
    for _ in range(200):
        n = int(rng.integers(1, 15))
        failures += not check_turan_edge_bound(random_symmetric_zero_one(rng, n, rng.random())).holds
    worst = 0.0
    cases = 0
    for n in range(2, 15):
        for r in range(2, n + 1):
            if n % r == 0:
                rep = check_turan_edge_bound(complete_multipartite(n, r))
                assert rep.omega == r
                worst = max(worst, abs(rep.slack))
                cases += 1
    passed = failures == 0 and worst <= 1e-9
    record_criterion(11, passed, f"200 random graphs, {failures} failures; {cases} r | n equality cases, max slack {worst:.1e}")
    assert passed


def test_criterion_12_cli_determinism(record_criterion, tmp_path, capsys):
    outputs = []
    for name in ("first.csv", "second.csv"):
        path = tmp_path / name
        code = main([
            "sweep", "--ensemble", "pattern_planted", "-n", "7", "--density", "0.5",
            "--forced-omega", "3", "--trials", "20", "--seed", "12", "--bound", "theorem2",
            "--out", str(path),
        ])
        assert code == 0
        outputs.append(path.read_bytes())
    capsys.readouterr()
    passed = outputs[0] == outputs[1] and len(outputs[0].splitlines()) == 21
    record_criterion(12, passed, f"two seeded sweeps, byte-identical CSV ({len(outputs[0])} bytes)")
    assert passed
