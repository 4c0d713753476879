"""The eight acceptance criteria, each reporting one PASS/FAIL line."""

import cmath
import time
from fractions import Fraction

import numpy as np

from oracles import coefficient_grid, enumerate_norm, grid_search_lambda
from projconst import (
    DiagonalIsometry,
    ExtendedVector,
    HyperplaneFunctional,
    blatter_cheney,
    conjugate_functional,
    conjugate_vector,
    curve_g,
    design_for_target,
    h_an,
    min_projection_norm,
    mixed_lambda,
    operator_norm,
    pairing,
    real_part_reduce,
    sign_normalize,
    truncation_gaps,
    verify_certificate,
)
from projconst.cli import random_instances
from projconst.serialization import certificate_from_obj, certificate_to_obj, dumps, loads

F = Fraction


def test_1_symmetric_kernels(acceptance_report):
    start = time.perf_counter()
    closed_err = solver_err = 0.0
    for n in range(3, 13):
        h = [1 / n] * n
        closed_err = max(closed_err, abs(blatter_cheney(h) - (2 - 2 / n)))
        solver_err = max(solver_err, abs(min_projection_norm(HyperplaneFunctional(tuple(h))).lam - (2 - 2 / n)))
    elapsed = time.perf_counter() - start
    ok = closed_err <= 1e-12 and solver_err <= 1e-8 and elapsed < 1
    acceptance_report(
        "1 symmetric kernels",
        ok,
        f"closed-form err {closed_err:.1e}, solver err {solver_err:.1e}, {elapsed:.3f}s",
    )
    assert ok


def test_2_pure_singular_dichotomy(acceptance_report):
    attaining = HyperplaneFunctional((), 1, True)
    r = min_projection_norm(attaining)
    witness_norm = operator_norm(attaining, r.minimizer).norm
    ok_attaining = r.lam == 2 and r.attained and witness_norm == 2

    free = HyperplaneFunctional((), 1, False)
    q = min_projection_norm(free)
    levels = (11, 101, 1001)
    gaps = truncation_gaps(free, levels)
    expected = (0.1, 0.01, 0.001)
    gap_err = max(abs(d - e) for d, e in zip(gaps.gaps, expected))
    exact = truncation_gaps(free, levels, exact=True).gaps == tuple(F(1, m - 1) for m in levels)
    ok = ok_attaining and q.lam == 2 and not q.attained and gap_err <= 1e-10 and exact
    acceptance_report(
        "2 pure singular dichotomy",
        ok,
        f"attaining lambda {r.lam} witness norm {witness_norm}; non-attaining lambda {q.lam} "
        f"attained={q.attained}; gap err {gap_err:.1e}, exact 1/(m-1): {exact}",
    )
    assert ok


def test_3_formula_vs_solver_sweep(acceptance_report):
    start = time.perf_counter()
    instances = random_instances(500, seed=7)
    worst = 0.0
    for f in instances:
        assert all(abs(x) < 0.5 for x in f.atomic)
        worst = max(worst, abs(min_projection_norm(f).lam - mixed_lambda(f)))
    elapsed = time.perf_counter() - start
    ok = len(instances) == 500 and worst <= 1e-7 and elapsed < 10
    acceptance_report("3 formula vs solver sweep", ok, f"500 instances, max |delta| {worst:.1e}, {elapsed:.2f}s")
    assert ok


def test_4_designer_grid(acceptance_report):
    targets = (1.05, 1.1, 1.3, 1.5, 1.7, 1.9, 1.99, 2)
    failures = []
    for target in targets:
        c = design_for_target(target)
        again = certificate_from_obj(loads(dumps(certificate_to_obj(c))))
        if not (verify_certificate(c) and verify_certificate(again)):
            failures.append(f"{target}: does not verify")
        if abs(c.lambda_closed_form - target) > 1e-9:
            failures.append(f"{target}: closed form off by {abs(c.lambda_closed_form - target):.1e}")
        if c.kind == "mixed":
            g = c.gap_evidence
            positive = all(d > 0 for d in g.gaps)
            nonincreasing = all(b <= a for a, b in zip(g.gaps, g.gaps[1:]))
            if not (positive and nonincreasing and g.levels[-1] == 10**4 and g.gaps[-1] <= 1e-3):
                failures.append(f"{target}: gap evidence {g.gaps}")
    ok = not failures
    acceptance_report("4 designer grid", ok, "all 8 certificates verify" if ok else "; ".join(failures))
    assert ok


def test_5_curve_endpoints(acceptance_report):
    endpoint_ok = True
    interior_err = 0.0
    for n in range(3, 11):
        endpoint_ok &= curve_g(n, 1) == 2 - F(2, n)
        endpoint_ok &= curve_g(n, F(1, n - 1)) == 1
        endpoint_ok &= curve_g(n, 1.0) == float(2 - F(2, n))
        endpoint_ok &= curve_g(n, 1 / (n - 1)) == 1
        lo = 1 / (n - 1)
        for a in np.linspace(lo, 1, 51)[1:]:
            a = float(a)
            interior_err = max(interior_err, abs(curve_g(n, a) - blatter_cheney(h_an(n, a))))
    ok = endpoint_ok and interior_err <= 1e-12
    acceptance_report(
        "5 curve endpoints", ok, f"endpoints exact: {endpoint_ok}, interior err {interior_err:.1e} (50 a per n)"
    )
    assert ok


def test_6_oracle_equivalence(acceptance_report):
    start = time.perf_counter()
    grid = coefficient_grid(0.05, 3)
    rng = np.random.default_rng(6)
    grid_err = 0.0
    for h in grid:
        oracle = grid_search_lambda(h)
        grid_err = max(grid_err, abs(min_projection_norm(HyperplaneFunctional(h)).lam - oracle))
        # the oracle is symmetric under y -> -y on its grid, so signed
        # coefficients share its value
        signed = tuple(x * s for x, s in zip(h, rng.choice((-1.0, 1.0), 3)))
        grid_err = max(grid_err, abs(min_projection_norm(HyperplaneFunctional(signed)).lam - oracle))

    enum_err = 0.0
    for _ in range(1000):
        m = int(rng.integers(1, 9))
        h = rng.uniform(-1, 1, m)
        h /= np.abs(h).sum()
        y = rng.uniform(-3, 3, m)
        k = int(np.argmax(np.abs(h)))
        y[k] = 0
        y[k] = (1 - h @ y) / h[k]
        f = HyperplaneFunctional(tuple(h))
        norm = operator_norm(f, ExtendedVector(tuple(y))).norm
        enum_err = max(enum_err, abs(norm - enumerate_norm(h, y)))
    elapsed = time.perf_counter() - start
    ok = grid_err <= 1e-3 and enum_err <= 1e-12 and elapsed < 60
    acceptance_report(
        "6 oracle equivalence",
        ok,
        f"{len(grid)} grid functionals (plus signed variants) max err {grid_err:.1e}; "
        f"1000 enumerations max err {enum_err:.1e}; {elapsed:.1f}s",
    )
    assert ok


def _random_complex_instance(rng):
    m = int(rng.integers(1, 7))
    gamma = float(rng.uniform(0, 0.6)) if rng.random() < 0.5 else 0.0
    mods = rng.uniform(0.05, 1, m)
    mods *= (1 - gamma) / mods.sum()
    h = mods * np.exp(1j * rng.uniform(0, 2 * np.pi, m))
    f = HyperplaneFunctional(tuple(complex(x) for x in h), gamma, False)
    w = rng.normal(size=m) + 1j * rng.normal(size=m)
    t, s = 0.0, 0j
    if gamma:
        t = float(rng.uniform(0.2, 2))
        s = t * rng.uniform(0, 0.99) * cmath.exp(1j * rng.uniform(0, 2 * np.pi))
    w[0] = 0
    w[0] = (1 - h @ w - gamma * s) / h[0]
    return f, ExtendedVector(tuple(complex(v) for v in w), t, s)


def test_7_complex_reduction(acceptance_report):
    rng = np.random.default_rng(77)
    worst = -np.inf
    for _ in range(200):
        f, w = _random_complex_instance(rng)
        g, T = sign_normalize(f)
        v = conjugate_vector(T, w)
        y = real_part_reduce(g, v)
        assert abs(pairing(g, y) - 1) <= 1e-10
        worst = max(worst, operator_norm(g, y).norm - operator_norm(f, w).norm)
    ok = worst <= 1e-12
    acceptance_report("7 complex reduction", ok, f"200 pairs, max (reduced - original) {worst:.2e}")
    assert ok


def test_8_invariance(acceptance_report):
    rng = np.random.default_rng(88)
    quarter_turns = (1, -1, 1j, -1j)
    exact_ok = True
    phase_err = 0.0
    lam_err = 0.0
    for i in range(200):
        m = int(rng.integers(1, 7))
        gamma = float(rng.uniform(0, 0.5)) if rng.random() < 0.5 else 0.0
        h = rng.uniform(0.05, 1, m)
        h *= (1 - gamma) / h.sum()
        h = h * rng.choice((-1.0, 1.0), m)
        f = HyperplaneFunctional(tuple(float(x) for x in h), gamma, True)
        y = rng.uniform(-2, 2, m)
        s = 0.0
        if gamma:
            s = float(rng.uniform(-1, 1))
        y[0] = 0
        y[0] = (1 - h @ y - gamma * s) / h[0]
        vec = ExtendedVector(tuple(float(v) for v in y), abs(s), s)
        base = operator_norm(f, vec).norm

        # sign and quarter-turn isometries: exact in floating point
        T = DiagonalIsometry(tuple(quarter_turns[j] for j in rng.integers(0, 4, m)))
        exact_ok &= operator_norm(conjugate_functional(T, f), conjugate_vector(T, vec)).norm == base

        # rational data with real signs: exact by construction
        fq = HyperplaneFunctional(tuple(F(x) for x in f.atomic), F(f.gamma), True)
        norm_q = fq.norm
        fq = HyperplaneFunctional(tuple(x / norm_q for x in fq.atomic), fq.gamma / norm_q, True)
        vq = ExtendedVector(tuple(F(v) for v in vec.prefix), abs(F(s)) / norm_q if gamma else 0, F(s) / norm_q)
        pq = pairing(fq, vq)
        vq = ExtendedVector(tuple(v / pq for v in vq.prefix), vq.tail_mag / pq, vq.tail_pair / pq)
        S = DiagonalIsometry(tuple(int(x) for x in rng.choice((-1, 1), m)))
        exact_ok &= operator_norm(conjugate_functional(S, fq), conjugate_vector(S, vq)).norm == operator_norm(fq, vq).norm

        # general unimodular phases: equal up to the rounding of a * conj(a)
        U = DiagonalIsometry(tuple(cmath.exp(1j * th) for th in rng.uniform(0, 2 * np.pi, m)))
        fu = conjugate_functional(U, f)
        phase_err = max(phase_err, abs(operator_norm(fu, conjugate_vector(U, vec)).norm - base))

        g, _ = sign_normalize(fu)
        lam_err = max(lam_err, abs(min_projection_norm(g.real_part()).lam - min_projection_norm(f).lam))
    ok = exact_ok and phase_err <= 1e-14 and lam_err <= 1e-10
    acceptance_report(
        "8 invariance",
        ok,
        f"200 conjugations: sign/quarter-turn and rational norms exact: {exact_ok}; "
        f"general phases norm err {phase_err:.1e}; solver lambda err {lam_err:.1e}",
    )
    assert ok
