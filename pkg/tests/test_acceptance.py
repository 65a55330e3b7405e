"""Acceptance suite: one test per criterion, each at its stated tolerance.

Every test prints a single PASS line with the measured quantities so a -s
run reads as a checklist. Random instances are drawn from the eccentric
ensemble in helpers.py with pinned seeds.
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from discokit import (
    NotConverged,
    build_M,
    critical_angles,
    enumerate_sheets,
    find_degree,
    gradient_support,
    project,
    rank_defect,
    sample_S,
    support_discotope,
)
from discokit.dice import classify_regions, dice_discotope, solve_t3, T3Roots
from discokit.fixtures import verify_fixture
from discokit.linalg import smallest_singular_ratio
from helpers import eccentric_discotope

pytestmark = pytest.mark.acceptance


def _regular_direction(dt, rng):
    while True:
        u = rng.standard_normal(dt.ambient_dim)
        u /= np.linalg.norm(u)
        if all(np.linalg.norm(d.basis.T @ u) > 1e-8 for d in dt.discs):
            return u


def test_criterion_01_dice_degree_and_term_count():
    """Degree 24, 455 terms, even exponents, held-out residual <= 1e-7, <= 60 s."""
    t0 = time.time()
    result = verify_fixture("dice", seed=2024)
    elapsed = time.time() - t0
    detail = {label: (ok, text) for label, ok, text in result.checks}
    assert detail["degree"][0], detail["degree"][1]
    assert detail["terms"][0], detail["terms"][1]
    assert detail["even exponents"][0], detail["even exponents"][1]
    assert detail["held-out residual"][0], detail["held-out residual"][1]
    assert result.passed
    assert elapsed <= 60.0
    print(f"\nACCEPTANCE 1 PASS: dice degree=24 terms=455, "
          f"{detail['held-out residual'][1]}, {elapsed:.1f}s")


def test_criterion_02_r3_quartic_exact_match():
    """Fitted quartic equals the printed 7-term equation to 1e-6, <= 2 s."""
    t0 = time.time()
    result = verify_fixture("r3-quartic", seed=2024)
    elapsed = time.time() - t0
    assert result.passed, result.summary_lines()
    coef_check = [text for label, ok, text in result.checks if "coefficients" in label]
    assert elapsed <= 2.0
    print(f"\nACCEPTANCE 2 PASS: {coef_check[0]}, {elapsed:.2f}s")


def test_criterion_03_r4_quartic_match_and_rational_point():
    """Printed R^4 quartic recovered; (0,2,0,0) is an exact rational zero; <= 2 s."""
    t0 = time.time()
    result = verify_fixture("r4-quartic", seed=2024)
    elapsed = time.time() - t0
    assert result.passed, result.summary_lines()
    printed = {
        (4, 0, 0, 0): 1, (2, 2, 0, 0): 2, (0, 4, 0, 0): 1,
        (2, 0, 2, 0): 2, (0, 2, 2, 0): 2, (0, 0, 4, 0): 1,
        (2, 0, 0, 2): -2, (0, 2, 0, 2): 2, (0, 0, 2, 2): 2,
        (0, 0, 0, 4): 1, (0, 2, 0, 0): -4, (0, 0, 2, 0): -4,
    }
    x = (Fraction(0), Fraction(2), Fraction(0), Fraction(0))
    total = Fraction(0)
    for e, c in printed.items():
        term = Fraction(c)
        for xi, ei in zip(x, e):
            term *= xi ** ei
        total += term
    assert total == 0
    assert elapsed <= 2.0
    print(f"\nACCEPTANCE 3 PASS: r4 quartic matched, rational zero exact, {elapsed:.2f}s")


def test_criterion_04_join_generators():
    """1000 join samples satisfy all four printed generators to 1e-9, <= 1 s."""
    t0 = time.time()
    result = verify_fixture("r6-join", seed=2024, sample_count=1000)
    elapsed = time.time() - t0
    assert result.passed, result.summary_lines()
    assert len(result.checks) == 4
    assert elapsed <= 1.0
    worst = max(float(text.split("=")[1].split("(")[0]) for _, _, text in result.checks)
    print(f"\nACCEPTANCE 4 PASS: four generators, worst |value| = {worst:.2e}, {elapsed:.2f}s")


PLANAR_N2_SEEDS = (101, 102, 103, 104, 105)
PLANAR_N3_SEED = 301


def test_criterion_05_planar_degree_law():
    """find_degree = 8 for five random ellipse pairs; 24 for a triple (<= 120 s)."""
    for seed in PLANAR_N2_SEEDS:
        dt = eccentric_discotope(seed, 2, (2, 2))
        cloud = sample_S(dt, 150, seed=seed * 7 + 1, guard_count=100)
        deg = find_degree(cloud, 8, "even_total")
        assert deg == 8, f"seed {seed}: find_degree = {deg}"
    t0 = time.time()
    dt3 = eccentric_discotope(PLANAR_N3_SEED, 2, (2, 2, 2))
    cloud3 = sample_S(dt3, 700, seed=555, guard_count=400)
    deg3 = find_degree(cloud3, 24, "even_total")
    elapsed = time.time() - t0
    assert deg3 == 24, f"N=3: find_degree = {deg3}"
    assert elapsed <= 120.0
    print(f"\nACCEPTANCE 5 PASS: N=2 degree 8 on 5 seeds; N=3 degree 24 in {elapsed:.1f}s")


GEN020_SEED = 401
GEN030_SEED = 502


def test_criterion_06_degree_bound_attainment():
    """Generic (0,2,0) gives 4 = 2^2 C(2,2); generic (0,3,0) gives 24 = 2^3 C(3,2)."""
    dt2 = eccentric_discotope(GEN020_SEED, 3, (2, 2))
    cloud2 = sample_S(dt2, 150, seed=11, guard_count=100)
    deg2 = find_degree(cloud2, 4, "even_total")
    assert deg2 == 4

    dt3 = eccentric_discotope(GEN030_SEED, 3, (2, 2, 2))
    cloud3 = sample_S(dt3, 1200, seed=99, guard_count=400)
    bound = 2 ** 3 * 3
    # Criterion-local residual gate: measured fit accuracy for verified
    # (0,3,0) instances is <= ~1e-5 in the 1547-column basis, while guarded
    # pseudo-equation floors below degree 24 sit at ~0.9; 1e-4 separates the
    # two by four orders either way. Some random instances have coefficient
    # spreads beyond double precision at ANY gate; those are findings.
    deg3 = find_degree(cloud3, bound, "even_total", residual_tol=1e-4)
    assert deg3 is not None and deg3 <= bound
    if deg3 != bound:
        print(f"\nFINDING: (0,3,0) instance fitted at degree {deg3}, below the bound {bound}")
    assert deg3 == bound
    print(f"\nACCEPTANCE 6 PASS: (0,2,0) degree 4; (0,3,0) degree 24 (bound attained)")


def test_criterion_07_rank_defect_suite():
    """500 critical configs have sv-ratio <= 1e-8; 500 random ones full rank; <= 5 s."""
    t0 = time.time()
    fixtures = [
        dice_discotope(),
        eccentric_discotope(PLANAR_N2_SEEDS[0], 2, (2, 2)),
        eccentric_discotope(PLANAR_N3_SEED, 2, (2, 2, 2)),
    ]
    rng = np.random.default_rng(77)
    for dt in fixtures:
        sheets = enumerate_sheets(dt.num_discs)
        for i in range(500):
            u = _regular_direction(dt, rng)
            sigma = sheets[i % len(sheets)]
            theta = critical_angles(dt, u, sigma)
            assert smallest_singular_ratio(build_M(dt, theta)) <= 1e-8
        full = 0
        for _ in range(500):
            theta = rng.uniform(0, 2 * np.pi, dt.num_discs)
            if rank_defect(build_M(dt, theta)) == 0:
                full += 1
        assert full == 500
    elapsed = time.time() - t0
    assert elapsed <= 5.0
    print(f"\nACCEPTANCE 7 PASS: 3 fixtures x (500 critical + 500 generic), {elapsed:.1f}s")


def test_criterion_08_region_count():
    """10^5 critical samples fall into exactly 32 = 4*4*2 classes."""
    classes = classify_regions(100_000, seed=31415)
    assert len(classes) == 32
    print(f"\nACCEPTANCE 8 PASS: {len(classes)} non-empty (cell, branch) classes")


def test_criterion_09_membership_oracle():
    """~200 probes at 0.9/1.0/1.1 x boundary, zero misclassifications at tol 1e-6."""
    dice = dice_discotope()
    rng = np.random.default_rng(2718)
    n_rays = 67
    results = {0.9: 0, 1.0: 0, 1.1: 0}
    for _ in range(n_rays):
        u = _regular_direction(dice, rng)
        b = gradient_support(dice, u)
        for lam in (0.9, 1.0, 1.1):
            p = lam * b
            try:
                report = project(dice, p, tol=1e-6, max_iter=20000)
            except NotConverged as exc:
                report = exc.report
                verdict = "boundary"
            else:
                verdict = "inside" if report.is_inside else "outside"
            if lam == 0.9:
                assert verdict == "inside", f"0.9 probe misclassified as {verdict}"
            elif lam == 1.0:
                # boundary probes may resolve inside or stall; they must never
                # produce a validated separator
                assert verdict in ("inside", "boundary"), "boundary probe separated"
            else:
                assert verdict == "outside", f"1.1 probe misclassified as {verdict}"
                cert = report.certificate
                assert float(cert.u @ p) > support_discotope(dice, cert.u) + 1e-8
            results[lam] += 1
    assert all(v == n_rays for v in results.values())
    print(f"\nACCEPTANCE 9 PASS: {3 * n_rays} probes, zero misclassifications")


def test_criterion_10_vieta_invariant():
    """10^4 random (t1, t2) with a != 0: root product within 1e-10 of -1."""
    rng = np.random.default_rng(424242)
    checked = 0
    worst = 0.0
    while checked < 10_000:
        t1, t2 = rng.standard_normal(2) * 1.5
        sol = solve_t3(t1, t2)
        if not isinstance(sol, T3Roots):
            continue
        prod = sol.product
        worst = max(worst, abs(prod + 1.0) / max(1.0, abs(prod)))
        checked += 1
    assert worst <= 1e-10
    print(f"\nACCEPTANCE 10 PASS: 10^4 fibers, worst |t- t+ + 1| = {worst:.2e}")
