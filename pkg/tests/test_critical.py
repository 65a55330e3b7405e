import numpy as np
import pytest

from discokit import (
    ConditionViolated,
    DiscotopeSpec,
    NotTwoDiscs,
    SampleCloud,
    build_M,
    critical_angles,
    enumerate_sheets,
    gradient_support,
    rank_defect,
    sample_S,
    sample_critical_point,
    sample_join,
)
from discokit.fixtures import get_fixture
from discokit.implicit import evaluate
from discokit.linalg import numeric_rank, smallest_singular_ratio

SQ2 = np.sqrt(2.0)
SQ3 = np.sqrt(3.0)


def test_enumerate_sheets_counts():
    assert len(enumerate_sheets(1)) == 1
    assert len(enumerate_sheets(2)) == 2
    assert len(enumerate_sheets(3)) == 4
    for sigma in enumerate_sheets(3):
        assert sigma[0] == 1
    np.testing.assert_array_equal(enumerate_sheets(3)[0], [1, 1, 1])


def test_build_M_dice_zero_angles(dice):
    M = build_M(dice, np.zeros(3))
    np.testing.assert_allclose(M, [[0, 0, 1], [1, 0, 0], [0, 1, 0]], atol=1e-15)
    assert numeric_rank(M) == 3
    assert rank_defect(M) == 0


def test_build_M_dice_quarter_angles(dice):
    M = build_M(dice, np.full(3, np.pi / 2))
    np.testing.assert_allclose(M, [[0, -1, 0], [0, 0, -1], [-1, 0, 0]], atol=1e-15)
    assert rank_defect(M) == 0


def test_build_M_rejects_higher_discs():
    with pytest.raises(NotTwoDiscs):
        build_M(get_fixture("r4-quartic").discotope, np.zeros(2))


def test_single_row_always_rank_deficient():
    dt = DiscotopeSpec((np.eye(2),))
    for t in (0.0, 0.4, 2.0):
        assert rank_defect(build_M(dt, [t])) == 1


def test_sample_critical_point_all_plus_is_gradient(dice, rng):
    for _ in range(20):
        u = rng.standard_normal(3)
        u /= np.linalg.norm(u)
        p = sample_critical_point(dice, u, [1, 1, 1])
        np.testing.assert_allclose(p, gradient_support(dice, u), atol=1e-14)


def test_sample_critical_point_mixed_sign_is_rank_deficient(dice):
    u = np.array([1.0, 1.0, 1.0]) / SQ3
    sigma = np.array([1, -1, 1])
    p = sample_critical_point(dice, u, sigma)
    np.testing.assert_allclose(p, [0.0, SQ2, 0.0], atol=1e-14)
    theta = critical_angles(dice, u, sigma)
    assert rank_defect(build_M(dice, theta)) >= 1


def test_sample_critical_point_on_printed_quartic():
    fx = get_fixture("r3-quartic")
    u = np.array([1.0, 0.0, 1.0]) / SQ2
    p = sample_critical_point(fx.discotope, u, [1, 1])
    assert abs(evaluate(fx.known_equations[0], p)) < 1e-14
    # the hand-checkable boundary sum (0,0,1) + (1,0,0)
    assert abs(evaluate(fx.known_equations[0], np.array([1.0, 0.0, 1.0]))) < 1e-15


def test_sign_sheet_central_symmetry(dice, rng):
    for sigma in enumerate_sheets(3):
        u = rng.standard_normal(3)
        u /= np.linalg.norm(u)
        p_plus = sample_critical_point(dice, u, sigma)
        p_minus = sample_critical_point(dice, -u, sigma)
        np.testing.assert_array_equal(p_plus, -p_minus)


def test_boundary_sheet_maximality(dice, rng):
    for _ in range(30):
        u = rng.standard_normal(3)
        u /= np.linalg.norm(u)
        top = float(u @ sample_critical_point(dice, u, [1, 1, 1]))
        for sigma in enumerate_sheets(3)[1:]:
            other = float(u @ sample_critical_point(dice, u, sigma))
            assert top >= other - 1e-10


def test_sample_S_shapes_and_metadata(dice):
    cloud = sample_S(dice, 25, seed=7, sheets="all")
    assert len(cloud) == 4 * 25
    assert cloud.points.shape == (100, 3)
    assert cloud.xis.shape == (100, 3, 3)
    # stored point equals the signed sum of its contributions
    recon = np.einsum("ij,ijk->ik", cloud.sigmas.astype(float), cloud.xis)
    assert np.abs(cloud.points - recon).max() <= 1e-12


def test_sample_S_boundary_only_exposure_identity(dice):
    cloud = sample_S(dice, 40, seed=3, sheets="boundary_only")
    assert len(cloud) == 40
    from discokit import support_discotope

    for p, u in zip(cloud.points, cloud.us):
        assert float(u @ p) == pytest.approx(support_discotope(dice, u), rel=1e-10)


def test_sample_S_deterministic(dice):
    c1 = sample_S(dice, 30, seed=99)
    c2 = sample_S(dice, 30, seed=99)
    np.testing.assert_array_equal(c1.points, c2.points)
    c3 = sample_S(dice, 30, seed=100)
    assert np.abs(c1.points - c3.points).max() > 1e-3


def test_sample_S_planar_two_sheets():
    from helpers import eccentric_discotope

    dt = eccentric_discotope(5, 2, (2, 2))
    cloud = sample_S(dt, 10, seed=1)
    assert sorted(set(cloud.sheet_ids.tolist())) == [0, 1]  # 2^(N-1) sheets
    assert len(cloud) == 20


def test_sample_S_requires_nondegeneracy():
    with pytest.raises(ConditionViolated):
        sample_S(get_fixture("r6-join").discotope, 5, seed=0)


def test_sample_S_guard_points_on_variety(dice):
    fx = get_fixture("r3-quartic")
    cloud = sample_S(fx.discotope, 20, seed=11, guard_count=15)
    assert cloud.guard_points is not None
    assert len(cloud.guard_points) == 2 * 15  # per sheet
    worst = max(abs(evaluate(fx.known_equations[0], g)) for g in cloud.guard_points)
    assert worst < 1e-12


def test_sample_join_r6_satisfies_generators():
    fx = get_fixture("r6-join")
    cloud = sample_join(fx.discotope, 200, seed=4)
    for gen in fx.known_equations:
        worst = max(abs(evaluate(gen, p)) for p in cloud.points)
        assert worst <= 1e-9


def test_sample_join_single_circle_relations():
    rng = np.random.default_rng(8)
    q, _ = np.linalg.qr(rng.standard_normal((3, 2)))
    dt = DiscotopeSpec((q,))
    cloud = sample_join(dt, 100, seed=2)
    normal = np.cross(q[:, 0], q[:, 1])
    for p in cloud.points:
        assert abs(normal @ p) < 1e-12       # linear relation of the span
        assert np.linalg.norm(p) == pytest.approx(1.0, abs=1e-12)  # unit circle


def test_sample_join_two_segments_four_points():
    dt = DiscotopeSpec((np.array([[1.0], [0.0], [0.0]]),
                        np.array([[0.0], [1.0], [1.0]])))
    cloud = sample_join(dt, 100, seed=6)
    uniq = {tuple(np.round(p, 9)) for p in cloud.points}
    assert len(uniq) == 4


def test_sample_join_requires_reverse_condition(dice):
    with pytest.raises(ConditionViolated):
        sample_join(dice, 5, seed=0)


def test_join_tangent_rank_matches_dimension():
    # finite-difference tangent rank at join samples: sum (n_j - 1) = 4 here
    fx = get_fixture("r6-join")
    dt = fx.discotope
    cloud = sample_join(dt, 10, seed=12)
    h = 1e-4
    for idx in range(10):
        tangents = []
        for j, disc in enumerate(dt.discs):
            z, *_ = np.linalg.lstsq(disc.basis, cloud.xis[idx, j], rcond=None)
            from discokit.linalg import orthonormal_complement

            for v in orthonormal_complement(z):
                zp = z + h * v
                zm = z - h * v
                fp = disc.basis @ (zp / np.linalg.norm(zp))
                fm = disc.basis @ (zm / np.linalg.norm(zm))
                tangents.append((fp - fm) / (2 * h))
        rank = numeric_rank(np.column_stack(tangents), rel_tol=1e-6)
        assert rank == 4


def test_rank_defect_at_critical_configs_2disc_fixtures(dice, rng):
    for sigma in enumerate_sheets(3):
        for _ in range(25):
            u = rng.standard_normal(3)
            u /= np.linalg.norm(u)
            theta = critical_angles(dice, u, sigma)
            assert smallest_singular_ratio(build_M(dice, theta)) <= 1e-8


def test_full_rank_at_random_angles(dice, rng):
    for _ in range(200):
        theta = rng.uniform(0, 2 * np.pi, 3)
        assert rank_defect(build_M(dice, theta)) == 0


# --- cloud export ------------------------------------------------------------


def test_cloud_csv_round_trip(dice, tmp_path):
    cloud = sample_S(dice, 10, seed=21)
    path = tmp_path / "cloud.csv"
    cloud.to_csv(path, header_comment="test-header")
    text = path.read_text()
    assert text.startswith("# test-header\n")
    assert text.splitlines()[1] == "x1,x2,x3,u1,u2,u3,sigma,sheet_id"
    loaded = SampleCloud.from_csv(path)
    np.testing.assert_array_equal(loaded.points, cloud.points)
    np.testing.assert_array_equal(loaded.sigmas, cloud.sigmas)
    np.testing.assert_array_equal(loaded.sheet_ids, cloud.sheet_ids)


def test_cloud_json_round_trip(dice, tmp_path):
    cloud = sample_S(dice, 8, seed=22, guard_count=5)
    path = tmp_path / "cloud.json"
    cloud.to_json(path)
    loaded = SampleCloud.from_json(path)
    np.testing.assert_array_equal(loaded.points, cloud.points)
    np.testing.assert_array_equal(loaded.xis, cloud.xis)
    np.testing.assert_array_equal(loaded.guard_points, cloud.guard_points)


def test_cloud_csv_byte_identical(dice, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    sample_S(dice, 12, seed=5).to_csv(a, header_comment="h")
    sample_S(dice, 12, seed=5).to_csv(b, header_comment="h")
    assert a.read_bytes() == b.read_bytes()
