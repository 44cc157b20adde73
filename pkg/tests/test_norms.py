import math

import numpy as np
import pytest

from randomix.haar import Seed, rng_from, sample_haar_unitary
from randomix.norms import (
    INF,
    check_hoelder,
    check_interpolation,
    check_reverse_triangle,
    mixed_gap_bound,
    parse_exponent,
    schatten_norm,
    singular_values,
)


def random_complex(rng, d):
    return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))


def brute_norm(a, p):
    """Independent oracle: singular values by SVD, then the plain p-sum."""
    s = np.linalg.svd(a, compute_uv=False)
    if p == INF:
        return float(np.max(s))
    return float(np.sum(s**p) ** (1.0 / p))


class TestSchattenNorm:
    def test_identity(self):
        for d in (2, 5):
            assert schatten_norm(np.eye(d), 3) == pytest.approx(d ** (1 / 3))
            assert schatten_norm(np.eye(d), INF) == pytest.approx(1.0)

    def test_diag_3_4(self):
        a = np.diag([3.0, 4.0])
        assert schatten_norm(a, 1) == pytest.approx(7.0, abs=1e-12)
        assert schatten_norm(a, 2) == pytest.approx(5.0, abs=1e-12)
        assert schatten_norm(a, INF) == pytest.approx(4.0, abs=1e-12)

    def test_pure_projector_norm_one(self):
        rng = rng_from(Seed(1))
        v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        v /= np.linalg.norm(v)
        proj = np.outer(v, v.conj())
        for p in (1, 1.5, 2, 3, INF):
            assert schatten_norm(proj, p) == pytest.approx(1.0, abs=1e-9)

    def test_matches_svd_oracle(self):
        rng = rng_from(Seed(2))
        for _ in range(50):
            a = random_complex(rng, 6)
            for p in (1, 1.5, 2, 3, INF):
                assert schatten_norm(a, p) == pytest.approx(brute_norm(a, p), rel=1e-9)

    def test_p2_fast_path_agrees_with_eigen_path(self):
        rng = rng_from(Seed(3))
        for _ in range(100):
            a = random_complex(rng, 8)
            fast = schatten_norm(a, 2)
            eig = float(np.sum(singular_values(a) ** 2) ** 0.5)
            assert fast == pytest.approx(eig, rel=1e-9)

    def test_homogeneity(self):
        rng = rng_from(Seed(4))
        a = random_complex(rng, 6)
        c = -2.5 + 1.25j
        for p in (1, 1.5, 2, 3, INF):
            assert schatten_norm(c * a, p) == pytest.approx(abs(c) * schatten_norm(a, p), rel=1e-9)

    def test_unitary_invariance(self):
        rng = rng_from(Seed(5))
        a = random_complex(rng, 5)
        u = sample_haar_unitary(5, Seed(6))
        v = sample_haar_unitary(5, Seed(7))
        for p in (1, 1.5, 2, 3, INF):
            assert schatten_norm(u @ a @ v.conj().T, p) == pytest.approx(
                schatten_norm(a, p), rel=1e-9
            )

    def test_monotone_chain(self):
        rng = rng_from(Seed(8))
        ps = [1.0, 1.5, 2.0, 3.0, 10.0, INF]
        for _ in range(1000):
            a = random_complex(rng, 4)
            vals = [schatten_norm(a, p) for p in ps]
            for lo, hi in zip(vals, vals[1:]):
                assert hi <= lo + 1e-9

    def test_bad_exponent_rejected(self):
        with pytest.raises(ValueError):
            schatten_norm(np.eye(2), 0.5)

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            schatten_norm(np.ones((2, 3)), 2)


def test_parse_exponent():
    assert parse_exponent("inf") == INF
    assert parse_exponent("1.5") == 1.5
    with pytest.raises(ValueError):
        parse_exponent("0.3")


class TestInterpolation:
    def test_diag_witnesses(self):
        res = check_interpolation(np.diag([3.0, 4.0]), 2)
        assert res.holds
        assert (res.operator_norm, res.p_norm, res.trace_norm) == pytest.approx((4.0, 5.0, 7.0))

    def test_zero_matrix(self):
        res = check_interpolation(np.zeros((3, 3)), 2)
        assert res.holds
        assert (res.operator_norm, res.p_norm, res.trace_norm) == (0.0, 0.0, 0.0)

    def test_random(self):
        rng = rng_from(Seed(9))
        assert check_interpolation(random_complex(rng, 8), 3).holds


class TestHoelder:
    def test_identity_saturates_right(self):
        d = 4
        res = check_hoelder(np.eye(d), 1, 2)
        assert res.holds
        assert res.scaled_r_norm == pytest.approx(d)  # sqrt(d) * sqrt(d)
        assert res.p_norm == pytest.approx(d)

    def test_diag_values(self):
        res = check_hoelder(np.diag([3.0, 4.0]), 1, 2)
        assert res.holds
        assert res.r_norm == pytest.approx(5.0)
        assert res.p_norm == pytest.approx(7.0)
        assert res.scaled_r_norm == pytest.approx(math.sqrt(2) * 5.0)

    def test_projector_saturates_left(self):
        proj = np.diag([1.0, 0.0, 0.0])
        for p, r in ((1, 2), (2, 3), (1.5, INF)):
            res = check_hoelder(proj, p, r)
            assert res.holds
            assert res.r_norm == pytest.approx(res.p_norm, abs=1e-12)

    def test_r_not_greater_rejected(self):
        with pytest.raises(ValueError):
            check_hoelder(np.eye(2), 2, 2)


class TestReverseTriangle:
    def test_equal_matrices(self):
        a = np.diag([1.0, 2.0])
        res = check_reverse_triangle(a, a, 2)
        assert res.holds and res.gap == 0.0

    def test_orthogonal_projectors(self):
        res = check_reverse_triangle(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]), 1)
        assert res.holds
        assert res.gap == pytest.approx(0.0, abs=1e-12)
        assert res.difference_norm == pytest.approx(2.0)

    def test_random_pair(self):
        rng = rng_from(Seed(10))
        assert check_reverse_triangle(random_complex(rng, 8), random_complex(rng, 8), 1.5).holds

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            check_reverse_triangle(np.eye(2), np.eye(3), 1)


class TestMixedGapBound:
    def test_maximally_mixed_r_is_p_plus_one(self):
        # at r = p + 1 the printed RHS vanishes exactly at A = I/d
        for d, p in ((2, 1.0), (4, 1.0), (4, 2.0)):
            res = mixed_gap_bound(np.eye(d) / d, p, p + 1.0)
            assert res.lhs == pytest.approx(0.0, abs=1e-12)
            assert res.rhs_printed == pytest.approx(0.0, abs=1e-12)
            assert res.holds_printed

    def test_maximally_mixed_printed_formula_can_fail(self):
        # (p=1, r=3, d=4): printed RHS = 1 - d < 0 while lhs = 0
        res = mixed_gap_bound(np.eye(4) / 4, 1, 3)
        assert res.lhs == pytest.approx(0.0, abs=1e-12)
        assert res.rhs_printed == pytest.approx(1.0 - 4.0)
        assert not res.holds_printed

    def test_pure_projector_d2_equality(self):
        res = mixed_gap_bound(np.diag([1.0, 0.0]), 1, 2)
        assert res.lhs == pytest.approx(1.0, abs=1e-12)
        assert res.rhs_printed == pytest.approx(1.0, abs=1e-12)
        assert res.holds_printed

    def test_pure_projector_d4(self):
        res = mixed_gap_bound(np.diag([1.0, 0.0, 0.0, 0.0]), 1, 2)
        assert res.lhs == pytest.approx(2.25, abs=1e-12)
        assert res.rhs_printed == pytest.approx(3.0, abs=1e-12)
        assert res.holds_printed

    def test_variant_disagreement_flagged(self):
        # at (p=1, r=2) the subtrahend variants differ: 1 vs 1/d
        res = mixed_gap_bound(np.diag([1.0, 0.0]), 1, 2)
        assert res.rhs_alternative == pytest.approx(2.0 - 0.5)
        assert res.holds_alternative
        assert res.variants_agree  # both hold on this sample

    def test_non_density_rejected(self):
        with pytest.raises(ValueError):
            mixed_gap_bound(np.eye(2), 1, 2)  # trace 2

    def test_bad_exponents_rejected(self):
        with pytest.raises(ValueError):
            mixed_gap_bound(np.eye(2) / 2, 2, 2)
        with pytest.raises(ValueError):
            mixed_gap_bound(np.eye(2) / 2, 1, INF)


def test_pure_state_gap_closed_forms():
    # eigenvalues of psi - I/d are (d-1)/d and -1/d (d-1 times)
    for d in (2, 4, 8, 16):
        gap = np.diag([1.0] + [0.0] * (d - 1)) - np.eye(d) / d
        eigs = np.linalg.eigvalsh(gap)
        p1 = float(np.sum(np.abs(eigs)))
        p2 = float(np.sqrt(np.sum(eigs**2)))
        pinf = float(np.max(np.abs(eigs)))
        assert abs(schatten_norm(gap, 1) - 2 * (d - 1) / d) <= 1e-12
        assert abs(schatten_norm(gap, 2) - math.sqrt((d - 1) / d)) <= 1e-12
        assert abs(schatten_norm(gap, INF) - (d - 1) / d) <= 1e-12
        assert abs(p1 - 2 * (d - 1) / d) <= 1e-12
        assert abs(p2 - math.sqrt((d - 1) / d)) <= 1e-12
        assert abs(pinf - (d - 1) / d) <= 1e-12
