import math

import numpy as np
import pytest

from multshift.dimension import (
    dimension_report,
    dims_equal_verdict,
    equal_row_sum_dimension,
    hausdorff_dimension,
    minkowski_dimension,
    minkowski_partial_sums,
    minkowski_tail_bound,
    solve_golden_p,
    solve_t_system,
    t_residual,
)
from multshift.errors import NoConvergence, NotPrimitive
from multshift.oracle import empirical_box_dimension
from multshift.subshift import GOLDEN, TransferMatrix, count_admissible_words, full_shift

from _matrices import CIRCULANT, matrix_zoo

ZOO = matrix_zoo()
NOT_PRIMITIVE = TransferMatrix(np.array([[0, 1], [1, 0]]))


def bisect(f, a, b, iters=200):
    for _ in range(iters):
        c = 0.5 * (a + b)
        if (f(a) < 0) == (f(c) < 0):
            a = c
        else:
            b = c
    return 0.5 * (a + b)


# golden t-vector: t1^3 = t1 + 1, t0 = t1^2
T1_GOLDEN = bisect(lambda x: x**3 - x - 1, 1.0, 2.0)
T0_GOLDEN = T1_GOLDEN**2


def exact_series(A, K):
    """Partial sum from exact big-integer counts (no shared code with the log-domain path)."""
    return sum(2.0 ** (-k - 1) * math.log(count_admissible_words(A, k), A.m) for k in range(1, K + 1))


class TestMinkowski:
    def test_golden_value(self):
        mk = minkowski_dimension(GOLDEN, tol=1e-6)
        assert mk.bound <= 1e-6
        assert round(mk.value, 5) == 0.82429

    def test_full_shift_is_one(self):
        mk = minkowski_dimension(full_shift(2), tol=1e-12)
        assert mk.value <= 1.0 <= mk.value + mk.bound

    def test_equal_row_sums_closed_form(self):
        expected = (1 + math.log(2, 3)) / 2
        assert expected == pytest.approx(0.815465, abs=1e-6)
        mk = minkowski_dimension(CIRCULANT, tol=1e-12)
        assert mk.value <= expected + 1e-15 and expected - mk.value <= mk.bound

    def test_partial_sums_golden(self):
        assert minkowski_partial_sums(GOLDEN, 1).tolist() == [0.25]
        hand = 0.25 + math.log2(3) / 8 + math.log2(5) / 16 + math.log2(8) / 32
        assert minkowski_partial_sums(GOLDEN, 4)[-1] == pytest.approx(hand, abs=1e-15)
        assert hand == pytest.approx(0.68699, abs=1e-5)

    def test_partial_sums_full_shift(self):
        np.testing.assert_allclose(minkowski_partial_sums(full_shift(2), 3), [0.25, 0.5, 0.6875], atol=1e-15)

    @pytest.mark.parametrize("A", ZOO[::3], ids=repr)
    def test_log_domain_matches_big_integers(self, A):
        assert minkowski_partial_sums(A, 60)[-1] == pytest.approx(exact_series(A, 60), abs=1e-13)

    @pytest.mark.parametrize("A", ZOO, ids=repr)
    def test_partial_sums_monotone(self, A):
        assert np.all(np.diff(minkowski_partial_sums(A, 80)) >= 0)

    def test_tail_bound_certifies(self):
        # exact tail beyond K bounded by the certificate
        for K in (5, 10, 20):
            tail = exact_series(GOLDEN, 200) - exact_series(GOLDEN, K)
            assert 0 <= tail <= minkowski_tail_bound(GOLDEN, K)

    def test_deep_truncation_no_overflow(self):
        mk = minkowski_dimension(GOLDEN, tol=1e-15)
        assert mk.K > 50 and math.isfinite(mk.value)

    def test_not_primitive(self):
        with pytest.raises(NotPrimitive):
            minkowski_dimension(NOT_PRIMITIVE)

    def test_box_counts_approach_series(self):
        mk = minkowski_dimension(GOLDEN, tol=1e-13)
        gaps = []
        for n, val in empirical_box_dimension(GOLDEN, 20)[3:]:
            ell = n.bit_length() - 1
            gap = abs(val - mk.value)
            assert gap <= minkowski_tail_bound(GOLDEN, ell - 1) + mk.bound
            gaps.append(gap)
        # |gap| shrinks (the values alternate around the limit) until roundoff
        assert all(b <= a or b < 1e-12 for a, b in zip(gaps, gaps[1:]))


class TestTSystem:
    def test_golden(self):
        tv = solve_t_system(GOLDEN, tol=1e-12)
        np.testing.assert_allclose(tv.values, [T0_GOLDEN, T1_GOLDEN], atol=1e-12)
        assert tv.residual < 1e-10
        assert tv.values == pytest.approx([1.7548777, 1.3247180], abs=1e-7)

    @pytest.mark.parametrize("m", [2, 3, 5])
    def test_full_shift(self, m):
        np.testing.assert_allclose(solve_t_system(full_shift(m)).values, m, atol=1e-12)

    def test_equal_rows_constant(self):
        np.testing.assert_allclose(solve_t_system(CIRCULANT).values, 2.0, atol=1e-12)

    @pytest.mark.parametrize("A", ZOO, ids=repr)
    def test_residual_certificate_and_range(self, A):
        tol = 1e-12
        tv = solve_t_system(A, tol=tol)
        assert t_residual(A, tv.values) <= tol
        assert np.all(tv.values > 1) and np.all(tv.values <= A.m + 1e-12)

    @pytest.mark.parametrize("A", [GOLDEN, CIRCULANT] + ZOO[10:14], ids=repr)
    def test_uniqueness_from_random_starts(self, A):
        tol = 1e-12
        ref = solve_t_system(A, tol=tol).values
        rng = np.random.default_rng(7)
        for _ in range(10):
            start = 1 + (A.m - 1) * (1 - rng.random(A.m))
            t = solve_t_system(A, tol=tol, initial=start).values
            assert np.max(np.abs(t - ref)) <= 10 * tol

    def test_no_convergence(self):
        with pytest.raises(NoConvergence):
            solve_t_system(GOLDEN, tol=1e-300, max_iter=3)

    def test_not_primitive(self):
        with pytest.raises(NotPrimitive):
            solve_t_system(NOT_PRIMITIVE)


class TestHausdorff:
    def test_golden(self):
        h = hausdorff_dimension(GOLDEN, tol=1e-8)
        assert round(h.value, 5) == 0.81137
        assert h.value == pytest.approx(0.5 * math.log2(T0_GOLDEN + T1_GOLDEN), abs=1e-14)

    def test_full_shift(self):
        assert hausdorff_dimension(full_shift(2)).value == pytest.approx(1.0, abs=1e-14)

    def test_equal_rows(self):
        expected = 0.5 * math.log(6, 3)
        h = hausdorff_dimension(CIRCULANT)
        assert h.value == pytest.approx(expected, abs=1e-14)
        assert equal_row_sum_dimension(CIRCULANT) == pytest.approx(expected, abs=1e-15)

    @pytest.mark.parametrize("A", ZOO, ids=repr)
    def test_range_and_order(self, A):
        h = hausdorff_dimension(A)
        mk = minkowski_dimension(A, tol=1e-10)
        assert h.bound >= 0 and mk.bound >= 0
        assert 0 < h.value <= mk.value + mk.bound + h.bound <= 1 + 1e-12

    @pytest.mark.parametrize("A", ZOO, ids=repr)
    def test_verdict_matches_numerics(self, A):
        h = hausdorff_dimension(A)
        mk = minkowski_dimension(A, tol=1e-12)
        slack = h.bound + mk.bound + 4 * mk.K * np.finfo(float).eps
        if dims_equal_verdict(A):
            assert abs(h.value - mk.value) <= slack
        else:
            assert h.value < mk.value - slack


class TestGoldenRoot:
    def test_root(self):
        p = solve_golden_p(1e-10)
        assert p == pytest.approx(0.5698403, abs=1e-7)
        assert abs(p**3 - (1 - p) ** 2) < 1e-9

    def test_consistency_with_t_vector(self):
        p = solve_golden_p()
        assert 1 / p == pytest.approx(solve_t_system(GOLDEN).values[0], abs=1e-8)
        assert -math.log2(p) == pytest.approx(hausdorff_dimension(GOLDEN).value, abs=1e-12)

    def test_maximizer_identity(self):
        p = solve_golden_p()
        assert 2 * math.log2(p / (1 - p)) == pytest.approx(-math.log2(p), abs=1e-8)


class TestVerdict:
    def test_examples(self):
        assert dims_equal_verdict(GOLDEN) is False
        assert dims_equal_verdict(full_shift(3)) is True
        assert dims_equal_verdict(CIRCULANT) is True

    def test_not_primitive(self):
        with pytest.raises(NotPrimitive):
            dims_equal_verdict(NOT_PRIMITIVE)


class TestReport:
    def test_golden_report(self):
        rep = dimension_report(GOLDEN, tol=1e-8)
        assert rep.consistent()
        assert rep.golden_p == pytest.approx(0.5698403, abs=1e-7)
        assert rep.golden_s_closed_form == pytest.approx(rep.hausdorff, abs=1e-12)
        assert rep.truncation_depth > 0 and rep.solver_iterations > 0

    def test_no_golden_extras_elsewhere(self):
        rep = dimension_report(CIRCULANT)
        assert rep.golden_p is None and rep.dims_equal

    @pytest.mark.parametrize("A", ZOO, ids=repr)
    def test_consistent(self, A):
        assert dimension_report(A).consistent()
