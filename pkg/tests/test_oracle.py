import numpy as np
import pytest

from multshift.errors import EnumerationTooLarge
from multshift.markov import bernoulli_measure, golden_measure, t_vector_measure
from multshift.oracle import (
    OracleVerdict,
    empirical_box_dimension,
    matching_partial_sum,
    oracle_prefix_counts,
    run_all,
    verdicts_table,
    verdicts_to_csv,
    verify_box_dimension,
    verify_entropy_series,
    verify_measure_normalization,
    verify_prefix_counts,
)
from multshift.subshift import GOLDEN, count_multiplicative_prefixes, full_shift

from _matrices import CIRCULANT, random_primitive


def test_prefix_counts_golden():
    v = verify_prefix_counts(GOLDEN, 8)
    assert (v[3].analytic_value, v[3].oracle_value) == (10, 10)
    assert (v[7].analytic_value, v[7].oracle_value) == (96, 96)
    assert all(x.passed and x.exact and x.tolerance == 0 for x in v)


def test_prefix_counts_full_shift():
    v = verify_prefix_counts(full_shift(2), 12)
    assert v[-1].analytic_value == v[-1].oracle_value == 4096


@pytest.mark.parametrize("A", [GOLDEN, full_shift(2)], ids=repr)
def test_counting_consistency_to_20(A):
    brute = oracle_prefix_counts(A, 20)
    assert brute == [count_multiplicative_prefixes(A, n) for n in range(1, 21)]


def test_counting_consistency_m3():
    assert oracle_prefix_counts(CIRCULANT, 16) == [count_multiplicative_prefixes(CIRCULANT, n) for n in range(1, 17)]


def test_oracle_cap():
    with pytest.raises(EnumerationTooLarge):
        oracle_prefix_counts(full_shift(3), 16, cap=10_000)


def test_box_dimension_examples():
    vals = dict(empirical_box_dimension(GOLDEN, 3))
    assert vals[2] == pytest.approx(np.log2(3) / 2, abs=1e-15)
    assert all(v == 1.0 for _, v in empirical_box_dimension(full_shift(2), 12))


def test_matching_partial_sum_small():
    # n = 2: one chain of length 2, N = 3
    assert matching_partial_sum(GOLDEN, 1) == pytest.approx(np.log2(3) / 2, abs=1e-15)


def test_box_dimension_verdicts():
    assert all(v.passed for v in verify_box_dimension(GOLDEN, 20))
    assert all(v.passed for v in verify_box_dimension(CIRCULANT, 16))


@pytest.mark.parametrize("mu", [golden_measure(), golden_measure(0.3), bernoulli_measure([0.5, 0.5])])
def test_normalization(mu):
    v = verify_measure_normalization(mu, 16)
    assert len(v) == 16 and all(x.passed for x in v)


def test_normalization_m3_pruned_enumeration():
    v = verify_measure_normalization(t_vector_measure(CIRCULANT), 14)
    assert all(x.passed for x in v)


def test_entropy_series():
    v = verify_entropy_series(golden_measure(), 12)
    assert all(x.passed for x in v)
    q = 0.3
    H = -(q * np.log2(q) + (1 - q) * np.log2(1 - q))
    v5 = verify_entropy_series(bernoulli_measure([q, 1 - q]), 5)
    assert v5[-1].oracle_value == pytest.approx(5 * H, abs=1e-13)


def test_entropy_cap():
    with pytest.raises(EnumerationTooLarge):
        verify_entropy_series(golden_measure(), 30)


def test_detects_wrong_answer():
    v = OracleVerdict.compare("x", "y", 10, 11, 0, exact=True)
    assert not v.passed and v.discrepancy == 1.0
    v = OracleVerdict.compare("x", "y", 1.0, 1.0 + 1e-9, 1e-12)
    assert not v.passed


@pytest.mark.parametrize("seed", range(2))
def test_run_all_random(seed):
    A = random_primitive(np.random.default_rng(seed), 3)
    verdicts = run_all(A, n_max=12, k_max=8, ell_max=14)
    assert all(v.passed for v in verdicts)


def test_exports():
    v = verify_prefix_counts(GOLDEN, 3)
    csv_text = verdicts_to_csv(v)
    assert csv_text.splitlines()[0] == "check,instance,analytic,oracle,discrepancy,pass"
    assert csv_text.splitlines()[3].startswith("prefix_count,A=11/10 n=3,6,6,")
    table = verdicts_table(v)
    assert "check" in table.splitlines()[0] and len(table.splitlines()) == 5
