"""The numba and numpy kernel paths must agree on every input."""

import numpy as np
import pytest

from multshift import _kernels
from multshift.markov import _cdfs, golden_measure, uniform_measure
from multshift.subshift import GOLDEN, full_shift, is_multiplicatively_admissible

from _matrices import CIRCULANT, random_primitive

BACKENDS = _kernels.available_backends()
ids = [k.name for k in BACKENDS]


def test_default_backend_listed():
    assert _kernels.BACKEND in {k.name for k in BACKENDS}


@pytest.mark.parametrize("k", BACKENDS, ids=ids)
def test_mask_matches_python(k, rng):
    A = random_primitive(rng, 3)
    words = rng.integers(0, 3, size=(2000, 11)).astype(np.int8)
    expected = [is_multiplicatively_admissible(A, w) for w in words]
    assert k.mult_admissible_mask(words, A.entries).tolist() == expected


@pytest.mark.parametrize("k", BACKENDS, ids=ids)
@pytest.mark.parametrize("A", [GOLDEN, CIRCULANT, full_shift(2)], ids=repr)
def test_prefix_counts(k, A):
    from multshift.subshift import count_multiplicative_prefixes

    counts, complete = k.count_mult_prefixes(A.entries, 12, 2**24)
    assert complete
    assert counts.tolist() == [count_multiplicative_prefixes(A, n) for n in range(1, 13)]


@pytest.mark.parametrize("k", BACKENDS, ids=ids)
def test_prefix_counts_cap(k):
    counts, complete = k.count_mult_prefixes(full_shift(2).entries, 12, 1000)
    assert not complete


@pytest.mark.parametrize("mu", [golden_measure(), uniform_measure(CIRCULANT)], ids=["golden", "circulant"])
def test_sampling_identical_across_backends(mu):
    uniforms = np.random.default_rng(3).random((500, 37))
    outs = [k.sample_words(*_cdfs(mu), uniforms) for k in BACKENDS]
    for o in outs[1:]:
        np.testing.assert_array_equal(o, outs[0])


def test_log2_measure_across_backends():
    mu = uniform_measure(CIRCULANT)
    words = _kernels.NUMPY.sample_words(*_cdfs(mu), np.random.default_rng(0).random((300, 64)))
    li, lp = mu._logs()
    outs = [k.log2_measure(words, li, lp) for k in BACKENDS]
    for o in outs[1:]:
        np.testing.assert_allclose(o, outs[0], rtol=1e-13)


def test_env_flag(monkeypatch):
    monkeypatch.setenv("MULTSHIFT_BACKEND", "numpy")
    assert _kernels._select() is _kernels.NUMPY
    monkeypatch.setenv("MULTSHIFT_BACKEND", "bogus")
    with pytest.raises(ValueError):
        _kernels._select()
