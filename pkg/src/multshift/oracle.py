"""Brute-force cross-checks of the analytic routines on small instances.

The checks here deliberately avoid the code they verify:

* prefix counts are compared with exhaustive filtering of all ``m^n`` words
  (or, above ``FILTER_CAP`` candidates, a pruned walk that applies the
  ``A[x_k, x_2k]`` rule position by position);
* measures are recomputed by walking positions, ``init(x_k)`` for odd ``k``
  and ``P(x_{k/2}, x_k)`` for even ``k``, without chain decomposition;
* block entropies are recomputed by enumerating cylinders.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from ._kernels import kernels
from .dimension import minkowski_partial_sums, minkowski_tail_bound, minkowski_dimension
from .errors import EnumerationTooLarge
from .markov import MarkovMeasure, block_entropies
from .subshift import DEFAULT_ENUMERATION_CAP, TransferMatrix, count_multiplicative_prefixes

FILTER_CAP = 2**20
ENTROPY_TOL = 1e-12
NORMALIZATION_TOL = 1e-12
BOX_TOL = 1e-9


@dataclass
class OracleVerdict:
    check_name: str
    instance: str
    analytic_value: float | int
    oracle_value: float | int
    discrepancy: float
    tolerance: float
    passed: bool
    exact: bool

    @classmethod
    def compare(cls, name, instance, analytic, oracle, tolerance, exact=False):
        if exact:
            disc = float(abs(int(analytic) - int(oracle)))
        else:
            disc = abs(float(analytic) - float(oracle))
        return cls(name, instance, analytic, oracle, disc, tolerance, disc <= tolerance, exact)


def _all_words(m: int, n: int) -> np.ndarray:
    idx = np.arange(m**n, dtype=np.int64)
    cols = [(idx // m ** (n - 1 - j)) % m for j in range(n)]
    return np.stack(cols, axis=1).astype(np.int8)


def _mult_words(A: TransferMatrix, n: int, cap: int) -> np.ndarray:
    """Every multiplicatively admissible word of length ``n``."""
    m = A.m
    if m**n <= FILTER_CAP:
        words = _all_words(m, n)
        return words[kernels.mult_admissible_mask(words, A.entries)]
    words = np.empty((1, 0), dtype=np.int8)
    for k in range(1, n + 1):
        if words.shape[0] * m > cap:
            raise EnumerationTooLarge(f"more than {cap} candidate prefixes at length {k}")
        sym = np.tile(np.arange(m, dtype=np.int8), words.shape[0])
        words = np.concatenate([np.repeat(words, m, axis=0), sym[:, None]], axis=1)
        if k % 2 == 0:
            words = words[A.entries[words[:, k // 2 - 1], words[:, k - 1]]]
    return words


def _sigma_words(A: TransferMatrix, k: int) -> np.ndarray:
    words = _all_words(A.m, k)
    ok = np.ones(len(words), dtype=bool)
    for j in range(1, k):
        ok &= A.entries[words[:, j - 1], words[:, j]]
    return words[ok]


def _direct_measure(mu: MarkovMeasure, words: np.ndarray) -> np.ndarray:
    n = words.shape[1]
    prob = np.ones(len(words))
    for k in range(1, n + 1):
        if k % 2:
            prob *= mu.initial[words[:, k - 1]]
        else:
            prob *= mu.transitions[words[:, k // 2 - 1], words[:, k - 1]]
    return prob


def _label(A: TransferMatrix) -> str:
    return "/".join("".join(str(int(x)) for x in row) for row in A.entries)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def oracle_prefix_counts(A: TransferMatrix, n_max: int, cap: int = DEFAULT_ENUMERATION_CAP) -> list[int]:
    """Definition-level counts of admissible words of lengths ``1..n_max``."""
    m = A.m
    out = []
    for n in range(1, n_max + 1):
        if m**n > FILTER_CAP:
            break
        words = _all_words(m, n)
        out.append(int(kernels.mult_admissible_mask(words, A.entries).sum()))
    if len(out) < n_max:
        counts, complete = kernels.count_mult_prefixes(A.entries, n_max, cap)
        if not complete:
            raise EnumerationTooLarge(f"more than {cap} admissible prefixes up to length {n_max}")
        out.extend(int(c) for c in counts[len(out) :])
    return out


def verify_prefix_counts(
    A: TransferMatrix, n_max: int = 16, cap: int = DEFAULT_ENUMERATION_CAP
) -> list[OracleVerdict]:
    brute = oracle_prefix_counts(A, n_max, cap)
    return [
        OracleVerdict.compare(
            "prefix_count", f"A={_label(A)} n={n}", count_multiplicative_prefixes(A, n), brute[n - 1], 0, exact=True
        )
        for n in range(1, n_max + 1)
    ]


def empirical_box_dimension(A: TransferMatrix, ell_max: int, m: int | None = None) -> list[tuple[int, float]]:
    """``(n, log_m(N_n) / n)`` at ``n = 2^l`` for ``l = 1..ell_max``, from exact counts."""
    m = A.m if m is None else m
    ln_m = math.log(m)
    out = []
    for ell in range(1, ell_max + 1):
        n = 2**ell
        out.append((n, math.log(count_multiplicative_prefixes(A, n)) / ln_m / n))
    return out


def matching_partial_sum(A: TransferMatrix, ell: int) -> float:
    """Series prediction for ``log_m(N_n)/n`` at ``n = 2^l``.

    At ``n = 2^l`` there are ``2^(l-k-1)`` chains of length ``k < l``, none of
    length ``l``, and one (``i = 1``) of length ``l + 1``. Hence
    ``log_m(N_n)/n = S_(l-1) + 2^(-l) log_m c_(l+1) = S_(l-1) + 4 (S_(l+1) - S_l)``
    where ``S_K`` are the partial sums.
    """
    S = np.concatenate([[0.0], minkowski_partial_sums(A, ell + 1)])
    return float(S[ell - 1] + 4.0 * (S[ell + 1] - S[ell]))


def verify_box_dimension(A: TransferMatrix, ell_max: int = 20, tol: float = BOX_TOL) -> list[OracleVerdict]:
    out = []
    for n, val in empirical_box_dimension(A, ell_max):
        ell = n.bit_length() - 1
        out.append(
            OracleVerdict.compare("box_dimension", f"A={_label(A)} n=2^{ell}", matching_partial_sum(A, ell), val, tol)
        )
    return out


def verify_measure_normalization(
    mu: MarkovMeasure, n_max: int = 16, cap: int = DEFAULT_ENUMERATION_CAP, tol: float = NORMALIZATION_TOL
) -> list[OracleVerdict]:
    out = []
    for n in range(1, n_max + 1):
        words = _mult_words(mu.support, n, cap)
        total = math.fsum(_direct_measure(mu, words).tolist())
        out.append(OracleVerdict.compare("normalization", f"{_measure_label(mu)} n={n}", 1.0, total, tol))
    return out


def enumerated_entropy(mu: MarkovMeasure, k: int) -> float:
    words = _sigma_words(mu.support, k)
    prob = mu.initial[words[:, 0]].copy()
    for j in range(1, k):
        prob *= mu.transitions[words[:, j - 1], words[:, j]]
    prob = prob[prob > 0]
    return -math.fsum((prob * np.log2(prob)).tolist())


def verify_entropy_series(
    mu: MarkovMeasure, k_max: int = 12, cap: int = DEFAULT_ENUMERATION_CAP, tol: float = ENTROPY_TOL
) -> list[OracleVerdict]:
    if mu.m**k_max > cap:
        raise EnumerationTooLarge(f"{mu.m}^{k_max} cylinders exceed the enumeration cap {cap}")
    dp = block_entropies(mu, k_max)
    return [
        OracleVerdict.compare("block_entropy", f"{_measure_label(mu)} k={k}", dp[k - 1], enumerated_entropy(mu, k), tol)
        for k in range(1, k_max + 1)
    ]


def _measure_label(mu: MarkovMeasure) -> str:
    return f"mu(init={np.round(mu.initial, 6).tolist()})"


def largest_feasible_length(m: int, n_max: int, cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    n = n_max
    while n > 1 and m**n > cap:
        n -= 1
    return n


def run_all(
    A: TransferMatrix,
    mu: MarkovMeasure | None = None,
    n_max: int = 16,
    k_max: int = 12,
    ell_max: int = 20,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> list[OracleVerdict]:
    """Every suite on one matrix (and one measure, defaulting to the t-vector measure).

    Enumeration depths shrink for large alphabets so that ``m^n`` stays
    within ``cap``.
    """
    from .markov import t_vector_measure

    if mu is None:
        mu = t_vector_measure(A)
    n_enum = largest_feasible_length(A.m, n_max, cap)
    k_enum = largest_feasible_length(A.m, k_max, cap)
    verdicts = []
    verdicts += verify_prefix_counts(A, n_enum, cap)
    verdicts += verify_box_dimension(A, ell_max)
    verdicts += verify_measure_normalization(mu, n_enum, cap)
    verdicts += verify_entropy_series(mu, k_enum, cap)
    mk = minkowski_dimension(A, tol=1e-10)
    last = empirical_box_dimension(A, ell_max)[-1][1]
    verdicts.append(
        OracleVerdict.compare(
            "box_limit", f"A={_label(A)} n=2^{ell_max}", mk.value, last, minkowski_tail_bound(A, ell_max - 1) + mk.bound
        )
    )
    return verdicts


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------

COLUMNS = ["check", "instance", "analytic", "oracle", "discrepancy", "pass"]


def _fmt(v):
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.17g}"


def verdict_rows(verdicts: list[OracleVerdict]) -> list[list[str]]:
    return [
        [v.check_name, v.instance, _fmt(v.analytic_value), _fmt(v.oracle_value), f"{v.discrepancy:.3e}", str(v.passed)]
        for v in verdicts
    ]


def verdicts_to_csv(verdicts: list[OracleVerdict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    w.writerows(verdict_rows(verdicts))
    return buf.getvalue()


def verdicts_table(verdicts: list[OracleVerdict]) -> str:
    rows = [COLUMNS] + verdict_rows(verdicts)
    widths = [max(len(r[i]) for r in rows) for i in range(len(COLUMNS))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"
