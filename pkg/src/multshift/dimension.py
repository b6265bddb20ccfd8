"""Hausdorff and Minkowski dimensions of the multiplicative shift X_A.

Both dimensions are reported in base ``m`` (the natural base for sequences
over an ``m``-letter alphabet embedded in [0, 1]).

Minkowski:  sum_k 2^(-k-1) log_m <A^(k-1) 1, 1>, truncated at a depth K
            chosen from an explicit tail bound.
Hausdorff:  (1/2) log_m sum_i t_i, where t > 1 solves t_i^2 = (A t)_i.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import NoConvergence
from .subshift import TransferMatrix, validate_primitive

EPS = np.finfo(float).eps


class MinkowskiResult(NamedTuple):
    value: float
    bound: float
    K: int


class HausdorffResult(NamedTuple):
    value: float
    bound: float
    t: "TVector"


@dataclass(frozen=True)
class TVector:
    values: np.ndarray
    residual: float
    iterations: int
    refined: bool = False

    @property
    def total(self) -> float:
        return float(self.values.sum())


def _require_primitive(A: TransferMatrix) -> int:
    # raises NotPrimitiveWithinCap, a NotPrimitive
    return validate_primitive(A)


# ---------------------------------------------------------------------------
# Minkowski dimension
# ---------------------------------------------------------------------------


def log_word_counts(A: TransferMatrix, K: int) -> np.ndarray:
    """``log_m`` of the Σ_A word counts for lengths ``1..K``.

    Iterates ``v <- A v`` with renormalisation, carrying the log of the
    discarded scale, so nothing overflows however large ``K`` is.
    """
    M = A.as_float()
    ln_m = math.log(A.m)
    v = np.ones(A.m)
    log_scale = 0.0
    out = np.empty(K)
    for k in range(K):
        if k:
            v = M @ v
        s = v.sum()
        out[k] = (log_scale + math.log(s)) / ln_m
        v /= s
        log_scale += math.log(s)
    return out


def minkowski_tail_bound(A: TransferMatrix, K: int) -> float:
    """Upper bound on the series tail past depth ``K``.

    Uses ``count_k <= m R^(k-1)`` with ``R`` the largest row sum, and the
    closed forms ``sum_{k>K} 2^(-k-1) = 2^(-K-1)`` and
    ``sum_{k>K} (k-1) 2^(-k-1) = (K+1) 2^(-K-1)``.
    """
    R = int(A.row_sums.max())
    log_R = math.log(R) / math.log(A.m)
    return 2.0 ** (-K - 1) * (1.0 + (K + 1) * log_R)


def truncation_depth(A: TransferMatrix, tol: float) -> int:
    if tol <= 0:
        raise ValueError("tol must be positive")
    K = 1
    while minkowski_tail_bound(A, K) > tol:
        K += 1
    return K


def minkowski_partial_sums(A: TransferMatrix, K: int) -> np.ndarray:
    if K < 1:
        raise ValueError("K must be >= 1")
    k = np.arange(1, K + 1)
    return np.cumsum(2.0 ** (-k - 1) * log_word_counts(A, K))


def minkowski_dimension(A: TransferMatrix, tol: float = 1e-10) -> MinkowskiResult:
    """Truncated Minkowski series; the true value lies in ``[value, value + bound]``."""
    _require_primitive(A)
    K = truncation_depth(A, tol)
    value = float(minkowski_partial_sums(A, K)[-1])
    return MinkowskiResult(value, minkowski_tail_bound(A, K), K)


# ---------------------------------------------------------------------------
# Hausdorff dimension
# ---------------------------------------------------------------------------


def t_residual(A: TransferMatrix, t: np.ndarray) -> float:
    return float(np.max(np.abs(t * t - A.as_float() @ t)))


def _bisect_segment(M, lo, hi, iters=200):
    # lo has t^2 <= At componentwise, hi has t^2 >= At; bisect the summed
    # residual along the segment joining them.
    def phi(s):
        t = lo + s * (hi - lo)
        return float(np.sum(t * t - M @ t))

    a, b = 0.0, 1.0
    for _ in range(iters):
        c = 0.5 * (a + b)
        if phi(c) > 0:
            b = c
        else:
            a = c
        if b - a < EPS:
            break
    return lo + 0.5 * (a + b) * (hi - lo)


def solve_t_system(
    A: TransferMatrix,
    tol: float = 1e-12,
    max_iter: int = 10_000,
    initial: np.ndarray | None = None,
) -> TVector:
    """Solve ``t_i^2 = sum_j A[i, j] t_j`` with ``t_i > 1``.

    The map ``t -> sqrt(A t)`` is order preserving and sends the box
    ``[1, m]^m`` into itself; started from ``t = m`` its iterates decrease to
    the unique fixed point with contraction factor 1/2 near it. Iteration
    runs until the residual stops improving, whatever ``tol``. If the plain
    iteration stalls above ``tol``, a bisection between the lower iterate
    (started from ``t = 1``) and the upper one refines the answer.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    _require_primitive(A)
    M = A.as_float()
    m = A.m
    t = np.full(m, float(m)) if initial is None else np.asarray(initial, dtype=float).copy()
    lo = np.ones(m)
    res = t_residual(A, t)
    best, best_res, stall = t, res, 0
    it = 0
    while it < max_iter and stall < 8:
        it += 1
        t = np.sqrt(M @ t)
        lo = np.sqrt(M @ lo)
        res = t_residual(A, t)
        if res < best_res:
            best, best_res, stall = t, res, 0
        else:
            stall += 1
    t, res = best, best_res
    refined = False
    if res > tol:
        hi = np.maximum(t, lo)
        cand = _bisect_segment(M, lo, hi)
        cres = t_residual(A, cand)
        if cres < res:
            t, res, refined = cand, cres, True
    if res > tol:
        raise NoConvergence(max_iter, res)
    return TVector(t, res, it, refined)


def hausdorff_dimension(A: TransferMatrix, tol: float = 1e-12) -> HausdorffResult:
    """``(1/2) log_m sum(t)`` with a first-order error bound from the t-residual.

    bound = residual * m / (ln(m) * sum(t)). The residual is floored at the
    floating-point resolution of ``t_i^2`` so the bound never reads as zero.
    """
    tv = solve_t_system(A, tol=tol)
    m = A.m
    total = tv.total
    value = 0.5 * math.log(total) / math.log(m)
    res = max(tv.residual, m * EPS * float(np.max(tv.values)) ** 2)
    bound = float(res * m / (math.log(m) * total))
    return HausdorffResult(value, bound, tv)


def solve_golden_p(tol: float = 1e-15) -> float:
    """Root of ``p^3 = (1-p)^2`` in (0, 1) by bisection."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    a, b = 0.0, 1.0
    for _ in range(400):
        c = 0.5 * (a + b)
        if c**3 - (1 - c) ** 2 > 0:
            b = c
        else:
            a = c
        if b - a <= tol:
            break
    return 0.5 * (a + b)


def dims_equal_verdict(A: TransferMatrix) -> bool:
    """True iff all row sums of ``A`` coincide (the two dimensions agree exactly then)."""
    _require_primitive(A)
    rs = A.row_sums
    return bool(np.all(rs == rs[0]))


def equal_row_sum_dimension(A: TransferMatrix) -> float:
    """Closed form ``(1/2) log_m(m r)`` shared by both dimensions when rows sum to ``r``."""
    rs = A.row_sums
    if not np.all(rs == rs[0]):
        raise ValueError("row sums are not all equal")
    return 0.5 * math.log(A.m * int(rs[0])) / math.log(A.m)


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


@dataclass
class DimensionReport:
    m: int
    matrix: list[list[int]]
    hausdorff: float
    hausdorff_bound: float
    minkowski: float
    minkowski_bound: float
    minkowski_roundoff: float
    dims_equal: bool
    t_vector: list[float]
    t_residual: float
    solver_iterations: int
    truncation_depth: int
    tol: float
    primitivity_power: int
    golden_p: float | None = None
    golden_s_closed_form: float | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    def consistent(self) -> bool:
        """Lower dimension never certified above the upper one."""
        slack = self.hausdorff_bound + self.minkowski_bound + self.minkowski_roundoff
        return self.hausdorff <= self.minkowski + slack


def dimension_report(A: TransferMatrix, tol: float = 1e-8) -> DimensionReport:
    r = validate_primitive(A)
    h = hausdorff_dimension(A, tol=min(tol, 1e-12))
    mk = minkowski_dimension(A, tol=tol)
    rep = DimensionReport(
        m=A.m,
        matrix=A.as_int().tolist(),
        hausdorff=h.value,
        hausdorff_bound=h.bound,
        minkowski=mk.value,
        minkowski_bound=mk.bound,
        minkowski_roundoff=4 * mk.K * EPS,
        dims_equal=dims_equal_verdict(A),
        t_vector=h.t.values.tolist(),
        t_residual=h.t.residual,
        solver_iterations=h.t.iterations,
        truncation_depth=mk.K,
        tol=tol,
        primitivity_power=r,
    )
    rep.notes.append("hausdorff_bound = residual*m/(ln(m)*sum(t)) (first-order propagation)")
    rep.notes.append("minkowski value is a lower partial sum; true value within +minkowski_bound")
    if A.is_golden():
        from .markov import s_mu_closed_form_golden

        p = solve_golden_p()
        rep.golden_p = p
        rep.golden_s_closed_form = s_mu_closed_form_golden(p)
    return rep
