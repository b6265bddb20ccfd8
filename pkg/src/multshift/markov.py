"""Markov measures on Σ_A and the induced product measure on X_A.

A Markov measure ``mu`` on Σ_A induces a measure on multiplicative words by
letting each chain ``i, 2i, 4i, ...`` (odd ``i``) run an independent copy of
``mu``:

    P_mu[u] = prod_{odd i <= n} mu[u restricted to the chain of i]

Its entropy series ``s(mu) = sum_k H_mu(alpha_k) / 2^(k+1)`` (base 2) is a
lower bound for the Hausdorff dimension of X_A (in bits; divide by
``log2 m`` for base-``m`` units).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from ._kernels import kernels
from .dimension import solve_golden_p, solve_t_system
from .errors import DomainError, IdentityViolation, LengthNotPowerOfTwo, NotAdmissible
from .subshift import (
    DEFAULT_ENUMERATION_CAP,
    GOLDEN,
    CylinderWord,
    TransferMatrix,
    WordLike,
    admissible_word_array,
    as_word,
    chain_decomposition,
    full_shift,
    is_multiplicatively_admissible,
    restrict_word,
    validate_primitive,
)

STOCHASTIC_ATOL = 1e-12


def _xlog2x(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = x[pos] * np.log2(x[pos])
    return out


def binary_entropy(p: float) -> float:
    return float(-_xlog2x(np.array([p, 1.0 - p])).sum())


@dataclass(frozen=True, eq=False)
class MarkovMeasure:
    """Initial distribution and transition matrix supported on ``A``."""

    initial: np.ndarray
    transitions: np.ndarray
    support: TransferMatrix

    def __post_init__(self):
        init = np.array(self.initial, dtype=float)
        P = np.array(self.transitions, dtype=float)
        m = self.support.m
        if init.shape != (m,) or P.shape != (m, m):
            raise ValueError(f"shapes {init.shape}, {P.shape} do not match alphabet size {m}")
        if np.any(init < 0) or np.any(P < 0) or np.any(init > 1) or np.any(P > 1):
            raise ValueError("probabilities must lie in [0, 1]")
        if abs(init.sum() - 1.0) > STOCHASTIC_ATOL:
            raise ValueError(f"initial vector sums to {init.sum()!r}, not 1")
        if np.any(np.abs(P.sum(axis=1) - 1.0) > STOCHASTIC_ATOL):
            raise ValueError("transition rows must sum to 1")
        if np.any((P > 0) & ~self.support.entries):
            raise ValueError("transition probability on a forbidden pair")
        init.flags.writeable = False
        P.flags.writeable = False
        object.__setattr__(self, "initial", init)
        object.__setattr__(self, "transitions", P)

    @property
    def m(self) -> int:
        return self.support.m

    def row_entropies(self) -> np.ndarray:
        return -_xlog2x(self.transitions).sum(axis=1)

    def _logs(self):
        with np.errstate(divide="ignore"):
            return np.log2(self.initial), np.log2(self.transitions)

    def __repr__(self):
        return f"MarkovMeasure(initial={self.initial.tolist()}, transitions={self.transitions.tolist()})"


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def golden_measure(p: float | None = None) -> MarkovMeasure:
    """Initial ``(p, 1-p)``, transitions ``[[p, 1-p], [1, 0]]`` on the golden mean shift.

    ``p`` defaults to the root of ``p^3 = (1-p)^2``, the maximiser of ``s``.
    """
    if p is None:
        p = solve_golden_p()
    return MarkovMeasure(np.array([p, 1 - p]), np.array([[p, 1 - p], [1.0, 0.0]]), GOLDEN)


def uniform_measure(A: TransferMatrix) -> MarkovMeasure:
    """Uniform initial law; each row uniform over its allowed successors."""
    M = A.as_float()
    return MarkovMeasure(np.full(A.m, 1.0 / A.m), M / M.sum(axis=1, keepdims=True), A)


def bernoulli_measure(q) -> MarkovMeasure:
    """i.i.d. symbols with law ``q`` on the full shift."""
    q = np.asarray(q, dtype=float)
    return MarkovMeasure(q, np.tile(q, (len(q), 1)), full_shift(len(q)))


def t_vector_measure(A: TransferMatrix, tol: float = 1e-13) -> MarkovMeasure:
    """The Markov measure built from the t-vector: ``init ∝ t``, ``P[i,j] = A[i,j] t_j / t_i^2``.

    For the golden mean shift this is exactly ``golden_measure()``.
    """
    t = solve_t_system(A, tol=tol).values
    P = A.as_float() * t[None, :] / (t * t)[:, None]
    P /= P.sum(axis=1, keepdims=True)
    return MarkovMeasure(t / t.sum(), P, A)


# ---------------------------------------------------------------------------
# cylinder measures
# ---------------------------------------------------------------------------


def cylinder_measure_sigma(mu: MarkovMeasure, u: WordLike) -> float:
    """``mu[u] = init(u_1) P(u_1, u_2) ... P(u_{k-1}, u_k)``; 0 for inadmissible ``u``."""
    s = as_word(u).symbols
    if not s:
        return 1.0
    if any(x >= mu.m for x in s):
        return 0.0
    val = float(mu.initial[s[0]])
    for a, b in zip(s, s[1:]):
        val *= mu.transitions[a, b]
    return float(val)


def golden_cylinder_closed_form(p: float, u: WordLike) -> float:
    """``(1-p)^N1(u) * p^(N0(u) - N1(u_1..u_{k-1}))`` for admissible golden words."""
    w = as_word(u)
    if not w.symbols:
        return 1.0
    n1 = w.count(1)
    n0 = w.count(0)
    n1_head = w.symbols[:-1].count(1)
    return (1 - p) ** n1 * p ** (n0 - n1_head)


def cylinder_measure_multiplicative(mu: MarkovMeasure, u: WordLike) -> float:
    w = as_word(u)
    n = len(w)
    if n == 0:
        return 1.0
    val = 1.0
    for _, chain in chain_decomposition(n):
        val *= cylinder_measure_sigma(mu, restrict_word(w, chain))
        if val == 0.0:
            return 0.0
    return val


def log2_measure_words(mu: MarkovMeasure, words: np.ndarray) -> np.ndarray:
    """Vectorised ``log2 P_mu[u]`` for the rows of an int8 word array."""
    li, lp = mu._logs()
    return kernels.log2_measure(np.ascontiguousarray(words, dtype=np.int8), li, lp)


# ---------------------------------------------------------------------------
# entropy
# ---------------------------------------------------------------------------


def partition_entropy(mu: MarkovMeasure, k: int, cap: int = DEFAULT_ENUMERATION_CAP) -> float:
    """``H_mu(alpha_k)`` by enumerating the length-``k`` cylinders of Σ_A."""
    if k < 1:
        raise ValueError("k must be >= 1")
    words = admissible_word_array(mu.support, k, cap)
    probs = mu.initial[words[:, 0]].copy()
    for j in range(1, k):
        probs *= mu.transitions[words[:, j - 1], words[:, j]]
    return float(-_xlog2x(probs).sum())


def block_entropies(mu: MarkovMeasure, K: int) -> np.ndarray:
    """``H_mu(alpha_k)`` for ``k = 1..K`` by the chain rule.

    ``H_{k+1} = H_k + sum_i pi_k(i) h_i`` where ``pi_k`` is the law of the
    k-th symbol and ``h_i`` the entropy of row ``i``.
    """
    h = mu.row_entropies()
    pi = mu.initial.copy()
    out = np.empty(K)
    acc = float(-_xlog2x(pi).sum())
    for k in range(K):
        if k:
            acc += float(pi @ h)
            pi = pi @ mu.transitions
        out[k] = acc
    return out


@dataclass
class EntropySeries:
    """Truncated ``s(mu)`` in bits; the true value is in ``[value, value + tail_bound]``."""

    terms: np.ndarray
    partial: np.ndarray
    tail_bound: float
    depth: int
    m: int

    @property
    def value(self) -> float:
        return float(self.partial[-1])

    def in_base_m(self) -> float:
        return self.value / math.log2(self.m)


def entropy_tail_bound(m: int, K: int) -> float:
    # H(alpha_k) <= k log2 m, and sum_{k>K} k 2^(-k-1) = (K+2) 2^(-K-1)
    return (K + 2) * 2.0 ** (-K - 1) * math.log2(m)


def s_mu(mu: MarkovMeasure, tol: float = 1e-12) -> EntropySeries:
    if tol <= 0:
        raise ValueError("tol must be positive")
    K = 1
    while entropy_tail_bound(mu.m, K) > tol:
        K += 1
    k = np.arange(1, K + 1)
    terms = block_entropies(mu, K) / 2.0 ** (k + 1)
    return EntropySeries(terms, np.cumsum(terms), entropy_tail_bound(mu.m, K), K, mu.m)


def s_mu_exact(mu: MarkovMeasure) -> float:
    """Closed-form ``s(mu)`` in bits, summing the series through a resolvent.

    ``s = H(init)/2 + (1/4) init (I - P/2)^(-1) h`` with ``h`` the row
    entropies; no truncation involved.
    """
    h0 = float(-_xlog2x(mu.initial).sum())
    resolvent = np.linalg.solve(np.eye(mu.m) - 0.5 * mu.transitions, mu.row_entropies())
    return 0.5 * h0 + 0.25 * float(mu.initial @ resolvent)


def s_mu_closed_form_golden(p: float) -> float:
    """``2 H(p) / (3 - p)`` for the golden-mean family ``golden_measure(p)``."""
    if not 0.0 < p < 1.0:
        raise DomainError(f"p must lie strictly between 0 and 1, got {p!r}")
    return 2.0 * binary_entropy(p) / (3.0 - p)


def maximize_golden_closed_form(xtol: float = 1e-6) -> tuple[float, float]:
    """Argmax and max of ``2H(p)/(3-p)`` over (0, 1).

    Golden-section search narrows the bracket; the last digits come from
    bisection on the sign of the derivative ``log2((1-p)/p)(3-p) + H(p)``,
    since the objective is too flat at the top for comparisons alone.
    """
    invphi = (math.sqrt(5) - 1) / 2
    a, b = 1e-9, 1 - 1e-9
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = s_mu_closed_form_golden(c), s_mu_closed_form_golden(d)
    while b - a > xtol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = s_mu_closed_form_golden(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = s_mu_closed_form_golden(d)

    def slope(p):
        return math.log2((1 - p) / p) * (3 - p) + binary_entropy(p)

    for _ in range(200):
        mid = 0.5 * (a + b)
        if slope(mid) > 0:
            a = mid
        else:
            b = mid
        if b - a < 1e-16:
            break
    p = 0.5 * (a + b)
    return p, s_mu_closed_form_golden(p)


# ---------------------------------------------------------------------------
# optimisation over Markov measures
# ---------------------------------------------------------------------------


def _softmax_masked(z, mask):
    z = np.where(mask, z, -np.inf)
    z = z - z.max(axis=-1, keepdims=True)
    e = np.where(mask, np.exp(z), 0.0)
    return e / e.sum(axis=-1, keepdims=True)


class _Parameterization:
    """Unconstrained logits for (initial, allowed transitions)."""

    def __init__(self, A: TransferMatrix):
        self.A = A
        self.mask = A.entries
        self.n_init = A.m
        self.n_trans = int(self.mask.sum())

    @property
    def size(self):
        return self.n_init + self.n_trans

    def unpack(self, x):
        init = _softmax_masked(x[: self.n_init], np.ones(self.n_init, dtype=bool))
        z = np.zeros(self.mask.shape)
        z[self.mask] = x[self.n_init :]
        return init, _softmax_masked(z, self.mask)

    def measure(self, x):
        init, P = self.unpack(x)
        return MarkovMeasure(init, P, self.A)


@dataclass
class OptimizationResult:
    measure: MarkovMeasure
    s_value: float
    s_bits: float
    starts: int
    per_start: list[float] = field(default_factory=list)
    label: str = "Markov-class supremum"

    def __iter__(self):
        # unpacks as (measure, s_value)
        return iter((self.measure, self.s_value))


def optimize_markov(
    A: TransferMatrix, tol: float = 1e-10, seed: int = 0, starts: int = 16
) -> OptimizationResult:
    """Maximise ``s(mu)`` over Markov measures supported on ``A``.

    Multi-start BFGS in softmax coordinates restricted to the support of
    ``A``. ``s_value`` is in base-``m`` units, directly comparable with the
    Hausdorff dimension; ``s_bits`` is the raw base-2 value.
    """
    validate_primitive(A)
    par = _Parameterization(A)
    log2m = math.log2(A.m)

    def objective(x):
        init, P = par.unpack(x)
        h0 = float(-_xlog2x(init).sum())
        res = np.linalg.solve(np.eye(A.m) - 0.5 * P, -_xlog2x(P).sum(axis=1))
        return -(0.5 * h0 + 0.25 * float(init @ res))

    rng = np.random.default_rng(seed)
    best_x, best_f = None, np.inf
    per_start = []
    for s in range(starts):
        x0 = np.zeros(par.size) if s == 0 else rng.normal(scale=1.5, size=par.size)
        out = minimize(objective, x0, method="BFGS", options={"gtol": min(tol, 1e-9), "maxiter": 2000})
        per_start.append(-out.fun / log2m)
        if out.fun < best_f:
            best_x, best_f = out.x, out.fun
    mu = par.measure(best_x)
    bits = s_mu_exact(mu)
    return OptimizationResult(mu, bits / log2m, bits, starts, per_start)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


def _cdfs(mu: MarkovMeasure):
    init_cdf = np.cumsum(mu.initial)
    trans_cdf = np.cumsum(mu.transitions, axis=1)
    init_cdf[-1] = 1.0
    trans_cdf[:, -1] = 1.0
    return init_cdf, np.ascontiguousarray(trans_cdf)


def sample_words(mu: MarkovMeasure, n: int, count: int, seed: int) -> np.ndarray:
    """``count`` independent draws from ``P_mu`` on length-``n`` cylinders.

    Symbol ``x_k`` is drawn from the initial law for odd ``k`` and from row
    ``x_{k/2}`` of the transition matrix for even ``k``, so every chain is
    an independent Markov path.
    """
    if n < 1 or count < 1:
        raise ValueError("n and count must be >= 1")
    uniforms = np.random.default_rng(seed).random((count, n))
    init_cdf, trans_cdf = _cdfs(mu)
    return kernels.sample_words(init_cdf, trans_cdf, uniforms)


def sample_sequence(mu: MarkovMeasure, n: int, seed: int) -> CylinderWord:
    return CylinderWord(tuple(sample_words(mu, n, 1, seed)[0].tolist()))


@dataclass
class SampleBatch:
    seed: int
    n: int
    words: np.ndarray
    local_dims: np.ndarray
    dyadic: bool

    @property
    def mean(self) -> float:
        return float(self.local_dims.mean())

    @property
    def std(self) -> float:
        return float(self.local_dims.std(ddof=1)) if len(self.local_dims) > 1 else 0.0

    def word_list(self) -> list[CylinderWord]:
        return [CylinderWord(tuple(r)) for r in self.words.tolist()]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["sample_index", "word", "local_dim"])
        for idx, (row, ld) in enumerate(zip(self.words.tolist(), self.local_dims.tolist())):
            w.writerow([idx, str(CylinderWord(tuple(row))), f"{ld:.17g}"])
        return buf.getvalue()


def local_dimension_stats(mu: MarkovMeasure, n: int, count: int, seed: int) -> SampleBatch:
    """Sample words and their local dimensions ``-(1/n) log2 P_mu[x_1^n]``.

    ``dyadic`` records whether ``n`` is a power of two; other lengths are
    allowed for exploration.
    """
    words = sample_words(mu, n, count, seed)
    ld = -log2_measure_words(mu, words) / n
    return SampleBatch(seed, n, words, ld, n & (n - 1) == 0)


# ---------------------------------------------------------------------------
# telescoping identity
# ---------------------------------------------------------------------------


def _dyadic_exponent(n: int) -> int:
    if n < 2 or n & (n - 1):
        raise LengthNotPowerOfTwo(f"word length {n} is not a power of two >= 2")
    return n.bit_length() - 1


def dyadic_local_dims(u: WordLike, p: float) -> np.ndarray:
    """``a_j = -2^(-j) log2 P_mu[u_1 .. u_{2^j}]`` for ``j = 1..l`` under ``golden_measure(p)``."""
    w = as_word(u)
    ell = _dyadic_exponent(len(w))
    if not is_multiplicatively_admissible(GOLDEN, w):
        raise NotAdmissible(f"word {w} is not multiplicatively admissible for the golden mean shift")
    mu = golden_measure(p)
    arr = np.array(w.symbols, dtype=np.int8)
    return np.array(
        [-float(log2_measure_words(mu, arr[None, : 2**j])[0]) / 2**j for j in range(1, ell + 1)]
    )


def telescoping_identity(u: WordLike, p: float) -> float:
    """``-log2 p (1 + [N1(u_1^(2^l))/2^l - N1(u_1)] / (2l))``."""
    w = as_word(u)
    ell = _dyadic_exponent(len(w))
    frac = w.count(1) / len(w)
    return -math.log2(p) * (1 + (frac - w.symbols[0]) / (2 * ell))


def telescoping_average(u: WordLike, p: float | None = None, atol: float = 1e-12) -> float:
    """Mean of the dyadic local dimensions ``a_1..a_l`` of ``u``.

    When ``p`` solves ``p^3 = (1-p)^2`` the mean collapses to
    ``telescoping_identity``; that is checked and an ``IdentityViolation``
    raised on mismatch. For other ``p`` the direct mean is returned unchecked.
    """
    if p is None:
        p = solve_golden_p()
    if not 0.0 < p < 1.0:
        raise DomainError(f"p must lie strictly between 0 and 1, got {p!r}")
    avg = float(dyadic_local_dims(u, p).mean())
    if abs(p**3 - (1 - p) ** 2) < 1e-12:
        ident = telescoping_identity(u, p)
        if abs(avg - ident) > atol:
            raise IdentityViolation(f"telescoping mean {avg!r} != identity {ident!r}")
    return avg
