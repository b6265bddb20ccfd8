"""Transfer matrices, words, and the chain structure of multiplicative shifts.

A word ``u`` of length ``n`` is multiplicatively admissible for ``A`` when
``A[u_k, u_{2k}] == 1`` for every ``k`` with ``2k <= n`` (positions are
1-indexed). Splitting ``{1..n}`` into the chains ``i, 2i, 4i, ...`` for odd
``i`` turns that condition into independent ordinary subshift conditions,
one per chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import EnumerationTooLarge, IndexOutOfRange, MalformedMatrix, NotPrimitiveWithinCap

DEFAULT_ENUMERATION_CAP = 2**24


@dataclass(frozen=True, eq=False)
class TransferMatrix:
    """A 0-1 square matrix of allowed transitions ``A[i, j]``."""

    entries: np.ndarray
    primitivity_power: int | None = field(default=None, compare=False)

    def __post_init__(self):
        raw = np.asarray(self.entries)
        if raw.ndim != 2 or raw.shape[0] != raw.shape[1]:
            raise MalformedMatrix(f"transfer matrix must be square, got shape {raw.shape}")
        if raw.shape[0] < 2:
            raise MalformedMatrix("alphabet size m must be at least 2")
        if raw.dtype != np.bool_:
            if not np.all((raw == 0) | (raw == 1)):
                raise MalformedMatrix("transfer matrix entries must be 0 or 1")
        arr = raw.astype(np.bool_)
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    @property
    def row_sums(self) -> np.ndarray:
        return self.entries.sum(axis=1)

    def as_int(self) -> np.ndarray:
        return self.entries.astype(np.int64)

    def as_float(self) -> np.ndarray:
        return self.entries.astype(np.float64)

    def is_golden(self) -> bool:
        return self.m == 2 and self.entries.tolist() == [[True, True], [True, False]]

    def __eq__(self, other):
        if not isinstance(other, TransferMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.entries.tobytes()) ^ self.m

    def __repr__(self):
        rows = ["".join("1" if x else "0" for x in row) for row in self.entries]
        return f"TransferMatrix({'/'.join(rows)})"


GOLDEN = TransferMatrix(np.array([[1, 1], [1, 0]]))


def full_shift(m: int) -> TransferMatrix:
    return TransferMatrix(np.ones((m, m), dtype=np.int64))


@dataclass(frozen=True)
class CylinderWord:
    """A finite word; ``symbols[0]`` is ``x_1``. The empty word is allowed."""

    symbols: tuple[int, ...] = ()

    def __post_init__(self):
        syms = tuple(int(s) for s in self.symbols)
        if any(s < 0 for s in syms):
            raise ValueError("symbols must be non-negative")
        object.__setattr__(self, "symbols", syms)

    @classmethod
    def parse(cls, text: str) -> "CylinderWord":
        text = text.strip()
        if "," in text:
            return cls(tuple(int(t) for t in text.split(",") if t.strip()))
        return cls(tuple(int(c) for c in text))

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, idx):
        return self.symbols[idx]

    def __str__(self):
        if all(s < 10 for s in self.symbols):
            return "".join(str(s) for s in self.symbols)
        return ",".join(str(s) for s in self.symbols)

    def count(self, symbol: int) -> int:
        return self.symbols.count(symbol)


WordLike = Union[CylinderWord, str, Sequence[int], np.ndarray]


def as_word(u: WordLike) -> CylinderWord:
    if isinstance(u, CylinderWord):
        return u
    if isinstance(u, str):
        return CylinderWord.parse(u)
    return CylinderWord(tuple(int(s) for s in u))


@dataclass(frozen=True)
class ChainDecomposition:
    """The chains ``J(i) ∩ [1, n] = (i, 2i, 4i, ...)`` for odd ``i <= n``."""

    n: int
    chains: dict[int, tuple[int, ...]]

    def lengths(self) -> dict[int, int]:
        return {i: len(c) for i, c in self.chains.items()}

    def __iter__(self):
        return iter(self.chains.items())


# ---------------------------------------------------------------------------
# primitivity and counting in Σ_A
# ---------------------------------------------------------------------------


def wielandt_bound(m: int) -> int:
    return (m - 1) ** 2 + 1


def validate_primitive(A: TransferMatrix, cap: int | None = None) -> int:
    """Smallest ``r <= cap`` with ``A^r`` entrywise positive.

    The default cap is the Wielandt bound ``(m-1)^2 + 1``, so a failure at the
    default is a proof that ``A`` is not primitive. The exponent is cached on
    ``A.primitivity_power``.
    """
    if not isinstance(A, TransferMatrix):
        A = TransferMatrix(np.asarray(A))
    wb = wielandt_bound(A.m)
    if cap is None:
        cap = wb
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if A.primitivity_power is not None and A.primitivity_power <= cap:
        return A.primitivity_power
    base = A.as_int()
    power = base.copy()
    for r in range(1, cap + 1):
        if np.all(power > 0):
            object.__setattr__(A, "primitivity_power", r)
            return r
        power = np.minimum(power @ base, 1)
    raise NotPrimitiveWithinCap(cap, wb)


def is_primitive(A: TransferMatrix) -> bool:
    try:
        validate_primitive(A)
    except NotPrimitiveWithinCap:
        return False
    return True


def admissible_word_counts(A: TransferMatrix, k_max: int) -> list[int]:
    """Exact counts ``<A^(k-1) 1, 1>`` for ``k = 1..k_max`` as Python ints."""
    rows = [[j for j in range(A.m) if A.entries[i, j]] for i in range(A.m)]
    v = [1] * A.m
    out = []
    for k in range(1, k_max + 1):
        if k > 1:
            v = [sum(v[j] for j in row) for row in rows]
        out.append(sum(v))
    return out


def count_admissible_words(A: TransferMatrix, k: int) -> int:
    """Number of length-``k`` words of Σ_A, exactly."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return admissible_word_counts(A, k)[-1]


def is_admissible(A: TransferMatrix, u: WordLike) -> bool:
    """Ordinary (adjacent-pair) admissibility in Σ_A."""
    s = as_word(u).symbols
    if any(x >= A.m for x in s):
        return False
    return all(A.entries[a, b] for a, b in zip(s, s[1:]))


def _check_enumeration(m: int, k: int, cap: int):
    if m**k > cap:
        raise EnumerationTooLarge(f"{m}^{k} candidate words exceed the enumeration cap {cap}")


def admissible_word_array(A: TransferMatrix, k: int, cap: int = DEFAULT_ENUMERATION_CAP) -> np.ndarray:
    """All length-``k`` words of Σ_A as an ``(N, k)`` int8 array, lexicographic."""
    _check_enumeration(A.m, k, cap)
    if k < 1:
        return np.zeros((1, 0), dtype=np.int8)
    m = A.m
    words = np.arange(m, dtype=np.int8)[:, None]
    for _ in range(1, k):
        sym = np.tile(np.arange(m, dtype=np.int8), words.shape[0])
        grown = np.concatenate([np.repeat(words, m, axis=0), sym[:, None]], axis=1)
        words = grown[A.entries[grown[:, -2], grown[:, -1]]]
    return words


def enumerate_admissible_words(
    A: TransferMatrix, k: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> list[CylinderWord]:
    return [CylinderWord(tuple(row)) for row in admissible_word_array(A, k, cap).tolist()]


# ---------------------------------------------------------------------------
# multiplicative structure
# ---------------------------------------------------------------------------


def chain(i: int, n: int) -> tuple[int, ...]:
    out = []
    j = i
    while j <= n:
        out.append(j)
        j *= 2
    return tuple(out)


def chain_decomposition(n: int) -> ChainDecomposition:
    if n < 1:
        raise ValueError("n must be >= 1")
    return ChainDecomposition(n, {i: chain(i, n) for i in range(1, n + 1, 2)})


def _odd_count_upto(x: int) -> int:
    return (x + 1) // 2


def chain_length_census(n: int) -> dict[int, int]:
    """Map chain length ``L`` to the number of odd ``i <= n`` whose chain has length ``L``.

    The chain of ``i`` has length ``L`` exactly when ``n/2^L < i <= n/2^(L-1)``.
    Runs in ``O(log n)``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    census = {}
    L = 1
    while n >> (L - 1) >= 1:
        c = _odd_count_upto(n >> (L - 1)) - _odd_count_upto(n >> L)
        if c:
            census[L] = c
        L += 1
    return census


def restrict_word(u: WordLike, chain_indices: Iterable[int]) -> CylinderWord:
    """Read ``u`` along 1-indexed positions (typically a chain ``i, 2i, ...``)."""
    s = as_word(u).symbols
    out = []
    for j in chain_indices:
        if j < 1 or j > len(s):
            raise IndexOutOfRange(f"index {j} outside word of length {len(s)}")
        out.append(s[j - 1])
    return CylinderWord(tuple(out))


def is_multiplicatively_admissible(A: TransferMatrix, u: WordLike) -> bool:
    s = as_word(u).symbols
    if any(x >= A.m for x in s):
        return False
    n = len(s)
    return all(A.entries[s[k - 1], s[2 * k - 1]] for k in range(1, n // 2 + 1))


def count_multiplicative_prefixes(A: TransferMatrix, n: int) -> int:
    """Exact number of multiplicatively admissible words of length ``n``.

    Product over odd ``i <= n`` of the Σ_A word count for the chain length.
    """
    census = chain_length_census(n)
    counts = admissible_word_counts(A, max(census))
    total = 1
    for L, mult in census.items():
        total *= counts[L - 1] ** mult
    return total
