"""Hot inner loops, in two interchangeable implementations.

Every kernel exists as a numba ``@njit`` function and as a pure-numpy
function with identical semantics. The backend is picked once at import:

    MULTSHIFT_BACKEND=numpy   force the numpy path
    MULTSHIFT_BACKEND=numba   require numba (ImportError if missing)

With the variable unset, numba is used when importable.

Words are 2-D ``int8`` arrays of shape ``(count, n)``; column ``k - 1``
holds symbol ``x_k``.
"""

from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------


def _np_mult_admissible_mask(words, allowed):
    words = np.asarray(words)
    n = words.shape[1]
    ok = np.ones(words.shape[0], dtype=np.bool_)
    for k in range(1, n // 2 + 1):
        ok &= allowed[words[:, k - 1], words[:, 2 * k - 1]]
    return ok


def _np_count_mult_prefixes(allowed, n_max, cap):
    """Breadth-first expansion of admissible prefixes; counts per length.

    Returns ``(counts, complete)``; ``complete`` is False when a frontier
    would exceed ``cap`` words, in which case later counts are -1.
    """
    m = allowed.shape[0]
    counts = np.full(n_max, -1, dtype=np.int64)
    frontier = np.empty((1, 0), dtype=np.int8)
    for n in range(1, n_max + 1):
        size = frontier.shape[0] * m
        if size > cap:
            return counts, False
        sym = np.tile(np.arange(m, dtype=np.int8), frontier.shape[0])
        grown = np.concatenate([np.repeat(frontier, m, axis=0), sym[:, None]], axis=1)
        if n % 2 == 0:
            grown = grown[allowed[grown[:, n // 2 - 1], sym]]
        frontier = grown
        counts[n - 1] = frontier.shape[0]
    return counts, True


def _np_sample_words(init_cdf, trans_cdf, uniforms):
    count, n = uniforms.shape
    m = init_cdf.shape[0]
    out = np.empty((count, n), dtype=np.int8)
    for k in range(1, n + 1):
        u = uniforms[:, k - 1]
        if k % 2 == 1:
            sym = np.searchsorted(init_cdf, u, side="right")
        else:
            cdf = trans_cdf[out[:, k // 2 - 1]]
            sym = (cdf <= u[:, None]).sum(axis=1)
        out[:, k - 1] = np.minimum(sym, m - 1)
    return out


def _np_log2_measure(words, log2_init, log2_trans):
    words = np.asarray(words)
    n = words.shape[1]
    total = np.zeros(words.shape[0])
    for k in range(1, n + 1):
        if k % 2 == 1:
            total += log2_init[words[:, k - 1]]
        else:
            total += log2_trans[words[:, k // 2 - 1], words[:, k - 1]]
    return total


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------


def _build_numba():
    from numba import njit

    @njit(cache=True)
    def mult_admissible_mask(words, allowed):
        count, n = words.shape
        ok = np.ones(count, dtype=np.bool_)
        for r in range(count):
            for k in range(1, n // 2 + 1):
                if not allowed[words[r, k - 1], words[r, 2 * k - 1]]:
                    ok[r] = False
                    break
        return ok

    @njit(cache=True)
    def count_mult_prefixes(allowed, n_max, cap):
        # Depth-first walk over admissible prefixes with an explicit stack of
        # "next symbol to try" per depth.
        m = allowed.shape[0]
        counts = np.zeros(n_max, dtype=np.int64)
        word = np.zeros(n_max, dtype=np.int64)
        nxt = np.zeros(n_max + 1, dtype=np.int64)
        depth = 0
        visited = 0
        while depth >= 0:
            if depth == n_max or nxt[depth] == m:
                nxt[depth] = 0
                depth -= 1
                continue
            s = nxt[depth]
            nxt[depth] += 1
            k = depth + 1
            if k % 2 == 0 and not allowed[word[k // 2 - 1], s]:
                continue
            word[depth] = s
            counts[depth] += 1
            visited += 1
            if visited > cap:
                out = counts.copy()
                for j in range(n_max):
                    out[j] = -1
                return out, False
            depth += 1
        return counts, True

    @njit(cache=True)
    def sample_words(init_cdf, trans_cdf, uniforms):
        count, n = uniforms.shape
        m = init_cdf.shape[0]
        out = np.empty((count, n), dtype=np.int8)
        for r in range(count):
            for k in range(1, n + 1):
                u = uniforms[r, k - 1]
                s = 0
                if k % 2 == 1:
                    while s < m - 1 and init_cdf[s] <= u:
                        s += 1
                else:
                    prev = out[r, k // 2 - 1]
                    while s < m - 1 and trans_cdf[prev, s] <= u:
                        s += 1
                out[r, k - 1] = s
        return out

    @njit(cache=True)
    def log2_measure(words, log2_init, log2_trans):
        # Walks each chain i, 2i, 4i, ... for odd i.
        count, n = words.shape
        total = np.zeros(count)
        for r in range(count):
            acc = 0.0
            for i in range(1, n + 1, 2):
                acc += log2_init[words[r, i - 1]]
                j = 2 * i
                while j <= n:
                    acc += log2_trans[words[r, j // 2 - 1], words[r, j - 1]]
                    j *= 2
            total[r] = acc
        return total

    return SimpleNamespace(
        name="numba",
        mult_admissible_mask=mult_admissible_mask,
        count_mult_prefixes=count_mult_prefixes,
        sample_words=sample_words,
        log2_measure=log2_measure,
    )


NUMPY = SimpleNamespace(
    name="numpy",
    mult_admissible_mask=_np_mult_admissible_mask,
    count_mult_prefixes=_np_count_mult_prefixes,
    sample_words=_np_sample_words,
    log2_measure=_np_log2_measure,
)


def _numba_or_none():
    try:
        return _build_numba()
    except ImportError:
        return None


NUMBA = _numba_or_none()


def _select():
    choice = os.environ.get("MULTSHIFT_BACKEND", "").strip().lower()
    if choice == "numpy":
        return NUMPY
    if choice == "numba":
        if NUMBA is None:
            raise ImportError("MULTSHIFT_BACKEND=numba but numba is not importable")
        return NUMBA
    if choice:
        raise ValueError(f"unknown MULTSHIFT_BACKEND {choice!r}")
    return NUMBA if NUMBA is not None else NUMPY


kernels = _select()
BACKEND = kernels.name


def available_backends():
    return [k for k in (NUMBA, NUMPY) if k is not None]
