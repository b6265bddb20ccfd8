"""Deterministic generators of primitive test matrices."""

import numpy as np

from multshift.subshift import TransferMatrix, is_primitive

CIRCULANT = TransferMatrix(np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]]))


def random_primitive(rng, m, density=0.6):
    while True:
        A = TransferMatrix((rng.random((m, m)) < density).astype(np.int64))
        if is_primitive(A):
            return A


def random_equal_rows(rng, m, r):
    """Primitive matrix whose rows each contain exactly ``r`` ones."""
    for _ in range(10_000):
        rows = np.zeros((m, m), dtype=np.int64)
        for i in range(m):
            rows[i, rng.choice(m, size=r, replace=False)] = 1
        A = TransferMatrix(rows)
        if is_primitive(A):
            return A
    raise RuntimeError(f"no primitive {m}x{m} matrix with row sum {r} found")


def random_unequal_rows(rng, m, density=0.6):
    while True:
        A = random_primitive(rng, m, density)
        rs = A.row_sums
        if not np.all(rs == rs[0]):
            return A


def matrix_zoo(seed=2024):
    """At least 20 primitive matrices over m in {2, 3, 4}, mixed row-sum structure."""
    rng = np.random.default_rng(seed)
    zoo = []

    def add(A):
        if A not in zoo:
            zoo.append(A)

    for m in (2, 3, 4):
        for r in range(2, m + 1):
            for _ in range(3):
                add(random_equal_rows(rng, m, r))
        for _ in range(6):
            add(random_unequal_rows(rng, m))
    return zoo
