"""
Linear algebra over prime fields and group-order bookkeeping.

``batched_rank`` eliminates a whole stack of small matrices at once and
is the workhorse of every point count; ``rref_mod`` handles single large
matrices for the relation oracle's modular pre-pass.
"""
import logging
from functools import lru_cache
from math import prod

import numpy as np
from sympy import isprime

logger = logging.getLogger(__name__)


def require_prime(q: int) -> None:
    if not isinstance(q, int) or q < 2 or not isprime(q):
        raise ValueError(f"field size must be a prime, got q={q}")


@lru_cache(maxsize=64)
def inverse_table(p: int) -> np.ndarray:
    table = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        table[a] = pow(a, p - 2, p)
    return table


def batched_rank(matrices: np.ndarray, p: int) -> np.ndarray:
    """Ranks over F_p of a (B, R, C) stack of matrices."""
    a = np.array(matrices, dtype=np.int64) % p
    batch, rows, cols = a.shape
    ranks = np.zeros(batch, dtype=np.int64)
    if batch == 0 or rows == 0 or cols == 0:
        return ranks
    inv = inverse_table(p)
    row_ids = np.arange(rows)
    batch_ids = np.arange(batch)
    for c in range(cols):
        column = a[:, :, c]
        eligible = (row_ids[None, :] >= ranks[:, None]) & (column != 0)
        has_pivot = eligible.any(axis=1)
        if not has_pivot.any():
            continue
        idx = batch_ids[has_pivot]
        pivot_rows = eligible[has_pivot].argmax(axis=1)
        target_rows = ranks[has_pivot]

        pivot_copy = a[idx, pivot_rows, :].copy()
        target_copy = a[idx, target_rows, :].copy()
        a[idx, target_rows, :] = pivot_copy
        a[idx, pivot_rows, :] = target_copy

        scale = inv[a[idx, target_rows, c]]
        a[idx, target_rows, :] = (a[idx, target_rows, :] * scale[:, None]) % p

        below = row_ids[None, :] > target_rows[:, None]
        factors = a[idx, :, c] * below
        pivot_row = a[idx, target_rows, :]
        a[idx] = (a[idx] - factors[:, :, None] * pivot_row[:, None, :]) % p
        ranks[idx] += 1
    return ranks


def rref_mod(matrix: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p and the pivot columns, left to right.

    Entries stay below p < 2**31 so products fit in int64.
    """
    a = np.array(matrix, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.nonzero(a[r:, c])[0]
        if nonzero.size == 0:
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            a[[r, pivot]] = a[[pivot, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        factors = a[:, c].copy()
        factors[r] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            a[hit] = (a[hit] - (factors[hit, None] * a[r]) % p) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank_mod(matrix: np.ndarray, p: int) -> int:
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return 0
    return len(rref_mod(matrix, p)[1])


def nullspace_mod(matrix: np.ndarray, p: int) -> np.ndarray:
    """Basis of {v : matrix @ v = 0} over F_p, one vector per row."""
    matrix = np.asarray(matrix, dtype=np.int64)
    cols = matrix.shape[1]
    reduced, pivots = rref_mod(matrix, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = (-reduced[row, f]) % p
    return basis


def gl_order(d: int, q: int) -> int:
    return prod(q**d - q**i for i in range(d))


def borel_order(n: int, q: int) -> int:
    return (q - 1) ** n * q ** (n * (n - 1) // 2)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    top = prod(q ** (n - i) - 1 for i in range(k))
    bottom = prod(q ** (i + 1) - 1 for i in range(k))
    return top // bottom


def surjection_count(r: int, w: int, q: int) -> int:
    """Surjective linear maps F_q^r -> F_q^w; zero when w > r."""
    return prod(q**r - q**i for i in range(w))


def cyclic_vector_count(dim: int, joint_rank: int, r: int, q: int) -> int:
    """r-tuples generating F_q^dim under a nilpotent commuting pair whose joint image has the given rank.

    By Nakayama a tuple generates iff it spans the quotient by the joint image.
    """
    return q ** (joint_rank * r) * surjection_count(r, dim - joint_rank, q)


def projective_blocks(m: int, q: int, chunk: int) -> list[tuple[int, int, int]]:
    """Chunks (lead, start, stop) covering normalized nonzero vectors of F_q^m.

    A normalized vector has its first nonzero coordinate, at ``lead``, equal to 1.
    """
    blocks = []
    for lead in range(m):
        size = q ** (m - lead - 1)
        for start in range(0, size, chunk):
            blocks.append((lead, start, min(size, start + chunk)))
    return blocks


def projective_points(m: int, q: int, lead: int, start: int, stop: int) -> np.ndarray:
    index = np.arange(start, stop, dtype=np.int64)
    points = np.zeros((index.size, m), dtype=np.int64)
    points[:, lead] = 1
    for j in range(m - 1, lead, -1):
        points[:, j] = index % q
        index = index // q
    return points


def projective_size(m: int, q: int) -> int:
    return (q**m - 1) // (q - 1)