"""
Direct enumerations used to cross-check the counting kernels on small cases.

Nothing here is clever: every matrix pair and every tuple of vectors is
listed, and cyclicity is decided by Krylov closure.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from itertools import product

import numpy as np

from app.core.finite_field import gl_order, rank_mod, require_prime
from app.core.point_counts import (
    check_feasible,
    flag_group_order,
    strictly_lower_positions,
)

logger = logging.getLogger(__name__)


def _matrices_on(n: int, positions, q: int) -> np.ndarray:
    """Every n x n matrix supported on ``positions``, stacked."""
    count = q ** len(positions)
    stack = np.zeros((count, n, n), dtype=np.int64)
    for index, values in enumerate(product(range(q), repeat=len(positions))):
        for (i, j), value in zip(positions, values):
            stack[index, i, j] = value
    return stack


def _all_matrices(d: int, q: int) -> np.ndarray:
    return _matrices_on(d, [(i, j) for i in range(d) for j in range(d)], q)


def _commuting_pairs(stack: np.ndarray, q: int) -> list[tuple[np.ndarray, np.ndarray]]:
    pairs = []
    for x in stack:
        commutator = (np.einsum("ij,bjk->bik", x, stack) - np.einsum("bij,jk->bik", stack, x)) % q
        for y in stack[~np.any(commutator, axis=(1, 2))]:
            pairs.append((x, y))
    return pairs


def is_cyclic(x: np.ndarray, y: np.ndarray, vectors: np.ndarray, p: int) -> bool:
    """True iff the columns of ``vectors`` generate F_p^d under x and y."""
    d = x.shape[0]
    span = np.asarray(vectors, dtype=np.int64).reshape(d, -1) % p
    rank = rank_mod(span, p) if span.size else 0
    while True:
        grown = np.concatenate([span, x @ span % p, y @ span % p], axis=1)
        new_rank = rank_mod(grown, p)
        if new_rank == rank:
            return rank == d
        span, rank = grown, new_rank


def brute_count_comm(n: int, q: int) -> int:
    require_prime(q)
    positions = strictly_lower_positions(n)
    check_feasible(q ** (2 * len(positions)), "brute-force Comm")
    stack = _matrices_on(n, positions, q)
    return len(_commuting_pairs(stack, q))


def brute_locus_L(n: int, q: int) -> dict[int, int]:
    """Comm_n points by rank of [X | Y], by enumeration."""
    require_prime(q)
    positions = strictly_lower_positions(n)
    check_feasible(q ** (2 * len(positions)), "brute-force L-loci")
    stack = _matrices_on(n, positions, q)
    distribution = {lam: 0 for lam in range(n)}
    for x, y in _commuting_pairs(stack, q):
        lam = rank_mod(np.concatenate([x, y], axis=1), q)
        distribution[lam] += 1
    return distribution


def _cyclic_tuples(x: np.ndarray, y: np.ndarray, d: int, r: int, q: int) -> int:
    total = 0
    for values in product(range(q), repeat=d * r):
        vectors = np.array(values, dtype=np.int64).reshape(d, r)
        if is_cyclic(x, y, vectors, q):
            total += 1
    return total


def brute_count_quot(d: int, r: int, q: int) -> Fraction:
    """Quot_d by listing nilpotent commuting pairs and cyclic r-tuples."""
    require_prime(q)
    if d == 0:
        return Fraction(1)
    check_feasible(q ** (2 * d * d + d * r), "brute-force Quot")
    stack = _all_matrices(d, q)
    power = stack.copy()
    for _ in range(d - 1):
        power = np.einsum("bij,bjk->bik", power, stack) % q
    nilpotent = stack[~np.any(power, axis=(1, 2))]
    raw = sum(_cyclic_tuples(x, y, d, r, q) for x, y in _commuting_pairs(nilpotent, q))
    logger.debug(f"Brute-force Quot: d={d}, r={r}, q={q}, raw={raw}")
    return Fraction(raw, gl_order(d, q))


def brute_count_quot_flag(d: int, n: int, r: int, q: int) -> Fraction:
    """Flag Quot for d <= 1 by listing strictly lower-triangular pairs and cyclic tuples."""
    require_prime(q)
    if d not in (0, 1):
        raise ValueError(f"flag Quot brute force supports d in {{0, 1}}, got d={d}")
    size = d + n
    positions = strictly_lower_positions(size)
    check_feasible(q ** (2 * len(positions) + size * r), "brute-force flag Quot")
    stack = _matrices_on(size, positions, q)
    raw = sum(_cyclic_tuples(x, y, size, r, q) for x, y in _commuting_pairs(stack, q))
    return Fraction(raw, flag_group_order(d, n, q))
