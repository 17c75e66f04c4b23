"""
Exact point counts of the commuting-matrix models over F_q.

Every count is assembled from one kernel: for a fixed X the condition
[X, Y] = 0 is linear in Y, so the Y-solutions number q^(m - rank). X runs
over a projective enumeration (nonzero X and cX give the same rank), split
into chunks that are ranked in batches and merged by addition.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Optional, Sequence

import numpy as np
from sympy.utilities.iterables import partitions

from app.config import get_settings
from app.core.enumeration import run_chunked
from app.core.finite_field import (
    batched_rank,
    borel_order,
    cyclic_vector_count,
    gaussian_binomial,
    gl_order,
    nullspace_mod,
    projective_blocks,
    projective_points,
    projective_size,
    require_prime,
)
from app.models.core import CountFamily

logger = logging.getLogger(__name__)

Position = tuple[int, int]


class InfeasibleEnumeration(ValueError):
    """Raised when a count would enumerate more states than allowed."""


def check_feasible(states: int, what: str) -> None:
    limit = get_settings().max_enumeration
    if states > limit:
        raise InfeasibleEnumeration(
            f"{what} needs {states} enumerated states, above the bound {limit}"
        )


@dataclass(frozen=True)
class CountRecord:
    family: CountFamily
    q: int
    raw: int
    count: Fraction
    n: Optional[int] = None
    d: Optional[int] = None
    r: Optional[int] = None
    lam: Optional[int] = None
    mu: Optional[int] = None
    group_order: Optional[int] = None


def strictly_lower_positions(n: int, excluded_rows: Iterable[int] = ()) -> tuple[Position, ...]:
    skip = set(excluded_rows)
    return tuple((i, j) for i in range(n) for j in range(i) if i not in skip)


@lru_cache(maxsize=256)
def _structure_tensor(n: int, support: tuple[Position, ...]) -> np.ndarray:
    """T[e, y, x] with [X, Y]_e = sum T[e, y, x] X_x Y_y on the given support."""
    index = {pos: i for i, pos in enumerate(support)}
    outputs = [(i, j) for i in range(n) for j in range(i - 1)]
    tensor = np.zeros((len(outputs), len(support), len(support)), dtype=np.int64)
    for e, (i, j) in enumerate(outputs):
        for l in range(j + 1, i):
            if (i, l) not in index or (l, j) not in index:
                continue
            # X_il Y_lj - Y_il X_lj
            tensor[e, index[(l, j)], index[(i, l)]] += 1
            tensor[e, index[(i, l)], index[(l, j)]] -= 1
    return tensor


def _rank_histogram(
    tensor: np.ndarray, q: int, block: tuple[int, int, int]
) -> np.ndarray:
    equations, m, _ = tensor.shape
    histogram = np.zeros(m + 1, dtype=np.int64)
    lead, start, stop = block
    points = projective_points(m, q, lead, start, stop)
    systems = np.einsum("eyx,bx->bey", tensor, points) % q
    ranks = batched_rank(systems, q)
    np.add.at(histogram, ranks, 1)
    return histogram


def count_commuting_on_support(n: int, support: Sequence[Position], q: int) -> int:
    """Pairs (X, Y) supported on ``support`` (strictly below the diagonal) with [X, Y] = 0."""
    require_prime(q)
    support = tuple(sorted(support))
    m = len(support)
    if m == 0:
        return 1
    check_feasible(projective_size(m, q), f"commuting pairs on {m} positions")
    return _commuting_total(n, support, q)


@lru_cache(maxsize=1024)
def _commuting_total(n: int, support: tuple[Position, ...], q: int) -> int:
    # shared by Comm, the Comm_4 split, locus L and flag Quot sweeps
    m = len(support)
    tensor = _structure_tensor(n, support)
    blocks = projective_blocks(m, q, get_settings().enumeration_chunk)
    histograms = run_chunked(
        lambda block: _rank_histogram(tensor, q, block), blocks, label="commuting count"
    )
    histogram = np.sum(histograms, axis=0)
    return q**m + (q - 1) * sum(int(count) * q ** (m - rank) for rank, count in enumerate(histogram))


def clear_count_cache() -> None:
    """Forget memoised commuting totals."""
    _commuting_total.cache_clear()


def _require_size(n: int, low: int, high: int, name: str = "n") -> None:
    if not low <= n <= high:
        raise ValueError(f"{name} must lie in {low}..{high}, got {name}={n}")


def count_comm(n: int, q: int) -> int:
    """|Comm_n(F_q)|: commuting pairs of strictly lower-triangular n x n matrices."""
    _require_size(n, 1, 4)
    start_time = time.time()
    total = count_commuting_on_support(n, strictly_lower_positions(n), q)
    logger.info(f"Counted Comm: n={n}, q={q}, count={total}, time={time.time() - start_time:.3f}s")
    return total


def count_comm4_components(q: int) -> dict[str, int]:
    """Split |Comm_4| by whether the (3,2) entries of X and Y both vanish."""
    support = tuple(pos for pos in strictly_lower_positions(4) if pos != (2, 1))
    z1 = count_commuting_on_support(4, support, q)
    total = count_comm(4, q)
    return {"z1": z1, "z2_open": total - z1}


def _inversion_weight(rows: tuple[int, ...]) -> int:
    chosen = set(rows)
    return sum(1 for s in rows for j in range(s) if j not in chosen)


def locus_L_distribution(n: int, q: int) -> dict[int, int]:
    """Comm_n points by joint image rank dim(Im X + Im Y).

    Pairs whose common left kernel contains a subspace W are counted per
    Borel orbit of W; orbits are Schubert cells indexed by their pivot rows,
    and q-binomial inversion turns containment counts into exact kernel
    dimensions.
    """
    require_prime(q)
    _require_size(n, 1, 4)
    with_rows_zero: dict[int, int] = {}
    for size in range(n + 1):
        total = 0
        for rows in combinations(range(n), size):
            support = strictly_lower_positions(n, rows)
            total += q ** _inversion_weight(rows) * count_commuting_on_support(n, support, q)
        with_rows_zero[size] = total
    by_kernel: dict[int, int] = {}
    for j in range(n + 1):
        by_kernel[j] = sum(
            (-1) ** (i - j) * q ** comb(i - j, 2) * gaussian_binomial(i, j, q) * with_rows_zero[i]
            for i in range(j, n + 1)
        )
    if by_kernel[0] != 0:
        raise RuntimeError(f"pairs with trivial common kernel found: n={n}, q={q}")
    return {n - j: by_kernel[j] for j in range(1, n + 1)}


def count_locus_L(n: int, lam: int, q: int) -> int:
    _require_size(lam, 0, n - 1, "lambda")
    return locus_L_distribution(n, q)[lam]


def _jordan_matrix(parts: Sequence[int]) -> np.ndarray:
    size = sum(parts)
    matrix = np.zeros((size, size), dtype=np.int64)
    offset = 0
    for part in parts:
        for i in range(1, part):
            matrix[offset + i, offset + i - 1] = 1
        offset += part
    return matrix


def _jordan_types(d: int) -> list[tuple[int, ...]]:
    types = []
    for multiplicities in partitions(d):
        # the yielded dict is reused between iterations
        parts = []
        for part, times in sorted(dict(multiplicities).items(), reverse=True):
            parts.extend([part] * times)
        types.append(tuple(parts))
    return types


def centralizer_order(parts: Sequence[int], q: int) -> int:
    """|C_GL(J)| for the nilpotent Jordan type ``parts``."""
    multiplicities: dict[int, int] = {}
    for part in parts:
        multiplicities[part] = multiplicities.get(part, 0) + 1
    exponent = sum(min(a, b) for a in parts for b in parts)
    exponent -= sum(m * m for m in multiplicities.values())
    order = q**exponent
    for m in multiplicities.values():
        order *= gl_order(m, q)
    return order


def _centralizer_basis(jordan: np.ndarray, q: int) -> np.ndarray:
    """Basis of {Y : JY = YJ}, each row a flattened d x d matrix."""
    d = jordan.shape[0]
    identity = np.eye(d, dtype=np.int64)
    # vec(JY - YJ) = (J (x) I - I (x) J^T) vec(Y) for row-major flattening
    operator = np.kron(jordan, identity) - np.kron(identity, jordan.T)
    return nullspace_mod(operator % q, q)


def _matrix_power(stack: np.ndarray, exponent: int, q: int) -> np.ndarray:
    result = np.broadcast_to(np.eye(stack.shape[1], dtype=np.int64), stack.shape).copy()
    for _ in range(exponent):
        result = np.einsum("bij,bjk->bik", result, stack) % q
    return result


def _joint_rank_histogram(
    jordan: np.ndarray, basis: np.ndarray, q: int, block: tuple[int, int, int]
) -> np.ndarray:
    d = jordan.shape[0]
    histogram = np.zeros(d + 1, dtype=np.int64)
    lead, start, stop = block
    coords = projective_points(basis.shape[0], q, lead, start, stop)
    ys = (coords @ basis % q).reshape(-1, d, d)
    nilpotent = ~np.any(_matrix_power(ys, d, q), axis=(1, 2))
    ys = ys[nilpotent]
    if ys.shape[0] == 0:
        return histogram
    joint = np.concatenate([np.broadcast_to(jordan, ys.shape), ys], axis=2)
    np.add.at(histogram, batched_rank(joint, q), 1)
    return histogram


def nilpotent_pair_ranks(d: int, q: int) -> dict[int, int]:
    """Nilpotent commuting d x d pairs (X, Y) by rank of [X | Y]."""
    require_prime(q)
    if d == 0:
        return {0: 1}
    group = gl_order(d, q)
    totals = [0] * (d + 1)
    for parts in _jordan_types(d):
        class_size = group // centralizer_order(parts, q)
        if all(part == 1 for part in parts):
            # X = 0: the joint rank is rank Y = d - (number of Jordan blocks of Y)
            for y_parts in _jordan_types(d):
                y_class = group // centralizer_order(y_parts, q)
                totals[d - len(y_parts)] += class_size * y_class
            continue
        jordan = _jordan_matrix(parts)
        basis = _centralizer_basis(jordan, q)
        dim = basis.shape[0]
        check_feasible(projective_size(dim, q), f"centralizer of type {parts}")
        blocks = projective_blocks(dim, q, get_settings().enumeration_chunk)
        histograms = run_chunked(
            lambda block: _joint_rank_histogram(jordan, basis, q, block),
            blocks,
            label=f"centralizer {parts}",
        )
        histogram = np.sum(histograms, axis=0)
        rank_x = d - len(parts)
        totals[rank_x] += class_size
        for rank, count in enumerate(histogram):
            totals[rank] += class_size * (q - 1) * int(count)
    return {rank: total for rank, total in enumerate(totals) if total}


def _exact_quotient(raw: int, group: int, what: str) -> Fraction:
    quotient = Fraction(raw, group)
    if quotient.denominator != 1:
        raise RuntimeError(f"{what}: raw count {raw} is not divisible by group order {group}")
    return quotient


def quot_record(d: int, r: int, q: int) -> CountRecord:
    _require_size(d, 0, 3, "d")
    _require_size(r, 1, 2, "r")
    require_prime(q)
    start_time = time.time()
    if d == 0:
        return CountRecord(CountFamily.QUOT, q, 1, Fraction(1), d=0, r=r, group_order=1)
    ranks = nilpotent_pair_ranks(d, q)
    raw = sum(count * cyclic_vector_count(d, mu, r, q) for mu, count in ranks.items())
    group = gl_order(d, q)
    quotient = _exact_quotient(raw, group, f"Quot d={d} r={r} q={q}")
    logger.info(
        f"Counted Quot: d={d}, r={r}, q={q}, count={quotient}, "
        f"time={time.time() - start_time:.3f}s"
    )
    return CountRecord(CountFamily.QUOT, q, raw, quotient, d=d, r=r, group_order=group)


def count_quot(d: int, r: int, q: int) -> int:
    return int(quot_record(d, r, q).count)


def flag_group_order(d: int, n: int, q: int) -> int:
    """Order of the block lower-triangular group with blocks (d, 1, ..., 1)."""
    return gl_order(d, q) * borel_order(n, q) * q ** (d * n)


def quot_flag_record(d: int, n: int, r: int, q: int) -> CountRecord:
    if d not in (0, 1):
        raise ValueError(f"flag Quot counts support d in {{0, 1}}, got d={d}")
    _require_size(n, 1, 3)
    _require_size(r, 1, 2, "r")
    require_prime(q)
    size = d + n
    # for d <= 1 the block-shaped pairs are the strictly lower-triangular ones
    distribution = locus_L_distribution(size, q)
    raw = sum(count * cyclic_vector_count(size, lam, r, q) for lam, count in distribution.items())
    group = flag_group_order(d, n, q)
    quotient = _exact_quotient(raw, group, f"flag Quot d={d} n={n} r={r} q={q}")
    logger.info(f"Counted flag Quot: d={d}, n={n}, r={r}, q={q}, count={quotient}")
    return CountRecord(CountFamily.QUOT_FLAG, q, raw, quotient, n=n, d=d, r=r, group_order=group)


def count_quot_flag(d: int, n: int, r: int, q: int) -> int:
    return int(quot_flag_record(d, n, r, q).count)


def locus_M_record(d: int, mu: int, r: int, q: int) -> CountRecord:
    _require_size(d, 1, 3, "d")
    _require_size(r, 1, 2, "r")
    require_prime(q)
    count = nilpotent_pair_ranks(d, q).get(mu, 0) if 0 <= mu <= d else 0
    raw = count * cyclic_vector_count(d, mu, r, q) if count else 0
    group = gl_order(d, q)
    return CountRecord(
        CountFamily.LOCUS_M, q, raw, Fraction(raw, group), d=d, r=r, mu=mu, group_order=group
    )


def count_locus_M(d: int, mu: int, r: int, q: int) -> int:
    """Raw count of Quot_d triples whose joint image has dimension ``mu``."""
    return locus_M_record(d, mu, r, q).raw


def _param(params: dict[str, int], name: str) -> int:
    value = params.get(name)
    if value is None:
        raise ValueError(f"missing parameter {name!r}")
    return value


def count_family(family: CountFamily, q: int, **params: int) -> CountRecord:
    """One CountRecord for ``family`` at field size q."""
    if family is CountFamily.COMM:
        n = _param(params, "n")
        total = count_comm(n, q)
        return CountRecord(family, q, total, Fraction(total), n=n)
    if family in (CountFamily.COMM4_Z1, CountFamily.COMM4_Z2_OPEN):
        parts = count_comm4_components(q)
        total = parts["z1"] if family is CountFamily.COMM4_Z1 else parts["z2_open"]
        return CountRecord(family, q, total, Fraction(total), n=4)
    if family is CountFamily.QUOT:
        return quot_record(_param(params, "d"), _param(params, "r"), q)
    if family is CountFamily.QUOT_FLAG:
        return quot_flag_record(_param(params, "d"), _param(params, "n"), _param(params, "r"), q)
    if family is CountFamily.LOCUS_L:
        n, lam = _param(params, "n"), _param(params, "lam")
        total = count_locus_L(n, lam, q)
        return CountRecord(family, q, total, Fraction(total), n=n, lam=lam)
    if family is CountFamily.LOCUS_M:
        return locus_M_record(_param(params, "d"), _param(params, "mu"), _param(params, "r"), q)
    raise ValueError(f"unknown count family {family}")
