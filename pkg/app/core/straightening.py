"""
Straightening of ordered products E_p into the convex-path spanning set.

The product of tuple representatives along p is matched against products
E_v over convex paths v of the same total vector, modulo the windowed
relation span. Convex columns come first in the linear system, so the
solution is read off on them and the relation part is discarded.
"""
from __future__ import annotations

import logging
import time
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from app.core.hallcore import AlgElem, enk_tuple, path_product
from app.core.kcoef import ONE, KElem
from app.core.latpath import LatticeVec, Path, convexify, is_convex, path_sum, render_path
from app.core.relation_oracle import RelationSpan, Window, WindowError, check_window

logger = logging.getLogger(__name__)

Decomposition = dict[Path, KElem]


def _fits(vec: LatticeVec, lo: int, hi: int) -> bool:
    word, _ = enk_tuple(-vec.n, vec.k)
    return all(lo <= d <= hi for d in word)


@lru_cache(maxsize=64)
def _vector_options(length: int, lo: int, hi: int) -> tuple[LatticeVec, ...]:
    """Vectors (-m, k), m <= length, whose tuple words stay inside [lo, hi]."""
    options = []
    for m in range(1, length + 1):
        for k in range(m * (lo - 1), m * (hi + 1) + 1):
            vec = LatticeVec(-m, k)
            if _fits(vec, lo, hi):
                options.append(vec)
    return tuple(options)


@lru_cache(maxsize=64)
def convex_candidates(total: LatticeVec, lo: int, hi: int) -> tuple[Path, ...]:
    """Convex paths with the given total whose vectors have tuple words in [lo, hi]."""
    length = -total.n
    options = _vector_options(length, lo, hi)
    slopes = [Fraction(vec.k, -vec.n) for vec in options]
    low_slope, high_slope = min(slopes), max(slopes)
    found: list[Path] = []

    def extend(start: int, chosen: list[LatticeVec], left: int, weight: int) -> None:
        if left == 0:
            if weight == 0:
                found.append(convexify(chosen))
            return
        if not low_slope * left <= weight <= high_slope * left:
            return
        for index in range(start, len(options)):
            vec = options[index]
            if -vec.n <= left:
                chosen.append(vec)
                extend(index, chosen, left + vec.n, weight - vec.k)
                chosen.pop()

    extend(0, [], length, total.k)
    return tuple(sorted(set(found)))


def straighten(path: Sequence[LatticeVec], window: Window) -> Optional[Decomposition]:
    """Coefficients of E_path on convex-path products, or None when the window is too small."""
    path = tuple(path)
    if not path:
        raise ValueError("cannot straighten the empty path")
    for vec in path:
        if vec.n >= 0:
            raise ValueError(f"straightening needs n < 0 for every vector, got {vec}")
    if is_convex(path):
        return {path: ONE}

    total = path_sum(path)
    if -total.n > window.maxlen:
        raise WindowError(f"path of length {-total.n} exceeds window {window}")
    product = path_product(path)
    check_window(product, window)

    start_time = time.time()
    lo, hi = window.bounds
    candidates = convex_candidates(total, lo, hi)
    columns: list[AlgElem] = [path_product(candidate) for candidate in candidates]
    span = RelationSpan(-total.n, total.k, window)
    solution = span.solve(product, fixed_columns=columns)
    if solution is None:
        logger.warning(
            f"Straightening inconclusive: path={render_path(path)}, window={window}, "
            f"candidates={len(candidates)}"
        )
        return None
    logger.info(
        f"Straightened path={render_path(path)}: terms={len(solution)}, "
        f"candidates={len(candidates)}, time={time.time() - start_time:.3f}s"
    )
    return {candidates[index]: coef for index, coef in sorted(solution.items())}
