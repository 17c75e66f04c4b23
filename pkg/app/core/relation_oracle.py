"""
Sound, one-sided zero test for word combinations.

An element is proven zero when it lies in the span of two-sided multiples
W . relation_r1(d, k) . V of the basic relations, all parameters inside a
window whose entry bounds are widened by one. Generators are brought in
outward from the target: first those whose leading words W+d+(k)+V or
W+(k)+d+V meet the target's support, then those meeting the support of
the generators already chosen, and finally, below a size cap, the whole
windowed family.

Each attempt solves the linear system twice:

1. modulo a large prime at a random point (q1, q2) to pick a candidate
   combination of independent generators;
2. exactly over ZZ(q1, q2) on the selected generators only.

Only the exact step can return a positive answer, so a bad modular point
costs completeness, never soundness.
"""
from __future__ import annotations

import logging
import random
import re
import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Optional, Sequence

import numpy as np
from sympy.polys.matrices import DomainMatrix

from app.config import get_settings
from app.core.finite_field import rref_mod
from app.core.hallcore import AlgElem, TupleWord, e_word, mul, relation_r1, word_key
from app.core.kcoef import KDOMAIN, ZERO, KElem, reduce_mod
from app.models.core import Half, ZeroTest

logger = logging.getLogger(__name__)

_WINDOW_PATTERN = re.compile(r"^\s*(\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*$")
_POINT_ATTEMPTS = 5


class WindowError(ValueError):
    """Raised when an element does not fit the requested window."""


@dataclass(frozen=True)
class Window:
    maxlen: int
    dmin: int
    dmax: int

    def __post_init__(self) -> None:
        if self.maxlen < 0:
            raise ValueError(f"window maxlen must be >= 0, got {self.maxlen}")
        if self.dmin > self.dmax:
            raise ValueError(f"window needs dmin <= dmax, got {self.dmin} > {self.dmax}")

    @classmethod
    def parse(cls, text: str) -> "Window":
        match = _WINDOW_PATTERN.match(text)
        if not match:
            raise ValueError(f"malformed window {text!r}, expected maxlen,dmin,dmax")
        return cls(int(match.group(1)), int(match.group(2)), int(match.group(3)))

    @classmethod
    def covering(cls, *elements: AlgElem) -> "Window":
        """Smallest window whose entry range contains every word of the elements."""
        words = [word for element in elements for word in element.words()]
        entries = [d for word in words for d in word]
        maxlen = max((len(word) for word in words), default=0)
        if not entries:
            return cls(maxlen, 0, 0)
        return cls(maxlen, min(entries), max(entries))

    @property
    def bounds(self) -> tuple[int, int]:
        """Entry bounds widened by one to absorb the shifts of word products."""
        return self.dmin - 1, self.dmax + 1

    def contains(self, word: TupleWord) -> bool:
        """Inputs must fit dmin..dmax exactly; only generators use the widened bounds."""
        return len(word) <= self.maxlen and all(self.dmin <= d <= self.dmax for d in word)

    def __str__(self) -> str:
        return f"{self.maxlen},{self.dmin},{self.dmax}"


def check_window(element: AlgElem, window: Window) -> None:
    for word in element.words():
        if not window.contains(word):
            raise WindowError(f"word {list(word)} lies outside window {window}")


@dataclass(frozen=True)
class RelationCandidate:
    """Parameters of the generator left . relation_r1(core, k) . right."""

    left: TupleWord
    core: TupleWord
    k: int
    right: TupleWord

    @property
    def leading_words(self) -> tuple[TupleWord, TupleWord]:
        return (
            self.left + self.core + (self.k,) + self.right,
            self.left + (self.k,) + self.core + self.right,
        )

    def build(self, half: Half) -> AlgElem:
        relation = relation_r1(self.core, self.k, half)
        if not relation:
            return relation
        return mul(mul(e_word(self.left, half), relation), e_word(self.right, half))


def _words_of(lo: int, hi: int, length: int):
    return product(range(lo, hi + 1), repeat=length)


@lru_cache(maxsize=256)
def relation_candidates(
    length: int, entry_sum: int, lo: int, hi: int
) -> tuple[RelationCandidate, ...]:
    """All generator parameters in bidegree (-length, entry_sum), shortest multipliers first."""
    candidates: list[RelationCandidate] = []
    for multiplier_length in range(max(0, length - 1)):
        core_length = length - multiplier_length
        for left_length in range(multiplier_length + 1):
            right_length = multiplier_length - left_length
            for left in _words_of(lo, hi, left_length):
                for right in _words_of(lo, hi, right_length):
                    for core in _words_of(lo, hi, core_length - 1):
                        k = entry_sum - sum(left) - sum(right) - sum(core)
                        if lo <= k <= hi:
                            candidates.append(RelationCandidate(left, core, k, right))
    return tuple(candidates)


@lru_cache(maxsize=1 << 15)
def _generator(candidate: RelationCandidate, half: Half) -> AlgElem:
    return candidate.build(half)


class _ModularImage:
    """Caches images of coefficients in F_p at one evaluation point."""

    def __init__(self, prime: int, point: tuple[int, int]):
        self.prime = prime
        self.point = point
        self._cache: dict[KElem, int] = {}

    def __call__(self, coef: KElem) -> int:
        value = self._cache.get(coef)
        if value is None:
            value = reduce_mod(coef, self.prime, *self.point)
            self._cache[coef] = value
        return value


def _row_index(columns: Sequence[AlgElem]) -> dict[TupleWord, int]:
    words = sorted({word for column in columns for word in column.words()}, key=word_key)
    return {word: i for i, word in enumerate(words)}


def _modular_candidates(
    target: AlgElem, columns: Sequence[AlgElem], rng: random.Random
) -> Optional[list[int]]:
    """Columns used by the modular solution of target = sum c_j columns_j, or None."""
    prime = get_settings().oracle_prime
    everything = [*columns, target]
    row_index = _row_index(everything)
    for _ in range(_POINT_ATTEMPTS):
        point = (rng.randrange(2, prime - 1), rng.randrange(2, prime - 1))
        image = _ModularImage(prime, point)
        matrix = np.zeros((len(row_index), len(everything)), dtype=np.int64)
        try:
            for j, column in enumerate(everything):
                for word, coef in column.items:
                    matrix[row_index[word], j] = image(coef)
        except ZeroDivisionError:
            logger.debug(f"Evaluation point hit a pole, retrying: point={point}")
            continue
        reduced, pivots = rref_mod(matrix, prime)
        target_column = len(columns)
        if target_column in pivots:
            return None
        return [pc for row, pc in enumerate(pivots) if reduced[row, target_column] != 0]
    logger.warning("No pole-free evaluation point found for the modular pre-pass")
    return None


def _exact_solution(target: AlgElem, columns: Sequence[AlgElem]) -> Optional[list[KElem]]:
    everything = [*columns, target]
    row_index = _row_index(everything)
    rows = [[KDOMAIN.zero] * len(everything) for _ in row_index]
    for j, column in enumerate(everything):
        for word, coef in column.items:
            rows[row_index[word]][j] = coef.frac
    matrix = DomainMatrix(rows, (len(row_index), len(everything)), KDOMAIN)
    reduced, pivots = matrix.rref()
    if len(columns) in pivots:
        return None
    last = reduced.to_Matrix()[:, len(columns)]
    coefficients = [ZERO] * len(columns)
    for row, pc in enumerate(pivots):
        coefficients[pc] = KElem(KDOMAIN.from_sympy(last[row]))
    return coefficients


def solve_in_span(
    target: AlgElem, columns: Sequence[AlgElem], rng: Optional[random.Random] = None
) -> Optional[dict[int, KElem]]:
    """Exact coefficients {column index: c} with target = sum c * column, or None if not found."""
    if not target:
        return {}
    if not columns:
        return None
    rng = rng or random.Random(get_settings().oracle_seed)
    selected = _modular_candidates(target, columns, rng)
    if selected is None:
        return None
    solution = _exact_solution(target, [columns[j] for j in selected])
    if solution is None:
        logger.warning(
            f"Modular candidate rejected by exact elimination: columns={len(selected)}"
        )
        return None
    return {selected[i]: coef for i, coef in enumerate(solution) if coef}


class RelationSpan:
    """Windowed relation span in one bidegree, searched outward from a target."""

    def __init__(self, length: int, entry_sum: int, window: Window, half: Half = Half.E):
        self.length = length
        self.entry_sum = entry_sum
        self.window = window
        self.half = half
        lo, hi = window.bounds
        self.candidates = relation_candidates(length, entry_sum, lo, hi)

    def _touching(
        self, frontier: set[TupleWord], taken: set[RelationCandidate]
    ) -> list[RelationCandidate]:
        return [
            candidate
            for candidate in self.candidates
            if candidate not in taken
            and any(word in frontier for word in candidate.leading_words)
        ]

    def solve(
        self,
        target: AlgElem,
        fixed_columns: Sequence[AlgElem] = (),
        rng: Optional[random.Random] = None,
    ) -> Optional[dict[int, KElem]]:
        """Coefficients of target on fixed_columns, modulo the span; None if not found.

        Keys index ``fixed_columns``; relation generators are solved for and dropped.
        """
        settings = get_settings()
        rng = rng or random.Random(settings.oracle_seed)
        fixed = list(fixed_columns)
        frontier = {word for element in (*fixed, target) for word in element.words()}
        taken: set[RelationCandidate] = set()
        generators: list[AlgElem] = []

        def attempt(stage: str) -> Optional[dict[int, KElem]]:
            logger.debug(
                f"Relation search: stage={stage}, length={self.length}, "
                f"entry_sum={self.entry_sum}, generators={len(generators)}, fixed={len(fixed)}"
            )
            solution = solve_in_span(target, fixed + generators, rng)
            if solution is None:
                return None
            return {i: coef for i, coef in solution.items() if i < len(fixed)}

        def admit(batch: list[RelationCandidate]) -> list[AlgElem]:
            built = []
            for candidate in batch:
                taken.add(candidate)
                generator = _generator(candidate, self.half)
                if generator:
                    built.append(generator)
            generators.extend(built)
            return built

        if fixed:
            solution = attempt("fixed")
            if solution is not None:
                return solution

        for round_number in range(settings.oracle_rounds):
            batch = self._touching(frontier, taken)
            if not batch:
                break
            if len(generators) + len(batch) > settings.oracle_max_generators:
                logger.debug(f"Relation search capped at round={round_number}")
                break
            built = admit(batch)
            solution = attempt(f"round-{round_number}")
            if solution is not None:
                return solution
            frontier.update(word for generator in built for word in generator.words())

        remaining = [c for c in self.candidates if c not in taken]
        if remaining and len(self.candidates) <= settings.oracle_max_generators:
            admit(remaining)
            return attempt("full")
        return None


def is_zero_mod_relations(x: AlgElem, window: Window) -> ZeroTest:
    """proven_zero if x lies in the windowed relation span; unknown otherwise."""
    if not x:
        return ZeroTest.PROVEN_ZERO
    check_window(x, window)
    start_time = time.time()
    rng = random.Random(get_settings().oracle_seed)
    for (neg_length, entry_sum), component in sorted(x.homogeneous_components().items()):
        span = RelationSpan(-neg_length, entry_sum, window, component.half)
        if span.solve(component, rng=rng) is None:
            logger.info(
                f"Zero test inconclusive: bidegree={(neg_length, entry_sum)}, "
                f"terms={len(component)}, window={window}, "
                f"time={time.time() - start_time:.3f}s"
            )
            return ZeroTest.UNKNOWN
    logger.info(
        f"Zero test proved: terms={len(x)}, window={window}, "
        f"time={time.time() - start_time:.3f}s"
    )
    return ZeroTest.PROVEN_ZERO
