"""
Lattice vectors and paths: clockwise order, convexity, area and the
empty-triangle predicate used by straightening.

The order starts at the negative vertical ray (sector 0), sweeps the left
half-plane n < 0 (sector 1), then the positive vertical ray (sector 2) and
the right half-plane n > 0 (sector 3). Inside a half-plane u precedes v
when cross(u, v) < 0.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Sequence

_VEC_PATTERN = re.compile(r"^\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$")


class Ordering(str, enum.Enum):
    BEFORE = "before"
    TIED = "tied"
    AFTER = "after"


@dataclass(frozen=True, order=True)
class LatticeVec:
    n: int
    k: int

    def __post_init__(self) -> None:
        if self.n == 0 and self.k == 0:
            raise ValueError("lattice vector (0,0) is not allowed")

    def __add__(self, other: "LatticeVec") -> "LatticeVec":
        return LatticeVec(self.n + other.n, self.k + other.k)

    def __neg__(self) -> "LatticeVec":
        return LatticeVec(-self.n, -self.k)

    @property
    def gcd(self) -> int:
        return math.gcd(self.n, self.k)

    @property
    def is_primitive(self) -> bool:
        return self.gcd == 1

    @property
    def sector(self) -> int:
        if self.n == 0:
            return 0 if self.k < 0 else 2
        return 1 if self.n < 0 else 3

    def __str__(self) -> str:
        return f"({self.n},{self.k})"


Path = tuple[LatticeVec, ...]


def cross(u: LatticeVec, v: LatticeVec) -> int:
    return u.n * v.k - u.k * v.n


def clockwise_before(u: LatticeVec, v: LatticeVec) -> Ordering:
    if u.sector != v.sector:
        return Ordering.BEFORE if u.sector < v.sector else Ordering.AFTER
    value = cross(u, v)
    if value < 0:
        return Ordering.BEFORE
    if value > 0:
        return Ordering.AFTER
    return Ordering.TIED


def _compare(u: LatticeVec, v: LatticeVec) -> int:
    verdict = clockwise_before(u, v)
    if verdict is Ordering.BEFORE:
        return -1
    return 1 if verdict is Ordering.AFTER else 0


def is_convex(path: Sequence[LatticeVec]) -> bool:
    return all(
        clockwise_before(left, right) is not Ordering.AFTER
        for left, right in zip(path, path[1:])
    )


def convexify(path: Sequence[LatticeVec]) -> Path:
    # sorted() is stable, so tied vectors keep their relative order
    return tuple(sorted(path, key=cmp_to_key(_compare)))


def area(path: Sequence[LatticeVec]) -> int:
    """Sum over out-of-order pairs of the parallelogram they span.

    This is the straightening potential: within one half-plane it is the sum
    of max(0, cross(p_i, p_j)) over i < j and vanishes exactly on convex
    paths. Across half-planes an antiparallel out-of-order pair spans no
    area, so a path such as (1,1);(-1,-1) has area 0 without being convex.
    """
    total = 0
    for i, left in enumerate(path):
        for right in path[i + 1:]:
            if clockwise_before(right, left) is Ordering.BEFORE:
                total += abs(cross(left, right))
    return total


def adjacent_inversions(path: Sequence[LatticeVec]) -> list[tuple[int, int]]:
    """(index, |cross|) for each adjacent pair that is out of clockwise order."""
    return [
        (index, abs(cross(left, right)))
        for index, (left, right) in enumerate(zip(path, path[1:]))
        if clockwise_before(right, left) is Ordering.BEFORE
    ]


def swap_adjacent(path: Sequence[LatticeVec], index: int) -> Path:
    items = list(path)
    items[index], items[index + 1] = items[index + 1], items[index]
    return tuple(items)


def triangle_is_empty(u: LatticeVec, v: LatticeVec) -> bool:
    return abs(cross(u, v)) == 1


def path_sum(path: Sequence[LatticeVec]) -> LatticeVec:
    if not path:
        raise ValueError("the empty path has no total vector")
    n = sum(vec.n for vec in path)
    k = sum(vec.k for vec in path)
    return LatticeVec(n, k)


def parse_vec(text: str) -> LatticeVec:
    match = _VEC_PATTERN.match(text.strip())
    if not match:
        raise ValueError(f"malformed lattice vector {text!r}, expected (n,k)")
    return LatticeVec(int(match.group(1)), int(match.group(2)))


def parse_path(text: str) -> Path:
    pieces = [piece for piece in text.split(";") if piece.strip()]
    if not pieces:
        raise ValueError("empty path text")
    return tuple(parse_vec(piece) for piece in pieces)


def render_path(path: Sequence[LatticeVec]) -> str:
    return ";".join(str(vec) for vec in path)
