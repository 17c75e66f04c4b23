"""
Word calculus for the negative half of the elliptic Hall algebra.

Elements are finite linear combinations of tuple words E_(d1,...,dn) with
coefficients in Q(q1, q2). Two words multiply by

    E_d . E_d' = E_(d, d') - q E_(..., d_n - 1, d'_1 + 1, ...)

and the reduced bracket with a generator E_k has the closed form
implemented in ``bracket_ek``. Nothing here decides equality in the algebra;
that is the job of ``relation_oracle``.

The positive half uses the same words under ``Half.F``: its products are
the opposite products, so F-words never mix with E-words.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence, Union

from app.core.kcoef import COMMUTATOR_FACTOR, ONE, Q, ZERO, KElem, Scalar
from app.core.latpath import LatticeVec, Path
from app.models.core import Half

TupleWord = tuple[int, ...]
UNIT_WORD: TupleWord = ()


def word_key(word: TupleWord) -> tuple[int, TupleWord]:
    return (len(word), word)


def bidegree(word: TupleWord) -> tuple[int, int]:
    return (-len(word), sum(word))


@dataclass(frozen=True)
class AlgElem:
    """Linear combination of tuple words; zero coefficients are never stored."""

    items: tuple[tuple[TupleWord, KElem], ...] = ()
    half: Half = Half.E

    @classmethod
    def from_terms(
        cls, terms: Mapping[TupleWord, KElem], half: Half = Half.E
    ) -> "AlgElem":
        kept = [(tuple(word), coef) for word, coef in terms.items() if coef]
        kept.sort(key=lambda item: word_key(item[0]))
        return cls(tuple(kept), half)

    @classmethod
    def zero(cls, half: Half = Half.E) -> "AlgElem":
        return cls((), half)

    @property
    def terms(self) -> dict[TupleWord, KElem]:
        return dict(self.items)

    def words(self) -> list[TupleWord]:
        return [word for word, _ in self.items]

    def coefficient(self, word: TupleWord) -> KElem:
        return self.terms.get(tuple(word), ZERO)

    def is_zero(self) -> bool:
        return not self.items

    def __bool__(self) -> bool:
        return bool(self.items)

    def __iter__(self) -> Iterator[tuple[TupleWord, KElem]]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def _check_half(self, other: "AlgElem") -> None:
        if self.half is not other.half:
            raise ValueError("cannot combine elements of the E and F halves")

    def __add__(self, other: "AlgElem") -> "AlgElem":
        self._check_half(other)
        acc = self.terms
        for word, coef in other.items:
            acc[word] = acc.get(word, ZERO) + coef
        return AlgElem.from_terms(acc, self.half)

    def __neg__(self) -> "AlgElem":
        return AlgElem(tuple((word, -coef) for word, coef in self.items), self.half)

    def __sub__(self, other: "AlgElem") -> "AlgElem":
        return self + (-other)

    def scale(self, factor: Scalar) -> "AlgElem":
        factor = KElem.of(factor)
        if not factor:
            return AlgElem.zero(self.half)
        return AlgElem(
            tuple((word, coef * factor) for word, coef in self.items), self.half
        )

    def __mul__(self, other: Union["AlgElem", Scalar]) -> "AlgElem":
        if isinstance(other, AlgElem):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other: Scalar) -> "AlgElem":
        return self.scale(other)

    def homogeneous_components(self) -> dict[tuple[int, int], "AlgElem"]:
        buckets: dict[tuple[int, int], dict[TupleWord, KElem]] = {}
        for word, coef in self.items:
            buckets.setdefault(bidegree(word), {})[word] = coef
        return {
            degree: AlgElem.from_terms(terms, self.half)
            for degree, terms in buckets.items()
        }

    def to_json(self) -> dict:
        return {
            "terms": [
                {"word": list(word), "coef": str(coef)} for word, coef in self.items
            ]
        }

    def __str__(self) -> str:
        if not self.items:
            return "0"
        name = "E" if self.half is Half.E else "F"
        return " + ".join(
            f"({coef})*{name}{list(word)}" for word, coef in self.items
        )


def e_word(entries: Sequence[int], half: Half = Half.E) -> AlgElem:
    return AlgElem(((tuple(int(d) for d in entries), ONE),), half)


def unit(half: Half = Half.E) -> AlgElem:
    return e_word(UNIT_WORD, half)


def linear_combination(
    pairs: Iterable[tuple[Scalar, AlgElem]], half: Half = Half.E
) -> AlgElem:
    total = AlgElem.zero(half)
    for factor, element in pairs:
        total = total + element.scale(factor)
    return total


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def enk_tuple(n: int, k: int) -> tuple[TupleWord, KElem]:
    """Tuple word and prefactor q^(gcd(n,k)-1) representing E_{-n,k}."""
    if n <= 0:
        raise ValueError(f"enk_tuple needs n >= 1, got n={n}")
    entries = []
    for i in range(1, n + 1):
        d = _ceil_div(k * i, n) - _ceil_div(k * (i - 1), n)
        if i == n:
            d += 1
        if i == 1:
            d -= 1
        entries.append(d)
    return tuple(entries), Q ** (math.gcd(n, k) - 1)


def tuple_rep(vec: LatticeVec, half: Half = Half.E) -> AlgElem:
    """The element E_{n,k} for a vector with n < 0, as prefactor times a word."""
    if vec.n >= 0:
        raise ValueError(f"tuple representatives need n < 0, got {vec}")
    word, prefactor = enk_tuple(-vec.n, vec.k)
    return e_word(word, half).scale(prefactor)


def path_product(path: Path, half: Half = Half.E) -> AlgElem:
    product = unit(half)
    for vec in path:
        product = mul(product, tuple_rep(vec, half))
    return product


@lru_cache(maxsize=1 << 16)
def _word_product(left: TupleWord, right: TupleWord) -> tuple[tuple[TupleWord, KElem], ...]:
    if not left:
        return ((right, ONE),)
    if not right:
        return ((left, ONE),)
    shifted = left[:-1] + (left[-1] - 1, right[0] + 1) + right[1:]
    return ((left + right, ONE), (shifted, -Q))


def mul(a: AlgElem, b: AlgElem) -> AlgElem:
    a._check_half(b)
    first, second = (a, b) if a.half is Half.E else (b, a)
    acc: dict[TupleWord, KElem] = {}
    for left, coef_left in first.items:
        for right, coef_right in second.items:
            coef = coef_left * coef_right
            for word, factor in _word_product(left, right):
                acc[word] = acc.get(word, ZERO) + coef * factor
    return AlgElem.from_terms(acc, a.half)


def bracket_ek(a: AlgElem, k: int) -> AlgElem:
    """Reduced commutator [a, E_k]_red in closed form."""
    acc: dict[TupleWord, KElem] = {}
    for word, coef in a.items:
        for i, d in enumerate(word):
            if d == k:
                continue
            if d < k:
                sign, first, last = ONE, d, k - 1
            else:
                sign, first, last = -ONE, k, d - 1
            for x in range(first, last + 1):
                new_word = word[:i] + (x, d + k - x) + word[i + 1:]
                acc[new_word] = acc.get(new_word, ZERO) + sign * coef
    result = AlgElem.from_terms(acc, a.half)
    if a.half is Half.F:
        # brackets flip sign in the opposite algebra
        return -result
    return result


def commutator(a: AlgElem, b: AlgElem) -> AlgElem:
    return mul(a, b) - mul(b, a)


def reduced_commutator(a: AlgElem, b: AlgElem) -> AlgElem:
    return commutator(a, b).scale(ONE / COMMUTATOR_FACTOR)


def reduced_bracket_with_generator(k: int, x: AlgElem) -> AlgElem:
    """[E_k, x]_red, read off from the closed form by antisymmetry."""
    return -bracket_ek(x, k)


@lru_cache(maxsize=1 << 16)
def _relation_r1_cached(entries: TupleWord, k: int, half: Half) -> AlgElem:
    word = e_word(entries, half)
    generator = e_word((k,), half)
    return commutator(word, generator) - bracket_ek(word, k).scale(COMMUTATOR_FACTOR)


def relation_r1(entries: Sequence[int], k: int, half: Half = Half.E) -> AlgElem:
    """Difference of the product and closed-form expressions of [E_d, E_k]; zero in the algebra."""
    return _relation_r1_cached(tuple(entries), int(k), half)


def parse_word(text: str) -> TupleWord:
    """Comma-separated integers; the empty string is the unit word."""
    pieces = [piece.strip() for piece in text.split(",")] if text.strip() else []
    try:
        return tuple(int(piece) for piece in pieces)
    except ValueError as e:
        raise ValueError(f"malformed tuple word {text!r}, expected integers like 0,0,1") from e
