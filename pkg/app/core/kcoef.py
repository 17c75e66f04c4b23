"""
Exact coefficients: rational functions in q1 and q2.

Elements are stored as canonical fractions of the sparse field
ZZ(q1, q2) from sympy, so structural equality is semantic equality.
The canonical text form pulls the monomial content of the denominator
into the numerator, which makes Laurent numerators such as q1^-1*q2^-1
print as a single term.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Union

from sympy import ZZ, fraction, symbols, sympify, together

SYMBOL_Q1, SYMBOL_Q2 = symbols("q1 q2")

# Coefficient domain shared with DomainMatrix elimination in the relation oracle.
KDOMAIN = ZZ.frac_field(SYMBOL_Q1, SYMBOL_Q2)
_FIELD = KDOMAIN.field
_RING = _FIELD.ring

Exponent = tuple[int, int]
Scalar = Union["KElem", int, Fraction]


@dataclass(frozen=True)
class LaurentPoly:
    """Finite sum of integer multiples of q1^a q2^b, terms in descending (a, b) order."""

    terms: tuple[tuple[Exponent, int], ...]

    @classmethod
    def from_mapping(cls, mapping: dict[Exponent, int]) -> "LaurentPoly":
        items = [(exp, int(c)) for exp, c in mapping.items() if c]
        return cls(tuple(sorted(items, key=lambda item: item[0], reverse=True)))

    def __iter__(self) -> Iterator[tuple[Exponent, int]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_one(self) -> bool:
        return self.terms == (((0, 0), 1),)

    def evaluate(self, v1: Fraction, v2: Fraction) -> Fraction:
        total = Fraction(0)
        for (a, b), c in self.terms:
            total += c * Fraction(v1) ** a * Fraction(v2) ** b
        return total

    def evaluate_mod(self, p: int, v1: int, v2: int) -> int:
        total = 0
        for (a, b), c in self.terms:
            total += c * pow(v1, a, p) * pow(v2, b, p)
        return total % p

    def render(self) -> str:
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for index, ((a, b), c) in enumerate(self.terms):
            monomial = "*".join(
                part
                for part in (_power("q1", a), _power("q2", b))
                if part
            )
            magnitude = abs(c)
            if not monomial:
                body = str(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{magnitude}*{monomial}"
            if index == 0:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f"-{body}" if c < 0 else f"+{body}")
        return "".join(pieces)


def _power(name: str, exponent: int) -> str:
    if exponent == 0:
        return ""
    if exponent == 1:
        return name
    return f"{name}^{exponent}"


def _coerce(value: Scalar):
    if isinstance(value, KElem):
        return value.frac
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return _FIELD.ground_new(value)
    if isinstance(value, Fraction):
        return _FIELD.ground_new(value.numerator) / _FIELD.ground_new(value.denominator)
    raise TypeError(f"cannot use {type(value).__name__} as a coefficient")


@dataclass(frozen=True, eq=False)
class KElem:
    """An element of Q(q1, q2) in canonical form."""

    frac: object

    @classmethod
    def of(cls, value: Scalar) -> "KElem":
        return value if isinstance(value, KElem) else cls(_coerce(value))

    @classmethod
    def parse(cls, text: str) -> "KElem":
        """Read the canonical text form (``^`` or ``**`` for powers)."""
        if not text or not text.strip():
            raise ValueError("empty coefficient text")
        try:
            expr = sympify(
                text.replace("^", "**"),
                locals={"q1": SYMBOL_Q1, "q2": SYMBOL_Q2},
            )
        except Exception as e:  # sympify raises several unrelated types
            raise ValueError(f"cannot parse coefficient {text!r}: {e}") from e
        if expr.free_symbols - {SYMBOL_Q1, SYMBOL_Q2}:
            raise ValueError(f"coefficient {text!r} uses symbols other than q1, q2")
        numer, denom = fraction(together(expr))
        top = _FIELD.from_expr(numer)
        bottom = _FIELD.from_expr(denom)
        if not bottom:
            raise ZeroDivisionError(f"coefficient {text!r} has a zero denominator")
        return cls(top / bottom)

    # -- canonical views -------------------------------------------------

    @cached_property
    def _laurent(self) -> tuple[LaurentPoly, LaurentPoly]:
        numer = self.frac.numer
        denom = self.frac.denom
        shift_a = min(exp[0] for exp in denom.keys())
        shift_b = min(exp[1] for exp in denom.keys())
        top = {(a - shift_a, b - shift_b): int(c) for (a, b), c in numer.items()}
        bottom = {(a - shift_a, b - shift_b): int(c) for (a, b), c in denom.items()}
        return LaurentPoly.from_mapping(top), LaurentPoly.from_mapping(bottom)

    @property
    def numerator(self) -> LaurentPoly:
        return self._laurent[0]

    @property
    def denominator(self) -> LaurentPoly:
        return self._laurent[1]

    def is_zero(self) -> bool:
        return not self.frac

    def __bool__(self) -> bool:
        return bool(self.frac)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: Scalar) -> "KElem":
        return KElem(self.frac + _coerce(other))

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "KElem":
        return KElem(self.frac - _coerce(other))

    def __rsub__(self, other: Scalar) -> "KElem":
        return KElem(_coerce(other) - self.frac)

    def __mul__(self, other: Scalar) -> "KElem":
        return KElem(self.frac * _coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "KElem":
        divisor = _coerce(other)
        if not divisor:
            raise ZeroDivisionError("division by zero coefficient")
        return KElem(self.frac / divisor)

    def __rtruediv__(self, other: Scalar) -> "KElem":
        if not self.frac:
            raise ZeroDivisionError("division by zero coefficient")
        return KElem(_coerce(other) / self.frac)

    def __neg__(self) -> "KElem":
        return KElem(-self.frac)

    def __pow__(self, exponent: int) -> "KElem":
        if exponent < 0:
            # Inverting through division keeps the denominator normalized.
            return ONE / (self ** -exponent)
        return KElem(self.frac**exponent)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, KElem):
            return self.frac == other.frac
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.frac == _coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.frac)

    def __str__(self) -> str:
        top, bottom = self._laurent
        if bottom.is_one():
            return top.render()
        return f"{_grouped(top)}/{_grouped(bottom)}"

    def __repr__(self) -> str:
        return f"KElem({str(self)!r})"


def _grouped(poly: LaurentPoly) -> str:
    text = poly.render()
    return f"({text})" if len(poly) > 1 else text


ZERO = KElem.of(0)
ONE = KElem.of(1)
Q1 = KElem(_FIELD.gens[0])
Q2 = KElem(_FIELD.gens[1])
Q = Q1 * Q2
# Every commutator in the algebra is a multiple of this factor.
COMMUTATOR_FACTOR = (1 - Q1) * (1 - Q2)


def q_power(exponent: int) -> KElem:
    return Q**exponent


def qint(n: int) -> KElem:
    """Quantum integer [n] = 1 + q^-1 + ... + q^-(n-1)."""
    if n <= 0:
        raise ValueError(f"quantum integer needs n >= 1, got n={n}")
    return sum((Q**-i for i in range(n)), ZERO)


def kelem_sum(values: Iterable[KElem]) -> KElem:
    return sum(values, ZERO)


def is_symmetric(a: KElem) -> bool:
    """True iff a is invariant under q1 <-> q2."""
    numer = _RING.from_dict({(b, c): v for (c, b), v in a.frac.numer.items()})
    denom = _RING.from_dict({(b, c): v for (c, b), v in a.frac.denom.items()})
    return KElem(_FIELD.new(numer, denom)) == a


def specialize(a: KElem, v1: Union[int, Fraction], v2: Union[int, Fraction]) -> Fraction:
    """Exact value of a at q1 = v1, q2 = v2."""
    bottom = a.denominator.evaluate(Fraction(v1), Fraction(v2))
    if bottom == 0:
        raise ZeroDivisionError(f"pole at q1={v1}, q2={v2}")
    try:
        top = a.numerator.evaluate(Fraction(v1), Fraction(v2))
    except ZeroDivisionError as e:
        raise ZeroDivisionError(f"pole at q1={v1}, q2={v2}") from e
    return top / bottom


def reduce_mod(a: KElem, p: int, v1: int, v2: int) -> int:
    """Image of a in F_p under q1 -> v1, q2 -> v2."""
    bottom = a.denominator.evaluate_mod(p, v1, v2)
    if bottom == 0:
        raise ZeroDivisionError(f"pole modulo {p} at q1={v1}, q2={v2}")
    top = a.numerator.evaluate_mod(p, v1, v2)
    return top * pow(bottom, -1, p) % p
