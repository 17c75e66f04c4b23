"""
Cartan-sector structure constants.

``CartanPoly`` is a commutative Laurent polynomial over Q(q1, q2) in formal
symbols: E0[l] for E_{0,l}, Hp[l]/Hm[l] for H^+_l/H^-_l, P[n,k] and E[n,k]
for the generators on a ray, and the central symbol c. It wraps an element
of a sympy sparse polynomial ring over the coefficient domain; negative
exponents only ever appear on c. ``FormalSeries`` truncates power series
in one formal variable with CartanPoly coefficients and delegates its
products, inverses, logarithms and exponentials to sympy's ring_series.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from sympy import Dummy, Symbol
from sympy.polys.ring_series import rs_exp, rs_log, rs_mul, rs_series_inversion
from sympy.polys.rings import PolyElement, PolyRing

from app.core.kcoef import COMMUTATOR_FACTOR, KDOMAIN, ONE, Q, Q1, Q2, ZERO, KElem, Scalar
from app.core.latpath import LatticeVec, cross
from app.models.core import SeriesSign


class NonCollinearError(ValueError):
    """Raised when a bracket formula needs proportional lattice vectors."""


@dataclass(frozen=True, order=True)
class CartanSymbol:
    family: str
    index: tuple[int, ...] = ()

    @classmethod
    def from_name(cls, name: str) -> "CartanSymbol":
        family, _, rest = name.partition("[")
        if not rest:
            return cls(family)
        return cls(family, tuple(int(part) for part in rest.rstrip("]").split(",")))

    def __str__(self) -> str:
        if not self.index:
            return self.family
        return f"{self.family}[{','.join(str(i) for i in self.index)}]"


CENTRAL = CartanSymbol("c")

Monomial = tuple[tuple[CartanSymbol, int], ...]

_SERIES_VARIABLE = Dummy("t")


def _generators(*groups: Iterable[CartanSymbol]) -> tuple[CartanSymbol, ...]:
    # c is always a generator so that no ring is empty
    merged = {CENTRAL}
    for group in groups:
        merged.update(group)
    return tuple(sorted(merged))


@lru_cache(maxsize=512)
def _poly_ring(generators: tuple[CartanSymbol, ...]) -> PolyRing:
    return PolyRing([Symbol(str(symbol)) for symbol in generators], KDOMAIN)


@lru_cache(maxsize=512)
def _series_ring(generators: tuple[CartanSymbol, ...]) -> PolyRing:
    base = _poly_ring(generators)
    return base.clone(symbols=(*base.symbols, _SERIES_VARIABLE))


def _monomial_key(monomial: Monomial) -> tuple[int, Monomial]:
    return (sum(abs(power) for _, power in monomial), monomial)


@dataclass(frozen=True, eq=False)
class CartanPoly:
    element: PolyElement = field(default_factory=lambda: _poly_ring(_generators()).zero)

    @classmethod
    def from_terms(cls, terms: Mapping[Monomial, KElem]) -> "CartanPoly":
        generators = _generators(symbol for monomial in terms for symbol, _ in monomial)
        position = {symbol: i for i, symbol in enumerate(generators)}
        exponents: dict[tuple[int, ...], KElem] = {}
        for monomial, coef in terms.items():
            exps = [0] * len(generators)
            for symbol, power in monomial:
                exps[position[symbol]] += power
            key = tuple(exps)
            exponents[key] = exponents.get(key, ZERO) + KElem.of(coef)
        ring = _poly_ring(generators)
        return cls(ring.from_dict({key: coef.frac for key, coef in exponents.items() if coef}))

    @classmethod
    def constant(cls, value: Scalar) -> "CartanPoly":
        return cls(_poly_ring(_generators()).ground_new(KElem.of(value).frac))

    @classmethod
    def symbol(cls, symbol: CartanSymbol, power: int = 1) -> "CartanPoly":
        return cls.from_terms({((symbol, power),): ONE})

    @property
    def generators(self) -> tuple[CartanSymbol, ...]:
        return tuple(CartanSymbol.from_name(s.name) for s in self.element.ring.symbols)

    @property
    def items(self) -> tuple[tuple[Monomial, KElem], ...]:
        generators = self.generators
        terms = [
            (tuple((generators[i], p) for i, p in enumerate(exps) if p), KElem(coef))
            for exps, coef in self.element.iterterms()
        ]
        terms.sort(key=lambda item: _monomial_key(item[0]))
        return tuple(terms)

    @property
    def terms(self) -> dict[Monomial, KElem]:
        return dict(self.items)

    def __iter__(self) -> Iterator[tuple[Monomial, KElem]]:
        return iter(self.items)

    def __bool__(self) -> bool:
        return bool(self.element)

    def is_zero(self) -> bool:
        return not self.element

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CartanPoly):
            return NotImplemented
        return self.items == other.items

    def __hash__(self) -> int:
        return hash(self.items)

    def coefficient(self, monomial: Monomial = ()) -> KElem:
        return self.terms.get(tuple(monomial), ZERO)

    def constant_term(self) -> Optional[KElem]:
        """The value if the polynomial is a constant, else None."""
        items = self.items
        if not items:
            return ZERO
        if len(items) == 1 and items[0][0] == ():
            return items[0][1]
        return None

    def symbols(self) -> set[CartanSymbol]:
        return {symbol for monomial, _ in self.items for symbol, _ in monomial}

    def lifted(self, generators: tuple[CartanSymbol, ...]) -> PolyElement:
        """The element moved into the ring on ``generators``."""
        return self.element.set_ring(_poly_ring(generators))

    def _aligned(self, other: "CartanPoly") -> tuple[PolyElement, PolyElement]:
        generators = _generators(self.generators, other.generators)
        return self.lifted(generators), other.lifted(generators)

    def __add__(self, other: Union["CartanPoly", Scalar]) -> "CartanPoly":
        left, right = self._aligned(_as_poly(other))
        return CartanPoly(left + right)

    __radd__ = __add__

    def __neg__(self) -> "CartanPoly":
        return CartanPoly(-self.element)

    def __sub__(self, other: Union["CartanPoly", Scalar]) -> "CartanPoly":
        left, right = self._aligned(_as_poly(other))
        return CartanPoly(left - right)

    def __rsub__(self, other: Scalar) -> "CartanPoly":
        return _as_poly(other) - self

    def __mul__(self, other: Union["CartanPoly", Scalar]) -> "CartanPoly":
        if not isinstance(other, CartanPoly):
            return self.scale(other)
        left, right = self._aligned(other)
        return CartanPoly(left * right)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "CartanPoly":
        if exponent < 0:
            raise ValueError("negative powers of a polynomial are not supported")
        return CartanPoly(self.element**exponent)

    def scale(self, factor: Scalar) -> "CartanPoly":
        return CartanPoly(self.element.mul_ground(KElem.of(factor).frac))

    def substitute(self, symbol: CartanSymbol, value: KElem) -> "CartanPoly":
        generators = self.generators
        if symbol not in generators:
            return self
        return CartanPoly(self.element.subs(generators.index(symbol), value.frac))

    def to_json(self) -> dict:
        return {
            "terms": [
                {
                    "monomial": [
                        {"symbol": str(symbol), "power": power}
                        for symbol, power in monomial
                    ],
                    "coef": str(coef),
                }
                for monomial, coef in self.items
            ]
        }

    def __str__(self) -> str:
        items = self.items
        if not items:
            return "0"
        pieces = []
        for monomial, coef in items:
            factors = [
                str(symbol) if power == 1 else f"{symbol}^{power}"
                for symbol, power in monomial
            ]
            pieces.append("*".join([f"({coef})", *factors]))
        return " + ".join(pieces)


def _as_poly(value: Union[CartanPoly, Scalar]) -> CartanPoly:
    return value if isinstance(value, CartanPoly) else CartanPoly.constant(value)


def e0_symbols(sign: SeriesSign, length: int) -> list[CartanPoly]:
    """E_{0,l} (sign +) or E_{0,-l} (sign -) for l = 1..length."""
    step = 1 if sign is SeriesSign.PLUS else -1
    return [CartanPoly.symbol(CartanSymbol("E0", (step * l,))) for l in range(1, length + 1)]


def ray_symbols(family: str, ray: LatticeVec, length: int) -> list[CartanPoly]:
    """family[s*n, s*k] for s = 1..length along a primitive ray."""
    _require_primitive(ray)
    return [
        CartanPoly.symbol(CartanSymbol(family, (s * ray.n, s * ray.k)))
        for s in range(1, length + 1)
    ]


def h_symbol(sign: SeriesSign, index: int) -> CartanPoly:
    family = "Hp" if sign is SeriesSign.PLUS else "Hm"
    return CartanPoly.symbol(CartanSymbol(family, (index,)))


def _require_primitive(ray: LatticeVec) -> None:
    if not ray.is_primitive:
        raise ValueError(f"ray {ray} is not primitive")


@dataclass(frozen=True)
class FormalSeries:
    """Sum of coefficients[i] t^i for 0 <= i <= order; higher orders are dropped."""

    coefficients: tuple[CartanPoly, ...]

    @classmethod
    def from_coefficients(cls, values: Sequence[Union[CartanPoly, Scalar]], order: int) -> "FormalSeries":
        if order < 0:
            raise ValueError(f"truncation order must be >= 0, got {order}")
        padded = [_as_poly(v) for v in values[: order + 1]]
        padded.extend(CartanPoly() for _ in range(order + 1 - len(padded)))
        return cls(tuple(padded))

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, index: int) -> CartanPoly:
        if 0 <= index <= self.order:
            return self.coefficients[index]
        return CartanPoly()

    def truncate(self, order: int) -> "FormalSeries":
        return FormalSeries.from_coefficients(self.coefficients, min(order, self.order))

    def _shared_generators(self, *others: "FormalSeries") -> tuple[CartanSymbol, ...]:
        return _generators(*(c.generators for s in (self, *others) for c in s.coefficients))

    def to_ring(self, generators: tuple[CartanSymbol, ...]) -> PolyElement:
        """The series as a polynomial in t over the ring on ``generators``."""
        terms = {}
        for power, coef in enumerate(self.coefficients):
            for exps, value in coef.lifted(generators).iterterms():
                terms[(*exps, power)] = value
        return _series_ring(generators).from_dict(terms)

    @classmethod
    def from_ring(
        cls, element: PolyElement, generators: tuple[CartanSymbol, ...], order: int
    ) -> "FormalSeries":
        buckets: list[dict] = [{} for _ in range(order + 1)]
        for exps, value in element.iterterms():
            if exps[-1] <= order:
                buckets[exps[-1]][exps[:-1]] = value
        base = _poly_ring(generators)
        return cls(tuple(CartanPoly(base.from_dict(bucket)) for bucket in buckets))

    def _combine(self, other: "FormalSeries", op) -> "FormalSeries":
        order = min(self.order, other.order)
        generators = self._shared_generators(other)
        left = self.truncate(order).to_ring(generators)
        right = other.truncate(order).to_ring(generators)
        return FormalSeries.from_ring(op(left, right, order + 1), generators, order)

    def __add__(self, other: "FormalSeries") -> "FormalSeries":
        return self._combine(other, lambda a, b, _: a + b)

    def __sub__(self, other: "FormalSeries") -> "FormalSeries":
        return self._combine(other, lambda a, b, _: a - b)

    def __mul__(self, other: "FormalSeries") -> "FormalSeries":
        return self._combine(other, lambda a, b, prec: rs_mul(a, b, _variable(a), prec))

    def _apply(self, function) -> "FormalSeries":
        generators = self._shared_generators()
        element = self.to_ring(generators)
        result = function(element, _variable(element), self.order + 1)
        return FormalSeries.from_ring(result, generators, self.order)

    def _constant(self) -> KElem:
        value = self.coefficient(0).constant_term()
        if value is None:
            raise ValueError("constant term must be a scalar")
        return value

    def inverse(self) -> "FormalSeries":
        if not self._constant():
            raise ZeroDivisionError("series with zero constant term is not invertible")
        return self._apply(rs_series_inversion)

    def log(self) -> "FormalSeries":
        if self._constant() != ONE:
            raise ValueError("log needs constant term 1")
        return self._apply(rs_log)

    def exp(self) -> "FormalSeries":
        if self._constant():
            raise ValueError("exp needs constant term 0")
        return self._apply(rs_exp)


def _variable(element: PolyElement) -> PolyElement:
    return element.ring.gens[-1]


def _series_sides(
    e0: Sequence[CartanPoly], sign: SeriesSign, length: int
) -> tuple[FormalSeries, FormalSeries]:
    # H+ is expanded in u = 1/z, H- in z; both reduce to the same pair of series.
    ratio = ONE / Q if sign is SeriesSign.PLUS else Q
    numerator = [CartanPoly.constant(1)]
    denominator = [CartanPoly.constant(1)]
    for l in range(1, length + 1):
        sign_l = ONE if l % 2 == 0 else -ONE
        numerator.append(e0[l - 1].scale(sign_l * ratio**l))
        denominator.append(e0[l - 1].scale(sign_l))
    return (
        FormalSeries.from_coefficients(numerator, length),
        FormalSeries.from_coefficients(denominator, length),
    )


def h_from_e0(
    e0: Optional[Sequence[CartanPoly]], sign: SeriesSign, length: int
) -> list[CartanPoly]:
    """H^sign_l for l = 0..length from the ratio of the two E_{0,l} series; H_0 = 1."""
    if length < 0:
        raise ValueError(f"truncation length must be >= 0, got {length}")
    e0 = list(e0) if e0 is not None else e0_symbols(sign, length)
    if len(e0) < length:
        raise ValueError(f"need {length} E0 entries, got {len(e0)}")
    numerator, denominator = _series_sides(e0, sign, length)
    return list((numerator * denominator.inverse()).coefficients)


def h_series_sides(
    e0: Sequence[CartanPoly], sign: SeriesSign, length: int
) -> tuple[FormalSeries, FormalSeries]:
    """(numerator, denominator) series whose ratio defines H^sign."""
    return _series_sides(list(e0), sign, length)


def p_from_e(ray: LatticeVec, e: Optional[Sequence[CartanPoly]], length: Optional[int] = None) -> list[CartanPoly]:
    """P_{s*ray}, s = 1..L, from exp(-sum P_s y^s / s) = 1 + sum E_s (-y)^s."""
    _require_primitive(ray)
    e = list(e) if e is not None else ray_symbols("E", ray, length or 0)
    length = length if length is not None else len(e)
    if length < 1 or len(e) < length:
        raise ValueError(f"need length >= 1 and {length} entries, got {len(e)}")
    generating = [CartanPoly.constant(1)] + [
        e[s - 1].scale(1 if s % 2 == 0 else -1) for s in range(1, length + 1)
    ]
    logarithm = FormalSeries.from_coefficients(generating, length).log()
    return [logarithm.coefficient(s).scale(-s) for s in range(1, length + 1)]


def e_from_p(ray: LatticeVec, p: Optional[Sequence[CartanPoly]], length: Optional[int] = None) -> list[CartanPoly]:
    """Inverse of ``p_from_e``."""
    _require_primitive(ray)
    p = list(p) if p is not None else ray_symbols("P", ray, length or 0)
    length = length if length is not None else len(p)
    if length < 1 or len(p) < length:
        raise ValueError(f"need length >= 1 and {length} entries, got {len(p)}")
    exponent = [CartanPoly()] + [
        p[s - 1].scale(Fraction(-1, s)) for s in range(1, length + 1)
    ]
    generating = FormalSeries.from_coefficients(exponent, length).exp()
    return [
        generating.coefficient(s).scale(1 if s % 2 == 0 else -1)
        for s in range(1, length + 1)
    ]


def heisenberg_bracket(
    u: LatticeVec, v: LatticeVec, r: Optional[int] = None
) -> Union[KElem, CartanPoly]:
    """[P_u, P_v] for proportional u, v; a scalar when c = q^r, else a polynomial in c."""
    if cross(u, v) != 0:
        raise NonCollinearError(f"vectors {u} and {v} are not proportional")
    if r is not None and r < 0:
        raise ValueError(f"central charge exponent must be >= 0, got r={r}")
    if u.k + v.k != 0 or u.k == 0:
        return ZERO if r is not None else CartanPoly()
    s = u.gcd
    sign = 1 if u.k > 0 else -1
    scalar = (1 - Q1**s) * (1 - Q2**s) * (s * -sign) / (1 - Q**-s)
    if r is not None:
        return scalar * (1 - Q ** (-r * abs(u.k)))
    central = CartanPoly.constant(1) - CartanPoly.symbol(CENTRAL, -abs(u.k))
    return central.scale(scalar)


def ef_bracket_rhs(k: int, l: int) -> CartanPoly:
    """Coefficient of z^-k w^-l in the E-F relation, with H+_0 = c and H-_0 = 1."""
    total = k + l
    factor = COMMUTATOR_FACTOR / (1 - Q)
    if total > 0:
        return h_symbol(SeriesSign.PLUS, total).scale(factor)
    if total < 0:
        return h_symbol(SeriesSign.MINUS, -total).scale(-factor)
    return (CartanPoly.symbol(CENTRAL) - 1).scale(factor)


def specialize_central(poly: CartanPoly, r: int) -> CartanPoly:
    """Substitute c = q^r."""
    if r < 0:
        raise ValueError(f"central charge exponent must be >= 0, got r={r}")
    return poly.substitute(CENTRAL, Q**r)

