"""
Dimensions read off point counts.

A count that is polynomial in q has degree equal to the dimension and
leading coefficient equal to the number of top-dimensional components.
Polynomiality is never assumed: every fit keeps one prime back and
checks the interpolant against it.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from sympy import Poly, Symbol, interpolate

from app.core.finite_field import require_prime
from app.core.point_counts import count_comm, count_family, count_quot, count_quot_flag
from app.models.core import CountFamily, FiberStatus

logger = logging.getLogger(__name__)

_X = Symbol("x")

Sample = tuple[int, int]


@dataclass(frozen=True)
class PolyFit:
    coeffs: tuple[Fraction, ...]
    holdout_ok: bool

    @property
    def degree(self) -> int:
        """Index of the highest nonzero coefficient; -1 for the zero polynomial."""
        for index in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[index]:
                return index
        return -1

    @property
    def leading_coeff(self) -> Fraction:
        return self.coeffs[self.degree] if self.degree >= 0 else Fraction(0)

    def __call__(self, q: int) -> Fraction:
        return sum((c * Fraction(q) ** i for i, c in enumerate(self.coeffs)), Fraction(0))


def fit_polynomial(samples: Sequence[Sample], holdout: Sample) -> PolyFit:
    """Interpolate through ``samples`` and test the holdout point."""
    if len(samples) < 2:
        raise ValueError(f"need at least 2 samples, got {len(samples)}")
    qs = [q for q, _ in samples] + [holdout[0]]
    if len(set(qs)) != len(qs):
        raise ValueError(f"duplicate sample points in {qs}")
    poly = Poly(interpolate([(q, count) for q, count in samples], _X), _X)
    coeffs = tuple(
        Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())
    )
    fit = PolyFit(coeffs=coeffs, holdout_ok=False)
    holdout_ok = fit(holdout[0]) == holdout[1]
    if not holdout_ok:
        logger.warning(
            f"Holdout mismatch: q={holdout[0]}, expected={holdout[1]}, "
            f"interpolated={fit(holdout[0])}"
        )
    return PolyFit(coeffs=coeffs, holdout_ok=holdout_ok)


def _split_primes(qs: Sequence[int]) -> tuple[list[int], int]:
    if len(qs) < 3:
        raise ValueError(f"need at least 3 primes (2 samples and a holdout), got {list(qs)}")
    for q in qs:
        require_prime(q)
    return list(qs[:-1]), qs[-1]


def fit_counts(counter: Callable[[int], int], samples: Sequence[int], holdout: int) -> PolyFit:
    points = [(q, int(counter(q))) for q in samples]
    return fit_polynomial(points, (holdout, int(counter(holdout))))


def fitted_dimension(
    family: CountFamily, samples: Sequence[int], holdout: int, **params: int
) -> PolyFit:
    """Fit the post-quotient counts of ``family``."""

    def counter(q: int) -> int:
        record = count_family(family, q, **params)
        if record.count.denominator != 1:
            raise ValueError(f"count {record.count} of {family.value} is not an integer")
        return int(record.count)

    fit = fit_counts(counter, samples, holdout)
    logger.info(
        f"Fitted {family.value} {params}: degree={fit.degree}, "
        f"leading={fit.leading_coeff}, holdout_ok={fit.holdout_ok}"
    )
    return fit


def codimension(total: PolyFit, locus: PolyFit) -> Optional[int]:
    """deg(total) - deg(locus); None when the locus is empty."""
    if locus.degree < 0:
        return None
    return total.degree - locus.degree


@dataclass(frozen=True)
class FiberReport:
    d: int
    n: int
    r: int
    dim_flag: int
    dim_quot: int
    dim_stack: int
    fiber_bound: int
    closed_bound: int
    fiber_bound_ok: bool
    closed_bound_ok: bool
    equality_ok: Optional[bool]
    holdouts_ok: bool
    status: FiberStatus


def check_fiber_estimate(d: int, n: int, r: int, qs: Sequence[int]) -> FiberReport:
    """Compare the fitted flag Quot dimension with both upper bounds."""
    samples, holdout = _split_primes(qs)
    closed_bound = 2 * r * d + r * n - 2 + (1 if d == 0 else 0)
    if len(samples) <= closed_bound:
        raise ValueError(
            f"closed bound {closed_bound} needs at least {closed_bound + 1} samples "
            f"before the holdout, got {len(samples)}"
        )
    flag = fit_counts(lambda q: count_quot_flag(d, n, r, q), samples, holdout)
    quot = fit_counts(lambda q: count_quot(d, r, q), samples, holdout)
    comm = fit_counts(lambda q: count_comm(n, q), samples, holdout)

    dim_stack = comm.degree - n * (n + 1) // 2
    fiber_bound = quot.degree + dim_stack + r * (d + n)
    fiber_bound_ok = flag.degree <= fiber_bound
    closed_bound_ok = flag.degree <= closed_bound
    equality_ok = flag.degree == r * n - 1 if d == 0 else None
    holdouts_ok = flag.holdout_ok and quot.holdout_ok and comm.holdout_ok

    if not holdouts_ok:
        status = FiberStatus.INCONCLUSIVE
    elif fiber_bound_ok and closed_bound_ok and equality_ok is not False:
        status = FiberStatus.CONFIRMED
    else:
        status = FiberStatus.VIOLATED
    log = logger.info if status is FiberStatus.CONFIRMED else logger.warning
    log(
        f"Fiber estimate: d={d}, n={n}, r={r}, dim_flag={flag.degree}, "
        f"fiber_bound={fiber_bound}, closed_bound={closed_bound}, status={status.value}"
    )
    return FiberReport(
        d=d,
        n=n,
        r=r,
        dim_flag=flag.degree,
        dim_quot=quot.degree,
        dim_stack=dim_stack,
        fiber_bound=fiber_bound,
        closed_bound=closed_bound,
        fiber_bound_ok=fiber_bound_ok,
        closed_bound_ok=closed_bound_ok,
        equality_ok=equality_ok,
        holdouts_ok=holdouts_ok,
        status=status,
    )
