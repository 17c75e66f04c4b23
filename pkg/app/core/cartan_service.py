"""Cartan service: generating-series conversions and bracket constants."""

import logging
from typing import Optional

from app.core.cartan import (
    CartanPoly,
    e_from_p,
    ef_bracket_rhs,
    h_from_e0,
    heisenberg_bracket,
    p_from_e,
    specialize_central,
)
from app.core.latpath import LatticeVec
from app.models.core import SeriesSign
from app.schemas.cartan import (
    CartanPolyRead,
    EFBracketRead,
    HeisenbergRead,
    HSeriesRead,
    PlethysticRead,
)

logger = logging.getLogger(__name__)


def to_read(poly: CartanPoly) -> CartanPolyRead:
    return CartanPolyRead.model_validate(poly.to_json())


class CartanService:
    """Service for Cartan-sector computations."""

    def h_series(self, sign: SeriesSign, length: int) -> HSeriesRead:
        coefficients = h_from_e0(None, sign, length)
        return HSeriesRead(
            sign=sign, length=length, coefficients=[to_read(c) for c in coefficients]
        )

    def plethystic(self, ray: LatticeVec, length: int, inverse: bool = False) -> PlethysticRead:
        if inverse:
            values, direction = e_from_p(ray, None, length), "e_from_p"
        else:
            values, direction = p_from_e(ray, None, length), "p_from_e"
        logger.debug(f"Plethystic conversion: ray={ray}, length={length}, direction={direction}")
        return PlethysticRead(
            ray=str(ray),
            length=length,
            direction=direction,
            coefficients=[to_read(v) for v in values],
        )

    def heisenberg(self, u: LatticeVec, v: LatticeVec, r: Optional[int] = None) -> HeisenbergRead:
        value = heisenberg_bracket(u, v, r)
        poly = value if isinstance(value, CartanPoly) else CartanPoly.constant(value)
        return HeisenbergRead(u=str(u), v=str(v), r=r, value=to_read(poly))

    def ef_bracket(self, k: int, l: int, r: Optional[int] = None) -> EFBracketRead:
        value = ef_bracket_rhs(k, l)
        if r is not None:
            value = specialize_central(value, r)
        return EFBracketRead(k=k, l=l, r=r, value=to_read(value))
