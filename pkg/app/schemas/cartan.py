"""Pydantic schemas for Cartan-sector results."""

from typing import Optional

from pydantic import BaseModel

from app.models.core import SeriesSign


class MonomialFactorRead(BaseModel):
    symbol: str
    power: int


class CartanTermRead(BaseModel):
    monomial: list[MonomialFactorRead]
    coef: str


class CartanPolyRead(BaseModel):
    terms: list[CartanTermRead]


class HSeriesRead(BaseModel):
    sign: SeriesSign
    length: int
    coefficients: list[CartanPolyRead]


class PlethysticRead(BaseModel):
    ray: str
    length: int
    direction: str
    coefficients: list[CartanPolyRead]


class HeisenbergRead(BaseModel):
    u: str
    v: str
    r: Optional[int] = None
    value: CartanPolyRead


class EFBracketRead(BaseModel):
    k: int
    l: int
    r: Optional[int] = None
    value: CartanPolyRead
