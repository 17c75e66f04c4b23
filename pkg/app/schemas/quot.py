"""Pydantic schemas for point counts and dimension fits."""

from typing import Optional

from pydantic import BaseModel, Field

from app.models.core import CountFamily, FiberStatus


class CountRecordRead(BaseModel):
    family: CountFamily
    n: Optional[int] = None
    d: Optional[int] = None
    r: Optional[int] = None
    lam: Optional[int] = Field(None, serialization_alias="lambda")
    mu: Optional[int] = None
    q: int
    raw: int
    group_order: Optional[int] = None
    count: str = Field(..., description="Exact quotient count; num/den when not an integer")


class Comm4ComponentsRead(BaseModel):
    q: int
    z1: int
    z2_open: int
    total: int


class PolyFitRead(BaseModel):
    coeffs: list[str] = Field(..., description="Ascending degree, rationals as num/den")
    degree: int
    leading_coeff: str
    holdout_ok: bool


class FitRead(BaseModel):
    family: CountFamily
    params: dict[str, int]
    samples: list[int]
    holdout: int
    fit: PolyFitRead


class FiberReportRead(BaseModel):
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
    equality_ok: Optional[bool] = None
    holdouts_ok: bool
    status: FiberStatus

    class Config:
        from_attributes = True
