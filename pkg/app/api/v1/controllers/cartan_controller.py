"""Cartan controller for generating-series endpoints."""

from typing import Optional

from fastapi import HTTPException

from app.core.cartan_service import CartanService
from app.core.latpath import parse_vec
from app.models.core import SeriesSign
from app.schemas.cartan import EFBracketRead, HeisenbergRead, HSeriesRead, PlethysticRead


class CartanController:
    """Controller for Cartan-sector operations."""

    @staticmethod
    def h_series(sign: SeriesSign = SeriesSign.PLUS, length: int = 3) -> HSeriesRead:
        """H^+ or H^- coefficients up to ``length`` from symbolic E_{0,l}."""
        try:
            return CartanService().h_series(sign, length)
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e))

    @staticmethod
    def plethystic(ray: str, length: int = 3, inverse: bool = False) -> PlethysticRead:
        try:
            return CartanService().plethystic(parse_vec(ray), length, inverse)
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e))

    @staticmethod
    def heisenberg(u: str, v: str, r: Optional[int] = None) -> HeisenbergRead:
        try:
            return CartanService().heisenberg(parse_vec(u), parse_vec(v), r)
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e))

    @staticmethod
    def ef_bracket(k: int, l: int, r: Optional[int] = None) -> EFBracketRead:
        try:
            return CartanService().ef_bracket(k, l, r)
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e))
