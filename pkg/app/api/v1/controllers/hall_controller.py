"""Hall controller for the word calculus endpoints."""

from typing import Optional

from fastapi import HTTPException

from app.core.hall_service import HallService
from app.core.hallcore import parse_word
from app.core.latpath import parse_vec
from app.core.relation_oracle import Window
from app.models.core import Half
from app.schemas.hall import (
    AlgElemRead,
    EmptyTriangleRead,
    EmptyTriangleSweepRead,
    EnkRead,
    GaryRead,
    QuadraticRead,
    SerreRead,
    StraightenRead,
)


def _window(text: Optional[str]) -> Optional[Window]:
    return Window.parse(text) if text else None


class HallController:
    """Controller for word calculus operations."""

    @staticmethod
    def enk(n: int, k: int) -> EnkRead:
        """Tuple word and prefactor of E_{-n,k}."""
        try:
            return HallService().enk(n, k)
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e))

    @staticmethod
    def multiply(a: str, b: str, half: Half = Half.E) -> AlgElemRead:
        """Product of two tuple words given as comma-separated entries."""
        try:
            return HallService(half).multiply(parse_word(a), parse_word(b))
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e))

    @staticmethod
    def bracket(word: str, k: int, half: Half = Half.E) -> AlgElemRead:
        """Reduced bracket [E_word, E_k]_red."""
        try:
            return HallService(half).bracket(parse_word(word), k)
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e))

    @staticmethod
    def serre(k: int) -> SerreRead:
        return HallService().serre(k)

    @staticmethod
    def gary() -> GaryRead:
        return HallService().gary()

    @staticmethod
    def quadratic(m: int, n: int, window: Optional[str] = None) -> QuadraticRead:
        try:
            return HallService().quadratic(m, n, _window(window))
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e))

    @staticmethod
    def empty_triangle(u: str, v: str, window: Optional[str] = None) -> EmptyTriangleRead:
        """Empty-triangle identity for the ordered pair of u and v, e.g. u=(-2,1), v=(-1,0)."""
        try:
            return HallService().empty_triangle(parse_vec(u), parse_vec(v), _window(window))
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e))

    @staticmethod
    def empty_triangle_sweep(bound: int = 2) -> EmptyTriangleSweepRead:
        if bound < 1:
            raise HTTPException(status_code=400, detail=f"bound must be >= 1, got {bound}")
        return HallService().empty_triangle_sweep(bound)

    @staticmethod
    def straighten(path: str, window: Optional[str] = None) -> StraightenRead:
        """Decompose E_path over convex paths, e.g. path=(-2,1);(-3,1)."""
        try:
            return HallService().straighten(path, _window(window))
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e))
