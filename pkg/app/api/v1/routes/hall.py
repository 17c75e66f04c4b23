"""Hall routes."""

from fastapi import APIRouter

from app.api.v1.controllers.hall_controller import HallController
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

router = APIRouter(prefix="/hall", tags=["hall"])

router.get("/enk", response_model=EnkRead)(HallController.enk)
router.get("/mul", response_model=AlgElemRead)(HallController.multiply)
router.get("/bracket", response_model=AlgElemRead)(HallController.bracket)

# Identity checks
router.get("/serre", response_model=SerreRead)(HallController.serre)
router.get("/gary", response_model=GaryRead)(HallController.gary)
router.get("/quadratic", response_model=QuadraticRead)(HallController.quadratic)
router.get("/empty-triangle", response_model=EmptyTriangleRead)(HallController.empty_triangle)
router.get("/empty-triangle/sweep", response_model=EmptyTriangleSweepRead)(HallController.empty_triangle_sweep)

router.get("/straighten", response_model=StraightenRead)(HallController.straighten)
