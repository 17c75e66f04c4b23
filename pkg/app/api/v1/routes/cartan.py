"""Cartan routes."""

from fastapi import APIRouter

from app.api.v1.controllers.cartan_controller import CartanController
from app.schemas.cartan import EFBracketRead, HeisenbergRead, HSeriesRead, PlethysticRead

router = APIRouter(prefix="/cartan", tags=["cartan"])

router.get("/h", response_model=HSeriesRead)(CartanController.h_series)
router.get("/plethystic", response_model=PlethysticRead)(CartanController.plethystic)
router.get("/heisenberg", response_model=HeisenbergRead)(CartanController.heisenberg)
router.get("/ef-bracket", response_model=EFBracketRead)(CartanController.ef_bracket)
