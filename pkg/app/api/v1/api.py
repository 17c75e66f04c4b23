"""Main API v1 router."""

from fastapi import APIRouter

from app.api.v1.routes.cartan import router as cartan_router
from app.api.v1.routes.hall import router as hall_router
from app.api.v1.routes.quot import router as quot_router

api_router = APIRouter()

# Include all route modules
api_router.include_router(hall_router)
api_router.include_router(cartan_router)
api_router.include_router(quot_router)
