"""Quot routes."""

from fastapi import APIRouter

from app.api.v1.controllers.quot_controller import QuotController
from app.schemas.quot import Comm4ComponentsRead, CountRecordRead, FiberReportRead, FitRead

router = APIRouter(prefix="/quot", tags=["quot"])

# Counts
router.get("/count", response_model=list[CountRecordRead])(QuotController.count)
router.get("/count/export")(QuotController.export_counts)
router.get("/comm4-components", response_model=Comm4ComponentsRead)(QuotController.comm4_components)

# Dimension fits
router.get("/fit", response_model=FitRead)(QuotController.fit)
router.get("/fiber-check", response_model=FiberReportRead)(QuotController.fiber_check)
