"""Quot controller for point-count endpoints."""

from typing import Optional

from fastapi import HTTPException, Query
from fastapi.responses import PlainTextResponse

from app.core.quot_service import QuotService, records_to_csv
from app.models.core import CountFamily
from app.schemas.quot import Comm4ComponentsRead, CountRecordRead, FiberReportRead, FitRead


def _params(**values: Optional[int]) -> dict[str, int]:
    return {name: value for name, value in values.items() if value is not None}


class QuotController:
    """Controller for point counts and dimension fits."""

    @staticmethod
    def count(
        family: CountFamily,
        q: list[int] = Query(...),
        n: Optional[int] = None,
        d: Optional[int] = None,
        r: Optional[int] = None,
        lam: Optional[int] = None,
        mu: Optional[int] = None,
    ) -> list[CountRecordRead]:
        """Count records of ``family`` at every requested prime."""
        try:
            return QuotService().count(family, q, **_params(n=n, d=d, r=r, lam=lam, mu=mu))
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e))
        except RuntimeError as e:
            raise HTTPException(status_code=500, detail=str(e))

    @staticmethod
    def export_counts(
        family: CountFamily,
        q: list[int] = Query(...),
        n: Optional[int] = None,
        d: Optional[int] = None,
        r: Optional[int] = None,
        lam: Optional[int] = None,
        mu: Optional[int] = None,
    ) -> PlainTextResponse:
        """Count records as CSV."""
        records = QuotController.count(family, q, n, d, r, lam, mu)
        return PlainTextResponse(records_to_csv(records), media_type="text/csv")

    @staticmethod
    def comm4_components(q: int) -> Comm4ComponentsRead:
        try:
            return QuotService().comm4_components(q)
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e))

    @staticmethod
    def fit(
        family: CountFamily,
        qs: list[int] = Query(...),
        holdout: int = Query(...),
        n: Optional[int] = None,
        d: Optional[int] = None,
        r: Optional[int] = None,
        lam: Optional[int] = None,
        mu: Optional[int] = None,
    ) -> FitRead:
        try:
            return QuotService().fit(family, qs, holdout, **_params(n=n, d=d, r=r, lam=lam, mu=mu))
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e))
        except RuntimeError as e:
            raise HTTPException(status_code=500, detail=str(e))

    @staticmethod
    def fiber_check(d: int, n: int, r: int, qs: list[int] = Query(...)) -> FiberReportRead:
        try:
            return QuotService().fiber_check(d, n, r, qs)
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e))
        except RuntimeError as e:
            raise HTTPException(status_code=500, detail=str(e))
