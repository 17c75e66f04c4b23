"""Quot service: point counts, fits and CSV export."""

import csv
import io
import logging
from fractions import Fraction
from typing import Iterable, Sequence

from app.core.dimension_fit import PolyFit, check_fiber_estimate, fitted_dimension
from app.core.point_counts import CountRecord, count_comm4_components, count_family
from app.models.core import CountFamily
from app.schemas.quot import (
    Comm4ComponentsRead,
    CountRecordRead,
    FiberReportRead,
    FitRead,
    PolyFitRead,
)

logger = logging.getLogger(__name__)

CSV_HEADER = ["family", "n", "d", "r", "lambda", "mu", "q", "raw", "group_order", "count"]


def format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def record_to_read(record: CountRecord) -> CountRecordRead:
    return CountRecordRead(
        family=record.family,
        n=record.n,
        d=record.d,
        r=record.r,
        lam=record.lam,
        mu=record.mu,
        q=record.q,
        raw=record.raw,
        group_order=record.group_order,
        count=format_fraction(record.count),
    )


def fit_to_read(fit: PolyFit) -> PolyFitRead:
    return PolyFitRead(
        coeffs=[format_fraction(c) for c in fit.coeffs],
        degree=fit.degree,
        leading_coeff=format_fraction(fit.leading_coeff),
        holdout_ok=fit.holdout_ok,
    )


def _cell(value) -> str:
    return "" if value is None else str(value)


def records_to_csv(records: Iterable[CountRecordRead]) -> str:
    """CSV text with one row per record; empty cells for parameters that do not apply."""
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in records:
        writer.writerow([
            record.family.value,
            _cell(record.n),
            _cell(record.d),
            _cell(record.r),
            _cell(record.lam),
            _cell(record.mu),
            record.q,
            record.raw,
            _cell(record.group_order),
            record.count,
        ])
    return output.getvalue()


class QuotService:
    """Service for finite-field point counts."""

    def count(self, family: CountFamily, qs: Sequence[int], **params: int) -> list[CountRecordRead]:
        records = [record_to_read(count_family(family, q, **params)) for q in qs]
        logger.info(f"Counted {family.value} {params} at q={list(qs)}: rows={len(records)}")
        return records

    def comm4_components(self, q: int) -> Comm4ComponentsRead:
        parts = count_comm4_components(q)
        return Comm4ComponentsRead(
            q=q, z1=parts["z1"], z2_open=parts["z2_open"], total=parts["z1"] + parts["z2_open"]
        )

    def fit(
        self, family: CountFamily, samples: Sequence[int], holdout: int, **params: int
    ) -> FitRead:
        fit = fitted_dimension(family, samples, holdout, **params)
        return FitRead(
            family=family,
            params=params,
            samples=list(samples),
            holdout=holdout,
            fit=fit_to_read(fit),
        )

    def fiber_check(self, d: int, n: int, r: int, qs: Sequence[int]) -> FiberReportRead:
        return FiberReportRead.model_validate(check_fiber_estimate(d, n, r, qs))
