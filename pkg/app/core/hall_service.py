"""Hall service: word calculus requests and identity checks."""

import logging
import time
from typing import Optional

from app.core.hall_identities import (
    empty_triangle_defect,
    empty_triangle_pairs,
    gary_trace,
    ordered_pair,
    quadratic_difference,
    quadratic_prediction,
    verify_empty_triangle,
    verify_quadratic,
    verify_serre,
)
from app.core.hallcore import AlgElem, bracket_ek, e_word, enk_tuple, mul, path_product
from app.core.latpath import LatticeVec, parse_path, render_path
from app.core.relation_oracle import Window
from app.core.straightening import straighten
from app.models.core import Half, Verdict
from app.schemas.hall import (
    AlgElemRead,
    EmptyTriangleRead,
    EmptyTriangleSweepRead,
    EnkRead,
    GaryRead,
    PathTermRead,
    QuadraticRead,
    SerreRead,
    StraightenRead,
)

logger = logging.getLogger(__name__)


def to_read(element: AlgElem) -> AlgElemRead:
    return AlgElemRead.model_validate(element.to_json())


def _verdict(flag: bool) -> Verdict:
    return Verdict.VERIFIED if flag else Verdict.UNKNOWN


class HallService:
    """Service for the negative-half word calculus."""

    def __init__(self, half: Half = Half.E):
        self.half = half

    def enk(self, n: int, k: int) -> EnkRead:
        word, prefactor = enk_tuple(n, k)
        return EnkRead(word=list(word), prefactor=str(prefactor))

    def multiply(self, left: tuple[int, ...], right: tuple[int, ...]) -> AlgElemRead:
        return to_read(mul(e_word(left, self.half), e_word(right, self.half)))

    def bracket(self, word: tuple[int, ...], k: int) -> AlgElemRead:
        return to_read(bracket_ek(e_word(word, self.half), k))

    def serre(self, k: int) -> SerreRead:
        verdict = _verdict(verify_serre(k))
        logger.info(f"Serre check: k={k}, verdict={verdict.value}")
        return SerreRead(k=k, verdict=verdict)

    def gary(self) -> GaryRead:
        trace = gary_trace()
        return GaryRead(
            bracket_001_with_1=to_read(trace.bracket_001_with_1),
            bracket_001_with_0=to_read(trace.bracket_001_with_0),
            first_term=to_read(trace.first_term),
            second_term=to_read(trace.second_term),
            result=to_read(trace.result),
            verdict=Verdict.VERIFIED if trace.matches else Verdict.FAILED,
        )

    def quadratic(self, m: int, n: int, window: Optional[Window] = None) -> QuadraticRead:
        window = window or Window.covering(quadratic_difference(m, n))
        predicted, converted = quadratic_prediction(m, n)
        return QuadraticRead(
            m=m,
            n=n,
            window=str(window),
            verdict=_verdict(verify_quadratic(m, n, window)),
            prediction_matches=predicted == converted,
        )

    def empty_triangle(
        self, u: LatticeVec, v: LatticeVec, window: Optional[Window] = None
    ) -> EmptyTriangleRead:
        first, second = ordered_pair(u, v)
        window = window or Window.covering(empty_triangle_defect(u, v))
        verdict = verify_empty_triangle(u, v, window)
        return EmptyTriangleRead(u=str(first), v=str(second), window=str(window), verdict=verdict)

    def empty_triangle_sweep(self, bound: int) -> EmptyTriangleSweepRead:
        start_time = time.time()
        instances = [
            self.empty_triangle(u, LatticeVec(-1, j)) for u, j in empty_triangle_pairs(bound)
        ]
        verified = all(item.verdict is Verdict.VERIFIED for item in instances)
        logger.info(
            f"Empty triangle sweep: bound={bound}, instances={len(instances)}, "
            f"verified={verified}, time={time.time() - start_time:.3f}s"
        )
        return EmptyTriangleSweepRead(
            bound=bound, instances=instances, verdict=_verdict(verified)
        )

    def straighten(self, path_text: str, window: Optional[Window] = None) -> StraightenRead:
        path = parse_path(path_text)
        window = window or Window.covering(path_product(path))
        decomposition = straighten(path, window)
        if decomposition is None:
            return StraightenRead(path=render_path(path), window=str(window), verdict=Verdict.UNKNOWN)
        return StraightenRead(
            path=render_path(path),
            window=str(window),
            verdict=Verdict.VERIFIED,
            terms=[
                PathTermRead(path=render_path(convex), coef=str(coef))
                for convex, coef in decomposition.items()
            ],
        )
