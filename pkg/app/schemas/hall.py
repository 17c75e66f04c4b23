"""Pydantic schemas for the word calculus endpoints."""

from typing import Optional

from pydantic import BaseModel, Field

from app.models.core import Verdict


class AlgTermRead(BaseModel):
    word: list[int]
    coef: str = Field(..., description="Canonical coefficient text, e.g. (1-q1)/(q1*q2)")


class AlgElemRead(BaseModel):
    """Linear combination of tuple words, terms sorted by length then entries."""

    terms: list[AlgTermRead]


class EnkRead(BaseModel):
    word: list[int]
    prefactor: str


class SerreRead(BaseModel):
    k: int
    verdict: Verdict


class GaryRead(BaseModel):
    """Intermediate expansions of the Jacobi computation and its result."""

    bracket_001_with_1: AlgElemRead
    bracket_001_with_0: AlgElemRead
    first_term: AlgElemRead
    second_term: AlgElemRead
    result: AlgElemRead
    verdict: Verdict


class QuadraticRead(BaseModel):
    m: int
    n: int
    window: str
    verdict: Verdict
    prediction_matches: bool = Field(
        ..., description="Whether the bracket prediction equals the converted product side word for word"
    )


class EmptyTriangleRead(BaseModel):
    u: str
    v: str
    window: str
    verdict: Verdict


class EmptyTriangleSweepRead(BaseModel):
    bound: int
    instances: list[EmptyTriangleRead]
    verdict: Verdict


class PathTermRead(BaseModel):
    path: str
    coef: str


class StraightenRead(BaseModel):
    path: str
    window: str
    verdict: Verdict
    terms: Optional[list[PathTermRead]] = None
