"""Request and response schemas for the HTTP facade.

Every numeric payload is a string "p/q" (or "p"); nothing in transport is
ever a float, so values survive the round trip exactly.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


class Health(BaseModel):
    status: str
    version: str


class SequenceTableOut(BaseModel):
    """A finite run of one coefficient family; rows are [index, value]."""

    name: str
    count: int
    values: list[list[str]]


class BivariateOut(BaseModel):
    """Symmetric two-index table; rows are [i, j, value] with i <= j."""

    name: str
    min_index: int
    cutoff: int
    coeffs: list[list]


class SeriesBody(BaseModel):
    top: int
    order: int
    coeffs: list[list[str]]


class SeriesOut(BaseModel):
    name: str
    order: int
    text: str
    series: SeriesBody


class WindowOut(BaseModel):
    u_max: int
    weight_max: int


class ReportOut(BaseModel):
    """Single-suite verification report."""

    window: WindowOut
    checked: int
    mismatches: list[dict]


class SuiteReportOut(BaseModel):
    suite: str
    elapsed_ms: int
    window: WindowOut
    checked: int
    mismatches: list[dict]


class AllReportOut(BaseModel):
    window: WindowOut
    checked: int
    mismatches: list[str]
    suites: list[SuiteReportOut]


class VerifyRequest(BaseModel):
    u_max: int = Field(default=4, ge=1)
    weight_max: int = Field(default=9, ge=1)
    order: int = Field(default=12, ge=1)
    seed: int = 0
    margin_extra: int = Field(default=0, ge=0)


class PolyOut(BaseModel):
    """Serialized graded polynomial (one variable alphabet plus u)."""

    alphabet: str
    trunc: dict
    terms: list[dict]


class TauDumpOut(BaseModel):
    """Logarithm of a tau-style generating series, in both alphabets."""

    name: str
    window: WindowOut
    weight_bound: int
    t_log: PolyOut
    q_log: PolyOut
    t_text: str
    q_text: str


class FkRequest(BaseModel):
    weight_bound: int = Field(default=9, ge=3)


class FhRequest(BaseModel):
    u_max: int = Field(default=4, ge=1)
    weight_max: int = Field(default=9, ge=1)
    margin_extra: int = Field(default=0, ge=0)
