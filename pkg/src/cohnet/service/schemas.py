"""Request and response models for the HTTP service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str
    version: str


class SimulateRequest(BaseModel):
    topology: Literal["chain", "parallel"]
    angles: list[float]
    photons: int = Field(ge=0)
    blocks: int = Field(default=1, ge=1, description="number of parallel blocks (p)")


class AmplitudeRow(BaseModel):
    occupation: list[int]
    re: float
    im: float
    closed_re: float
    closed_im: float
    abs_diff: float


class SimulateResponse(BaseModel):
    modes: int
    rows: list[AmplitudeRow]
    max_discrepancy: float


class PureConcurrenceRequest(BaseModel):
    p: int = Field(ge=2)
    q: int = Field(ge=1)
    n: int = Field(ge=1)
    c: float | None = Field(default=None, ge=0.0, le=1.0, description="base overlap cos(varphi)")
    varphi: float | None = None
    theta: float = 0.0


class MixedConcurrenceRequest(BaseModel):
    p: int = Field(ge=2)
    n: int = Field(ge=1)
    c: float | None = Field(default=None, ge=0.0, le=1.0)
    varphi: float | None = None
    c_rest: float | None = Field(default=None, ge=0.0, le=1.0)
    varphi_rest: float | None = None
    theta: float = 0.0


class ConcurrenceResponse(BaseModel):
    closed_form: float
    numeric: float
    discrepancy: float
    lambdas: list[float] | None = None


class FigureRequest(BaseModel):
    resolution: int | None = Field(default=None, ge=2)


class FigureResponse(BaseModel):
    figure_id: str
    columns: list[str]
    rows: list[list[float]]


class SelftestRequest(BaseModel):
    seed: int | None = None
    tolerance: float | None = None
    jobs: int = Field(default=1, ge=1)
    checks: list[str] | None = Field(default=None, description="run only these checks")


class CheckModel(BaseModel):
    name: str
    passed: bool
    metric: float
    threshold: float
    seconds: float


class SelftestResponse(BaseModel):
    passed: bool
    total_seconds: float
    checks: list[CheckModel]
