"""Pydantic models shared by the service, the CLI client, and reports."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

SUITES = ("box", "singular", "bridge", "chains", "combinatorics",
          "classical", "all")
DEMOS = ("annulus", "box4d", "box5d", "box10d")


class CheckRecord(BaseModel):
    """One verified identity: inputs echo, residual, tolerance, verdict."""

    model_config = ConfigDict(populate_by_name=True)

    name: str
    inputs: dict = Field(default_factory=dict)
    values: dict = Field(default_factory=dict)
    residual: float
    tolerance: float
    passed: bool = Field(alias="pass")
    millis: float


class Report(BaseModel):
    """The report every verification run produces (stable JSON schema)."""

    model_config = ConfigDict(populate_by_name=True)

    version: str
    suite: str
    checks: list[CheckRecord]
    passed: bool = Field(alias="pass")


class VerifyRequest(BaseModel):
    suite: Literal["box", "singular", "bridge", "chains", "combinatorics",
                   "classical", "all"]
    order: int = Field(default=16, ge=1, le=64)
    max_n: int = Field(default=12, ge=1, le=64)
    seed: int = Field(default=0, ge=0)


class DemoRequest(BaseModel):
    name: Literal["annulus", "box4d", "box5d", "box10d"]
    order: Optional[int] = Field(default=None, ge=1, le=64)
    seed: int = Field(default=0, ge=0)


class BoxTerm(BaseModel):
    coeff: int = 1
    lo: list[float]
    hi: list[float]


class CubeTermSpec(BaseModel):
    """A chain entry over the wire: an integer coefficient with either a
    cube (component expressions) or a box. A coefficient on the box itself
    multiplies the term coefficient."""

    coeff: int = 1
    map: Optional[list[str]] = None
    box: Optional[BoxTerm] = None


class IntegrateRequest(BaseModel):
    map: Optional[list[str]] = None
    form: list[str]
    degree: int = Field(ge=0)
    ambient: int = Field(ge=1)
    order: int = Field(default=16, ge=1, le=64)
    stokes: bool = False
    boxes: Optional[list[BoxTerm]] = None
    chain: Optional[list[CubeTermSpec]] = None


class IntegrateResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    version: str
    value: float
    checks: list[CheckRecord] = Field(default_factory=list)
    passed: bool = Field(alias="pass")


class CheckParityRequest(BaseModel):
    max_n: int = Field(default=12, ge=1, le=64)


class HealthResponse(BaseModel):
    status: str
    version: str
