"""Pydantic request models shared by the HTTP service and the CLI.

Every command validates its parameters through the model here, whether the
call arrives over HTTP or stays in-process, so the two paths accept exactly
the same inputs.  Polynomials travel as strings in either digit form
("11001", ascending coefficients, comma-separated for p > 10) or human form
("x^4+x+1").
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field


class _Request(BaseModel):
    model_config = ConfigDict(extra="forbid")


class FactorRequest(_Request):
    p: int = Field(ge=2)
    poly: str


class MultRequest(_Request):
    p: int = Field(ge=2)
    a: str
    b: str


class PowerRequest(_Request):
    p: int = Field(ge=2)
    poly: str
    exponent: int = Field(ge=0)


class DecomposeRequest(_Request):
    p: int = Field(ge=2)
    poly: str


class DeltaRequest(_Request):
    p: int = Field(ge=2)
    poly: str


class TSpectrumRequest(_Request):
    p: int = Field(ge=2)
    n: int = Field(ge=0)


class DlBasisRequest(_Request):
    p: int = Field(ge=2)
    n: int = Field(ge=1)
    direction: Literal["to-pi", "from-pi"] = "to-pi"
    primitive: str | None = None


class SeriesRequest(_Request):
    p: int = Field(ge=2)
    N: int = Field(ge=1)
    poly: str
    order: int = Field(default=32, ge=0)
    primitive: str | None = None


class MolienCheckRequest(_Request):
    p: int = Field(ge=2)
    N: int = Field(ge=1)
    k: int = Field(ge=0)
    order: int = Field(default=32, ge=0)
    primitive: str | None = None


class KernelRequest(_Request):
    p: int = Field(ge=2)
    N: int = Field(ge=1)
    polys: list[str] = Field(min_length=1)
    emit_ring_element: bool = False
    primitive: str | None = None


class VerifyRequest(_Request):
    suite: Literal["default", "full"] = "default"
    budget: int | None = Field(default=None, ge=1)


REQUEST_MODELS: dict[str, type[_Request]] = {
    "factor": FactorRequest,
    "mult": MultRequest,
    "power": PowerRequest,
    "decompose": DecomposeRequest,
    "delta": DeltaRequest,
    "t-spectrum": TSpectrumRequest,
    "dl-basis": DlBasisRequest,
    "series": SeriesRequest,
    "molien-check": MolienCheckRequest,
    "kernel": KernelRequest,
    "verify": VerifyRequest,
}

def load_schema(name: str) -> dict:
    """Read a published JSON schema shipped with the package."""
    text = resources.files("glk").joinpath("schemas", name).read_text()
    return json.loads(text)


# schema file (under src/glk/schemas/) that each command's JSON output obeys
SCHEMA_FOR_COMMAND: dict[str, str] = {
    "factor": "factor.schema.json",
    "mult": "ring_element.schema.json",
    "power": "ring_element.schema.json",
    "decompose": "decompose.schema.json",
    "delta": "delta.schema.json",
    "t-spectrum": "t_spectrum.schema.json",
    "dl-basis": "dl_basis.schema.json",
    "series": "series.schema.json",
    "molien-check": "molien_check.schema.json",
    "kernel": "kernel.schema.json",
    "verify": "verify.schema.json",
}
