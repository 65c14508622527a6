"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class MulRequest(BaseModel):
    algebra: str = "sym"
    basis: Optional[str] = None
    x: str
    y: str


class ComulRequest(BaseModel):
    algebra: str = "sym"
    basis: Optional[str] = None
    x: str


class ConvertRequest(BaseModel):
    algebra: str = "sym"
    from_basis: str = Field(alias="from")
    to: str
    x: str

    model_config = {"populate_by_name": True}


class ExpandRequest(BaseModel):
    what: str
    n: int
    basis: str = "R"


class InternalMulRequest(BaseModel):
    x: str
    y: str
    basis: str = "R"


class LieCheckRequest(BaseModel):
    element: str
    n: int
    q: str = "1"
    a: str = "1"
    b: str = "1"


class EulerRequest(BaseModel):
    n: int
    q: str = "1"


class AlienRequest(BaseModel):
    op: str
    n: int


class CatalanRequest(BaseModel):
    n: int


class CatalanIdempotentRequest(BaseModel):
    n: int
    a: str = "1"
    b: str = "1"


class ConeCheckRequest(BaseModel):
    u: str
    v: str
    box: int = 6
    basis: str = "K"


class MultisetConeCheckRequest(BaseModel):
    a: str
    b: str
    samples: int = 200
    box: int = 3
    seed: int = 0


class IptRequest(BaseModel):
    u: str
    box: int = 4


class RationalStarRequest(BaseModel):
    u: str
    v: str
    trials: int = 20
    seed: int = 0


class MouldEvalRequest(BaseModel):
    u: str
    point: str


class OperadRequest(BaseModel):
    u: str
    k: int
    v: str


class TreeMouldRequest(BaseModel):
    tree: str
    trials: int = 10
    seed: int = 0


class TridendriformRequest(BaseModel):
    u: str
    v: str
    seed: int = 0


class RbCheckRequest(BaseModel):
    trials: int = 200
    support: int = 4
    seed: int = 7


class TensorCharacterRequest(BaseModel):
    trials: int = 100
    seed: int = 0


class McWeightRequest(BaseModel):
    eps: str = ""
    density: str = "gaussian"
    samples: int = 10 ** 6
    seed: int = 0
    shards: int = 4
    threads: int = 1


class McCharacterRequest(BaseModel):
    i: str
    j: str
    density: str = "gaussian"
    samples: int = 10 ** 6
    seed: int = 0
    shards: int = 4
    threads: int = 1


class ConsistencyRequest(BaseModel):
    eps: str = ""
    density: str = "gaussian"
    samples: int = 10 ** 6
    seed: int = 0
    shards: int = 4
    threads: int = 1


class SparreRequest(BaseModel):
    nmax: int = 4
    density: str = "gaussian"
    samples: int = 10 ** 6
    seed: int = 1
    shards: int = 4
    threads: int = 1


class SelftestRequest(BaseModel):
    pass


class CommandResponse(BaseModel):
    ok: bool
    exit_code: int
    result: dict
