"""Request and response schemas for the HTTP service."""

from typing import Any

from pydantic import BaseModel


class EnumerateRequest(BaseModel):
    kind: str
    n: int | None = None
    lower: str | None = None
    upper: str | None = None
    path: str | None = None
    a: int | None = None
    b: int | None = None
    max_n: int | None = None


class EnumerateResponse(BaseModel):
    kind: str
    items: list[Any]
    count: int


class ComputeRequest(BaseModel):
    kind: str
    n: int | None = None
    path: str | None = None
    a: int | None = None
    b: int | None = None
    route: str | None = None
    max_n: int | None = None
    eval_q1: bool = False


class ComputeResponse(BaseModel):
    kind: str
    value: Any
    at_one: Any | None = None


class CheckRow(BaseModel):
    check: str
    parameters: dict[str, Any]
    lhs: str
    rhs: str
    equal: bool


class VerifyRequest(BaseModel):
    suite: str
    n: int | None = None


class VerifyResponse(BaseModel):
    suite: str
    ok: bool
    total: int
    failed: int
    rows: list[CheckRow]
