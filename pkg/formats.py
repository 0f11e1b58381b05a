#!/usr/bin/env python3
"""
File Formats
JSON instance and result files. Rationals travel as "p/q" or "p" strings so
every round trip is exact.
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Type, TypeVar

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from errors import ParseError, StructuralError
from ratmat import Mat, to_rational

FORMAT_VERSION = 1

RationalGrid = List[List[str]]

ModelT = TypeVar("ModelT", bound=BaseModel)


def grid(m: Mat) -> RationalGrid:
    return [[str(v) for v in row] for row in m.rows()]


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, str):
        raise ValueError(f"rationals must be strings, got {text!r}")
    try:
        return to_rational(text)
    except StructuralError as e:
        raise ValueError(e.detail)


def _validate_grid(value: RationalGrid) -> RationalGrid:
    for row in value:
        for entry in row:
            parse_rational(entry)
    return value


def _check_shape(name: str, value: RationalGrid, n: int):
    if len(value) != n or any(len(row) != n for row in value):
        raise ValueError(f"{name} must be {n}x{n}")


def _to_mat(value: RationalGrid) -> Mat:
    return Mat([[parse_rational(v) for v in row] for row in value])


class InstanceFile(BaseModel):
    format: Literal[1] = FORMAT_VERSION
    n: int = Field(ge=1)
    S: RationalGrid
    N: RationalGrid
    metadata: Dict[str, Any] = Field(default_factory=dict)

    @field_validator("S", "N")
    @classmethod
    def rational_entries(cls, v):
        return _validate_grid(v)

    @model_validator(mode="after")
    def square_shapes(self):
        _check_shape("S", self.S, self.n)
        _check_shape("N", self.N, self.n)
        return self

    def matrices(self) -> Tuple[Mat, Mat]:
        return _to_mat(self.S), _to_mat(self.N)

    @classmethod
    def from_matrices(cls, s: Mat, n_mat: Mat, metadata: Optional[Dict[str, Any]] = None):
        return cls(n=s.n, S=grid(s), N=grid(n_mat), metadata=metadata or {})


class MatrixFile(BaseModel):
    """Single-matrix input of the oracle command."""

    format: Literal[1] = FORMAT_VERSION
    n: int = Field(ge=1)
    A: RationalGrid
    metadata: Dict[str, Any] = Field(default_factory=dict)

    @field_validator("A")
    @classmethod
    def rational_entries(cls, v):
        return _validate_grid(v)

    @model_validator(mode="after")
    def square_shape(self):
        _check_shape("A", self.A, self.n)
        return self

    def matrix(self) -> Mat:
        return _to_mat(self.A)


class TraceRecord(BaseModel):
    gamma: List[int]
    values: List[str] = []
    chosen_eigenvalue: Optional[str] = None
    chosen_band: Optional[int] = None
    S: Optional[RationalGrid] = None
    N: Optional[RationalGrid] = None


class ResultFile(BaseModel):
    format: Literal[1] = FORMAT_VERSION
    n: int = Field(ge=1)
    S_prime: RationalGrid
    N_prime: RationalGrid
    loops: int = Field(default=0, ge=0)
    gamma_trace: List[List[int]] = []
    checks: Dict[str, bool] = {}
    trace: Optional[List[TraceRecord]] = None
    metadata: Dict[str, Any] = Field(default_factory=dict)

    @field_validator("S_prime", "N_prime")
    @classmethod
    def rational_entries(cls, v):
        return _validate_grid(v)

    @model_validator(mode="after")
    def square_shapes(self):
        _check_shape("S_prime", self.S_prime, self.n)
        _check_shape("N_prime", self.N_prime, self.n)
        return self

    def matrices(self) -> Tuple[Mat, Mat]:
        return _to_mat(self.S_prime), _to_mat(self.N_prime)


def parse_model(cls: Type[ModelT], text: str, source: str = "<input>") -> ModelT:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}: invalid JSON ({e})")
    try:
        return cls.model_validate(data)
    except ValidationError as e:
        raise ParseError(f"{source}: {e.errors()[0]['msg']}")


def load_model(cls: Type[ModelT], path: str) -> ModelT:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ParseError(f"cannot read {path}: {e}")
    return parse_model(cls, text, path)


def dump_model(model: BaseModel, indent: Optional[int] = 2) -> str:
    return model.model_dump_json(indent=indent, exclude_none=True)
