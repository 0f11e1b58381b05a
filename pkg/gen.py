#!/usr/bin/env python3
"""
Instance Generator
Seeded random (S, N) pairs satisfying the JC_D preconditions:
S = U D U^-1 with D diagonal and U unit upper triangular, N strictly upper
triangular. Same config, same instance.
"""

from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from ratmat import Mat, diag, inverse

GENERATOR_ID = "numpy-pcg64"


class GenConfig(BaseModel):
    n: int = Field(ge=1)
    seed: int = Field(ge=0, lt=2**64)
    diag_range: int = Field(default=3, ge=1)
    multiplicity: bool = False
    entry_range: int = Field(default=3, ge=1)

    @model_validator(mode="after")
    def widen_for_distinct(self):
        # distinct diagonals need at least n values in [-r, r]
        if not self.multiplicity and 2 * self.diag_range + 1 < self.n:
            self.diag_range = self.n // 2
        return self


def _rng(cfg: GenConfig) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(cfg.seed))


def _spectrum(cfg: GenConfig, rng: np.random.Generator) -> List[int]:
    r = cfg.diag_range
    if cfg.multiplicity:
        return [int(v) for v in rng.integers(-r, r + 1, size=cfg.n)]
    return [int(v) for v in rng.choice(np.arange(-r, r + 1), size=cfg.n, replace=False)]


def _unit_upper(cfg: GenConfig, rng: np.random.Generator) -> Mat:
    e = cfg.entry_range
    values = rng.integers(-e, e + 1, size=(cfg.n, cfg.n))
    return Mat(
        [
            [1 if i == j else (int(values[i, j]) if j > i else 0) for j in range(cfg.n)]
            for i in range(cfg.n)
        ]
    )


def _strictly_upper(cfg: GenConfig, rng: np.random.Generator, allowed) -> Mat:
    e = cfg.entry_range
    values = rng.integers(-e, e + 1, size=(cfg.n, cfg.n))
    return Mat(
        [
            [int(values[i, j]) if j > i and allowed(i, j) else 0 for j in range(cfg.n)]
            for i in range(cfg.n)
        ]
    )


def gen_instance(cfg: GenConfig) -> Tuple[Mat, Mat]:
    """(S, N) with S upper triangular diagonalizable, N strictly upper."""
    rng = _rng(cfg)
    d = _spectrum(cfg, rng)
    u = _unit_upper(cfg, rng)
    s = u @ diag(d) @ inverse(u)
    n_mat = _strictly_upper(cfg, rng, lambda i, j: True)
    return s, n_mat


def gen_commuting_instance(cfg: GenConfig) -> Tuple[Mat, Mat]:
    """As gen_instance, with N drawn from the centralizer of D before
    conjugation, so [S, N] = 0."""
    rng = _rng(cfg)
    d = _spectrum(cfg, rng)
    u = _unit_upper(cfg, rng)
    u_inv = inverse(u)
    n0 = _strictly_upper(cfg, rng, lambda i, j: d[i] == d[j])
    return u @ diag(d) @ u_inv, u @ n0 @ u_inv
