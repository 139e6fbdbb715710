"""The (n, lambda) context shared by every exact object."""

from __future__ import annotations

import os
from dataclasses import dataclass

from gmpy2 import mpq

from hh.errors import ContextMismatch, DegreeCapError
from hh.gausspoly.scalar import rational

DEFAULT_MAX_DEGREE = 64


def max_degree() -> int:
    """Global polynomial degree cap, overridable through HH_MAX_DEGREE."""
    raw = os.environ.get("HH_MAX_DEGREE")
    if raw is None or not raw.strip():
        return DEFAULT_MAX_DEGREE
    value = int(raw)
    if value <= 0:
        raise ValueError("HH_MAX_DEGREE must be a positive integer")
    return value


def check_degree(degree: int) -> None:
    cap = max_degree()
    if degree > cap:
        raise DegreeCapError(f"degree {degree} exceeds the cap {cap} (HH_MAX_DEGREE)")


@dataclass(frozen=True)
class WeylContext:
    """Complex dimension n and the nonzero rational central parameter lambda."""

    n: int
    lam: mpq

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        lam = rational(self.lam)
        if not lam:
            raise ValueError("lambda must be nonzero")
        object.__setattr__(self, "lam", lam)

    @property
    def abs_lam(self) -> mpq:
        return abs(self.lam)

    @property
    def positive(self) -> bool:
        return self.lam > 0

    def require_same(self, other: WeylContext) -> None:
        if self != other:
            raise ContextMismatch(f"context mismatch: {self} vs {other}")

    def __str__(self) -> str:
        return f"(n={self.n}, lambda={self.lam})"
