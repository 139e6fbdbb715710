"""Exact operator matrices on a truncated Fock space.

Entry (mu, nu) is the w^mu coefficient of the operator applied to w^nu.  The
monomial basis is orthogonal but not normalized, so adjoints and inner
products carry the Gram weights g_nu.
"""

from __future__ import annotations

import json

import numpy as np
from gmpy2 import mpq

from hh.errors import ContextMismatch
from hh.gausspoly.context import WeylContext
from hh.gausspoly.poly import TermAccumulator
from hh.gausspoly.scalar import PiScalar, ZERO_SCALAR, rational, rational_str
from hh.weylfock.truncation import FockTruncation


class OperatorMatrix:
    __slots__ = ("trunc", "_e")

    def __init__(self, trunc: FockTruncation, entries=None):
        self.trunc = trunc
        e = {}
        for (mu, nu), v in (entries or {}).items():
            mu, nu = tuple(mu), tuple(nu)
            if mu not in trunc.position or nu not in trunc.position:
                raise KeyError(f"index {(mu, nu)} outside {trunc}")
            s = PiScalar.coerce(v)
            if s:
                e[(mu, nu)] = s
        self._e = e

    @classmethod
    def _raw(cls, trunc, entries) -> OperatorMatrix:
        obj = object.__new__(cls)
        obj.trunc = trunc
        obj._e = entries
        return obj

    @classmethod
    def zero(cls, trunc) -> OperatorMatrix:
        return cls._raw(trunc, {})

    @classmethod
    def identity(cls, trunc) -> OperatorMatrix:
        one = PiScalar.of(1)
        return cls._raw(trunc, {(nu, nu): one for nu in trunc.indices})

    # -- inspection -----------------------------------------------------
    @property
    def ctx(self) -> WeylContext:
        return self.trunc.ctx

    @property
    def entries(self) -> dict:
        return dict(self._e)

    def entry(self, mu, nu) -> PiScalar:
        return self._e.get((tuple(mu), tuple(nu)), ZERO_SCALAR)

    def is_zero(self) -> bool:
        return not self._e

    def column_support(self) -> set:
        return {nu for _, nu in self._e}

    def row_support(self) -> set:
        return {mu for mu, _ in self._e}

    def support_degree(self) -> int:
        """Largest row or column degree carrying a nonzero entry (-1 when zero)."""
        return max((max(sum(mu), sum(nu)) for mu, nu in self._e), default=-1)

    def restrict(self, max_row: int | None = None, max_col: int | None = None) -> OperatorMatrix:
        """Keep entries with row degree <= max_row and column degree <= max_col."""
        return OperatorMatrix._raw(
            self.trunc,
            {
                (mu, nu): v
                for (mu, nu), v in self._e.items()
                if (max_row is None or sum(mu) <= max_row) and (max_col is None or sum(nu) <= max_col)
            },
        )

    def restrict_columns(self, columns) -> OperatorMatrix:
        cols = set(columns)
        return OperatorMatrix._raw(self.trunc, {k: v for k, v in self._e.items() if k[1] in cols})

    # -- algebra --------------------------------------------------------
    def _same(self, other: OperatorMatrix) -> None:
        if not isinstance(other, OperatorMatrix):
            raise TypeError(f"expected OperatorMatrix, got {type(other).__name__}")
        if self.trunc != other.trunc:
            raise ContextMismatch(f"truncation mismatch: {self.trunc} vs {other.trunc}")

    def __add__(self, other: OperatorMatrix) -> OperatorMatrix:
        self._same(other)
        e = dict(self._e)
        for k, v in other._e.items():
            s = e[k] + v if k in e else v
            if s:
                e[k] = s
            else:
                e.pop(k, None)
        return OperatorMatrix._raw(self.trunc, e)

    def __neg__(self) -> OperatorMatrix:
        return OperatorMatrix._raw(self.trunc, {k: -v for k, v in self._e.items()})

    def __sub__(self, other: OperatorMatrix) -> OperatorMatrix:
        return self + (-other)

    def __mul__(self, scalar) -> OperatorMatrix:
        s = PiScalar.coerce(scalar)
        if not s:
            return OperatorMatrix.zero(self.trunc)
        return OperatorMatrix._raw(self.trunc, {k: v * s for k, v in self._e.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: OperatorMatrix) -> OperatorMatrix:
        self._same(other)
        by_row: dict = {}
        for (k, nu), v in other._e.items():
            by_row.setdefault(k, []).append((nu, v))
        acc = TermAccumulator()
        one = mpq(1)
        for (mu, k), a in self._e.items():
            for nu, b in by_row.get(k, ()):
                acc.add((mu, nu), a * b, one)
        return OperatorMatrix._raw(self.trunc, acc.result())

    def adjoint(self) -> OperatorMatrix:
        """Gram-weighted adjoint: adj(A)[mu, nu] = (g_nu / g_mu) conj(A[nu, mu])."""
        g = self.trunc.gram
        return OperatorMatrix._raw(
            self.trunc,
            {(mu, nu): v.conjugate().scale(g[nu] / g[mu]) for (nu, mu), v in self._e.items()},
        )

    def hs_inner(self, other: OperatorMatrix, columns=None) -> PiScalar:
        """tr(A B*) in the Fock inner product, optionally over a subset of columns."""
        self._same(other)
        g = self.trunc.gram
        cols = None if columns is None else set(columns)
        acc = TermAccumulator()
        for key, a in self._e.items():
            mu, nu = key
            if cols is not None and nu not in cols:
                continue
            b = other._e.get(key)
            if b is not None:
                acc.add(0, a * b.conjugate(), g[mu] / g[nu])
        return acc.result().get(0, ZERO_SCALAR)

    def apply(self, vector: dict) -> dict:
        """Apply to a holomorphic polynomial given as {nu: PiScalar}."""
        by_col: dict = {}
        for (mu, nu), v in self._e.items():
            by_col.setdefault(nu, []).append((mu, v))
        acc = TermAccumulator()
        for nu, c in vector.items():
            for mu, v in by_col.get(tuple(nu), ()):
                acc.add(mu, v * PiScalar.coerce(c))
        return acc.result()

    def __eq__(self, other) -> bool:
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self.trunc == other.trunc and self._e == other._e

    def __hash__(self) -> int:
        return hash((self.trunc, frozenset(self._e.items())))

    # -- numerics and serialization -----------------------------------------
    def to_numpy(self, normalized: bool = False) -> np.ndarray:
        """Dense complex matrix; with normalized=True, in the orthonormal basis u_nu."""
        pos = self.trunc.position
        out = np.zeros((self.trunc.dim, self.trunc.dim), dtype=complex)
        g = self.trunc.gram
        for (mu, nu), v in self._e.items():
            val = v.to_complex()
            if normalized:
                val *= np.sqrt(float(g[mu]) / float(g[nu]))
            out[pos[mu], pos[nu]] = val
        return out

    def to_dict(self) -> dict:
        pos = self.trunc.position
        keys = sorted(self._e, key=lambda k: (pos[k[0]], pos[k[1]]))
        return {
            "n": self.ctx.n,
            "lambda": rational_str(self.ctx.lam),
            "N": self.trunc.N,
            "entries": [
                {"row": list(mu), "col": list(nu), "coeff": self._e[(mu, nu)].to_json()}
                for mu, nu in keys
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> OperatorMatrix:
        ctx = WeylContext(int(data["n"]), rational(data["lambda"]))
        trunc = FockTruncation(ctx, int(data["N"]))
        return cls(
            trunc,
            {
                (tuple(e["row"]), tuple(e["col"])): PiScalar.from_json(e["coeff"])
                for e in data["entries"]
            },
        )

    @classmethod
    def from_json(cls, text: str) -> OperatorMatrix:
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"OperatorMatrix({self.trunc}, nnz={len(self._e)})"
