"""Polynomial-times-Gaussian functions  sum c_ab z^a zbar^b exp(-t|z|^2)  on C^n."""

from __future__ import annotations

import json
from itertools import product
from math import comb, prod

import numpy as np
from gmpy2 import mpq

from hh.errors import ContextMismatch, DivergenceError, GaussMismatch
from hh.gausspoly.context import WeylContext, check_degree
from hh.gausspoly.scalar import ONE, PiScalar, ZERO_SCALAR, fact, rational, rational_str

Mono = tuple[tuple[int, ...], tuple[int, ...]]


class TermAccumulator:
    """Sparse accumulator of rational multiples of PiScalars, keyed by any hashable."""

    __slots__ = ("_d",)

    def __init__(self):
        self._d: dict = {}

    def add(self, key, scalar: PiScalar, r=ONE) -> None:
        slot = self._d.get(key)
        if slot is None:
            slot = self._d[key] = {}
        for k, (re, im) in scalar._t.items():
            cur = slot.get(k)
            if cur is None:
                slot[k] = [re * r, im * r]
            else:
                cur[0] += re * r
                cur[1] += im * r

    def result(self) -> dict:
        out = {}
        for key, slot in self._d.items():
            t = {k: (v[0], v[1]) for k, v in slot.items() if v[0] or v[1]}
            if t:
                out[key] = PiScalar._raw(t)
        return out


def unit(n: int, j: int) -> tuple[int, ...]:
    return tuple(1 if i == j else 0 for i in range(n))


def _shift(a: tuple[int, ...], j: int, d: int) -> tuple[int, ...]:
    return a[:j] + (a[j] + d,) + a[j + 1:]


class GaussPoly:
    """Finite sum of c_ab z^a zbar^b times exp(-gauss_t |z|^2) with exact coefficients."""

    __slots__ = ("ctx", "gauss_t", "_c")

    def __init__(self, ctx: WeylContext, coeffs=None, gauss_t=0):
        self.ctx = ctx
        self.gauss_t = rational(gauss_t)
        if self.gauss_t < 0:
            raise ValueError("gauss_t must be nonnegative")
        c = {}
        for (a, b), v in (coeffs or {}).items():
            a, b = tuple(int(x) for x in a), tuple(int(x) for x in b)
            if len(a) != ctx.n or len(b) != ctx.n or min(a + b) < 0:
                raise ValueError(f"bad multi-index pair {(a, b)} for n={ctx.n}")
            s = PiScalar.coerce(v)
            if s:
                key = (a, b)
                c[key] = c[key] + s if key in c else s
        self._c = {k: v for k, v in c.items() if v}
        check_degree(self.degree)

    @classmethod
    def _raw(cls, ctx: WeylContext, coeffs: dict, gauss_t) -> GaussPoly:
        obj = object.__new__(cls)
        obj.ctx = ctx
        obj.gauss_t = gauss_t
        obj._c = coeffs
        check_degree(obj.degree)
        return obj

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, ctx, gauss_t=0) -> GaussPoly:
        return cls._raw(ctx, {}, rational(gauss_t))

    @classmethod
    def constant(cls, ctx, value=1, gauss_t=0) -> GaussPoly:
        z = (0,) * ctx.n
        return cls(ctx, {(z, z): value}, gauss_t)

    @classmethod
    def gaussian(cls, ctx, gauss_t) -> GaussPoly:
        return cls.constant(ctx, 1, gauss_t)

    @classmethod
    def monomial(cls, ctx, a, b, coeff=1, gauss_t=0) -> GaussPoly:
        return cls(ctx, {(tuple(a), tuple(b)): coeff}, gauss_t)

    @classmethod
    def z(cls, ctx, j: int) -> GaussPoly:
        return cls.monomial(ctx, unit(ctx.n, j), (0,) * ctx.n)

    @classmethod
    def zbar(cls, ctx, j: int) -> GaussPoly:
        return cls.monomial(ctx, (0,) * ctx.n, unit(ctx.n, j))

    @classmethod
    def norm_sq(cls, ctx, coords=None) -> GaussPoly:
        """|z|^2, or the partial sum over the given coordinate indices."""
        coords = range(ctx.n) if coords is None else coords
        return cls(ctx, {(unit(ctx.n, j), unit(ctx.n, j)): 1 for j in coords})

    # -- inspection -----------------------------------------------------
    @property
    def n(self) -> int:
        return self.ctx.n

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def coefficient(self, a, b) -> PiScalar:
        return self._c.get((tuple(a), tuple(b)), ZERO_SCALAR)

    def terms(self) -> list[tuple[tuple, tuple, PiScalar]]:
        """Terms in the canonical order (|a|+|b|, a, b)."""
        keys = sorted(self._c, key=lambda ab: (sum(ab[0]) + sum(ab[1]), ab[0], ab[1]))
        return [(a, b, self._c[(a, b)]) for a, b in keys]

    @property
    def degree(self) -> int:
        return max((sum(a) + sum(b) for a, b in self._c), default=0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def polynomial_part(self) -> GaussPoly:
        return GaussPoly._raw(self.ctx, dict(self._c), mpq(0))

    def with_gauss(self, gauss_t) -> GaussPoly:
        return GaussPoly._raw(self.ctx, dict(self._c), rational(gauss_t))

    # -- ring operations ------------------------------------------------
    def _compatible(self, other: GaussPoly) -> None:
        if not isinstance(other, GaussPoly):
            raise TypeError(f"expected GaussPoly, got {type(other).__name__}")
        if self.ctx != other.ctx:
            raise ContextMismatch(f"context mismatch: {self.ctx} vs {other.ctx}")

    def __add__(self, other) -> GaussPoly:
        if not isinstance(other, GaussPoly):
            return NotImplemented
        self._compatible(other)
        if not other._c:
            return self
        if not self._c:
            return other
        if self.gauss_t != other.gauss_t:
            raise GaussMismatch(f"gauss_t mismatch: {self.gauss_t} vs {other.gauss_t}")
        c = dict(self._c)
        for k, v in other._c.items():
            s = c[k] + v if k in c else v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return GaussPoly._raw(self.ctx, c, self.gauss_t)

    def __neg__(self) -> GaussPoly:
        return GaussPoly._raw(self.ctx, {k: -v for k, v in self._c.items()}, self.gauss_t)

    def __sub__(self, other) -> GaussPoly:
        if not isinstance(other, GaussPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> GaussPoly:
        if isinstance(other, GaussPoly):
            self._compatible(other)
            acc = TermAccumulator()
            for (a, b), c in self._c.items():
                for (a2, b2), c2 in other._c.items():
                    key = (
                        tuple(x + y for x, y in zip(a, a2)),
                        tuple(x + y for x, y in zip(b, b2)),
                    )
                    acc.add(key, c * c2)
            return GaussPoly._raw(self.ctx, acc.result(), self.gauss_t + other.gauss_t)
        if isinstance(other, PiScalar) or isinstance(other, (int, str, tuple, complex)) or type(other) is mpq:
            s = PiScalar.coerce(other)
            if not s:
                return GaussPoly._raw(self.ctx, {}, self.gauss_t)
            c = {k: v * s for k, v in self._c.items()}
            return GaussPoly._raw(self.ctx, {k: v for k, v in c.items() if v}, self.gauss_t)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, r) -> GaussPoly:
        """Multiply by a real rational."""
        r = mpq(r)
        if not r:
            return GaussPoly._raw(self.ctx, {}, self.gauss_t)
        return GaussPoly._raw(self.ctx, {k: v.scale(r) for k, v in self._c.items()}, self.gauss_t)

    def __pow__(self, e: int) -> GaussPoly:
        out = GaussPoly.constant(self.ctx, 1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaussPoly):
            return NotImplemented
        if self.ctx != other.ctx:
            return False
        if not self._c and not other._c:
            return True
        return self.gauss_t == other.gauss_t and self._c == other._c

    def __hash__(self) -> int:
        if not self._c:
            return hash((self.ctx, "zero"))
        return hash((self.ctx, self.gauss_t, frozenset(self._c.items())))

    # -- structural maps ------------------------------------------------
    def conj(self) -> GaussPoly:
        return GaussPoly._raw(
            self.ctx, {(b, a): v.conjugate() for (a, b), v in self._c.items()}, self.gauss_t
        )

    def reflect(self) -> GaussPoly:
        """z -> -z."""
        return GaussPoly._raw(
            self.ctx,
            {(a, b): (-v if (sum(a) + sum(b)) % 2 else v) for (a, b), v in self._c.items()},
            self.gauss_t,
        )

    def antiholo_flip(self) -> GaussPoly:
        """z -> -conj(z); the adapter relating the two signs of lambda."""
        return GaussPoly._raw(
            self.ctx,
            {(b, a): (-v if (sum(a) + sum(b)) % 2 else v) for (a, b), v in self._c.items()},
            self.gauss_t,
        )

    def with_context(self, ctx: WeylContext) -> GaussPoly:
        if ctx.n != self.ctx.n:
            raise ContextMismatch("dimension mismatch")
        return GaussPoly._raw(ctx, dict(self._c), self.gauss_t)

    def linear_substitute(self, matrix) -> GaussPoly:
        """f(M z) for a square matrix M of Gaussian rationals (z-bar gets conj(M))."""
        n = self.n
        m = [[PiScalar.coerce(x) for x in row] for row in matrix]
        if len(m) != n or any(len(row) != n for row in m):
            raise ValueError("matrix shape does not match n")
        zs = [GaussPoly(self.ctx, {(unit(n, l), (0,) * n): m[j][l] for l in range(n)}) for j in range(n)]
        zbs = [z.conj() for z in zs]
        out = GaussPoly.zero(self.ctx, self.gauss_t)
        cache: dict = {}

        def power(base, j, e):
            key = (base, j, e)
            if key not in cache:
                src = zs if base == 0 else zbs
                cache[key] = src[j] ** e
            return cache[key]

        for (a, b), c in self._c.items():
            term = GaussPoly.constant(self.ctx, c)
            for j in range(n):
                if a[j]:
                    term = term * power(0, j, a[j])
                if b[j]:
                    term = term * power(1, j, b[j])
            out = out + term.with_gauss(self.gauss_t)
        return out

    # -- first-order differential pieces ---------------------------------
    def _holo_first_order(self, j: int, mult: mpq) -> GaussPoly:
        """(d/dz_j + mult*zbar_j) f, including the derivative of the Gaussian."""
        acc = TermAccumulator()
        coef = mult - self.gauss_t
        for (a, b), c in self._c.items():
            if a[j]:
                acc.add((_shift(a, j, -1), b), c, mpq(a[j]))
            if coef:
                acc.add((a, _shift(b, j, 1)), c, coef)
        return GaussPoly._raw(self.ctx, acc.result(), self.gauss_t)

    def _anti_first_order(self, j: int, mult: mpq) -> GaussPoly:
        """(d/dzbar_j + mult*z_j) f, including the derivative of the Gaussian."""
        acc = TermAccumulator()
        coef = mult - self.gauss_t
        for (a, b), c in self._c.items():
            if b[j]:
                acc.add((a, _shift(b, j, -1)), c, mpq(b[j]))
            if coef:
                acc.add((_shift(a, j, 1), b), c, coef)
        return GaussPoly._raw(self.ctx, acc.result(), self.gauss_t)

    def d_z(self, j: int) -> GaussPoly:
        return self._holo_first_order(j, mpq(0))

    def d_zbar(self, j: int) -> GaussPoly:
        return self._anti_first_order(j, mpq(0))

    def mul_z(self, j: int) -> GaussPoly:
        return GaussPoly._raw(
            self.ctx, {(_shift(a, j, 1), b): v for (a, b), v in self._c.items()}, self.gauss_t
        )

    def mul_zbar(self, j: int) -> GaussPoly:
        return GaussPoly._raw(
            self.ctx, {(a, _shift(b, j, 1)): v for (a, b), v in self._c.items()}, self.gauss_t
        )

    # -- integration and evaluation --------------------------------------
    def integrate(self) -> PiScalar:
        if self.gauss_t <= 0:
            raise DivergenceError("integration over C^n requires gauss_t > 0")
        t = self.gauss_t
        n = self.n
        acc = TermAccumulator()
        for (a, b), c in self._c.items():
            if a != b:
                continue
            d = sum(a)
            r = prod((fact(x) for x in a), start=ONE) / t ** (d + n)
            acc.add(0, c, r)
        total = acc.result().get(0, ZERO_SCALAR)
        return total.times_pi(n)

    def numeric(self):
        """Vectorized float evaluator  z (..., n) complex array -> complex array."""
        terms = [(np.array(a), np.array(b), c.to_complex()) for (a, b), c in self._c.items()]
        t = float(self.gauss_t)
        n = self.n

        def f(z):
            z = np.asarray(z, dtype=complex)
            if z.shape[-1] != n:
                raise ValueError(f"expected last dimension {n}, got {z.shape[-1]}")
            zc = np.conj(z)
            out = np.zeros(z.shape[:-1], dtype=complex)
            for a, b, c in terms:
                out = out + c * np.prod(z ** a * zc ** b, axis=-1)
            return out * np.exp(-t * np.sum(np.abs(z) ** 2, axis=-1))

        return f

    def evaluate(self, z) -> complex:
        z = np.asarray(z, dtype=complex).reshape(-1)
        if z.shape[0] != self.n:
            raise ValueError(f"point has dimension {z.shape[0]}, expected {self.n}")
        return complex(self.numeric()(z))

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "lambda": rational_str(self.ctx.lam),
            "t": rational_str(self.gauss_t),
            "terms": [
                {"a": list(a), "b": list(b), "coeff": c.to_json()} for a, b, c in self.terms()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    @classmethod
    def from_dict(cls, data: dict) -> GaussPoly:
        ctx = WeylContext(int(data["n"]), rational(data["lambda"]))
        coeffs = {
            (tuple(t["a"]), tuple(t["b"])): PiScalar.from_json(t["coeff"]) for t in data["terms"]
        }
        return cls(ctx, coeffs, rational(data["t"]))

    @classmethod
    def from_json(cls, text: str) -> GaussPoly:
        return cls.from_dict(json.loads(text))

    def __str__(self) -> str:
        if not self._c:
            return "0"
        body = " + ".join(f"({c})*{_mono_str(a, b)}" for a, b, c in self.terms())
        if self.gauss_t:
            return f"[{body}]*exp(-{self.gauss_t}|z|^2)"
        return body

    def __repr__(self) -> str:
        return f"GaussPoly<{self.ctx}: {self}>"


def _mono_str(a, b) -> str:
    parts = []
    for j, e in enumerate(a):
        if e:
            parts.append(f"z{j + 1}" + (f"^{e}" if e > 1 else ""))
    for j, e in enumerate(b):
        if e:
            parts.append(f"zb{j + 1}" + (f"^{e}" if e > 1 else ""))
    return "*".join(parts) or "1"


def add(f: GaussPoly, g: GaussPoly) -> GaussPoly:
    return f + g


def mul(f: GaussPoly, g: GaussPoly) -> GaussPoly:
    return f * g


def conj(f: GaussPoly) -> GaussPoly:
    return f.conj()


def reflect(f: GaussPoly) -> GaussPoly:
    return f.reflect()


def integrate(f: GaussPoly) -> PiScalar:
    return f.integrate()


def evaluate(f: GaussPoly, z) -> complex:
    return f.evaluate(z)


def inner(f: GaussPoly, g: GaussPoly) -> PiScalar:
    """L^2 inner product  integral of f * conj(g), without forming the product."""
    f._compatible(g)
    t = f.gauss_t + g.gauss_t
    if not f._c or not g._c:
        return ZERO_SCALAR
    if t <= 0:
        raise DivergenceError("inner product requires a decaying integrand")
    n = f.n
    by_diff: dict = {}
    for (c, d), v in g._c.items():
        by_diff.setdefault(tuple(x - y for x, y in zip(c, d)), []).append((c, d, v.conjugate()))
    acc = TermAccumulator()
    for (a, b), u in f._c.items():
        for c, d, v in by_diff.get(tuple(x - y for x, y in zip(a, b)), ()):
            e = tuple(x + y for x, y in zip(a, d))
            r = prod((fact(x) for x in e), start=ONE) / t ** (sum(e) + n)
            acc.add(0, u * v, r)
    return acc.result().get(0, ZERO_SCALAR).times_pi(n)


def radial(ctx: WeylContext, coeffs, coords=None, scale=ONE) -> GaussPoly:
    """sum_m coeffs[m] * (scale * |z_S|^2)^m over the coordinate subset S."""
    base = GaussPoly.norm_sq(ctx, coords).scale(scale)
    out = GaussPoly.zero(ctx)
    power = GaussPoly.constant(ctx, 1)
    for m, c in enumerate(coeffs):
        if m:
            power = power * base
        if c:
            out = out + power * PiScalar.coerce(c)
    return out


def monomials(n: int, degree: int):
    """All multi-indices of length n and the given total degree, lexicographically descending."""
    if n == 0:
        if degree == 0:
            yield ()
        return
    for first in range(degree, -1, -1):
        for rest in monomials(n - 1, degree - first):
            yield (first,) + rest


def binom_multi(nu, kappa) -> int:
    return prod(comb(x, y) for x, y in zip(nu, kappa))


def sub_indices(nu):
    """All kappa <= nu componentwise."""
    return product(*(range(x + 1) for x in nu))
