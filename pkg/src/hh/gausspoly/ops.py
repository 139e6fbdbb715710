"""Symbolic differential operators on GaussPoly and the theta correspondence."""

from __future__ import annotations

from gmpy2 import mpq

from hh.errors import ContextMismatch
from hh.gausspoly.poly import GaussPoly
from hh.gausspoly.scalar import PiScalar

GENERATORS = ("dz", "dzb", "z", "zb", "L", "Lb", "R", "Rb")


def _apply_generator(kind: str, j: int, f: GaussPoly) -> GaussPoly:
    lam = f.ctx.lam
    if kind == "dz":
        return f._holo_first_order(j, mpq(0))
    if kind == "Lb":
        return f._holo_first_order(j, lam)
    if kind == "Rb":
        return f._holo_first_order(j, -lam)
    if kind == "dzb":
        return f._anti_first_order(j, mpq(0))
    if kind == "L":
        return f._anti_first_order(j, -lam)
    if kind == "R":
        return f._anti_first_order(j, lam)
    if kind == "z":
        return f.mul_z(j)
    if kind == "zb":
        return f.mul_zbar(j)
    raise ValueError(f"unknown generator {kind!r}")


class InvariantOp:
    """Linear combination of words in the generators.

    A word (g1, ..., gm) denotes the composition g1 o ... o gm, so gm acts first.
    The lambda in L, Lb, R, Rb is taken from the context of the argument.
    """

    __slots__ = ("_w",)

    def __init__(self, words=None):
        w = {}
        for word, c in (words or {}).items():
            word = tuple((str(k), int(j)) for k, j in word)
            for k, _ in word:
                if k not in GENERATORS:
                    raise ValueError(f"unknown generator {k!r}")
            s = PiScalar.coerce(c)
            if s:
                w[word] = w[word] + s if word in w else s
        self._w = {k: v for k, v in w.items() if v}

    @classmethod
    def identity(cls) -> InvariantOp:
        return cls({(): 1})

    @classmethod
    def gen(cls, kind: str, j: int) -> InvariantOp:
        return cls({((kind, j),): 1})

    @property
    def words(self) -> dict:
        return dict(self._w)

    def __add__(self, other: InvariantOp) -> InvariantOp:
        out = dict(self._w)
        for k, v in other._w.items():
            out[k] = out[k] + v if k in out else v
        return InvariantOp(out)

    def __neg__(self) -> InvariantOp:
        return InvariantOp({k: -v for k, v in self._w.items()})

    def __sub__(self, other: InvariantOp) -> InvariantOp:
        return self + (-other)

    def __mul__(self, other) -> InvariantOp:
        if isinstance(other, InvariantOp):
            out: dict = {}
            for w1, c1 in self._w.items():
                for w2, c2 in other._w.items():
                    w = w1 + w2
                    c = c1 * c2
                    out[w] = out[w] + c if w in out else c
            return InvariantOp(out)
        s = PiScalar.coerce(other)
        return InvariantOp({k: v * s for k, v in self._w.items()})

    def __rmul__(self, other) -> InvariantOp:
        s = PiScalar.coerce(other)
        return InvariantOp({k: s * v for k, v in self._w.items()})

    def __pow__(self, e: int) -> InvariantOp:
        out = InvariantOp.identity()
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, f: GaussPoly) -> GaussPoly:
        return apply_op(self, f)

    def __repr__(self) -> str:
        parts = []
        for word, c in sorted(self._w.items()):
            parts.append(f"({c})" + ("*" + "".join(f"{k}{j + 1}" for k, j in word) if word else ""))
        return "InvariantOp(" + " + ".join(parts) + ")"


def apply_op(op: InvariantOp, f: GaussPoly) -> GaussPoly:
    out = GaussPoly.zero(f.ctx, f.gauss_t)
    cache: dict = {(): f}
    for word, c in op._w.items():
        g = _apply_word(word, f, cache)
        out = out + g * c
    return out


def _apply_word(word, f: GaussPoly, cache: dict) -> GaussPoly:
    # words act right to left; cache suffixes so shared tails are computed once
    if word in cache:
        return cache[word]
    inner = _apply_word(word[1:], f, cache)
    kind, j = word[0]
    if j < 0 or j >= f.n:
        raise ContextMismatch(f"generator index {j + 1} out of range for n={f.n}")
    out = _apply_generator(kind, j, inner)
    cache[word] = out
    return out


def Dz(j: int) -> InvariantOp:
    return InvariantOp.gen("dz", j)


def Dzbar(j: int) -> InvariantOp:
    return InvariantOp.gen("dzb", j)


def Z(j: int) -> InvariantOp:
    return InvariantOp.gen("z", j)


def Zbar(j: int) -> InvariantOp:
    return InvariantOp.gen("zb", j)


def L(j: int) -> InvariantOp:
    """d/dzbar_j - lambda z_j."""
    return InvariantOp.gen("L", j)


def Lbar(j: int) -> InvariantOp:
    """d/dz_j + lambda zbar_j."""
    return InvariantOp.gen("Lb", j)


def R(j: int) -> InvariantOp:
    """d/dzbar_j + lambda z_j."""
    return InvariantOp.gen("R", j)


def Rbar(j: int) -> InvariantOp:
    """d/dz_j - lambda zbar_j."""
    return InvariantOp.gen("Rb", j)


def commutator(a: InvariantOp, b: InvariantOp) -> InvariantOp:
    return a * b - b * a


def special_hermite(coords) -> InvariantOp:
    """sum over j in coords of (L_j Lbar_j + Lbar_j L_j)."""
    out = InvariantOp()
    for j in coords:
        out = out + L(j) * Lbar(j) + Lbar(j) * L(j)
    return out


# -- theta -----------------------------------------------------------------

def _check_polynomial(p: GaussPoly, f: GaussPoly) -> None:
    if p.gauss_t != 0:
        raise ValueError("theta expects a bare polynomial (gauss_t = 0)")
    if p.ctx.n != f.ctx.n:
        raise ContextMismatch("polynomial and argument have different dimensions")


def _apply_power(kind: str, sign: int, exps, f: GaussPoly) -> GaussPoly:
    for j, e in enumerate(exps):
        for _ in range(e):
            f = _apply_generator(kind, j, f)
            if sign < 0:
                f = -f
    return f


def _theta_monomial(rho, gamma, f: GaussPoly, variant: int) -> GaussPoly:
    if variant == 1:
        return _apply_power("Rb", 1, gamma, _apply_power("R", -1, rho, f))
    return _apply_power("R", -1, rho, _apply_power("Rb", 1, gamma, f))


def theta1(p: GaussPoly, f: GaussPoly) -> GaussPoly:
    """Sum over monomials z^rho zbar^gamma of c * Rbar^gamma (-R)^rho f."""
    _check_polynomial(p, f)
    out = GaussPoly.zero(f.ctx, f.gauss_t)
    for (rho, gamma), c in p._c.items():
        out = out + _theta_monomial(rho, gamma, f, 1) * c
    return out


def theta2(p: GaussPoly, f: GaussPoly) -> GaussPoly:
    """Sum over monomials z^rho zbar^gamma of c * (-R)^rho Rbar^gamma f."""
    _check_polynomial(p, f)
    out = GaussPoly.zero(f.ctx, f.gauss_t)
    for (rho, gamma), c in p._c.items():
        out = out + _theta_monomial(rho, gamma, f, 2) * c
    return out


def theta(p: GaussPoly, f: GaussPoly) -> GaussPoly:
    """Average of theta1 and theta2."""
    _check_polynomial(p, f)
    out = GaussPoly.zero(f.ctx, f.gauss_t)
    half = mpq(1, 2)
    for (rho, gamma), c in p._c.items():
        one = _theta_monomial(rho, gamma, f, 1)
        if any(r and g for r, g in zip(rho, gamma)):
            two = _theta_monomial(rho, gamma, f, 2)
            out = out + (one + two).scale(half) * c
        else:
            # R_j and Rbar_k commute for j != k, so both orders agree
            out = out + one * c
    return out


def theta_op(p: GaussPoly, variant: str = "avg") -> InvariantOp:
    """theta(p) as a symbolic operator."""
    out = InvariantOp()
    for (rho, gamma), c in p._c.items():
        rs = InvariantOp.identity()
        for j, e in enumerate(rho):
            rs = rs * (-R(j)) ** e
        rbs = InvariantOp.identity()
        for j, e in enumerate(gamma):
            rbs = rbs * Rbar(j) ** e
        if variant == "1":
            term = rbs * rs
        elif variant == "2":
            term = rs * rbs
        else:
            term = (rbs * rs + rs * rbs) * PiScalar.of(mpq(1, 2))
        out = out + term * c
    return out
