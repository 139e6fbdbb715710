"""Exact scalars: complex rationals attached to integer powers of pi."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

import mpmath
from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)


def rational(value) -> mpq:
    """Coerce an int, Fraction, mpq or "p/q" string to an exact rational."""
    if isinstance(value, str):
        return mpq(value.strip())
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or a 'p/q' string")
    return mpq(value)


def rational_str(value: mpq) -> str:
    return str(mpq(value))


def fact(k: int) -> mpq:
    return mpq(factorial(k))


def _split(value) -> tuple[mpq, mpq]:
    if isinstance(value, tuple):
        re, im = value
        return rational(re), rational(im)
    if isinstance(value, complex):
        if value.real != int(value.real) or value.imag != int(value.imag):
            raise TypeError("only integer-valued complex literals are accepted")
        return mpq(int(value.real)), mpq(int(value.imag))
    return rational(value), ZERO


class PiScalar:
    """Finite sum  sum_k c_k * pi**k  with Gaussian-rational c_k.

    Instances are immutable.  Zero coefficients are never stored, so two
    scalars are equal exactly when their term dictionaries are equal.
    """

    __slots__ = ("_t",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for k, v in terms.items():
                re, im = _split(v)
                if re or im:
                    t[int(k)] = (re, im)
        self._t = t

    @classmethod
    def _raw(cls, t: dict) -> PiScalar:
        obj = object.__new__(cls)
        obj._t = t
        return obj

    @classmethod
    def of(cls, re=0, im=0, pi: int = 0) -> PiScalar:
        return cls({pi: (re, im)})

    @classmethod
    def coerce(cls, value) -> PiScalar:
        if isinstance(value, PiScalar):
            return value
        return cls({0: value})

    # -- inspection -----------------------------------------------------
    def items(self):
        return sorted(self._t.items())

    def exponents(self) -> list[int]:
        return sorted(self._t)

    def coefficient(self, k: int) -> tuple[mpq, mpq]:
        return self._t.get(k, (ZERO, ZERO))

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_real(self) -> bool:
        return all(not im for _, im in self._t.values())

    def monomial(self) -> tuple[int, mpq, mpq] | None:
        """Return (k, re, im) if this is a single term c*pi**k, else None."""
        if len(self._t) != 1:
            return None
        (k, (re, im)), = self._t.items()
        return k, re, im

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other) -> PiScalar:
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        if not other._t:
            return self
        if not self._t:
            return other
        t = dict(self._t)
        for k, (re, im) in other._t.items():
            cur = t.get(k)
            if cur is None:
                t[k] = (re, im)
            else:
                nre, nim = cur[0] + re, cur[1] + im
                if nre or nim:
                    t[k] = (nre, nim)
                else:
                    del t[k]
        return PiScalar._raw(t)

    __radd__ = __add__

    def __neg__(self) -> PiScalar:
        return PiScalar._raw({k: (-re, -im) for k, (re, im) in self._t.items()})

    def __sub__(self, other) -> PiScalar:
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> PiScalar:
        return (-self) + other

    def __mul__(self, other) -> PiScalar:
        if isinstance(other, PiScalar):
            if not self._t or not other._t:
                return ZERO_SCALAR
            t: dict = {}
            for k1, (a, b) in self._t.items():
                for k2, (c, d) in other._t.items():
                    re = a * c - b * d
                    im = a * d + b * c
                    k = k1 + k2
                    cur = t.get(k)
                    if cur is not None:
                        re += cur[0]
                        im += cur[1]
                    t[k] = (re, im)
            return PiScalar._raw({k: v for k, v in t.items() if v[0] or v[1]})
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return self * other

    __rmul__ = __mul__

    def scale(self, r) -> PiScalar:
        """Multiply by a real rational."""
        r = mpq(r)
        if not r:
            return ZERO_SCALAR
        return PiScalar._raw({k: (re * r, im * r) for k, (re, im) in self._t.items()})

    def times_pi(self, power: int) -> PiScalar:
        if not power:
            return self
        return PiScalar._raw({k + power: v for k, v in self._t.items()})

    def times_i(self) -> PiScalar:
        return PiScalar._raw({k: (-im, re) for k, (re, im) in self._t.items()})

    def conjugate(self) -> PiScalar:
        return PiScalar._raw({k: (re, -im) for k, (re, im) in self._t.items()})

    def __truediv__(self, other) -> PiScalar:
        """Exact division by a single-term scalar c*pi**k."""
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        mono = other.monomial()
        if mono is None:
            raise ZeroDivisionError("division only by nonzero single-term scalars")
        k, c, d = mono
        den = c * c + d * d
        inv = PiScalar._raw({-k: (c / den, -d / den)})
        return self * inv

    def __pow__(self, e: int) -> PiScalar:
        if e < 0:
            return ONE_SCALAR / (self ** (-e))
        out = ONE_SCALAR
        for _ in range(e):
            out = out * self
        return out

    # -- comparison -----------------------------------------------------
    def __eq__(self, other) -> bool:
        other = _as_scalar(other)
        if other is None:
            return NotImplemented
        return self._t == other._t

    def __hash__(self) -> int:
        return hash(frozenset(self._t.items()))

    # -- numerics -------------------------------------------------------
    def to_complex(self) -> complex:
        if not self._t:
            return 0j
        with mpmath.workdps(40):
            pi = mpmath.pi
            re = mpmath.mpf(0)
            im = mpmath.mpf(0)
            for k, (a, b) in self._t.items():
                p = pi ** k
                re += _mpf(a) * p
                im += _mpf(b) * p
            return complex(float(re), float(im))

    def __complex__(self) -> complex:
        return self.to_complex()

    # -- serialization ----------------------------------------------------
    def to_json(self) -> list[dict]:
        return [
            {"pi": k, "re": rational_str(re), "im": rational_str(im)}
            for k, (re, im) in self.items()
        ]

    @classmethod
    def from_json(cls, data: list[dict]) -> PiScalar:
        return cls({int(d["pi"]): (d["re"], d["im"]) for d in data})

    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = [_term_str(k, re, im) for k, (re, im) in sorted(self._t.items(), reverse=True)]
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self) -> str:
        return f"PiScalar({self})"


def _mpf(q: mpq):
    return mpmath.mpf(int(q.numerator)) / int(q.denominator)


def _pi_factor(k: int) -> str:
    k = abs(k)
    return "pi" if k == 1 else f"pi^{k}"


def _term_str(k: int, re: mpq, im: mpq) -> str:
    if re and im:
        body = f"({re}{'+' if im > 0 else '-'}{abs(im)}i)"
        if k > 0:
            return f"{body}*{_pi_factor(k)}"
        if k < 0:
            return f"{body}/{_pi_factor(k)}"
        return body
    c, unit = (re, "") if re else (im, "i")
    sign = "-" if c < 0 else ""
    c = abs(c)
    num = c.numerator
    den = c.denominator
    num_parts = []
    if num != 1 or (k <= 0 and not unit):
        num_parts.append(str(num))
    if unit:
        num_parts.append(unit)
    if k > 0:
        num_parts.append(_pi_factor(k))
    den_parts = []
    if den != 1:
        den_parts.append(str(den))
    if k < 0:
        den_parts.append(_pi_factor(k))
    text = "*".join(num_parts)
    if den_parts:
        d = "*".join(den_parts)
        text += f"/({d})" if len(den_parts) > 1 else f"/{d}"
    return sign + text


def _as_scalar(value) -> PiScalar | None:
    if isinstance(value, PiScalar):
        return value
    if isinstance(value, (int, Fraction, str, tuple, complex)) or type(value) is type(ZERO):
        return PiScalar({0: value})
    return None


ZERO_SCALAR = PiScalar()
ONE_SCALAR = PiScalar({0: 1})
