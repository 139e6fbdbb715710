"""Suite configuration."""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace

from hh.gausspoly.context import WeylContext
from hh.gausspoly.poly import GaussPoly
from hh.gausspoly.scalar import rational, rational_str
from hh.spherical.family import Family

MODES = ("exact", "oracle", "both")


class ConfigError(ValueError):
    """The configuration cannot support the requested suite."""


class NotApplicable(ConfigError):
    """The suite is defined for a different family or sign of lambda."""


@dataclass(frozen=True)
class SuiteConfig:
    n: int = 1
    n1: int | None = None
    n2: int | None = None
    lam: str = "1"
    N: int = 8
    k_max: int = 3
    p_max: int = 2
    q_max: int = 2
    seed: int = 0
    mode: str = "both"
    samples: int = 5
    order: int = 12
    poly: str | None = None
    out: str | None = None
    timings: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")
        if (self.n1 is None) != (self.n2 is None):
            raise ConfigError("give both n1 and n2 or neither")
        for name in ("n", "N", "k_max", "p_max", "q_max", "samples", "order"):
            value = getattr(self, name)
            if value < (0 if name in ("N", "k_max", "p_max", "q_max", "order") else 1):
                raise ConfigError(f"{name} is out of range: {value}")
        if self.n1 is not None and min(self.n1, self.n2) < 1:
            raise ConfigError("n1 and n2 must be positive")
        try:
            if rational(self.lam) == 0:
                raise ConfigError("lambda must be nonzero")
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad lambda {self.lam!r}: {exc}") from exc

    @property
    def lam_value(self):
        return rational(self.lam)

    @property
    def is_product(self) -> bool:
        return self.n1 is not None

    @property
    def dimension(self) -> int:
        return self.n1 + self.n2 if self.is_product else self.n

    def context(self, n: int | None = None) -> WeylContext:
        return WeylContext(n or self.dimension, self.lam_value)

    def family(self) -> Family:
        return Family.product(self.n1, self.n2) if self.is_product else Family.unitary(self.n)

    def with_(self, **changes) -> SuiteConfig:
        return replace(self, **changes)

    def as_record(self) -> dict:
        d = asdict(self)
        d.pop("out")
        d.pop("timings")
        d["lam"] = rational_str(self.lam_value)
        return d

    def polynomial(self, ctx: WeylContext) -> GaussPoly | None:
        return None if self.poly is None else parse_monomial(self.poly, ctx)


def parse_monomial(text: str, ctx: WeylContext) -> GaussPoly:
    """Parse products such as "z1*zb2^2" or "1" into a monomial GaussPoly."""
    a, b = [0] * ctx.n, [0] * ctx.n
    text = text.replace(" ", "")
    if text in ("", "1"):
        return GaussPoly.constant(ctx)
    for factor in text.split("*"):
        base, _, power = factor.partition("^")
        e = int(power) if power else 1
        target = b if base.startswith("zb") else a
        index = base[2:] if base.startswith("zb") else base[1:]
        if not base.startswith("z") or not index.isdigit() or not 1 <= int(index) <= ctx.n:
            raise ConfigError(f"cannot parse factor {factor!r} (use z1, zb2, z1^3, ...)")
        target[int(index) - 1] += e
    return GaussPoly.monomial(ctx, a, b)
