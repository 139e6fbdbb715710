"""The two block-diagonal unitary groups: U(n) and U(n1) x U(n2)."""

from __future__ import annotations

from dataclasses import dataclass

from hh.gausspoly.context import WeylContext
from hh.gausspoly.ops import InvariantOp, special_hermite
from hh.gausspoly.poly import GaussPoly
from hh.weylfock.truncation import IrredIndex, irreducibles


@dataclass(frozen=True)
class Family:
    """K = U(n_1) x ... x U(n_r) acting blockwise on C^(n_1 + ... + n_r)."""

    blocks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(int(b) for b in self.blocks))
        if not self.blocks or min(self.blocks) < 1:
            raise ValueError("block sizes must be positive")

    @classmethod
    def unitary(cls, n: int) -> Family:
        return cls((n,))

    @classmethod
    def product(cls, n1: int, n2: int) -> Family:
        return cls((n1, n2))

    @property
    def n(self) -> int:
        return sum(self.blocks)

    @property
    def slices(self) -> list[range]:
        out, start = [], 0
        for b in self.blocks:
            out.append(range(start, start + b))
            start += b
        return out

    def irreducible(self, *degrees) -> IrredIndex:
        return IrredIndex(self.blocks, degrees)

    def irreducibles(self, max_total: int):
        return irreducibles(self.blocks, max_total)

    def generator_names(self) -> list[str]:
        if len(self.blocks) == 1:
            return ["L"]
        return [f"L{i + 1}" for i in range(len(self.blocks))]

    def generators(self) -> dict[str, InvariantOp]:
        """Blockwise special Hermite operators, which generate the invariant algebra."""
        return {name: special_hermite(sl) for name, sl in zip(self.generator_names(), self.slices)}

    def invariants(self, ctx: WeylContext) -> list[GaussPoly]:
        """|z^i|^2 for each block."""
        return [GaussPoly.norm_sq(ctx, sl) for sl in self.slices]

    def delta(self, *args) -> tuple[tuple[int, int], ...]:
        """Normalize a bidegree label to ((p_1, q_1), ..., (p_r, q_r))."""
        flat = [x for a in args for x in (a if isinstance(a, (tuple, list)) else (a,))]
        flat = [x for a in flat for x in (a if isinstance(a, (tuple, list)) else (a,))]
        if len(flat) != 2 * len(self.blocks) or min(flat, default=0) < 0:
            raise ValueError(f"expected {len(self.blocks)} nonnegative (p, q) pairs, got {args}")
        return tuple((int(flat[2 * i]), int(flat[2 * i + 1])) for i in range(len(self.blocks)))

    def require(self, ctx: WeylContext) -> None:
        if ctx.n != self.n:
            raise ValueError(f"family acts on C^{self.n}, context is C^{ctx.n}")

    def __str__(self) -> str:
        return " x ".join(f"U({b})" for b in self.blocks)
