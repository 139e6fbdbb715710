"""Degree-truncated Fock space and labels of K-irreducible subspaces."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb, prod

from gmpy2 import mpq

from hh.errors import TruncationError
from hh.gausspoly.context import WeylContext
from hh.gausspoly.poly import monomials
from hh.gausspoly.scalar import PiScalar, fact


def gram_weight(ctx: WeylContext, nu) -> mpq:
    """Squared Fock norm of w^nu:  nu! / (2|lambda|)^|nu|."""
    return prod((fact(x) for x in nu), start=mpq(1)) / (2 * ctx.abs_lam) ** sum(nu)


class FockTruncation:
    """All holomorphic monomials w^nu with |nu| <= N, ordered by degree then lexicographically."""

    def __init__(self, ctx: WeylContext, N: int):
        if N < 0:
            raise ValueError("truncation degree must be nonnegative")
        self.ctx = ctx
        self.N = int(N)
        self.indices: tuple[tuple[int, ...], ...] = tuple(
            nu for d in range(self.N + 1) for nu in monomials(ctx.n, d)
        )
        self.position = {nu: i for i, nu in enumerate(self.indices)}
        self.gram = {nu: gram_weight(ctx, nu) for nu in self.indices}

    @property
    def dim(self) -> int:
        return len(self.indices)

    def __contains__(self, nu) -> bool:
        return tuple(nu) in self.position

    def __eq__(self, other) -> bool:
        return isinstance(other, FockTruncation) and (self.ctx, self.N) == (other.ctx, other.N)

    def __hash__(self) -> int:
        return hash((self.ctx, self.N))

    def __repr__(self) -> str:
        return f"FockTruncation(n={self.ctx.n}, lambda={self.ctx.lam}, N={self.N})"


@dataclass(frozen=True)
class IrredIndex:
    """V_alpha for a block-diagonal unitary group U(n_1) x ... x U(n_r).

    ``blocks`` holds (n_1, ..., n_r) and ``degrees`` the holomorphic degree in
    each block.  One block is the U(n) family with V_k = P_k; two blocks give
    the product family with V_{m1 m2}.
    """

    blocks: tuple[int, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(int(b) for b in self.blocks))
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if len(self.blocks) != len(self.degrees) or not self.blocks:
            raise ValueError("blocks and degrees must have the same nonzero length")
        if min(self.blocks) < 1 or min(self.degrees) < 0:
            raise ValueError("block sizes must be positive and degrees nonnegative")

    @classmethod
    def unitary(cls, n: int, k: int) -> IrredIndex:
        return cls((n,), (k,))

    @classmethod
    def product(cls, n1: int, n2: int, m1: int, m2: int) -> IrredIndex:
        return cls((n1, n2), (m1, m2))

    @property
    def n(self) -> int:
        return sum(self.blocks)

    @property
    def total_degree(self) -> int:
        return sum(self.degrees)

    @property
    def block_slices(self) -> list[range]:
        out, start = [], 0
        for b in self.blocks:
            out.append(range(start, start + b))
            start += b
        return out

    @property
    def dim(self) -> int:
        return prod(comb(m + b - 1, m) for b, m in zip(self.blocks, self.degrees))

    @cached_property
    def _monomials(self) -> tuple[tuple[int, ...], ...]:
        parts = [list(monomials(b, m)) for b, m in zip(self.blocks, self.degrees)]
        out = [()]
        for part in parts:
            out = [x + y for x in out for y in part]
        return tuple(out)

    def monomials(self) -> tuple[tuple[int, ...], ...]:
        return self._monomials

    def contains(self, nu) -> bool:
        nu = tuple(nu)
        return len(nu) == self.n and all(
            sum(nu[j] for j in sl) == m for sl, m in zip(self.block_slices, self.degrees)
        )

    def eigenvalues(self, ctx: WeylContext) -> tuple[PiScalar, ...]:
        """Eigenvalue of each block's special Hermite operator: -2|lambda|(2 m_i + n_i)."""
        return tuple(
            PiScalar.of(-2 * ctx.abs_lam * (2 * m + b)) for b, m in zip(self.blocks, self.degrees)
        )

    def require_in(self, trunc: FockTruncation) -> None:
        if trunc.ctx.n != self.n:
            raise TruncationError(f"V_alpha lives in C^{self.n}, truncation in C^{trunc.ctx.n}")
        if self.total_degree > trunc.N:
            raise TruncationError(
                f"V_alpha has degree {self.total_degree} above the truncation N={trunc.N}"
            )

    def __str__(self) -> str:
        if len(self.blocks) == 1:
            return f"U({self.blocks[0]}):k={self.degrees[0]}"
        return "x".join(f"U({b})" for b in self.blocks) + ":m=" + ",".join(map(str, self.degrees))


def irreducibles(blocks, max_total: int):
    """All IrredIndex for the given blocks with total degree <= max_total."""
    blocks = tuple(blocks)
    for total in range(max_total + 1):
        for degs in monomials(len(blocks), total):
            yield IrredIndex(blocks, degs)
