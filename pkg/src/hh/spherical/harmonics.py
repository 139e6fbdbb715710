"""Bigraded solid harmonics and the decomposition  polynomial = sum invariant * harmonic."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from gmpy2 import mpq

from hh.gausspoly.context import WeylContext
from hh.gausspoly.poly import GaussPoly, TermAccumulator, monomials
from hh.gausspoly.scalar import PiScalar
from hh.spherical.family import Family
from hh.spherical.linalg import inverse, nullspace


def _pairs(m: int, p: int, q: int) -> list[tuple[tuple, tuple]]:
    return [(a, b) for a in monomials(m, p) for b in monomials(m, q)]


def _laplacian(a, b) -> list[tuple[tuple, tuple, int]]:
    out = []
    for j in range(len(a)):
        if a[j] and b[j]:
            out.append((a[:j] + (a[j] - 1,) + a[j + 1:], b[:j] + (b[j] - 1,) + b[j + 1:], a[j] * b[j]))
    return out


@lru_cache(maxsize=None)
def block_basis(m: int, p: int, q: int) -> tuple[dict, ...]:
    """Basis of H_pq(C^m) as {(a, b): rational}, in reduced echelon form over lex-descending monomials."""
    source = _pairs(m, p, q)
    if p == 0 or q == 0:
        return tuple({pair: mpq(1)} for pair in source)
    target = {pair: i for i, pair in enumerate(_pairs(m, p - 1, q - 1))}
    rows = [[mpq(0)] * len(source) for _ in target]
    for col, (a, b) in enumerate(source):
        for a2, b2, c in _laplacian(a, b):
            rows[target[(a2, b2)]][col] += c
    return tuple(
        {source[i]: v for i, v in enumerate(vec) if v} for vec in nullspace(rows, len(source))
    )


def _norm_power(m: int, j: int) -> dict:
    """|z|^(2j) on C^m as {(a, a): multinomial}."""
    out = {((0,) * m, (0,) * m): mpq(1)}
    for _ in range(j):
        nxt: dict = {}
        for (a, b), c in out.items():
            for k in range(m):
                key = (a[:k] + (a[k] + 1,) + a[k + 1:], b[:k] + (b[k] + 1,) + b[k + 1:])
                nxt[key] = nxt.get(key, 0) + c
        out = nxt
    return out


def _multiply(f: dict, g: dict) -> dict:
    out: dict = {}
    for (a, b), c in f.items():
        for (a2, b2), c2 in g.items():
            key = (tuple(x + y for x, y in zip(a, a2)), tuple(x + y for x, y in zip(b, b2)))
            out[key] = out.get(key, 0) + c * c2
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _decomposition_system(m: int, p: int, q: int):
    """Inverse of the change of basis  P_pq(C^m) = sum_j |z|^(2j) H_(p-j, q-j).

    Returns (row labels, column labels, inverse matrix); column label (j, index in block_basis).
    """
    rows = _pairs(m, p, q)
    pos = {pair: i for i, pair in enumerate(rows)}
    cols, vectors = [], []
    for j in range(min(p, q) + 1):
        power = _norm_power(m, j)
        for idx, h in enumerate(block_basis(m, p - j, q - j)):
            vec = [mpq(0)] * len(rows)
            for key, c in _multiply(power, h).items():
                vec[pos[key]] += c
            cols.append((j, idx))
            vectors.append(vec)
    matrix = [[vectors[c][r] for c in range(len(cols))] for r in range(len(rows))]
    return rows, cols, inverse(matrix)


def _split_block(key, sl: range):
    a, b = key
    inside = (tuple(a[j] for j in sl), tuple(b[j] for j in sl))
    outside = (
        tuple(0 if j in sl else x for j, x in enumerate(a)),
        tuple(0 if j in sl else x for j, x in enumerate(b)),
    )
    return inside, outside


def _merge_block(outside, inside, sl: range):
    a, b = list(outside[0]), list(outside[1])
    for k, j in enumerate(sl):
        a[j] += inside[0][k]
        b[j] += inside[1][k]
    return tuple(a), tuple(b)


def _decompose_block(coeffs: dict, sl: range) -> dict:
    """{(j, (p, q)): coeff dict} with coeffs = sum_j |z_B|^(2j) h_j and h_j harmonic in the block."""
    m = len(sl)
    groups: dict = {}
    for key, c in coeffs.items():
        inside, outside = _split_block(key, sl)
        groups.setdefault((outside, sum(inside[0]), sum(inside[1])), {})[inside] = c
    out: dict = {}
    for (outside, p, q), part in groups.items():
        rows, cols, inv = _decomposition_system(m, p, q)
        rhs = [part.get(r) for r in rows]
        for ci, (j, idx) in enumerate(cols):
            acc = TermAccumulator()
            for r, v in enumerate(rhs):
                if v is not None and inv[ci][r]:
                    acc.add(0, v, inv[ci][r])
            x = acc.result().get(0)
            if x is None:
                continue
            target = out.setdefault((j, (p - j, q - j)), TermAccumulator())
            for inside, hc in block_basis(m, p - j, q - j)[idx].items():
                target.add(_merge_block(outside, inside, sl), x, hc)
    return {k: acc.result() for k, acc in out.items()}


@dataclass(frozen=True)
class HarmonicPiece:
    """One summand  prod_i |z^i|^(2 powers_i) * harmonic  with harmonic of block bidegree delta."""

    powers: tuple[int, ...]
    delta: tuple[tuple[int, int], ...]
    harmonic: GaussPoly

    def expand(self, family: Family) -> GaussPoly:
        out = self.harmonic
        for norm, e in zip(family.invariants(self.harmonic.ctx), self.powers):
            out = out * norm ** e
        return out


def harmonic_decompose(p: GaussPoly, family: Family) -> list[HarmonicPiece]:
    """Write the polynomial part of p as sum of invariant monomials times bigraded harmonics."""
    family.require(p.ctx)
    state = {((), ()): dict(p.coeffs)}
    for sl in family.slices:
        nxt: dict = {}
        for (powers, deltas), coeffs in state.items():
            for (j, d), part in _decompose_block(coeffs, sl).items():
                if part:
                    nxt[(powers + (j,), deltas + (d,))] = part
        state = nxt
    pieces = [
        HarmonicPiece(powers, deltas, GaussPoly._raw(p.ctx, coeffs, mpq(0)))
        for (powers, deltas), coeffs in state.items()
    ]
    return sorted(pieces, key=lambda piece: (piece.delta, piece.powers))


def reassemble(pieces, family: Family, gauss_t=0) -> GaussPoly:
    if not pieces:
        raise ValueError("nothing to reassemble")
    out = GaussPoly.zero(pieces[0].harmonic.ctx)
    for piece in pieces:
        out = out + piece.expand(family)
    return out.with_gauss(gauss_t)


def component_project(f: GaussPoly, family: Family, delta) -> GaussPoly:
    """The delta-isotypic component of f, found algebraically."""
    delta = family.delta(delta)
    keep = [piece for piece in harmonic_decompose(f, family) if piece.delta == delta]
    if not keep:
        return GaussPoly.zero(f.ctx, f.gauss_t)
    return reassemble(keep, family, f.gauss_t)


def isotypic_types(f: GaussPoly, family: Family) -> list:
    return sorted({piece.delta for piece in harmonic_decompose(f, family)})


def is_invariant(f: GaussPoly, family: Family) -> bool:
    """True when f is a function of the block norms |z^i|^2 alone."""
    zero = tuple((0, 0) for _ in family.blocks)
    return all(piece.delta == zero for piece in harmonic_decompose(f, family))


def harmonic_type(P: GaussPoly, family: Family):
    """The bidegree label of P when P is a nonzero harmonic of a single type, else None."""
    pieces = harmonic_decompose(P, family)
    if len(pieces) != 1 or any(pieces[0].powers):
        return None
    return pieces[0].delta


def laplacian(f: GaussPoly, coords=None) -> GaussPoly:
    """sum over coords of d^2/dz_j dzbar_j applied to the polynomial part."""
    coords = range(f.n) if coords is None else coords
    acc = TermAccumulator()
    for (a, b), c in f.coeffs.items():
        for j in coords:
            if a[j] and b[j]:
                key = (a[:j] + (a[j] - 1,) + a[j + 1:], b[:j] + (b[j] - 1,) + b[j + 1:])
                acc.add(key, c, mpq(a[j] * b[j]))
    return GaussPoly._raw(f.ctx, acc.result(), mpq(0))


@dataclass(frozen=True)
class HarmonicSpace:
    family: Family
    delta: tuple[tuple[int, int], ...]
    basis: tuple[GaussPoly, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __len__(self) -> int:
        return len(self.basis)


def harmonic_basis(ctx: WeylContext, family: Family, delta) -> HarmonicSpace:
    """Tensor product of blockwise harmonic bases, each in reduced echelon form."""
    family.require(ctx)
    delta = family.delta(delta)
    per_block = []
    for (p, q), sl in zip(delta, family.slices):
        block = []
        for h in block_basis(len(sl), p, q):
            block.append({_merge_block(((0,) * ctx.n, (0,) * ctx.n), key, sl): c for key, c in h.items()})
        per_block.append(block)
    basis = []
    for choice in product(*per_block):
        coeffs = {((0,) * ctx.n, (0,) * ctx.n): mpq(1)}
        for part in choice:
            coeffs = _multiply(coeffs, part)
        basis.append(GaussPoly(ctx, {k: PiScalar.of(v) for k, v in coeffs.items()}))
    return HarmonicSpace(family, delta, tuple(basis))
