"""Deterministic CSV and JSON writers for profiles, columns, kernels and coefficient tables."""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from hh.gausspoly.poly import GaussPoly
from hh.spherical.family import Family
from hh.spherical.functions import generalized_spherical, hecke_bochner, psi
from hh.spherical.harmonics import harmonic_type


def fmt(x: float) -> str:
    # shortest string that round-trips; -0.0 prints as 0
    return repr(float(x) + 0.0)


def radial_grid(r_max, step) -> list[float]:
    count = int(round(float(r_max) / float(step)))
    return [round(i * float(step), 12) for i in range(count + 1)]


def radial_profile(f: GaussPoly, rs) -> list[tuple[float, complex]]:
    """f along the first coordinate axis, z = (r, 0, ..., 0)."""
    pts = np.zeros((len(rs), f.n), dtype=complex)
    pts[:, 0] = rs
    vals = f.numeric()(pts)
    return list(zip(rs, vals))


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def profile_csv(f: GaussPoly, rs) -> str:
    rows = [(fmt(r), fmt(v.real), fmt(v.imag)) for r, v in radial_profile(f, rs)]
    return csv_text(("r", "re", "im"), rows)


def column_csv(columns, rs) -> str:
    """Several functions sampled on the same radial grid, one re/im pair per function."""
    header = ["r"] + [f"{part}{j}" for j in range(len(columns)) for part in ("re", "im")]
    samples = [radial_profile(f, rs) for f in columns]
    rows = []
    for i, r in enumerate(rs):
        row = [fmt(r)]
        for s in samples:
            row += [fmt(s[i][1].real), fmt(s[i][1].imag)]
        rows.append(row)
    return csv_text(header, rows)


def kernel_slice_csv(kernel, rs) -> str:
    """A kernel callable r -> complex sampled on a grid."""
    rows = []
    for r in rs:
        v = complex(kernel(r))
        rows.append((fmt(r), fmt(v.real), fmt(v.imag)))
    return csv_text(("r", "re", "im"), rows)


def coefficient_table(P: GaussPoly, g: GaussPoly, family: Family, max_degree: int) -> dict:
    """{alpha: {C, A, mu[, laguerre_integral]}} with exact values as strings."""
    ctx = g.ctx
    table = {}
    for coeff in hecke_bochner(P, g, family, max_degree):
        alpha = coeff.alpha
        gs = generalized_spherical(ctx, harmonic_type(P, family), alpha)
        entry = {
            "C": str(coeff.C),
            "A": str(gs.A_scalar),
            "mu": {k: str(v) for k, v in psi(ctx, alpha).mu.items()},
        }
        if coeff.laguerre_integral is not None:
            entry["laguerre_integral"] = str(coeff.laguerre_integral)
        table[str(alpha)] = entry
    return table


def table_json(table: dict) -> str:
    return json.dumps(table, indent=2, sort_keys=False) + "\n"
