"""Command line entry point: ``hh verify``, ``hh emit`` and ``hh list``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from hh.errors import HHError
from hh.harness.config import ConfigError, NotApplicable, SuiteConfig
from hh.harness.suites import SUITES, check_feasible, run_suite


def _add_config_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=1, help="complex dimension for U(n)")
    p.add_argument("--n1", type=int, help="first block of the product family")
    p.add_argument("--n2", type=int, help="second block of the product family")
    p.add_argument("--lambda", dest="lam", default="1", help="nonzero rational, e.g. 1 or -3/2")
    p.add_argument("--N", type=int, default=8, help="Fock truncation degree")
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--pmax", type=int, default=2)
    p.add_argument("--qmax", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=5, help="random instances per sampled check")
    p.add_argument("--order", type=int, default=12, help="series order for kernel comparisons")
    p.add_argument("--poly", help="harmonic monomial such as z1*zb2 for the Hecke-Bochner suites")


def _config(args, **extra) -> SuiteConfig:
    return SuiteConfig(
        n=args.n,
        n1=args.n1,
        n2=args.n2,
        lam=args.lam,
        N=args.N,
        k_max=args.kmax,
        p_max=args.pmax,
        q_max=args.qmax,
        seed=args.seed,
        samples=args.samples,
        order=args.order,
        poly=args.poly,
        **extra,
    )


def _verify(args) -> int:
    cfg = _config(args, mode=args.mode)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    skipped = {}
    for name in names:
        try:
            check_feasible(name, cfg)
        except NotApplicable as exc:
            if args.suite != "all":
                raise
            skipped[name] = str(exc)
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
    ok = True
    for name in names:
        if name in skipped:
            print(f"{name}: SKIP ({skipped[name]})")
            continue
        report = run_suite(name, cfg)
        ok &= report.passed
        print(report.summary())
        for r in report.records:
            line = f"  {r.status:4}  {r.check}  residual={r.residual}"
            if args.timings:
                line += f"  {r.wall_time:.3f}s"
            if r.detail:
                line += f"  ({r.detail})"
            print(line)
        if args.out:
            (Path(args.out) / f"{name}.jsonl").write_text(report.to_jsonl(args.timings))
    return 0 if ok else 1


def _emit(args) -> int:
    from hh.gausspoly import GaussPoly
    from hh.spherical import choose_radii, kernel_Q, psi
    from hh.spherical.emit import coefficient_table, kernel_slice_csv, profile_csv, radial_grid, table_json
    from hh.weylfock import FockTruncation, IrredIndex, weyl_transform

    cfg = _config(args)
    ctx = cfg.context()
    if args.target == "profile":
        alpha = IrredIndex.unitary(ctx.n, args.k)
        text = profile_csv(psi(ctx, alpha).psi, radial_grid(args.rmax, args.step))
    elif args.target == "matrix":
        trunc = FockTruncation(ctx, cfg.N)
        G = weyl_transform(psi(ctx, IrredIndex.unitary(ctx.n, args.k)).psi, trunc)
        entries = {
            f"{','.join(map(str, mu))};{','.join(map(str, nu))}": str(v)
            for (mu, nu), v in sorted(G.entries.items())
        }
        text = json.dumps({"n": ctx.n, "lambda": str(ctx.lam), "N": cfg.N, "k": args.k, "entries": entries}, indent=2, sort_keys=True) + "\n"
    elif args.target == "table":
        fam = cfg.family()
        P = cfg.polynomial(ctx) or GaussPoly.constant(ctx)
        g = GaussPoly.gaussian(ctx, ctx.abs_lam)
        text = table_json(coefficient_table(P, g, fam, cfg.k_max))
    else:
        if ctx.n != 2:
            raise ConfigError("the kernel slice is for n1 = n2 = 1; pass --n1 1 --n2 1")
        m = (args.k, args.k)
        a = choose_radii(ctx, m, cfg.order)
        omega = (1, 1)
        text = kernel_slice_csv(lambda r: kernel_Q(ctx, m, a, (r, 0), omega), radial_grid(args.rmax, args.step))
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            print(f"hh: cannot write {args.out}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hh", description="Exact Heisenberg-group harmonic analysis checks")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=[*SUITES, "all"])
    _add_config_args(v)
    v.add_argument("--mode", choices=["exact", "oracle", "both"], default="both")
    v.add_argument("--out", help="directory for <suite>.jsonl reports")
    v.add_argument("--timings", action="store_true", help="record wall times (reports stop being byte-stable)")
    v.set_defaults(func=_verify)

    e = sub.add_parser("emit", help="write a CSV or JSON artifact")
    e.add_argument("target", choices=["profile", "matrix", "table", "kernel"])
    _add_config_args(e)
    e.add_argument("--k", type=int, default=0, help="degree k (profile, matrix) or m_i (kernel)")
    e.add_argument("--rmax", type=float, default=4.0)
    e.add_argument("--step", type=float, default=0.05)
    e.add_argument("--out", help="output file (default stdout)")
    e.set_defaults(func=_emit)

    ls = sub.add_parser("list", help="list suites")
    ls.set_defaults(func=lambda args: print("\n".join(SUITES)) or 0)
    return parser


def _join_negative_lambda(argv):
    # argparse reads "-1/2" as an option, so glue it to the flag
    out = list(argv)
    for i, tok in enumerate(out[:-1]):
        if tok == "--lambda" and out[i + 1].startswith("-"):
            out[i : i + 2] = [f"--lambda={out[i + 1]}"]
            break
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    args = build_parser().parse_args(_join_negative_lambda(argv))
    try:
        return args.func(args)
    except (ConfigError, HHError) as exc:
        print(f"hh: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
