import csv
import io
import json
import random

import numpy as np
import pytest
from gmpy2 import mpq

from hh.gausspoly import GaussPoly, WeylContext
from hh.harness import ConfigError, NotApplicable, SUITES, SuiteConfig, check_feasible, run_suite
from hh.harness.cli import main
from hh.harness.config import parse_monomial
from hh.harness.oracles import gauss_hermite_integral, j0_series, laguerre_explicit
from hh.harness.randomgen import random_gausspoly
from hh.spherical import psi
from hh.weylfock import IrredIndex


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- configuration ------------------------------------------------------------------

def test_config_validation():
    with pytest.raises(ConfigError):
        SuiteConfig(lam="0")
    with pytest.raises(ConfigError):
        SuiteConfig(lam="x/2")
    with pytest.raises(ConfigError):
        SuiteConfig(n1=1)
    with pytest.raises(ConfigError):
        SuiteConfig(mode="fast")
    with pytest.raises(ConfigError):
        SuiteConfig(N=-1)
    assert SuiteConfig(lam="-3/2").lam_value == mpq(-3, 2)


def test_infeasible_configs_rejected_before_running():
    with pytest.raises(ConfigError, match="exceeds the truncation"):
        check_feasible("projections", SuiteConfig(N=2, k_max=4))
    with pytest.raises(NotApplicable):
        check_feasible("hecke-bochner-un", SuiteConfig(n1=1, n2=1))
    with pytest.raises(NotApplicable):
        check_feasible("kernels-and-surface", SuiteConfig(lam="-1"))
    with pytest.raises(KeyError):
        run_suite("nonsense", SuiteConfig())


def test_parse_monomial():
    ctx = WeylContext(2, 1)
    assert parse_monomial("z1*zb2^2", ctx) == GaussPoly.monomial(ctx, (1, 0), (0, 2))
    assert parse_monomial("1", ctx) == GaussPoly.constant(ctx)
    with pytest.raises(ConfigError):
        parse_monomial("z3", ctx)


def test_random_generation_is_seeded():
    ctx = WeylContext(2, 1)
    a = random_gausspoly(ctx, random.Random(4), 5)
    b = random_gausspoly(ctx, random.Random(4), 5)
    assert a == b and a.degree <= 5


# -- oracles ----------------------------------------------------------------------------

def test_oracles_on_known_values():
    ctx = WeylContext(1, 1)
    assert abs(gauss_hermite_integral(GaussPoly.gaussian(ctx, 1)) - np.pi) < 1e-13
    assert abs(j0_series(2.404825557695773)) < 1e-14
    assert laguerre_explicit(2, 0) == (1, -2, mpq(1, 2))


# -- suites ------------------------------------------------------------------------------

def test_reference_suite_configurations():
    r = run_suite("projections", SuiteConfig(n=1, N=8, k_max=4, mode="exact"))
    assert r.passed and all(rec.residual == "0" for rec in r.records if rec.status == "pass")
    r = run_suite("hecke-bochner-un", SuiteConfig(n=2, N=10, poly="z1*zb2", mode="exact"))
    assert r.passed
    assert any(rec.check == "hb-un-laguerre-integral" and rec.status == "pass" for rec in r.records)


def test_empty_interior_skips_commutators():
    r = run_suite("fock-basics", SuiteConfig(n=1, N=0))
    skipped = {rec.check: rec.detail for rec in r.records if rec.status == "skip"}
    assert skipped["ladder-commutators"] == "interior empty"
    assert r.passed


def test_mode_filters_checks():
    r = run_suite("eta", SuiteConfig(mode="exact"))
    assert all(rec.status == "skip" for rec in r.records)
    r = run_suite("plancherel", SuiteConfig(n=2, mode="oracle"))
    statuses = {rec.check: rec.status for rec in r.records}
    assert statuses["inner-product-quadrature"] == "pass"
    assert statuses["plancherel-polarization"] == "skip"


def test_every_suite_has_anchors():
    for name, (build, _) in SUITES.items():
        cfg = SuiteConfig(n1=1, n2=1) if name == "kernels-and-surface" else SuiteConfig(n=2)
        for check in build(cfg):
            assert check.anchor and check.kind in ("exact", "oracle")


def test_monotone_truncation():
    small = run_suite("invariant-ops", SuiteConfig(n=2, N=6, mode="exact"))
    large = run_suite("invariant-ops", SuiteConfig(n=2, N=8, mode="exact"))
    before = {r.check for r in small.records if r.status == "pass"}
    after = {r.check for r in large.records if r.status == "pass"}
    assert before <= after


# -- command line --------------------------------------------------------------------------

def test_cli_verify_writes_deterministic_reports(tmp_path, capsys):
    for out in ("a", "b"):
        code, text, _ = run_cli(capsys, "verify", "plancherel", "--n", "2", "--seed", "3", "--out", str(tmp_path / out))
        assert code == 0 and "plancherel: PASS" in text
    first = (tmp_path / "a" / "plancherel.jsonl").read_bytes()
    assert first == (tmp_path / "b" / "plancherel.jsonl").read_bytes()
    lines = [json.loads(line) for line in first.decode().splitlines()]
    assert lines[0]["config"]["seed"] == 3
    assert {"check", "anchor", "status", "residual"} <= set(lines[1])
    assert "wall_time" not in lines[1]


def test_cli_timings_flag(tmp_path, capsys):
    code, _, _ = run_cli(capsys, "verify", "eta", "--timings", "--out", str(tmp_path))
    assert code == 0
    record = json.loads((tmp_path / "eta.jsonl").read_text().splitlines()[1])
    assert record["wall_time"] >= 0


def test_cli_exit_codes(capsys):
    code, _, err = run_cli(capsys, "verify", "projections", "--N", "2", "--kmax", "5")
    assert code == 2 and "exceeds the truncation" in err
    code, _, err = run_cli(capsys, "verify", "hecke-bochner-un", "--n1", "1", "--n2", "1")
    assert code == 2
    code, text, _ = run_cli(capsys, "verify", "all", "--n1", "1", "--n2", "1", "--mode", "exact", "--samples", "2")
    assert code == 0 and "hecke-bochner-un: SKIP" in text


def test_cli_accepts_negative_lambda(capsys):
    code, text, _ = run_cli(capsys, "verify", "projections", "--lambda", "-1/2", "--N", "4")
    assert code == 0 and "projections: PASS" in text


def test_failing_check_gives_nonzero_exit(monkeypatch, capsys):
    from hh.harness import suites

    original = suites._eta

    def broken(cfg):
        checks = original(cfg)
        checks[0].run = lambda: (False, "1.000e+00", "forced")
        return checks

    monkeypatch.setitem(suites.SUITES, "eta", (broken, lambda cfg: None))
    code, text, _ = run_cli(capsys, "verify", "eta")
    assert code == 1 and "eta: FAIL" in text


def test_cli_list(capsys):
    code, text, _ = run_cli(capsys, "list")
    assert code == 0 and text.split() == list(SUITES)


def test_emit_profile_matches_evaluate(tmp_path, capsys):
    out = tmp_path / "profile.csv"
    assert run_cli(capsys, "emit", "profile", "--k", "2", "--out", str(out))[0] == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert len(rows) == 81 and rows[-1]["r"] == "4.0"
    f = psi(WeylContext(1, 1), IrredIndex.unitary(1, 2)).psi
    for row in rows:
        value = complex(float(row["re"]), float(row["im"]))
        assert abs(value - f.evaluate([float(row["r"])])) < 1e-12


def test_emit_matrix_single_unit_entry(capsys):
    code, text, _ = run_cli(capsys, "emit", "matrix", "--N", "4", "--k", "1")
    assert code == 0
    assert json.loads(text)["entries"] == {"1;1": "1"}


def test_emit_coefficient_table(capsys):
    code, text, _ = run_cli(capsys, "emit", "table", "--kmax", "3")
    table = json.loads(text)
    assert [entry["C"] for entry in table.values()] == ["pi/2", "0", "0", "0"]
    assert all(entry["laguerre_integral"] == entry["C"] for entry in table.values())


def test_emit_kernel_slice(capsys):
    code, text, _ = run_cli(capsys, "emit", "kernel", "--n1", "1", "--n2", "1", "--k", "1", "--rmax", "0.2")
    assert code == 0 and text.splitlines()[0] == "r,re,im" and len(text.splitlines()) == 6


def test_emit_unwritable_path(capsys, tmp_path):
    code, _, err = run_cli(capsys, "emit", "profile", "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == 2 and "cannot write" in err
