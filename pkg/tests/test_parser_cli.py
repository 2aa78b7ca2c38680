"""Parser grammar plus end-to-end CLI jobs: determinism, exit codes, reports."""

import json
import random
from fractions import Fraction

import pytest

from genbs.cli import (
    JobSpec,
    build_argparser,
    generic_family,
    job_from_args,
    run_command,
    serialize_report,
)
from genbs.errors import ParseError
from genbs.orders import GRevLex
from genbs.parser import parse_op, parse_poly
from genbs.poly import PolyRing, QQ
from genbs.weyl import WeylRing

R = PolyRing(QQ, ("a", "x1", "x2", "s1", "s2"), GRevLex())
W = WeylRing(QQ, ("x", "dx", "s"), ((0, 1),))


def test_parse_examples():
    f = parse_poly("x1^2 + a*x2", R)
    assert f == R.var("x1") ** 2 + R.var("a") * R.var("x2")
    g = parse_poly("(s1+1)*(s2+1)", R)
    s1, s2 = R.var("s1"), R.var("s2")
    assert g == s1 * s2 + s1 + s2 + 1
    assert parse_poly("3/2*x1 - 1/2", R) == R.var("x1") * Fraction(3, 2) - Fraction(
        1, 2
    )
    assert parse_poly("-x1 + 2", R) == -R.var("x1") + 2


def test_parse_errors_located():
    with pytest.raises(ParseError) as ei:
        parse_poly("x^(-1)", R.with_order(GRevLex()) if hasattr(R, "with_order") else R)
    assert "line 1" in str(ei.value)
    with pytest.raises(ParseError):
        parse_poly("x1 + ", R)
    with pytest.raises(ParseError) as ei2:
        parse_poly("x1 + zz", R)
    assert "zz" in str(ei2.value)
    with pytest.raises(ParseError) as ei3:
        parse_poly("x1 +\n y7", R)
    assert "line 2" in str(ei3.value)
    with pytest.raises(ParseError):
        parse_poly("x1 $ 2", R)
    with pytest.raises(ParseError):
        parse_poly("x1/x1", R)


def test_parse_op_order_matters():
    left = parse_op("dx*x", W)
    assert left == W.gen("x") * W.gen("dx") + 1
    right = parse_op("x*dx", W)
    assert right == W.gen("x") * W.gen("dx")


def random_poly(rng, ring):
    terms = []
    for _ in range(rng.randrange(1, 6)):
        exp = tuple(rng.randrange(3) for _ in range(ring.nvars))
        c = Fraction(rng.randrange(-6, 7), rng.randrange(1, 4))
        if c:
            terms.append((exp, c))
    return ring.from_terms(terms)


def test_print_parse_round_trip_random():
    rng = random.Random(173)
    for _ in range(300):
        f = random_poly(rng, R)
        assert parse_poly(str(f), R) == f


def test_op_print_parse_round_trip_random():
    rng = random.Random(177)
    from genbs.weyl import WeylOp

    for _ in range(200):
        acc = {}
        for _ in range(rng.randrange(1, 4)):
            exp = tuple(rng.randrange(3) for _ in range(W.nvars))
            c = Fraction(rng.randrange(-4, 5))
            if c:
                acc[exp] = acc.get(exp, 0) + c
        op = WeylOp(W, {e: c for e, c in acc.items() if c})
        assert parse_op(str(op), W) == op


def test_cli_bs_report_and_determinism():
    spec = JobSpec(command="bs", vars=("x",), f=("x^2",))
    report1, code1 = run_command(spec)
    report2, code2 = run_command(spec)
    assert code1 == code2 == 0
    assert serialize_report(report1) == serialize_report(report2)
    assert report1["verified"]
    assert report1["outputs"]["b"] == "s^2 + 3/2*s + 1/2"
    assert report1["certificates"]["P"]["value"] == "1/4*dx^2"
    assert len(report1["certificates"]["P"]["sha256"]) == 64


def test_cli_family_counts():
    inst = generic_family(1, 1, 1)
    assert inst.registry.m == 2
    inst2 = generic_family(1, 1, 2)
    assert inst2.registry.m == 3
    inst3 = generic_family(2, 2, 1)
    assert inst3.registry.m == 6
    spec = JobSpec(command="family", n=2, p=2, d=1)
    report, code = run_command(spec)
    assert code == 0
    assert report["outputs"]["m"] == 6


def test_cli_generic_bs_vanishing_exit_4():
    spec = JobSpec(
        command="generic-bs", vars=("x",), params=("a",), f=("a*x",), ideal=("a",)
    )
    report, code = run_command(spec)
    assert code == 4
    assert report["error"]["type"] == "FamilyVanishesModQ"
    assert report["error"]["code"] == 4


def test_cli_generic_bs_with_points():
    spec = JobSpec(
        command="generic-bs",
        vars=("x",),
        params=("a",),
        f=("x^2+a",),
        points=("1", "-1", "2", "1/2"),
    )
    report, code = run_command(spec)
    assert code == 0
    assert report["outputs"]["b"] == "s + 1"
    assert report["outputs"]["h"] == "a"
    assert all(c["verified"] for c in report["outputs"]["specialize_checks"])


def test_cli_budget_exit_3():
    spec = JobSpec(
        command="bs", vars=("x", "y"), f=("x^3+y^3+x*y",), budget_steps=10
    )
    report, code = run_command(spec)
    assert code == 3
    assert report["error"]["type"] == "TimeoutBudget"
    assert "partial" in report


def test_cli_verify_pass_and_fail():
    ok = JobSpec(command="verify", vars=("x",), f=("x",), b="s+1", op="dx")
    report, code = run_command(ok)
    assert code == 0 and report["verified"]
    bad = JobSpec(command="verify", vars=("x",), f=("x",), b="s+2", op="dx")
    report2, code2 = run_command(bad)
    assert code2 == 2 and not report2["verified"]


def test_cli_stratify_report():
    spec = JobSpec(command="stratify", vars=("x",), params=("a",), f=("x^2+a",))
    report, code = run_command(spec)
    assert code == 0
    assert report["outputs"]["count"] == 2
    bs = [s.get("b") for s in report["outputs"]["strata"]]
    assert bs == ["s + 1", "s^2 + 3/2*s + 1/2"]


def test_cli_ansatz_report():
    spec = JobSpec(
        command="ansatz", vars=("x",), f=("x^2",), budget_x=1, budget_dorder=2,
        budget_sdegree=2,
    )
    report, code = run_command(spec)
    assert code == 0
    assert any(p["b"] == "s^2 + 3/2*s + 1/2" for p in report["outputs"]["pairs"])


def test_cli_parse_error_exit_4():
    spec = JobSpec(command="bs", vars=("x",), f=("x^(-1)",))
    report, code = run_command(spec)
    assert code == 4
    assert report["error"]["type"] == "ParseError"


def test_argparse_job_file(tmp_path):
    job = {
        "command": "bs",
        "vars": ["x"],
        "f": ["x^2"],
    }
    path = tmp_path / "job.json"
    path.write_text(json.dumps(job))
    ap = build_argparser()
    args = ap.parse_args(["--job", str(path)])
    spec = job_from_args(args)
    assert spec.command == "bs"
    report, code = run_command(spec)
    assert code == 0


def test_argparse_flags():
    ap = build_argparser()
    args = ap.parse_args(
        ["bs", "--vars", "x,y", "--f", "x*y", "--v", "1", "--budget-steps", "5000"]
    )
    spec = job_from_args(args)
    assert spec.vars == ("x", "y")
    assert spec.v == (1,)
    assert spec.budget_steps == 5000
    report, code = run_command(spec)
    assert code == 0
    assert report["outputs"]["b"] == "s^2 + 2*s + 1"


def test_text_rendering_stable():
    spec = JobSpec(command="bs", vars=("x",), f=("x",))
    report, _ = run_command(spec)
    t1 = serialize_report(report, "text")
    t2 = serialize_report(report, "text")
    assert t1 == t2
    assert "verified: True" in t1
