import json
import os
import subprocess
import sys

import pytest

from farhi import cli, constants, identities


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("NO_COLOR", None)
    full_env.update(env or {})
    return subprocess.run(
        [sys.executable, "-m", "farhi", *args], capture_output=True, text=True, env=full_env, timeout=120
    )


def _strip_volatile(report: dict) -> dict:
    report = json.loads(json.dumps(report))
    report.pop("timestamp")
    for c in report["checks"]:
        c.pop("runtime_ms")
    return report


@pytest.fixture(scope="module")
def json_report():
    p = run("check", "--all", "--format", "json")
    assert p.returncode == 0, p.stderr
    return json.loads(p.stdout)


def test_check_all_exit_zero(json_report):
    s = json_report["summary"]
    assert s == {"total": len(identities.REGISTRY), "passed": len(identities.REGISTRY), "failed": 0}


def test_json_schema(json_report):
    keys = {"id", "description", "paper_ref", "lhs", "rhs", "abs_err", "rel_err", "tol", "pass", "evals", "runtime_ms"}
    assert json_report["timestamp"].endswith("Z")
    for c in json_report["checks"]:
        assert set(c) == keys
        assert c["pass"] == (c["abs_err"] <= c["tol"])


def test_json_round_trip(json_report):
    report = cli.Report.from_dict(json_report)
    assert json.loads(cli.render_json(report)) == json_report


def test_json_deterministic_apart_from_clock(json_report):
    p = run("check", "--all", "--format", "json")
    assert _strip_volatile(json.loads(p.stdout)) == _strip_volatile(json_report)


def test_build_report_is_byte_stable():
    results = identities.run_all(ids=["EQ5_LINEAR", "EQ19_I2"])
    a = cli.render_json(cli.build_report(results, timestamp="2000-01-01T00:00:00Z"))
    b = cli.render_json(cli.build_report(results, timestamp="2000-01-01T00:00:00Z"))
    assert a == b


def test_failure_exits_one():
    p = run("check", "EQ2_ETA_DEF", "--tol-scale", "1e-3")
    assert p.returncode == 1
    assert "FAIL" in p.stdout and "0/1 passed" in p.stdout


def test_tol_scale_scales_reported_tolerance():
    p = run("check", "EQ5_LINEAR", "--tol-scale", "0.5", "--format", "json")
    assert json.loads(p.stdout)["checks"][0]["tol"] == pytest.approx(5e-11)


@pytest.mark.parametrize("args", [
    ("check",),
    ("check", "EQ5_LINEAR", "--all"),
    ("check", "--all", "--tol-scale", "0"),
    ("check", "--all", "--tol-scale", "abc"),
    ("check", "--all", "--format", "xml"),
    ("eta", "--method", "guess"),
    (),
])
def test_usage_errors_exit_two(args):
    assert run(*args).returncode == 2


def test_unknown_id_lists_valid_ones():
    p = run("check", "EQ99_NOPE")
    assert p.returncode == 2
    assert "EQ99_NOPE" in p.stderr and "EQ4_CLOSED_FORM" in p.stderr


def test_markdown_and_out_file(tmp_path):
    out = tmp_path / "report.md"
    p = run("check", "EQ5_LINEAR", "EQ19_I2", "--format", "md", "--out", str(out))
    assert p.returncode == 0 and p.stdout == ""
    text = out.read_text(encoding="utf-8")
    assert text.startswith("# Identity checks")
    assert text.count("✓") == 2 and "**2/2 passed**" in text


def test_text_output_has_no_color_when_piped():
    p = run("check", "EQ5_LINEAR")
    assert "\x1b[" not in p.stdout
    assert p.stdout.startswith("PASS")


def test_color_only_on_tty_without_no_color(monkeypatch):
    class Tty:
        def isatty(self):
            return True

    monkeypatch.delenv("NO_COLOR", raising=False)
    assert cli._use_color(Tty())
    monkeypatch.setenv("NO_COLOR", "1")
    assert not cli._use_color(Tty())
    report = cli.build_report(identities.run_all(ids=["EQ5_LINEAR"]))
    assert "\x1b[32m" in cli.render_text(report, color=True)
    assert "\x1b[" not in cli.render_text(report, color=False)


def test_render_handles_non_finite():
    bad = identities.CheckResult(
        identities.IdentityId.EQ5_LINEAR, float("nan"), float("nan"), float("inf"), float("inf"),
        1e-10, False, 0, 0.0, "boom",
    )
    report = cli.build_report([bad], timestamp="2000-01-01T00:00:00Z")
    data = json.loads(cli.render_json(report))
    assert data["checks"][0]["lhs"] is None and data["checks"][0]["abs_err"] is None
    assert "nan" in cli.render_text(report)


def test_constants_output():
    p = run("constants")
    assert p.returncode == 0
    assert "gamma = 0.577215664901533" in p.stdout
    eta_line = next(line for line in p.stdout.splitlines() if line.startswith("eta = "))
    closed = run("eta", "--method", "closed").stdout.strip()
    assert eta_line.split()[2] == closed


@pytest.mark.parametrize("method", ["closed", "quadrature", "malmsten"])
def test_eta_methods(method):
    p = run("eta", "--method", method)
    assert p.returncode == 0
    assert float(p.stdout) == pytest.approx(constants.eta_closed_form(), abs=1e-10)


def test_eta_all_prints_differences():
    p = run("eta", "--method", "all")
    lines = p.stdout.splitlines()
    assert len(lines) == 6
    diffs = [float(line.rsplit("=", 1)[1]) for line in lines if line.startswith("|")]
    assert len(diffs) == 3 and max(diffs) <= 1e-10


def test_list():
    p = run("list")
    lines = p.stdout.splitlines()
    assert len(lines) == len(identities.REGISTRY)
    assert any(line.startswith("EQ4_CLOSED_FORM") for line in lines)
    assert any(line.startswith("EQ22_CI_PART") for line in lines)


def test_main_in_process(capsys):
    assert cli.main(["eta"]) == 0
    assert capsys.readouterr().out.strip() == f"{constants.eta_closed_form():.15g}"
