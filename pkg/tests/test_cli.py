import csv
import json
import subprocess
import sys

import pytest

from qcf.cli import (CheckResult, SuiteConfig, UsageError, emit_report, emit_trace,
                     main, parse_config, report_dict, run_suite, trace_rows)


def test_parse_single_point():
    cfg = parse_config(["verify", "--suite", "entry12", "--params",
                        "a=0.3,b=-0.2,q=0.5", "--eps", "1e-10"])
    assert cfg.suites == ("entry12",)
    assert cfg.params == [(0.3, -0.2, 0.5)]
    assert cfg.eps == 1e-10


def test_parse_range_grid():
    cfg = parse_config(["verify", "--params", "a=0.1:0.5:0.2,b=-0.1:-0.05:0.05,q=0.5"])
    assert [p[:2] for p in cfg.params] == [
        (0.1, -0.1), (0.1, -0.05), (0.3, -0.1), (0.3, -0.05), (0.5, -0.1), (0.5, -0.05)]


def test_parse_x_points():
    cfg = parse_config(["verify", "--x", "2,-2,1.5i,1"])
    assert cfg.x_points == [2, -2, 1.5j, 1]
    cfg = parse_config(["verify", "--x", "0.3+0.4i,0.4-1.2i"])
    assert cfg.x_points == [0.3 + 0.4j, 0.4 - 1.2j]


@pytest.mark.parametrize("args", [
    ["verify", "--suite", "nope"],
    ["verify", "--x", "1.5ii"],
    ["verify", "--eps", "0"],
    ["verify", "--eps", "-1"],
    ["verify", "--max-depth", "5"],
    ["verify", "--params", "a=0.3,b=-0.2"],
    ["frobnicate"],
])
def test_parse_errors(args):
    with pytest.raises(UsageError):
        parse_config(args)
    assert main(args) == 2


def test_config_file_overridden(tmp_path):
    cfg_file = tmp_path / "c.json"
    cfg_file.write_text(json.dumps({"suite": "kc", "params": "a=0.4,b=-0.3,q=0.2",
                                    "eps": 1e-9, "max_depth": 50}))
    cfg = parse_config(["verify", "--config", str(cfg_file), "--eps", "1e-12"])
    assert cfg.suites == ("kc",) and cfg.params == [(0.4, -0.3, 0.2)]
    assert cfg.eps == 1e-12 and cfg.max_depth == 50


def test_exact_params():
    cfg = parse_config(["verify", "--exact", "--params", "a=1/3,b=-1/4,q=1/5"])
    from fractions import Fraction as F
    assert cfg.params == [(F(1, 3), F(-1, 4), F(1, 5))]


def test_run_entry12_grid():
    cfg = SuiteConfig(suites=("entry12",),
                      params=[(a, b, q) for a in (0.2, 0.4, 0.6) for b in (-0.1, -0.3, -0.5)
                              for q in (0.2, 0.5, 0.8)] + [(0.25, -0.2, 0.3 + 0.3j)])
    res = run_suite(cfg)
    assert len(res) == 28 and all(r.passed for r in res)


def test_star_exact_zero(tmp_path):
    out = tmp_path / "r.json"
    code = main(["verify", "--suite", "star", "--exact", "--params",
                 "a=1/3,b=-1/4,q=1/5;a=2/5,b=-1/7,q=1/3", "--out", str(out)])
    assert code == 0
    rep = json.loads(out.read_text())
    assert [r["residual"] for r in rep["results"]] == [0, 0]
    assert '"residual": 0,' in out.read_text()


def test_domain_error_becomes_failure():
    res = run_suite(SuiteConfig(suites=("entry12",), params=[(2, -1.5, 0.5)]))
    assert not res[0].passed
    assert "precondition |ab|<1 violated" in res[0].diagnostics[0]


def test_report_schema(tmp_path):
    out = tmp_path / "r.json"
    rep = emit_report([], str(out))
    assert json.loads(out.read_text())["summary"] == {"total": 0, "passed": 0, "failed": 0}
    cfg = SuiteConfig(suites=("xclosed",), params=[(0.6, -0.15, 0.5)], x_points=[1.5j])
    emit_report(run_suite(cfg), str(out), cfg)
    rep = json.loads(out.read_text())
    assert set(rep) == {"version", "config_echo", "results", "summary"}
    row = rep["results"][0]
    assert set(row) == {"suite", "params", "x", "residual", "tolerance", "passed",
                        "depth", "diagnostics"}
    assert row["params"] == {"a": 0.6, "b": -0.15, "q": 0.5}
    assert row["x"] == {"re": 0, "im": 1.5}
    assert row["passed"] is True


def test_failed_exit_code(tmp_path):
    out = tmp_path / "r.json"
    code = main(["verify", "--params", "a=2,b=-1.5,q=0.5", "--out", str(out)])
    rep = json.loads(out.read_text())
    assert code == 1 and rep["summary"]["failed"] > 0


def test_io_error():
    assert main(["verify", "--out", "/nonexistent-dir/r.json"]) == 3
    assert main(["verify", "--config", "/nonexistent-dir/c.json"]) == 3


def test_deterministic(tmp_path):
    args = ["verify", "--suite", "all", "--params", "a=0.6,b=-0.15,q=0.5", "--x", "2,1.5i"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(args + ["--out", str(a)])
    main(args + ["--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_trace(tmp_path):
    out = tmp_path / "t.csv"
    assert main(["trace", "--suite", "entry12", "--params", "a=0.3,b=-0.2,q=0.5",
                 "--max-depth", "10", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 11 and lines[0] == "k,value_re,value_im,abs_err"
    rows = emit_trace("entry12", (0.3, -0.2, 0.5), 40, str(out))
    errs = [r[2] for r in rows]
    assert all(errs[k + 1] <= errs[k] for k in range(9, len(errs) - 1) if errs[k] > 1e-15)
    with open(out) as fh:
        parsed = list(csv.DictReader(fh))
    assert float(parsed[-1]["abs_err"]) == errs[-1]


def test_trace_matches_report():
    cfg = SuiteConfig(suites=("xclosed",), params=[(0.6, -0.15, 0.5)], x_points=[2],
                      max_depth=300)
    res = run_suite(cfg)[0]
    rows = trace_rows("xclosed", (0.6, -0.15, 0.5), 300, x=2)
    assert rows[-1][2] == res.residual


def test_eval_and_module_entry(tmp_path):
    out = tmp_path / "e.json"
    assert main(["eval", "--params", "a=0.6,b=-0.15,q=0.5", "--x", "2", "--out", str(out)]) == 0
    vals = json.loads(out.read_text())
    assert abs(vals[0]["X"][0]["X_closed"] - 0.29045562846995967) < 1e-13
    proc = subprocess.run([sys.executable, "-m", "qcf", "verify", "--suite", "kc"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["summary"]["failed"] == 0


def test_trace_math_error_exits_one(capsys):
    # |b/(aq)| = 4/3 here, so G diverges
    rc = main(["trace", "--suite", "xclosed", "--params", "a=0.3,b=-0.2,q=0.5", "--x", "2"])
    assert rc == 1
    assert "DivergenceError" in capsys.readouterr().err


def test_help_exits_zero():
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0


def test_default_point_passes_all_suites():
    results = run_suite(parse_config(["verify", "--suite", "all"]))
    assert len(results) == 9 and all(r.passed for r in results)
