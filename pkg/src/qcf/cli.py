"""Command-line verification harness.

Subcommands::

    qcf verify --suite entry12 --params a=0.3,b=-0.2,q=0.5 --eps 1e-10 --out report.json
    qcf trace  --suite entry12 --params a=0.3,b=-0.2,q=0.5 --max-depth 40 --out trace.csv
    qcf eval   --params a=0.6,b=-0.15,q=0.5 --x 2,1.5i

``--params`` takes ``a=..,b=..,q=..``; each value is a number, a complex
literal (``0.3+0.3i``) or a real range ``lo:hi:step`` (endpoint included).
Several points are separated by ``;`` or given by repeating the flag; the
grid is the Cartesian product of each point's ranges.  ``--config FILE``
reads the same keys from JSON; flags given on the command line win.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import itertools
import json
import math
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import __version__
from .cfrac import convergents_forward
from .entry12 import (C_limit, Entry12Params, H1_closed, H_limit, K_limit,
                      cf_C_spec, cf_K_spec, entry12_residual, jfrac_H_spec,
                      kc_residual, product_side, recursion_residual,
                      star_residual, theorem1_residual, twostar_residual)
from .errors import VerificationError
from .orthopoly import (RecurrenceCoeffs, X_closed, X_limit,
                        darboux_ratio_check, genfun_Q_check,
                        hatND_genfun_check)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

SUITES = ("entry12", "theorem1", "recursion", "star", "h1", "kc",
          "xclosed", "darboux", "genfun")
LIMIT_SUITES = {"entry12", "h1", "kc", "xclosed", "darboux"}
X_SUITES = {"xclosed", "darboux", "genfun"}
TRACE_SUITES = {"entry12", "kc", "h1", "xclosed"}

LIMIT_TOL = 1e-8
FINITE_TOL = 1e-10

DEFAULT_POINT = (0.6, -0.15, 0.5)  # inside every suite's domain
DEFAULT_X = (2,)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# configuration

@dataclass
class SuiteConfig:
    command: str = "verify"
    suites: tuple = ("entry12",)
    params: list = field(default_factory=lambda: [DEFAULT_POINT])
    x_points: list = field(default_factory=lambda: list(DEFAULT_X))
    eps: float = 1e-13
    max_depth: int = 1000
    out: Optional[str] = None
    exact: bool = False
    tol: Optional[float] = None

    def __post_init__(self):
        if not self.eps > 0:
            raise UsageError("eps must be positive")
        if self.max_depth < 10:
            raise UsageError("max-depth must be >= 10")
        if not self.params:
            raise UsageError("empty parameter grid")
        if not self.x_points:
            raise UsageError("empty x grid")

    def echo(self) -> dict:
        return {"command": self.command, "suites": list(self.suites),
                "params": [_point_json(p) for p in self.params],
                "x": [_num_json(x) for x in self.x_points],
                "eps": self.eps, "max_depth": self.max_depth,
                "exact": self.exact, "tol": self.tol}


@dataclass
class CheckResult:
    suite: str
    params: tuple
    x: object
    residual: object
    tolerance: float
    passed: bool
    depth: int = 0
    diagnostics: list = field(default_factory=list)


_NUM = r"(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?"
_IMAG_RE = re.compile(rf"^(?P<im>[+-]?({_NUM})?)[ij]$")
_COMPLEX_RE = re.compile(rf"^(?P<re>[+-]?{_NUM})(?P<im>[+-]({_NUM})?)[ij]$")


def parse_scalar(tok: str, exact: bool = False):
    """Number from ``3``, ``-0.2``, ``1/3`` (exact), ``1.5i`` or ``0.3+0.4i``."""
    tok = tok.strip()
    if not tok:
        raise UsageError("empty number")
    if tok[-1] in "ij":
        m = _IMAG_RE.match(tok) or _COMPLEX_RE.match(tok)
        if not m:
            raise UsageError(f"malformed complex literal {tok!r}")
        re_part = float(m.group("re")) if "re" in m.groupdict() else 0.0
        im = m.group("im")
        im_part = 1.0 if im in ("", "+") else -1.0 if im == "-" else float(im)
        return complex(re_part, im_part)
    try:
        if exact:
            return Fraction(tok)
        return float(Fraction(tok)) if "/" in tok else float(tok)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed number {tok!r}") from None


def _parse_range(tok: str, exact: bool):
    parts = tok.split(":")
    if len(parts) == 1:
        return [parse_scalar(tok, exact)]
    if len(parts) != 3:
        raise UsageError(f"range must be lo:hi:step, got {tok!r}")
    lo, hi, step = (Fraction(p) for p in _checked_real(parts))
    if step <= 0 or hi < lo:
        raise UsageError(f"bad range {tok!r}")
    n = int((hi - lo) / step)
    vals = [lo + i * step for i in range(n + 1)]
    return vals if exact else [float(v) for v in vals]


def _checked_real(parts):
    for p in parts:
        try:
            Fraction(p)
        except ValueError:
            raise UsageError(f"range endpoints must be real, got {p!r}") from None
    return parts


def parse_params(spec: str, exact: bool = False) -> list:
    """Grid of (a, b, q) triples from ``a=..,b=..,q=..[;...]``."""
    points = []
    for chunk in filter(None, (c.strip() for c in spec.split(";"))):
        vals = {}
        for item in chunk.split(","):
            if "=" not in item:
                raise UsageError(f"expected key=value, got {item!r}")
            key, val = (s.strip() for s in item.split("=", 1))
            if key not in ("a", "b", "q"):
                raise UsageError(f"unknown parameter {key!r}")
            vals[key] = _parse_range(val, exact)
        missing = {"a", "b", "q"} - vals.keys()
        if missing:
            raise UsageError(f"missing parameter(s) {sorted(missing)}")
        points.extend(itertools.product(vals["a"], vals["b"], vals["q"]))
    return points


def parse_x(spec: str) -> list:
    return [parse_scalar(t) for t in spec.split(",") if t.strip()]


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qcf", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name, help_ in (("verify", "run identity suites and write a JSON report"),
                        ("trace", "write a CSV of convergents for one point"),
                        ("eval", "print values of the fractions and closed forms")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--suite", help="suite id, comma list, or 'all'")
        sp.add_argument("--params", action="append",
                        help="a=..,b=..,q=.. (ranges lo:hi:step; ';' separates points)")
        sp.add_argument("--x", help="comma-separated x points, e.g. 2,-2,1.5i")
        sp.add_argument("--eps", type=float)
        sp.add_argument("--max-depth", type=int, dest="max_depth")
        sp.add_argument("--tol", type=float, help="override the per-suite tolerance")
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--exact", action="store_true", default=None,
                        help="parse parameters as exact rationals")
        sp.add_argument("--config", help="JSON file with the same keys")
    return ap


def _parse_suites(spec) -> tuple:
    if isinstance(spec, str):
        spec = [s.strip() for s in spec.split(",") if s.strip()]
    out = []
    for s in spec:
        if s == "all":
            out.extend(SUITES)
        elif s in SUITES:
            out.append(s)
        else:
            raise UsageError(f"unknown suite {s!r}")
    if not out:
        raise UsageError("no suite given")
    return tuple(dict.fromkeys(out))


def parse_config(args: list, config_file: Optional[str] = None) -> SuiteConfig:
    """Resolve command-line tokens (and an optional JSON file) into a config."""
    # let values such as "-2,1.5i" follow --x without being taken for flags
    toks, it = [], iter(args)
    for t in it:
        if t in ("--x", "--params", "--suite"):
            t = f"{t}={next(it, '')}"
        toks.append(t)
    try:
        ns = _parser().parse_args(toks)
    except SystemExit as exc:
        if exc.code == 0:  # --help
            raise
        raise UsageError("invalid arguments") from exc
    file_vals = {}
    path = ns.config or config_file
    if path:
        try:
            with open(path) as fh:
                file_vals = json.load(fh)
        except json.JSONDecodeError as exc:
            raise UsageError(f"config file is not valid JSON: {exc}") from None

    def pick(key, attr=None):
        v = getattr(ns, attr or key)
        return v if v is not None else file_vals.get(key)

    exact = bool(pick("exact"))
    kw = {"command": ns.command, "exact": exact}
    suite = pick("suite")
    if suite is not None:
        kw["suites"] = _parse_suites(suite)
    params = ns.params if ns.params is not None else file_vals.get("params")
    if params is not None:
        if isinstance(params, str):
            params = [params]
        kw["params"] = [pt for s in params for pt in parse_params(s, exact)]
    x = pick("x")
    if x is not None:
        kw["x_points"] = parse_x(x) if isinstance(x, str) else [parse_scalar(str(v)) for v in x]
    for key in ("eps", "max_depth", "out", "tol"):
        v = pick(key)
        if v is not None:
            kw[key] = v
    try:
        kw["eps"] = float(kw.get("eps", 1e-13))
        kw["max_depth"] = int(kw.get("max_depth", 1000))
    except (TypeError, ValueError):
        raise UsageError("eps and max_depth must be numeric") from None
    return SuiteConfig(**kw)


# ---------------------------------------------------------------------------
# running suites

def _float_point(p):
    return tuple(float(v) if isinstance(v, Fraction) else v for v in p)


def _tolerance(suite, cfg):
    if cfg.tol is not None:
        return cfg.tol
    if suite == "star" and cfg.exact:
        return 0
    return LIMIT_TOL if suite in LIMIT_SUITES else FINITE_TOL


def _check(suite, p, x, cfg):
    """(residual, depth, converged, diagnostics) for one suite at one point."""
    eps, depth = cfg.eps, cfg.max_depth
    diag = []
    if suite == "star":
        pt = p if cfg.exact else _float_point(p)
        res = 0
        for k in range(11):
            res = max(res, abs(star_residual(k, pt)))
            for s in range(11):
                res = max(res, abs(twostar_residual(k, s, pt)))
        return res, 10, True, diag
    p = _float_point(p)
    if suite == "entry12":
        res, lim = entry12_residual(p, eps, depth, full_output=True)
        return res, lim.depth, lim.converged, diag
    if suite == "theorem1":
        return max(theorem1_residual(s, p, eps) for s in range(9)), 8, True, diag
    if suite == "recursion":
        return max(recursion_residual(s, p, eps) for s in range(11)), 10, True, diag
    if suite == "h1":
        lim = H_limit(p, 1, eps, depth)
        return float(abs(lim.value - H1_closed(p))), lim.depth, lim.converged, diag
    if suite == "kc":
        K, C = K_limit(p, eps, depth), C_limit(p, eps, depth)
        res = kc_residual(p, eps, depth)
        return res, max(K.depth, C.depth), K.converged and C.converged, diag
    if suite == "xclosed":
        val, delta, used = X_limit(p, x, depth, full_output=True)
        diag.append(f"checkpoint delta {delta:.3g}")
        return float(abs(val - X_closed(p, x))), used, True, diag
    if suite == "darboux":
        d = darboux_ratio_check(p, x, depth)
        diag.append(f"rho_star {_fmt(d.rho_star)}")
        diag.append(f"ratio vs X_closed {d.X_dev:.3g}")
        return max(d.rel_dev, d.rel_dev_star), depth, True, diag
    if suite == "genfun":
        res = max(genfun_Q_check(p, x, 12), genfun_Q_check(p, x, 12, star=True),
                  hatND_genfun_check(p, x, 12))
        return res, 12, True, diag
    raise UsageError(f"unknown suite {suite!r}")


def run_suite(cfg: SuiteConfig) -> list:
    """One :class:`CheckResult` per (suite, point[, x]); errors become failures."""
    results = []
    for suite in cfg.suites:
        tol = _tolerance(suite, cfg)
        xs = cfg.x_points if suite in X_SUITES else [None]
        for p in cfg.params:
            for x in xs:
                try:
                    res, depth, conv, diag = _check(suite, p, x, cfg)
                    passed = bool(conv and res <= tol)
                    if not conv:
                        diag.append(f"not converged within depth {cfg.max_depth}")
                except (VerificationError, ArithmeticError, ValueError) as exc:
                    res, depth, passed = math.nan, 0, False
                    diag = [f"{type(exc).__name__}: {exc}"]
                results.append(CheckResult(suite, tuple(p), x, res, tol, passed, depth, diag))
    return results


# ---------------------------------------------------------------------------
# output

def _fmt(v):
    return repr(complex(v)) if isinstance(v, complex) else repr(v)


def _num_json(v):
    """JSON value for a number: exact zero -> 0, complex -> {re, im}, non-finite -> string."""
    if v is None:
        return None
    if isinstance(v, bool):
        return v
    if isinstance(v, complex):
        if v.imag == 0:
            return _num_json(v.real)
        return {"re": _num_json(v.real), "im": _num_json(v.imag)}
    if v == 0:
        return 0
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else str(v)
    v = float(v)
    return v if math.isfinite(v) else str(v)


def _point_json(p):
    return {k: _num_json(v) for k, v in zip("abq", p)}


def report_dict(results, cfg: Optional[SuiteConfig] = None) -> dict:
    rows = [{"suite": r.suite, "params": _point_json(r.params), "x": _num_json(r.x),
             "residual": _num_json(r.residual), "tolerance": _num_json(r.tolerance),
             "passed": r.passed, "depth": r.depth, "diagnostics": list(r.diagnostics)}
            for r in results]
    npass = sum(r.passed for r in results)
    return {"version": __version__,
            "config_echo": cfg.echo() if cfg is not None else {},
            "results": rows,
            "summary": {"total": len(results), "passed": npass,
                        "failed": len(results) - npass}}


def _write(text: str, path: Optional[str]):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def emit_report(results, path: Optional[str], cfg: Optional[SuiteConfig] = None) -> dict:
    """Write the JSON report (``OSError`` on an unwritable path)."""
    rep = report_dict(results, cfg)
    _write(json.dumps(rep, indent=2, allow_nan=False) + "\n", path)
    return rep


def trace_rows(suite: str, p, depth: int, x=None, eps: float = 1e-15) -> list:
    """``(k, value, abs_err)`` for the first ``depth`` convergents of a suite's fraction."""
    p = _float_point(p)
    if suite == "entry12":
        cf, ref = cf_C_spec(p), product_side(p, eps)
    elif suite == "kc":
        cf, ref = cf_K_spec(p), 1 / (1 / product_side(p, eps) + 1 - Entry12Params(*p).ab)
    elif suite == "h1":
        cf, ref = jfrac_H_spec(p, 1), H1_closed(p, eps)
    elif suite == "xclosed":
        x = DEFAULT_X[0] if x is None else x
        return _x_trace(p, x, depth, X_closed(p, x, eps))
    else:
        raise UsageError(f"suite {suite!r} has no trace; use one of {sorted(TRACE_SUITES)}")
    rows = [(k, v, float(abs(v - ref))) for k, v, _ in convergents_forward(cf, depth)]
    return rows


def _x_trace(p, x, depth, ref):
    rc = RecurrenceCoeffs.from_params(p)
    P0, P1, S0, S1 = 1, x - rc.c, 0, 1
    rows = [(1, S1 / P1, float(abs(S1 / P1 - ref)))]
    for k in range(1, depth):
        lin, beta = x - rc.alpha(k), rc.beta(k)
        P0, P1 = P1, lin * P1 - beta * P0
        S0, S1 = S1, lin * S1 - beta * S0
        m = max(abs(P1), abs(S1))
        if m > 2.0 ** 512 or 0 < m < 2.0 ** -512:
            f = 1 / m
            P0, P1, S0, S1 = P0 * f, P1 * f, S0 * f, S1 * f
        v = S1 / P1 if P1 != 0 else math.inf
        rows.append((k + 1, v, float(abs(v - ref))))
    return rows


def emit_trace(suite: str, p, depth: int, path: Optional[str], x=None) -> list:
    """CSV ``k,value_re,value_im,abs_err``, one row per convergent k = 1..depth."""
    rows = trace_rows(suite, p, depth, x)
    out = sys.stdout if path in (None, "-") else open(path, "w", newline="")
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["k", "value_re", "value_im", "abs_err"])
        for k, v, err in rows:
            v = complex(v)
            w.writerow([k, repr(v.real), repr(v.imag), repr(err)])
    finally:
        if out is not sys.stdout:
            out.close()
    return rows


def eval_values(cfg: SuiteConfig) -> list:
    """Values of C, K, H(1) and X(x) at each configured point."""
    out = []
    for p in cfg.params:
        fp = _float_point(p)
        row = {"params": _point_json(p)}
        for name, fn in (("product_side", lambda: product_side(fp)),
                         ("C", lambda: C_limit(fp, cfg.eps, cfg.max_depth).value),
                         ("K", lambda: K_limit(fp, cfg.eps, cfg.max_depth).value),
                         ("H1_closed", lambda: H1_closed(fp))):
            try:
                row[name] = _num_json(fn())
            except (VerificationError, ArithmeticError, ValueError) as exc:
                row[name] = f"error: {exc}"
        xs = []
        for x in cfg.x_points:
            item = {"x": _num_json(x)}
            try:
                item["X_closed"] = _num_json(X_closed(fp, x))
                item["X_limit"] = _num_json(X_limit(fp, x, cfg.max_depth))
            except (VerificationError, ArithmeticError, ValueError) as exc:
                item["error"] = str(exc)
            xs.append(item)
        row["X"] = xs
        out.append(row)
    return out


def main(argv: Optional[list] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"qcf: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"qcf: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        if cfg.command == "verify":
            results = run_suite(cfg)
            rep = emit_report(results, cfg.out, cfg)
            return EXIT_OK if rep["summary"]["failed"] == 0 else EXIT_FAIL
        if cfg.command == "trace":
            suite = cfg.suites[0]
            if suite not in TRACE_SUITES:
                raise UsageError(f"suite {suite!r} has no trace")
            emit_trace(suite, cfg.params[0], cfg.max_depth, cfg.out, cfg.x_points[0])
            return EXIT_OK
        vals = eval_values(cfg)
        _write(json.dumps(vals, indent=2, allow_nan=False) + "\n", cfg.out)
        return EXIT_OK
    except UsageError as exc:
        print(f"qcf: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"qcf: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except VerificationError as exc:
        # trace has no report to carry the failure, so it goes to stderr
        print(f"qcf: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


__all__ = ["CheckResult", "SuiteConfig", "UsageError", "emit_report", "emit_trace",
           "main", "parse_config", "parse_params", "parse_scalar", "parse_x",
           "report_dict", "run_suite", "trace_rows"]
