"""
Batch verification from the command line
========================================

The ``qcf`` command runs the identity suites over parameter grids and writes
a JSON report (exit code 0 only when every check passes) or a CSV trace of
convergents.  This script drives it through ``python -m qcf``.
"""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

out = Path(tempfile.mkdtemp())


def qcf(*args):
    proc = subprocess.run([sys.executable, "-m", "qcf", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout


code, _ = qcf("verify", "--suite", "entry12,kc,h1",
              "--params", "a=0.2:0.6:0.2,b=-0.5:-0.1:0.2,q=0.2;a=0.25,b=-0.2,q=0.3+0.3i",
              "--out", str(out / "report.json"))
rep = json.loads((out / "report.json").read_text())
print("exit", code, rep["summary"])

# exact rational mode: residuals are rendered as 0
code, text = qcf("verify", "--suite", "star", "--exact", "--params", "a=1/3,b=-1/4,q=1/5")
print("exact:", [r["residual"] for r in json.loads(text)["results"]])

# a point outside |ab| < 1 is a failed check, not a crash
code, text = qcf("verify", "--params", "a=2,b=-1.5,q=0.5")
print("exit", code, json.loads(text)["results"][0]["diagnostics"])

code, text = qcf("trace", "--suite", "entry12", "--max-depth", "10")
print(text)
