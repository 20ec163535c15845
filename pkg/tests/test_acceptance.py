"""Acceptance criteria 1-10, one test each.

Each test records a one-line verdict; the lines are printed in the terminal
summary (see conftest.py), or directly when this file is run as a script.
"""

import json
import shutil
import subprocess
import sys

import pytest

from parahall import verify

RESULTS: dict[int, str] = {}


def _record(k, title, ok, note=""):
    RESULTS[k] = f"criterion {k:2d} {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({note})" if note else "")


@pytest.mark.parametrize("k", sorted(verify.CRITERIA))
def test_criterion(k):
    r = verify.run_criterion(k)
    failed = sorted(name for name, ok in r["checks"].items() if not ok)
    _record(k, r["title"], r["pass"], "failed: " + "; ".join(failed) if failed else f"checks={len(r['checks'])}")
    assert r["pass"], failed


def _verify_all_command():
    exe = shutil.which("parahall")
    base = [exe] if exe else [sys.executable, "-m", "parahall.cli"]
    return base + ["verify-all", "--level", "desk"]


def test_criterion_10_cli_runs_everything_deterministically():
    runs = [subprocess.run(_verify_all_command(), capture_output=True, timeout=1800) for _ in range(2)]
    codes = [r.returncode for r in runs]
    same = runs[0].stdout == runs[1].stdout
    report = json.loads(runs[0].stdout)
    covered = [c["criterion"] for c in report["criteria"]]
    ok = codes == [0, 0] and same and covered == list(range(1, 10)) and report["pass"]
    _record(10, "verify-all --level desk exits 0, byte-identical twice", ok, f"exit codes {codes}, identical={same}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
