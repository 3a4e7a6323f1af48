#!/usr/bin/env python3
"""End-to-end tests of the reeb-index CLI: schemas, exit codes, determinism.

Usage: cli_test.py /path/to/reeb-index
"""
import json
import math
import subprocess
import sys
import tempfile
from pathlib import Path

BIN = Path(sys.argv[1])
FAILURES = []


def run(*args):
    return subprocess.run([str(BIN), *args], capture_output=True, text=True)


def check(label, ok, detail=""):
    print(f"{'ok  ' if ok else 'FAIL'} {label}{(' :: ' + detail) if (detail and not ok) else ''}")
    if not ok:
        FAILURES.append(label)


def main():
    tmp = Path(tempfile.mkdtemp(prefix="reebindex-cli-"))

    def write(name, obj):
        path = tmp / name
        path.write_text(json.dumps(obj))
        return str(path)

    c0 = write("c0.json", {"dim": 3, "normals": [[1, 0, 1], [0, -1, 1], [0, 0, 1], [-1, -1, 1]]})
    sphere2 = write("sphere2.json", {"dim": 3, "normals": [[1, 0, 0], [0, 1, 0], [-1, -1, 1]]})
    line = write("line.json", {"dim": 2, "normals": [[1, 0], [-1, 0]]})
    ones = write("ones.json", {"coefficients": ["1", "1", "1", "1"]})

    # --- hc: the documented C(0) table, deterministic for a fixed seed -----
    r = run("hc", "--input", c0, "--cutoff", "12")
    out = json.loads(r.stdout)
    check("hc C(0) exit 0", r.returncode == 0, r.stdout)
    check("hc C(0) ranks", out["table"]["ranks"] == {"2": 1, "4": 2, "6": 2, "8": 2, "10": 2, "12": 2}, r.stdout)
    check("hc C(0) k_minus/cutoff", out["table"]["k_minus"] == 2 and out["table"]["k_plus"] is None and out["table"]["cutoff"] == 12)

    r2 = run("hc", "--input", c0, "--cutoff", "12")
    check("hc same seed byte-identical", r.stdout == r2.stdout)
    r3 = run("hc", "--input", c0, "--cutoff", "12", "--seed", "9")
    check("hc other seed still same table", json.loads(r3.stdout)["table"] == out["table"])

    r = run("hc", "--input", sphere2, "--cutoff", "14")
    ranks = json.loads(r.stdout)["table"]["ranks"]
    check("hc sphere n=2 ranks", ranks == {str(d): 1 for d in range(4, 15, 2)}, r.stdout)

    # --- degenerate Reeb input is a domain error (exit 1, named) -----------
    r = run("hc", "--input", c0, "--reeb", ones)
    check("hc rational reeb exit 1", r.returncode == 1, r.stdout)
    check("hc rational reeb named", json.loads(r.stdout)["error"] == "DegenerateReebVector", r.stdout)

    # --- check-cone verdicts ------------------------------------------------
    r = run("check-cone", "--input", sphere2)
    out = json.loads(r.stdout)
    check("check-cone good exit 0", r.returncode == 0)
    check("check-cone report", out["good"] and out["pi1_invariant_factors"] == [] and out["face_counts_by_codim"] == {"1": 3, "2": 3}, r.stdout)
    r = run("check-cone", "--input", line)
    check("check-cone bad exit 1", r.returncode == 1)
    check("check-cone bad named", json.loads(r.stdout)["error"] == "NotStrictlyConvex", r.stdout)

    # --- strict parsing: exit 2, nothing executed ---------------------------
    bad = write("bad.json", {"dim": 3, "normals": [[1, 0, 1]], "extra": 1})
    r = run("check-cone", "--input", bad)
    check("unknown key exit 2", r.returncode == 2, r.stdout)
    syntax = tmp / "syntax.json"
    syntax.write_text("{not json")
    r = run("check-cone", "--input", str(syntax))
    check("syntax error exit 2", r.returncode == 2, r.stdout)
    r = run("hc")
    check("missing --input exit 2", r.returncode == 2, r.stderr)
    r = run("hc", "--input", c0, "--format", "yaml")
    check("bad --format exit 2", r.returncode == 2, r.stderr)

    # --- orbit-index against the exact lattice values -----------------------
    r = run("orbit-index", "--input", c0, "--reeb", ones, "--edge", "0", "--iterate", "2")
    out = json.loads(r.stdout)["orbit"]
    check("orbit-index frozen values", out["b"] == "2" and out["c"] == ["1", "0", "0", "1"] and out["mu_rs"] == "8" and out["parity"] == 0, r.stdout)

    # --- index / elliptic-check on a path ----------------------------------
    th = -2 * math.pi * 0.3
    path = write("rot.json", {"n": 1, "samples": [{"t": 0.0, "A": [[th, 0.0], [0.0, th]]}, {"t": 1.0, "A": [[th, 0.0], [0.0, th]]}]})
    r = run("index", "--input", path)
    out = json.loads(r.stdout)["index"]
    check("index report", out["mu_rs"] == "-1" and out["mu_minus"] == -1 and out["mu_plus"] == -1 and out["nullity"] == 0, r.stdout)
    r = run("elliptic-check", "--input", path, "--j", "2")
    out = json.loads(r.stdout)
    check("elliptic-check verdict", r.returncode == 0 and out["verdict"] == "Elliptic" and out["pinned_index"] == -1, r.stdout)
    r = run("bott", "--input", path)
    out = json.loads(r.stdout)
    check("bott breakpoints", len(out["bott"]["breakpoints"]) == 2, r.stdout)

    # --- estimates commands --------------------------------------------------
    indhr = write("indhr.json", {"n": 1, "S": 2 * math.pi * 1.5, "R": 1.0})
    r = run("ind-hr", "--input", indhr)
    check("ind-hr floor branch", json.loads(r.stdout)["ind_hr"] == 6, r.stdout)

    pinch = write("pinch.json", {"n": 2, "r": 1.0, "R": math.sqrt(2.0), "k": 2.0})
    r = run("pinching", "--input", pinch)
    out = json.loads(r.stdout)
    check("pinching boundary", out["bound"] == 10 and out["boundary_case"] is True, r.stdout)
    pinch_bad = write("pinch_bad.json", {"n": 1, "r": 1.0, "R": 2.0, "k": 2.0})
    r = run("pinching", "--input", pinch_bad)
    check("pinching violated exit 1", r.returncode == 1 and json.loads(r.stdout)["error"] == "PinchingViolated", r.stdout)

    # Two independent pipelines, one answer: prequant CP^2 vs toric sphere.
    preq = write("preq.json", {"n": 2, "betti": [1, 0, 1, 0, 1], "mu_phi": 6, "multiples": [1, 2, 3, 4], "degree_range": [0, 14]})
    r = run("prequant-hc", "--input", preq)
    check("prequant-hc equals toric sphere", json.loads(r.stdout)["ranks"] == ranks, r.stdout)

    # --- formats carry identical numbers ------------------------------------
    rj = run("pinching", "--input", pinch, "--format", "json")
    rt = run("pinching", "--input", pinch, "--format", "table")
    tbl = dict(line.split(None, 1) for line in rt.stdout.strip().splitlines())
    same = all(str(json.loads(rj.stdout)[k]).lower() == tbl[k].strip().lower() for k in ("floor_k", "bound", "ind_hr_value", "correction", "boundary_case"))
    check("table and json formats agree", same, rt.stdout)

    print(f"\n{len(FAILURES)} failure(s)")
    return 1 if FAILURES else 0


if __name__ == "__main__":
    sys.exit(main())
