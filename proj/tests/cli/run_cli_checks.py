#!/usr/bin/env python3
"""Exercises the mofs CLI surface: subcommands, exit codes, report schemas."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

MOFS = None
FAILURES = []


def run(*args):
    return subprocess.run([MOFS, *args], capture_output=True, text=True)


def check(name, condition, detail=""):
    status = "ok" if condition else "FAIL"
    print(f"  [{status}] {name}" + (f" ({detail})" if detail and not condition else ""))
    if not condition:
        FAILURES.append(name)


def main():
    global MOFS
    MOFS = sys.argv[1]
    tmp = Path(tempfile.mkdtemp(prefix="mofs_cli_"))
    data = tmp / "train.csv"
    out = tmp / "out.json"

    r = run("datagen", "--samples", "60", "--informative", "2", "--redundant", "1",
            "--noise", "3", "--delta", "3", "--rho", "0.5", "--seed", "4",
            "--out", str(data))
    check("datagen exits 0", r.returncode == 0, r.stderr)
    header = data.read_text().splitlines()[0]
    check("datagen header", header == "f0,f1,f2,f3,f4,f5,label", header)

    cfg = tmp / "cfg.json"
    cfg.write_text('{"population_size": 10, "max_generations": 6}')
    r = run("run", "--data", str(data), "--label-col", "label", "--config", str(cfg),
            "--seed", "3", "--out", str(out))
    check("run exits 0", r.returncode == 0, r.stderr)
    report = json.loads(out.read_text())
    check("run report keys",
          list(report) == ["run_id", "seed", "config", "generations_run", "terminated_by",
                           "dissimilarity_trace", "pareto_front", "selected", "confusion"],
          str(list(report)))
    check("run config echoes seed", report["seed"] == 3)

    out2 = tmp / "out2.json"
    r = run("run", "--data", str(data), "--label-col", "label", "--config", str(cfg),
            "--seed", "3", "--out", str(out2))
    check("repeat run exits 0", r.returncode == 0, r.stderr)
    check("reports byte-identical", out.read_bytes() == out2.read_bytes())

    test_csv = tmp / "test.csv"
    run("datagen", "--samples", "40", "--informative", "2", "--redundant", "1",
        "--noise", "3", "--delta", "3", "--rho", "0.5", "--seed", "11",
        "--out", str(test_csv))
    held = tmp / "held.json"
    r = run("run", "--data", str(data), "--label-col", "label", "--test", str(test_csv),
            "--config", str(cfg), "--seed", "3", "--out", str(held))
    check("held-out run exits 0", r.returncode == 0, r.stderr)
    cm = json.loads(held.read_text())["confusion"]
    check("held-out confusion covers the test set",
          cm["tp"] + cm["fp"] + cm["tn"] + cm["fn"] == 40, str(cm))

    rep = tmp / "rep.json"
    r = run("run", "--data", str(data), "--label-col", "label", "--config", str(cfg),
            "--seed", "3", "--repeats", "3", "--out", str(rep))
    check("repeats exit 0", r.returncode == 0, r.stderr)
    agg = json.loads(rep.read_text())
    check("repeats report", len(agg["runs"]) == 3 and "aggregate" in agg
          and set(agg["aggregate"]) == {"sen", "spe", "auc", "acc"})

    bad_cfg = tmp / "bad.json"
    bad_cfg.write_text('{"not_a_key": 1}')
    r = run("run", "--data", str(data), "--label-col", "label", "--config", str(bad_cfg),
            "--out", str(out))
    check("unknown config key exits 2", r.returncode == 2, str(r.returncode))

    r = run("run", "--data", str(tmp / "missing.csv"), "--label-col", "label",
            "--out", str(out))
    check("missing data exits 3", r.returncode == 3, str(r.returncode))

    bad_data = tmp / "bad.csv"
    bad_data.write_text("f1,label\n1,2\n3,0\n")
    r = run("run", "--data", str(bad_data), "--label-col", "label", "--out", str(out))
    check("non-binary label exits 3", r.returncode == 3, str(r.returncode))

    r = run("run", "--data", str(data), "--out", str(out))
    check("missing required flag exits 2", r.returncode == 2, str(r.returncode))

    for method in ("sfs", "relief"):
        bout = tmp / f"baseline_{method}.json"
        r = run("baseline", "--method", method, "--data", str(data), "--label-col",
                "label", "--seed", "5", "--out", str(bout))
        check(f"baseline {method} exits 0", r.returncode == 0, r.stderr)
        doc = json.loads(bout.read_text())
        check(f"baseline {method} schema",
              doc["method"] == method and "selected" in doc and "confusion" in doc
              and set(doc["selected"]) == {"mask", "feature_indices", "metrics"})
        if method == "relief":
            check("relief carries the ranking",
                  len(doc["ranking"]["order"]) == 6 and len(doc["ranking"]["weights"]) == 6)
    r = run("baseline", "--method", "nope", "--data", str(data), "--label-col", "label",
            "--out", str(out))
    check("unknown baseline exits 2", r.returncode == 2, str(r.returncode))

    for param, rows in (("weights", 4), ("refpoints", 7)):
        sout = tmp / f"sweep_{param}.json"
        r = run("sweep", "--param", param, "--data", str(data), "--label-col", "label",
                "--seed", "2", "--out", str(sout))
        check(f"sweep {param} exits 0", r.returncode == 0, r.stderr)
        doc = json.loads(sout.read_text())
        check(f"sweep {param} rows", len(doc["rows"]) == rows, str(len(doc["rows"])))
    r = run("sweep", "--param", "nope", "--data", str(data), "--label-col", "label",
            "--out", str(out))
    check("unknown sweep param exits 2", r.returncode == 2, str(r.returncode))

    if FAILURES:
        print(f"{len(FAILURES)} CLI check(s) failed: {FAILURES}")
        return 1
    print("all CLI checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
