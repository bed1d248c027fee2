#!/usr/bin/env python3
"""Runs the locdec CLI on representative configs, validates every report
against the published schema and checks exit codes and reproducibility."""
import json
import os
import subprocess
import sys
import tempfile

import jsonschema

binary, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)
validator = jsonschema.Draft202012Validator(schema)

failures = []


def run(args, env=None):
    full_env = dict(os.environ)
    full_env.pop("LOCDEC_SEED", None)
    full_env.update(env or {})
    return subprocess.run([binary] + args, capture_output=True, text=True, env=full_env)


def check(name, args, code=0, expect=None, env=None):
    first = run(args, env)
    if first.returncode != code:
        failures.append(f"{name}: exit {first.returncode}, wanted {code}: {first.stderr.strip()}")
        return None
    if code == 2:
        return None
    report = json.loads(first.stdout)
    errors = sorted(validator.iter_errors(report), key=lambda e: e.path)
    for e in errors[:3]:
        failures.append(f"{name}: schema: {list(e.path)}: {e.message[:200]}")
    second = run(args, env)
    if second.stdout != first.stdout:
        failures.append(f"{name}: output differs between identical runs")
    if expect is not None:
        try:
            problem = expect(report)
        except Exception as exc:  # report shape surprises count as failures
            problem = f"{type(exc).__name__}: {exc}"
        if problem:
            failures.append(f"{name}: {problem}")
    return report


def near(a, b, tol=1e-9):
    return abs(a - b) <= tol


check("amos-verify k=2", ["amos-verify", "--k", "2", "--p", "0.64", "--max-n", "8"],
      expect=lambda r: None if (near(r["measured"]["pHat"], 0.64)
                                and near(r["measured"]["qHat"], 0.488)
                                and r["class"] == "B_3") else "wrong (p,q) or class")
check("amos-verify boundary", ["amos-verify", "--k", "1", "--p", "1"],
      expect=lambda r: None if r["class"] == "none" else "p=1 should land in no class")
check("amos-verify failing claim",
      ["amos-verify", "--language", "amos:k=1", "--decider", "fixed-id-rejector:id=1",
       "--max-n", "4"], code=1)
check("amos-verify malformed", ["amos-verify", "--language", "amos:k", "--decider", "always-yes"],
      code=2)
check("separation k=2", ["separation", "--k", "2", "--p", "0.64", "--eps", "0.1"],
      expect=lambda r: None if (near(r["diagnostic"]["rho"], 0.8)
                                and r["contradiction"]) else "contradiction not reproduced")
check("separation rational",
      ["separation", "--rational", "0.6,0.7", "--p", "0.5", "--eps", "0.05"],
      expect=lambda r: None if (r["pair"]["a"], r["pair"]["b"]) == (2, 3) else "wrong a/b")
check("separation k=0", ["separation", "--k", "0"], code=2)
check("secure-scan separation", ["secure-scan", "--k", "2", "--p", "0.64", "--eps", "0.1"],
      expect=lambda r: None if all(s["witness"] for s in r["scans"]) else "segment without witness")
check("secure-scan monte carlo",
      ["secure-scan", "--decider", "coin:p=0.9", "--input", "0,0,0,0,0,0,0",
       "--delta", "0.2", "--mode", "mc", "--trials", "2000", "--seed", "5"])
check("secure-scan env seed",
      ["secure-scan", "--decider", "coin:p=0.9", "--input", "0,0,0,0,0", "--delta", "0.2",
       "--trials", "100"], env={"LOCDEC_SEED": "41"},
      expect=lambda r: None if r["seed"] == 41 else "env seed ignored")
check("secure-scan bad region",
      ["secure-scan", "--decider", "coin:p=0.9", "--input", "0,0,0", "--delta", "0.2",
       "--region", "1:2"], code=2)
check("tree-cycle", ["tree-cycle", "--p", "0.9", "--q", "0.9", "--t", "0"],
      expect=lambda r: None if (r["setup"]["n"] == 6 and r["viewEquality"]["S"]
                                and r["viewEquality"]["SPrime"]) else "wrong setup or views")
check("tree-cycle t=2", ["tree-cycle", "--p", "0.95", "--q", "0.6", "--t", "2",
                         "--trials", "3000", "--seed", "9"])
check("derandomize reject",
      ["derandomize", "--language", "amos:k=1", "--input", "⊗,1,0,1,⊗", "--radius", "2"],
      expect=lambda r: None if r["result"] == "reject" else "should reject")
check("derandomize accept",
      ["derandomize", "--language", "amos:k=1", "--input", "⊗,0,1,0,⊗", "--radius", "2",
       "--oracle", "brute"],
      expect=lambda r: None if r["result"] == "accept" else "should accept")
check("derandomize missing radius",
      ["derandomize", "--language", "amos:k=1", "--input", "0,1"], code=2)
check("unknown subcommand", ["frobnicate"], code=2)

with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as cfg:
    json.dump({"k": 3, "p": 0.5, "max-n": 6}, cfg)
check("config overrides flags",
      ["--config", cfg.name, "amos-verify", "--k", "2", "--p", "0.64"],
      expect=lambda r: None if (r["language"] == "amos:k=3" and r["maxN"] == 6)
      else "config did not override flags")
os.unlink(cfg.name)

csv = run(["derandomize", "--language", "amos:k=1", "--input", "⊗,1,⊗", "--radius", "1",
           "--csv"])
if csv.returncode != 0 or not csv.stdout.startswith("key,value\n") or "result,accept" not in csv.stdout:
    failures.append("csv flattening: unexpected output")

for f in failures:
    print("FAIL", f)
print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
