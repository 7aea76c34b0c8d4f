#!/usr/bin/env python3
"""Runs the CLI, validates every JSON report against the shipped schemas and
checks exit codes. usage: cli_reports_test.py <cli> <data-dir> <schema-dir>"""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

cli, data, schemas = sys.argv[1:4]


def load(name):
    with open(os.path.join(schemas, name)) as f:
        return json.load(f)


report_schema = load("run_report.schema.json")
bundle_schema = load("violation_bundle.schema.json")
registry = Registry().with_resources(
    [(s["$id"], Resource.from_contents(s)) for s in (report_schema, bundle_schema)]
)
report_validator = jsonschema.Draft202012Validator(report_schema, registry=registry)
bundle_validator = jsonschema.Draft202012Validator(bundle_schema, registry=registry)

failures = []


def d(name):
    return os.path.join(data, name)


def run(args, expect_code, parse=True):
    p = subprocess.run([cli] + args, capture_output=True, text=True)
    label = " ".join(args)
    if p.returncode != expect_code:
        failures.append(f"{label}: exit {p.returncode}, expected {expect_code}\n{p.stderr}")
    if not parse:
        return None
    try:
        rep = json.loads(p.stdout)
    except json.JSONDecodeError as e:
        failures.append(f"{label}: stdout is not JSON ({e})")
        return None
    errs = list(report_validator.iter_errors(rep))
    if errs:
        failures.append(f"{label}: schema: {errs[0].message}")
    if rep.get("exit_code") != p.returncode:
        failures.append(f"{label}: report exit_code {rep.get('exit_code')} != {p.returncode}")
    return rep


ok = [
    ["--json", "spectrum", d("e21.json")],
    ["--json", "spectrum", d("normal3.txt")],
    ["--json", "bounds", d("example3.json")],
    ["--json", "bounds", d("traceless_diag2.json")],
    ["--json", "closed-form", d("normal3.txt")],
    ["--json", "closed-form", d("rank_one3.json")],
    ["--json", "closed-form", d("e21.json")],
    ["--json", "check", "conj2", d("pair_x.json"), d("pair_y.json")],
    ["--json", "check", "conj2c", d("pair_x.json"), d("pair_y.json")],
    ["--json", "check", "conj2a", d("example3.json"), "--k", "2"],
    ["--json", "check", "conj4", d("rank_one3.json")],
    ["--json", "check", "numbers", d("numbers_saturating.json")],
    ["--json", "check", "lu", d("lu_two_point.json")],
    ["--json", "check", "lu", d("lu_two_point.json"), "--weighted"],
    ["--json", "check", "isotropic", d("example3.json"), "--k", "2"],
    ["--json", "check", "crosscheck", d("example3.json"), "--k", "2"],
    ["--json", "--seed", "1", "search", "--n", "2", "--k", "1"],
    ["--json", "--seed", "1", "search", "--objective", "lambda13", "--n", "3", "--restarts", "4"],
    ["--json", "--seed", "1", "search", "--sweep", "--n-min", "2", "--n-max", "3", "--trials", "20"],
    ["--json", "verify-paper-example"],
]
for args in ok:
    run(args, 0)

spec = run(["--json", "spectrum", d("e21.json")], 0)
if spec and [round(v, 9) for v in spec["spectrum"]["values"]] != [2, 2, 0, 0]:
    failures.append(f"E21 spectrum {spec['spectrum']['values']}")

# --timing adds the field, the default run omits it
timed = run(["--json", "--timing", "spectrum", d("e21.json")], 0)
if timed is not None and "timing_seconds" not in timed:
    failures.append("--timing: no timing_seconds")
if spec is not None and "timing_seconds" in spec:
    failures.append("timing_seconds present without --timing")

# hypotheses fail on the sl2 triple: exit 2, bundle embedded in the verdict
with tempfile.TemporaryDirectory() as tmp:
    bundle_path = os.path.join(tmp, "bundle.json")
    out_path = os.path.join(tmp, "report.json")
    rep = run(["--json", "--out", out_path, "check", "conj1", d("sl2_e12.json"), d("sl2_e21.json"),
               d("sl2_h.json"), "--bundle-out", bundle_path], 2)
    if rep is not None:
        v = rep["verdicts"][0]
        if v["satisfied"] or v["hypotheses_ok"]:
            failures.append("sl2 conj1: expected unsatisfied with failing hypotheses")
        if "bundle" not in v:
            failures.append("sl2 conj1: no embedded bundle")
        else:
            bundle_validator.validate(v["bundle"])
        with open(out_path) as f:
            if json.load(f) != rep:
                failures.append("--out report differs from stdout")
    with open(bundle_path) as f:
        bundle = json.load(f)
    errs = list(bundle_validator.iter_errors(bundle))
    if errs:
        failures.append(f"bundle schema: {errs[0].message}")
    rv = run(["--json", "reverify", bundle_path], 2)
    if rv is not None and rv["verdicts"][0]["lhs"] != bundle["lhs"]:
        failures.append("reverify lhs drifted")

    # corrupted inputs are input errors
    bad = os.path.join(tmp, "bad.txt")
    for text in ["1 2\n3\n", "1 nan\n0 1\n", "1 2ii\n0 1\n", ""]:
        with open(bad, "w") as f:
            f.write(text)
        run(["spectrum", bad], 2, parse=False)
    with open(bad, "w") as f:
        f.write('{"n": 2, "re": [[1, 0], [0]]}')
    run(["spectrum", bad], 2, parse=False)

run(["spectrum", d("does_not_exist.json")], 2, parse=False)
run(["--json", "search", "--n", "2", "--k", "3"], 2, parse=False)
run(["check", "conj2", d("pair_x.json"), d("example3.json")], 2, parse=False)
run(["--json", "spectrum"], 2, parse=False)
# a tolerance nobody can meet: numerical mismatch
run(["--json", "--tol", "1e-12", "verify-paper-example"], 3)
run(["--version"], 0, parse=False)

for f in failures:
    print("FAIL:", f)
print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
