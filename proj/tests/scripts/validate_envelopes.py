#!/usr/bin/env python3
"""Runs each CLI command and validates its JSON envelope against the schema.

usage: validate_envelopes.py <ginijel binary> <schema.json> <iris.csv>
"""
import json
import subprocess
import sys

import jsonschema


def main():
    binary, schema_path, iris = sys.argv[1:4]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    cols = ["--input", iris, "--x-col", "sepal_length", "--y-col", "species"]
    runs = [
        ["test", *cols],
        ["test", *cols, "--method", "normal"],
        ["test", *cols, "--method", "permutation", "--reps", "199"],
        ["estimate", *cols, "--path", "brute"],
        ["density", *cols],
        ["simulate", "--scenario", "mix-light", "--n", "20", "40", "--reps", "100", "--seed", "3"],
        ["simulate", "--scenario", "type1-lognormal", "--n", "30", "--reps", "100",
         "--method", "normal"],
    ]
    failures = 0
    for args in runs:
        proc = subprocess.run([binary, *args], capture_output=True, text=True)
        label = " ".join(args[:1] + args[len(cols) + 1:] if args[0] != "simulate" else args)
        if proc.returncode != 0:
            print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        errors = sorted(validator.iter_errors(json.loads(proc.stdout)), key=str)
        if errors:
            failures += 1
            print(f"FAIL {label}: {errors[0].message}")
        else:
            print(f"ok   {label}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
