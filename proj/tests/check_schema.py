"""Runs the CLI on corpus inputs and validates every JSON report against the schema."""

import json
import subprocess
import sys

import jsonschema

tool, schema_path, corpus = sys.argv[1:4]
schema = json.load(open(schema_path))
defs = schema["$defs"]
registry = ["--registry", f"{corpus}/registry.json"]

cases = [
    (["contfrac", "--value", "13/4"], None),
    (["form", "--matrix", "-2,1;1,-3"], None),
    (["plumbing", "--input", f"{corpus}/graphs/e8.json"], None),
    (["seifert", "--brieskorn", "2,3,7"], None),
    (["mubar", "--brieskorn", "2,5,11"], None),
    (["jgamma", "--input", f"{corpus}/graphs/h-tree.json", "--check"], None),
    (["lens-d", "--p", "7", "--q", "3"], None),
    (["delta", "--brieskorn", "2,3,5", "--type", "E", "--j", "inf"], "delta_query"),
    (["delta", "--brieskorn", "2,3,7", "--involution", "m", "--type", "S", "--index", "0,inf"], "delta_query"),
    (["delta", "--example", "fig-2313"], None),
    (["extend", "--example", "obstruct-235-2313"], "extension"),
    (["extend", "--example", "e8"], "extension"),
    (registry + ["embed", "--example", "fig-237"], "embedding"),
    (registry + ["embed", "--brieskorn", "2,3,13", "--involution", "m"], "embedding"),
    (["surface", "--torus", "3,7", "--euler", "-10", "--b1", "3"], "verdict"),
    (["stabilize", "--m", "5"], "verdict"),
    (registry + ["registry"], None),
]

failures = 0
for args, part in cases:
    proc = subprocess.run([tool, "--format", "json", *args], capture_output=True, text=True)
    try:
        report = json.loads(proc.stdout)
        jsonschema.validate(report, schema)
        if report["exit_code"] != proc.returncode:
            raise ValueError(f"exit_code {report['exit_code']} but process returned {proc.returncode}")
        if part:
            jsonschema.validate(report["result"], {"$defs": defs, "$ref": f"#/$defs/{part}"})
        print("ok  ", " ".join(args))
    except Exception as e:  # noqa: BLE001
        failures += 1
        print("FAIL", " ".join(args), "->", e, proc.stderr.strip())
sys.exit(1 if failures else 0)
