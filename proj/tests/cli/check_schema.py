#!/usr/bin/env python3
"""Checks schemas/run_config.schema.json against the CLI validator.

Every built-in scenario must satisfy the schema. Each mutated config below
must be rejected by both the schema and the CLI (exit 2).
"""
import copy
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

cli, schema_path, fixtures = sys.argv[1], sys.argv[2], pathlib.Path(sys.argv[3])
schema = json.loads(pathlib.Path(schema_path).read_text())
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)
failures = []

catalog = json.loads(subprocess.run([cli, "scenarios", "--json"], check=True, capture_output=True, text=True).stdout)
for s in catalog:
    errs = list(validator.iter_errors(s["config"]))
    if errs:
        failures.append(f"scenario {s['name']}: {errs[0].message}")

for f in ["cg_starved.json", "tight_limit.json"]:
    errs = list(validator.iter_errors(json.loads((fixtures / f).read_text())))
    if errs:
        failures.append(f"fixture {f}: {errs[0].message}")

by_name = {s["name"]: s["config"] for s in catalog}


def mutate(name, fn):
    c = copy.deepcopy(by_name[name])
    fn(c)
    return c


def set_path(keys, value):
    def fn(c):
        for k in keys[:-1]:
            c = c[k]
        c[keys[-1]] = value
    return fn


def delete(keys):
    def fn(c):
        for k in keys[:-1]:
            c = c[k]
        del c[keys[-1]]
    return fn


bad = {
    "unknown top-level field": mutate("ring-calibration", set_path(["extra"], 1)),
    "missing schema_version": mutate("ring-calibration", delete(["schema_version"])),
    "schema_version 2": mutate("ring-calibration", set_path(["schema_version"], 2)),
    "unknown command": mutate("ring-calibration", set_path(["command"], "plot")),
    "name on a non-inequality": mutate("ring-calibration", set_path(["name"], "eq11")),
    "inequality without name": mutate("eq11-example", delete(["name"])),
    "unknown inequality": mutate("eq11-example", set_path(["name"], "thm9")),
    "ring r >= 1": mutate("ring-calibration", set_path(["params", "r"], 1.0)),
    "negative radius": mutate("reduced-module-two-plates", set_path(["params", "domain", "radius"], -1.0)),
    "unknown domain type": mutate("reduced-module-two-plates", set_path(["params", "domain", "type"], "annulus")),
    "unknown domain field": mutate("reduced-module-two-plates", set_path(["params", "domain", "radius2"], 1.0)),
    "zero delta": mutate("reduced-module-two-plates", set_path(["params", "plates", 0, "delta"], 0.0)),
    "string point other than inf": mutate("reduced-module-two-plates", set_path(["params", "plates", 0, "center"], "zero")),
    "empty plates": mutate("reduced-module-two-plates", set_path(["params", "plates"], [])),
    "domain and components": mutate("reduced-module-two-plates", set_path(["params", "components"], [{"type": "disk", "center": [0, 0], "radius": 1}])),
    "eq11 both ray forms": mutate("eq11-example", set_path(["params", "roots_of_unity"], 3)),
    "eq11 no ray form": mutate("eq11-example", delete(["params", "moduli"])),
    "eq11 zero modulus": mutate("eq11-example", set_path(["params", "moduli", 0], 0.0)),
    "thm4 extremal without n": mutate("thm4-extremal-n2", delete(["params", "n"])),
    "thm4 non-extremal without domains": mutate("thm4-extremal-n2", set_path(["params", "extremal"], False)),
    "thm8 bad mode": mutate("thm8-extremal-n1", set_path(["params", "mode"], "area")),
    "mobius function without coefficients": mutate("thm7-identity-n1", set_path(["params", "function", "type"], "mobius")),
    "haliste directions and n": mutate("haliste-sweep-n2", set_path(["params", "directions"], [0.0, 3.0])),
    "haliste interval above 1": mutate("haliste-sweep-n2", set_path(["params", "k"], [[0.5, 1.5]])),
    "sweep unknown check": mutate("random-sweep", set_path(["params", "checks"], ["eq12"])),
    "seed negative": mutate("random-sweep", set_path(["seed"], -1)),
    "unknown output format": mutate("ring-calibration", set_path(["output"], {"formats": ["xml"]})),
    "square shape negative kappa": mutate("lemma1-square-plates", set_path(["params", "shape", "kappa"], -1.0)),
    "sector opening above 2 pi": mutate("lemma2-symmetric", set_path(["params", "domain"], {"type": "sector", "vertex": [0, 0], "bisector_angle": 0, "opening": 7.0})),
}

with tempfile.TemporaryDirectory() as tmp:
    for label, config in bad.items():
        if validator.is_valid(config):
            failures.append(f"schema accepts: {label}")
        if "name" not in config and config.get("command") == "inequality":
            continue  # the CLI always supplies the name from its positional argument
        path = pathlib.Path(tmp) / "config.json"
        path.write_text(json.dumps(config))
        command = config.get("command") if config.get("command") in {
            "module", "reduced-module", "asymptotics", "inequality", "haliste", "calibrate", "sweep"} else "calibrate"
        argv = [cli, command]
        if command == "inequality":
            argv.append(config["name"])
        argv += ["--config", str(path)]
        rc = subprocess.run(argv, capture_output=True, text=True).returncode
        if rc != 2:
            failures.append(f"CLI exit {rc} (expected 2): {label}")

for f in failures:
    print("FAIL", f)
print(f"{len(catalog)} scenarios, {len(bad)} rejected configs, {len(failures)} failures")
sys.exit(1 if failures else 0)
