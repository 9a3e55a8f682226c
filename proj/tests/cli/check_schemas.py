"""Validates every --format json output of the empath CLI against docs/schema."""
import json
import pathlib
import subprocess
import sys

import jsonschema
import referencing


def main(binary, scenario_dir, schema_dir):
    scenarios = pathlib.Path(scenario_dir)
    schemas = {p.stem: json.loads(p.read_text()) for p in pathlib.Path(schema_dir).glob("*.json")}
    registry = referencing.Registry().with_resources(
        (s["$id"], referencing.Resource.from_contents(s)) for s in schemas.values())

    def check(schema, instance, label):
        validator = jsonschema.Draft202012Validator(schemas[schema], registry=registry)
        errors = sorted(validator.iter_errors(instance), key=str)
        for e in errors:
            print(f"{label}: {e.json_path}: {e.message}")
        return not errors

    bus = str(scenarios / "bus.eplan")
    wrong = str(scenarios / "wrong_bus.eplan")
    runs = [
        ("plan", [bus, "--all-optimal"]),
        ("empathize", [bus]),
        ("sympathize", [bus]),
        ("compare", [bus]),
        ("compare", [str(scenarios / "grandmother.eplan")]),
        ("recognize", [wrong]),
        ("recognize", [wrong, "--perspective", "observer"]),
        ("check-empathy", [wrong]),
        ("project", [bus]),
        ("validate", [bus, "--plan", "take_crowdedbus_act", "--model", "actor"]),
        ("validate", [bus, "--plan", "inform_obs_act_businfo,take_altbus_act"]),
        ("oracle-check", ["--atoms", "1", "--depth", "1"]),
        ("oracle-check", ["--premise", "(not (B act p))", "--query", "(B act (not p))", "--dump-countermodel"]),
        ("scenarios", ["--dir", str(scenarios)]),
    ]
    ok = True
    for command, args in runs:
        proc = subprocess.run([binary, command, *args, "--format", "json"], capture_output=True, text=True)
        label = " ".join([command, *args])
        if proc.returncode not in (0, 1):
            print(f"{label}: exit {proc.returncode}: {proc.stderr}")
            ok = False
            continue
        ok = check(command, json.loads(proc.stdout), label) and ok
    for golden in sorted(scenarios.glob("*.golden.json")):
        ok = check("golden", json.loads(golden.read_text()), golden.name) and ok
    print("all outputs match their schemas" if ok else "schema violations found")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main(*sys.argv[1:4]))
