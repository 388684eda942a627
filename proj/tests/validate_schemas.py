"""Run the CLI over a spread of subcommands and validate every document it
emits against docs/schemas.

usage: validate_schemas.py <ffvar binary> <schema dir> <work dir>
"""

import json
import pathlib
import shutil
import subprocess
import sys

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

COMMANDS = [
    ["irr", "--q", "4", "--n", "3"],
    ["irr", "--q", "3", "--Q", "T^3-T"],
    ["lambda-sum", "--q", "9", "--n", "2"],
    ["chars", "--q", "3", "--Q", "T^2", "--index", "1"],
    ["chars", "--p", "3", "--k", "2", "--modulus", "T^2+1", "--Q", "T^2"],
    ["lfun", "--q", "5", "--Q", "T^3", "--index", "3", "--n", "2"],
    ["lfun", "--q", "3", "--Q", "T^2-1", "--index", "1"],
    ["lfun", "--q", "3", "--Q", "T^2+1", "--n", "2"],
    ["var-si", "--q", "3", "--n", "4", "--h", "1", "--method", "both"],
    ["var-si", "--q", "4", "--n", "4", "--h", "1", "--method", "direct"],
    ["var-ap", "--q", "5", "--Q", "T^3+T+1", "--n", "2", "--trace", "--A", "T+1"],
    ["var-ap", "--q", "3", "--Q", "T^2", "--n", "3"],
    ["rmt", "--N", "3", "--n", "2", "--samples", "500", "--pu"],
    ["hl-psi2", "--q", "3", "--n", "2", "--K", "1"],
    ["hl-sing", "--q", "5", "--K", "T", "--D", "4"],
    ["hl-sing", "--q", "2", "--K", "1"],
    ["hl-jsum", "--q", "5", "--Q", "T", "--j", "2"],
    ["hl-jsum", "--q", "2", "--Q", "T", "--j", "1"],
    ["hl-g", "--q", "5", "--Q", "T^2", "--n", "3", "--D", "4"],
    ["cache", "stat"],
    ["cache", "verify"],
]


def load_registry(schema_dir):
    resources = {}
    for path in sorted(schema_dir.glob("*.schema.json")):
        doc = json.loads(path.read_text())
        Draft202012Validator.check_schema(doc)
        resources[path.name] = doc
    registry = Registry().with_resources(
        (doc["$id"], Resource.from_contents(doc)) for doc in resources.values()
    )
    return resources, registry


def validator(resources, registry, name, pointer=None):
    schema = resources[name]
    if pointer is not None:
        schema = {"$ref": schema["$id"] + "#/$defs/" + pointer}
    return Draft202012Validator(schema, registry=registry)


def main():
    cli, schema_dir, work = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    shutil.rmtree(work, ignore_errors=True)
    cache = work / "cache"
    cache.mkdir(parents=True)
    resources, registry = load_registry(schema_dir)
    envelope = validator(resources, registry, "envelope.schema.json")
    failures = []

    def check(v, doc, label):
        errors = sorted(v.iter_errors(doc), key=lambda e: list(e.path))
        for e in errors:
            failures.append(f"{label}: {'/'.join(map(str, e.path))}: {e.message}")
        return not errors

    def run(args):
        proc = subprocess.run([cli, *args, "--cache-dir", str(cache)], capture_output=True, text=True, cwd=work)
        if proc.returncode != 0:
            failures.append(f"{' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
            return None
        return proc.stdout

    for args in COMMANDS:
        out = run(args)
        if out is None:
            continue
        doc = json.loads(out)
        label = " ".join(args)
        check(envelope, doc, label + " [envelope]")
        check(validator(resources, registry, "payloads.schema.json", doc["command"]), doc["payload"], label)

    records = sorted(cache.glob("unitgroup_*.json"))
    if not records:
        failures.append("no cache files were written")
    record_v = validator(resources, registry, "unitgroup-cache.schema.json")
    for path in records:
        check(record_v, json.loads(path.read_text()), path.name)

    spec_v = validator(resources, registry, "sweep-spec.schema.json")
    sweep_v = validator(resources, registry, "payloads.schema.json", "sweep")
    for spec in sorted((pathlib.Path(__file__).parent / "fixtures" / "sweeps").glob("*.json")):
        content = json.loads(spec.read_text())
        check(spec_v, content, spec.name)
        if content.get("format", "json") != "json":
            content["format"] = "json"
            spec = work / spec.name
            spec.write_text(json.dumps(content))
        out = run(["sweep", "--spec", str(spec)])
        if out is None:
            continue
        doc = json.loads(out)
        check(envelope, doc, spec.name + " [envelope]")
        check(sweep_v, doc["payload"], spec.name)

    checked = len(COMMANDS) + len(records)
    for f in failures:
        print("FAIL", f)
    print(f"validated {checked} documents plus sweep fixtures; {len(failures)} problems")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
