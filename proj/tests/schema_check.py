"""Run a qzeros command and validate its JSON output against a schema file.

usage: schema_check.py SCHEMA -- COMMAND [ARGS...]
"""
import json
import subprocess
import sys

import jsonschema


def main(argv):
    if len(argv) < 4 or argv[2] != "--":
        print(__doc__, file=sys.stderr)
        return 64
    with open(argv[1]) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    proc = subprocess.run(argv[3:], capture_output=True, text=True)
    if proc.returncode not in (0, 1):
        print(proc.stderr, file=sys.stderr)
        print(f"command exited {proc.returncode}", file=sys.stderr)
        return 1
    doc = json.loads(proc.stdout)
    errors = sorted(jsonschema.Draft202012Validator(schema).iter_errors(doc), key=lambda e: list(e.path))
    for e in errors:
        print(f"{list(e.path)}: {e.message}", file=sys.stderr)
    return 1 if errors else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
