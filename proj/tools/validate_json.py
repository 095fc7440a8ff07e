"""Runs a k3map command and validates its stdout against the JSON schema."""
import json
import subprocess
import sys

import jsonschema


def main() -> int:
    schema_path, *command = sys.argv[1:]
    with open(schema_path, encoding="utf-8") as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    proc = subprocess.run(command, capture_output=True, text=True, check=False)
    if proc.returncode not in (0, 4):
        sys.stderr.write(proc.stderr)
        print(f"command exited with {proc.returncode}")
        return 1
    jsonschema.Draft202012Validator(schema).validate(json.loads(proc.stdout))
    print("valid")
    return 0


if __name__ == "__main__":
    sys.exit(main())
