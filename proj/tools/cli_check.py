"""Runs a k3map command and checks its exit code and output.

usage: cli_check.py [--exit N] [--contains TEXT] [--json EXPR] [--csv EXPR] -- command...

EXPR is a Python expression over `j` (parsed JSON stdout) or `rows`
(list of dicts from CSV stdout) that must be truthy.
"""
import argparse
import csv
import io
import json
import subprocess
import sys


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--exit", type=int, default=0)
    parser.add_argument("--contains", action="append", default=[])
    parser.add_argument("--json", dest="json_expr")
    parser.add_argument("--csv", dest="csv_expr")
    parser.add_argument("command", nargs=argparse.REMAINDER)
    args = parser.parse_args()
    command = args.command[1:] if args.command[:1] == ["--"] else args.command

    proc = subprocess.run(command, capture_output=True, text=True, check=False)
    sys.stdout.write(proc.stdout[-4000:])
    sys.stderr.write(proc.stderr)
    ok = True
    if proc.returncode != args.exit:
        print(f"FAIL: exit code {proc.returncode}, expected {args.exit}")
        ok = False
    for text in args.contains:
        if text not in proc.stdout + proc.stderr:
            print(f"FAIL: output lacks {text!r}")
            ok = False
    if args.json_expr:
        j = json.loads(proc.stdout)
        if not eval(args.json_expr, {"j": j, "abs": abs, "all": all, "len": len}):
            print(f"FAIL: {args.json_expr}")
            ok = False
    if args.csv_expr:
        rows = list(csv.DictReader(io.StringIO(proc.stdout, newline="")))
        if not eval(args.csv_expr, {"rows": rows, "abs": abs, "all": all, "len": len, "float": float}):
            print(f"FAIL: {args.csv_expr}")
            ok = False
    print("ok" if ok else "failed")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
