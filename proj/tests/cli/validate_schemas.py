#!/usr/bin/env python3
"""Validate CLI JSON output against the shipped schemas.

usage: validate_schemas.py CLI SCHEMA_DIR GOLDEN_DIR
"""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

GOLDEN_PREFIXES = [
    ("analyze_", "analyze"),
    ("rank_ip4", "rank"),
    ("pdt_build_", "tree"),
    ("pdt_check_", "check"),
    ("cert_", "cert"),
    ("comm_rank_", "comm_rank"),
    ("comm_sim_", "comm_sim"),
    ("verify_", "verify"),
]

FUNCTIONS = [
    "anf:2:x1*x2",
    "tt:1:2",
    "anf:3:1",
    "anf:3:0",
    "anf:4:x1*x2+x3*x4",
    "family:majority(n=5)",
    "family:parity(n=4,s=1010)",
    "family:symmetric(n=4,v=01101)",
    "family:affine_indicator(n=4,c=1100=1;0011=0)",
    "family:random_poly(n=6,d=4,seed=3)",
    "family:bent_ip(k=6)",
]
STRATEGIES = ["greedy-l1", "heavy-hitter", "span-query", "degree-reduce"]


def load_schemas(schema_dir):
    out = {}
    for path in sorted(pathlib.Path(schema_dir).glob("*.schema.json")):
        schema = json.loads(path.read_text())
        jsonschema.Draft202012Validator.check_schema(schema)
        out[path.name.removesuffix(".schema.json")] = jsonschema.Draft202012Validator(schema)
    return out


def main():
    cli, schema_dir, golden_dir = sys.argv[1:4]
    validators = load_schemas(schema_dir)
    failures = []
    checked = 0

    def check(kind, text, origin):
        nonlocal checked
        checked += 1
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as err:
            failures.append(f"{origin}: not JSON ({err})")
            return
        errors = sorted(validators[kind].iter_errors(doc), key=str)
        if errors:
            failures.append(f"{origin}: {errors[0].message}")

    for path in sorted(pathlib.Path(golden_dir).glob("*.out")):
        for prefix, kind in GOLDEN_PREFIXES:
            if path.name.startswith(prefix) and path.stat().st_size > 0:
                check(kind, path.read_text(), path.name)
                break

    def run(*args, ok=(0, 1)):
        proc = subprocess.run([cli, *args], capture_output=True, text=True, check=False)
        if proc.returncode not in ok:
            failures.append(f"{' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
            return None
        return proc.stdout

    with tempfile.TemporaryDirectory() as tmp:
        for fn in FUNCTIONS:
            n = int(fn.split(":")[1]) if fn.startswith(("tt:", "anf:")) else None
            for kind, args in [("analyze", ["analyze", fn]), ("verify", ["verify", fn]),
                               ("comm_rank", ["comm", "rank", fn])]:
                out = run(*args)
                if out is not None:
                    check(kind, out, " ".join(args))
            constant = fn in ("anf:3:1", "anf:3:0")
            if not constant:
                for method in ("greedy", "norm-halving"):
                    out = run("cert", fn, "--method", method)
                    if out is not None:
                        check("cert", out, f"cert {fn} {method}")
                out = run("rank", fn)
                if out is not None:
                    check("rank", out, f"rank {fn}")
            for strategy in STRATEGIES:
                tree = run("pdt", "build", fn, "--strategy", strategy)
                if tree is None:
                    continue
                check("tree", tree, f"pdt build {fn} {strategy}")
                tree_path = pathlib.Path(tmp) / "tree.json"
                tree_path.write_text(tree)
                out = run("pdt", "check", fn, str(tree_path))
                if out is not None:
                    check("check", out, f"pdt check {fn} {strategy}")
                width = n if n is not None else json.loads(tree)["n"]
                out = run("comm", "sim", fn, "--x", "1" * width, "--y", "0" * width, "--strategy", strategy)
                if out is not None:
                    check("comm_sim", out, f"comm sim {fn} {strategy}")

    for line in failures:
        print("FAIL", line)
    print(f"{checked} documents checked, {len(failures)} failures")
    return 1 if failures or checked == 0 else 0


if __name__ == "__main__":
    sys.exit(main())
