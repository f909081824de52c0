#!/usr/bin/env python3
"""Check docs/openapi.yaml against the service's route table.

Every route printed by `dashsnap routes` must be documented with the same
method, nothing else may be documented, and every $ref must resolve.
"""
import argparse
import json
import pathlib
import subprocess
import sys

import yaml

METHODS = {"get", "post", "put", "patch", "delete"}


def resolve(root, pointer):
    node = root
    for part in pointer.lstrip("/").split("/"):
        if not part:
            continue
        node = node[part.replace("~1", "/").replace("~0", "~")]
    return node


def refs(node):
    if isinstance(node, dict):
        for key, value in node.items():
            if key == "$ref":
                yield value
            else:
                yield from refs(value)
    elif isinstance(node, list):
        for item in node:
            yield from refs(item)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("cli", help="path to the dashsnap executable")
    parser.add_argument("openapi", type=pathlib.Path)
    args = parser.parse_args()

    doc = yaml.safe_load(args.openapi.read_text())
    documented = {(m.upper(), path) for path, item in doc["paths"].items() for m in item if m in METHODS}

    out = subprocess.run([args.cli, "routes"], check=True, capture_output=True, text=True).stdout
    served = set()
    for line in out.splitlines():
        fields = line.split()
        if len(fields) >= 2:
            served.add((fields[0], fields[1]))

    problems = []
    for method, path in sorted(served - documented):
        problems.append(f"undocumented route {method} {path}")
    for method, path in sorted(documented - served):
        problems.append(f"documented route not served: {method} {path}")

    external = {}
    for ref in refs(doc):
        target, _, pointer = ref.partition("#")
        try:
            if target:
                if target not in external:
                    external[target] = json.loads((args.openapi.parent / target).read_text())
                resolve(external[target], pointer)
            else:
                resolve(doc, pointer)
        except (KeyError, OSError) as e:
            problems.append(f"unresolved $ref {ref}: {e}")

    for p in problems:
        print(p)
    print(f"{len(served)} routes served, {len(documented)} documented, {len(problems)} problems")
    return 1 if problems or not served else 0


if __name__ == "__main__":
    sys.exit(main())
