#!/usr/bin/env python3
"""Validate snapshot JSON documents against docs/snapshot.schema.json.

Files named valid_*.json must validate; invalid_*.json must not.
"""
import argparse
import json
import pathlib
import sys

import jsonschema


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("schema", type=pathlib.Path)
    parser.add_argument("documents", type=pathlib.Path, help="directory of valid_*/invalid_* files")
    args = parser.parse_args()

    schema = json.loads(args.schema.read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    failures = 0
    checked = 0
    for path in sorted(args.documents.glob("*.json")):
        expect_valid = path.name.startswith("valid_")
        if not expect_valid and not path.name.startswith("invalid_"):
            continue
        checked += 1
        errors = list(validator.iter_errors(json.loads(path.read_text())))
        if expect_valid and errors:
            failures += 1
            for e in errors[:3]:
                print(f"{path.name}: {'/'.join(map(str, e.absolute_path))}: {e.message}")
        elif not expect_valid and not errors:
            failures += 1
            print(f"{path.name}: accepted but should be rejected")

    print(f"{checked} documents checked, {failures} failures")
    return 1 if failures or checked == 0 else 0


if __name__ == "__main__":
    sys.exit(main())
