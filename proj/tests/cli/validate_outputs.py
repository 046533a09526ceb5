"""Validate mochain JSON outputs against the versioned schemas."""
import json
import pathlib
import sys

import jsonschema
from referencing import Registry, Resource


def main() -> int:
    schema_dir = pathlib.Path(sys.argv[1])
    schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
    registry = Registry().with_resources(
        (s["$id"], Resource.from_contents(s)) for s in schemas.values()
    )
    failures = 0
    checked = 0
    for out_dir in map(pathlib.Path, sys.argv[2:]):
        for path in sorted(out_dir.glob("*.json")):
            doc = json.loads(path.read_text())
            schema = schemas[f"{doc['kind']}.schema.json"]
            validator = jsonschema.Draft202012Validator(schema, registry=registry)
            errors = list(validator.iter_errors(doc))
            checked += 1
            for e in errors[:3]:
                print(f"{path}: {e.json_path}: {e.message}")
            failures += bool(errors)
    print(f"{checked} documents checked, {failures} invalid")
    return 1 if failures or checked == 0 else 0


if __name__ == "__main__":
    sys.exit(main())
