"""Validate the golden corpus against the versioned JSON schemas."""
import json
import pathlib
import sys

import jsonschema

root = pathlib.Path(sys.argv[1])
schemas = root / "schemas" / "v1"
job_schema = json.loads((schemas / "job.schema.json").read_text())
result_schema = json.loads((schemas / "result.schema.json").read_text())
bad = 0
for job in sorted((root / "corpus").glob("*.job.json")):
    out = job.with_name(job.name.replace(".job.json", ".out.json"))
    result = json.loads(out.read_text())
    try:
        jsonschema.validate(result, result_schema)
        # jobs kept as schema-error fixtures are expected to fail validation
        if result.get("error", {}).get("kind") != "schema":
            jsonschema.validate(json.loads(job.read_text()), job_schema)
    except jsonschema.ValidationError as e:
        print(f"{job.name}: {e.message}")
        bad += 1
print(f"validated {len(list((root / 'corpus').glob('*.job.json')))} jobs, {bad} failures")
sys.exit(1 if bad else 0)
