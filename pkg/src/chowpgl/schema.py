"""Access to the JSON schema documents shipped with the package."""

import json
from importlib import resources

NAMES = ("common", "additive", "invariant_gens", "relations", "element", "mackey", "verify_report", "error",
         "cache_entry")


def load_schema(name: str) -> dict:
    if name not in NAMES:
        raise KeyError(f"no schema named {name!r}")
    text = resources.files("chowpgl").joinpath("schemas", f"{name}.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def all_schemas() -> dict:
    return {name: load_schema(name) for name in NAMES}
