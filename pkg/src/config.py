"""
config.py — Configuration for the homological algebra engine

Holds run defaults, the named-group registry, and loading/validation of
instance and run descriptors (JSON or TOML, validated with jsonschema).

Instance descriptor (schema version 1):
  {
    "schema": 1,
    "p": 2,
    "group": "cyclic:4"            | {"cyclic": 4} | {"table": [[...], ...]},
    "subgroup": [0, 2],
    "module": "trivial" | "regular" | {"dim": 2, "action": {"1": [[1,1],[0,1]]}}
  }
Module actions are given for group elements (keys are element indices) that
generate the group.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

import jsonschema

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parent.parent
OUTPUTS_DIR = PROJECT_ROOT / "outputs"


# ---------------------------------------------------------------------------
# Run defaults
# ---------------------------------------------------------------------------

SCHEMA_VERSION = 1
DEFAULT_PRIME = 2
DEFAULT_DEGREE = 4
DEFAULT_PAGES = 4
PROVIDERS = ("coinduced", "local-socle")
DEFAULT_PROVIDER = "local-socle"
RESOLUTION_KINDS = ("minimal", "free", "bar")
DEFAULT_RESOLUTION = "minimal"

# Resolutions are built this many steps past the requested total degree;
# the last column of a CE-resolution of a truncated complex is not trusted.
TRUNCATION_PADDING = 3

# Derived functors of resolution entries are checked up to this degree.
HYPOTHESIS_DEGREE = 2

# Largest term (in dimensions) a bar resolution may reach before BudgetExceeded.
BAR_DIMENSION_BUDGET = 4096

# Modules up to this dimension get the full multiplicativity check on construction.
MODULE_CHECK_LIMIT = 64

RANDOM_SEED = 20240611
NATURALITY_SAMPLES = 5

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_HYPOTHESIS = 2
EXIT_VERDICT_FALSE = 3


# ---------------------------------------------------------------------------
# Descriptor schemas
# ---------------------------------------------------------------------------

_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}
_NAMED = r"(cyclic:[1-9][0-9]*|klein4|q8|s3)"
_GROUP_NAME = rf"^({_NAMED}|product:{_NAMED}(,{_NAMED})+)$"

INSTANCE_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "required": ["p", "group"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "p": {"type": "integer", "minimum": 2},
        "group": {
            "oneOf": [
                {"type": "string", "pattern": _GROUP_NAME},
                {
                    "type": "object",
                    "required": ["cyclic"],
                    "properties": {"cyclic": {"type": "integer", "minimum": 1}},
                    "additionalProperties": False,
                },
                {
                    "type": "object",
                    "required": ["table"],
                    "properties": {"table": _MATRIX, "identity": {"type": "integer", "minimum": 0}},
                    "additionalProperties": False,
                },
            ]
        },
        "subgroup": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "module": {
            "oneOf": [
                {"enum": ["trivial", "regular"]},
                {
                    "type": "object",
                    "required": ["dim", "action"],
                    "properties": {
                        "dim": {"type": "integer", "minimum": 0},
                        "action": {
                            "type": "object",
                            "patternProperties": {r"^[0-9]+$": _MATRIX},
                            "additionalProperties": False,
                        },
                    },
                    "additionalProperties": False,
                },
            ]
        },
    },
    "additionalProperties": False,
}

RUN_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "required": ["command"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "command": {
            "enum": ["homology", "resolve", "gss", "lhs", "compare-first",
                     "compare-second", "hopf-check", "oracle"]
        },
        "instance": INSTANCE_SCHEMA,
        "window": {
            "type": "object",
            "properties": {
                "degree": {"type": "integer", "minimum": 0},
                "pages": {"type": "integer", "minimum": 1},
            },
            "additionalProperties": False,
        },
        "provider": {"enum": list(PROVIDERS)},
        "resolution": {"enum": list(RESOLUTION_KINDS)},
        "functors": {
            "type": "object",
            "properties": {"f": {"type": "string"}, "g": {"type": "string"}},
            "additionalProperties": False,
        },
        "out": {"type": "string"},
        "verbose": {"type": "boolean"},
        "waive": {"type": "array", "items": {"type": "string"}},
    },
    "additionalProperties": False,
}


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------

def load_descriptor(path: Path) -> Dict[str, Any]:
    """Read a JSON or TOML descriptor file."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Descriptor not found: {path}")
    if path.suffix.lower() == ".toml":
        try:
            import tomllib
        except ImportError:  # Python < 3.11
            import tomli as tomllib
        with open(path, "rb") as f:
            data = tomllib.load(f)
    else:
        with open(path) as f:
            data = json.load(f)
    logger.info(f"Loaded descriptor from {path}")
    return data


def validate_instance(doc: Dict[str, Any]) -> Dict[str, Any]:
    jsonschema.validate(doc, INSTANCE_SCHEMA)
    return doc


def validate_run(doc: Dict[str, Any]) -> Dict[str, Any]:
    jsonschema.validate(doc, RUN_SCHEMA)
    return doc


# ---------------------------------------------------------------------------
# Named groups
# ---------------------------------------------------------------------------

def resolve_group(spec: Any):
    """GroupTable for a registry name, {"cyclic": n} or {"table": ...}; "product:a,b" multiplies names."""
    from src.algebra import (
        GroupTable,
        cyclic_group,
        direct_product,
        quaternion_group,
        symmetric_group_3,
    )

    if isinstance(spec, str):
        if spec.startswith("product:"):
            factors = [resolve_group(part) for part in spec.split(":", 1)[1].split(",")]
            out = factors[0]
            for g in factors[1:]:
                out = direct_product(out, g)
            return out
        if spec.startswith("cyclic:"):
            return cyclic_group(int(spec.split(":", 1)[1]))
        named = {
            "klein4": lambda: direct_product(cyclic_group(2), cyclic_group(2)),
            "q8": quaternion_group,
            "s3": symmetric_group_3,
        }
        if spec not in named:
            raise ValueError(f"Unknown group name: {spec!r} (expected cyclic:n, klein4, q8, s3 or product:a,b)")
        return named[spec]()
    if "cyclic" in spec:
        return cyclic_group(int(spec["cyclic"]))
    return GroupTable(tuple(tuple(int(x) for x in row) for row in spec["table"]),
                      int(spec.get("identity", 0)), "table")


# ---------------------------------------------------------------------------
# Full config dict
# ---------------------------------------------------------------------------

def get_config(overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    config = {
        "p": DEFAULT_PRIME,
        "degree": DEFAULT_DEGREE,
        "pages": DEFAULT_PAGES,
        "provider": DEFAULT_PROVIDER,
        "resolution": DEFAULT_RESOLUTION,
        "padding": TRUNCATION_PADDING,
        "seed": RANDOM_SEED,
        "outputs_dir": OUTPUTS_DIR,
    }
    if overrides:
        config.update({k: v for k, v in overrides.items() if v is not None})
    return config
