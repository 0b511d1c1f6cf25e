"""JSON report schema (version 1) and eigenvalue encoding."""

from __future__ import annotations

from .cyclo import CycNum

SCHEMA_VERSION = "1"

_CYC = {
    "type": "object",
    "required": ["order", "coefficients"],
    "properties": {
        "order": {"type": "integer", "minimum": 1},
        "coefficients": {"type": "array", "items": {"type": "string"}},
    },
    "additionalProperties": False,
}

VALUE = {"oneOf": [{"type": "string", "pattern": "^-?[0-9]+$"}, _CYC]}

ENVELOPE = {
    "type": "object",
    "required": ["schema_version", "command", "params", "results", "timing"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"enum": ["sum", "spectrum", "verify", "conjecture"]},
        "params": {"type": "object"},
        "results": {"type": "object"},
        "timing": {"type": ["number", "null"]},
    },
}

SWEEP_RECORD = {
    "type": "object",
    "required": ["schema_version", "n", "d", "status", "all_integral", "witness",
                 "witness_value", "timing"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "n": {"type": "integer", "minimum": 2},
        "d": {"type": "integer", "minimum": 1},
        "status": {"enum": ["done", "skipped"]},
        "all_integral": {"type": ["boolean", "null"]},
        "witness": {"oneOf": [{"type": "null"},
                              {"type": "array", "items": {"type": "integer"}}]},
        "witness_value": {"oneOf": [{"type": "null"}, _CYC]},
        "degree": {"type": ["integer", "null"]},
        "distinct_eigenvalues": {"type": ["integer", "null"]},
        "timing": {"type": "number"},
        "reason": {"type": ["string", "null"]},
    },
    "additionalProperties": False,
}


def encode_value(v) -> str | dict:
    """Decimal string for integers, ``{order, coefficients}`` otherwise."""
    if isinstance(v, CycNum):
        as_int = v.as_integer()
        return str(as_int) if as_int is not None else v.to_json()
    return str(int(v))


def decode_value(obj) -> int | CycNum:
    if isinstance(obj, str):
        return int(obj)
    return CycNum.from_json(obj)
