"""JSON Schemas (draft 2020-12) for the objects the CLI prints."""

_number = {"type": ["number", "null"]}

SERIES_VALUE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "SeriesValue",
    "type": "object",
    "properties": {
        "kind": {"const": "SeriesValue"},
        "value": _number,
        "terms_used": {"type": "integer", "minimum": 0},
        "tail_estimate": _number,
        "rounding_estimate": _number,
        "status": {"enum": ["Converged", "MaxTermsReached", "OutsideDomain", "PrecisionLoss"]},
    },
    "required": ["kind", "value", "terms_used", "tail_estimate", "status"],
    "additionalProperties": False,
}

QUAD_RESULT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "QuadResult",
    "type": "object",
    "properties": {
        "kind": {"const": "QuadResult"},
        "value": {"type": "number"},
        "nodes_per_axis": {"type": "integer", "minimum": 1},
        "error_estimate": {"type": "number", "minimum": 0},
        "converged": {"type": "boolean"},
    },
    "required": ["kind", "value", "nodes_per_axis", "error_estimate", "converged"],
    "additionalProperties": False,
}

IDENTITY_REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "IdentityReport",
    "type": "object",
    "properties": {
        "kind": {"const": "IdentityReport"},
        "id": {"enum": ["EDWARD", "TERMWISE", "THM21_WRIGHT", "THM21_PFQ", *(f"SC{i}" for i in range(1, 11))]},
        "variant": {"enum": ["Canonical", "AsPrinted"]},
        "params": {"type": "object", "additionalProperties": {"type": "number"}},
        "lhs": _number,
        "rhs": _number,
        "abs_diff": _number,
        "rel_diff": _number,
        "verdict": {"enum": ["Pass", "Fail", "Skipped"]},
        "tol": {"type": "number", "exclusiveMinimum": 0},
        "reason": {"type": ["string", "null"]},
        "skip_kind": {"enum": ["precondition", "nonconvergence", None]},
    },
    "required": ["kind", "id", "variant", "params", "lhs", "rhs", "abs_diff", "rel_diff", "verdict", "tol"],
    "additionalProperties": False,
}
