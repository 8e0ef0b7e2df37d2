"""JSON schemas for command envelopes (draft 2020-12, strict)."""

from __future__ import annotations

SCHEMA_VERSION = "abelic/1"

_RATIONAL = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"}]}
_POS_INT = {"type": "integer", "minimum": 1}
_ORDER = {
    "oneOf": [
        {"type": "object", "properties": {"kind": {"const": "Z"}}, "required": ["kind"], "additionalProperties": False},
        {
            "type": "object",
            "properties": {"kind": {"const": "iq"}, "d": _POS_INT, "f": _POS_INT},
            "required": ["kind", "d"],
            "additionalProperties": False,
        },
    ]
}
_ELEMENT = {"oneOf": [_RATIONAL, {"type": "array", "items": _RATIONAL, "minItems": 2, "maxItems": 2}]}
_GRID = {"type": "array", "minItems": 1, "items": {"type": "array", "minItems": 1, "items": _ELEMENT}}
_MATRIX = {
    "oneOf": [
        _GRID,
        {
            "type": "object",
            "properties": {"order": _ORDER, "rows": _POS_INT, "cols": _POS_INT, "entries": _GRID},
            "required": ["entries"],
            "additionalProperties": False,
        },
    ]
}
_HCLASS = {
    "oneOf": [
        {"const": "identity"},
        {
            "type": "object",
            "properties": {
                "order": _ORDER,
                "size": _POS_INT,
                "entries": {
                    "type": "array",
                    "items": {"type": "array", "items": {"type": "array", "items": _RATIONAL, "minItems": 2, "maxItems": 2}},
                },
            },
            "required": ["entries"],
            "additionalProperties": False,
        },
    ]
}

_COMMON = {
    "schema": {"const": SCHEMA_VERSION},
    "subcommand": {"type": "string"},
    "precision": {"type": "integer", "minimum": 2},
    "seed": {"type": "integer"},
    "cap": _POS_INT,
}


def _obj(props: dict, required=()) -> dict:
    return {
        "type": "object",
        "properties": dict(_COMMON, **props),
        "required": list(required),
        "additionalProperties": False,
    }


_SPLIT_PROPS = {
    "order": _ORDER,
    "P": _MATRIX,
    "strategy": {"oneOf": [{"enum": ["unimodular", "orthogonal"]}, _MATRIX]},
    "budget": {"type": "integer", "minimum": 0},
}

_BOUND = {
    "main": {"c": _RATIONAL, "degH": _RATIONAL, "degY": _RATIONAL, "codim": _POS_INT, "eta": _RATIONAL},
    "effective": {"C": _RATIONAL, "degY": _RATIONAL, "codim": _POS_INT, "eta": _RATIONAL},
    "isogeny": {
        "C": _RATIONAL, "deg_pullback_B": _RATIONAL, "deg_pullback_Y": _RATIONAL, "codim": _POS_INT, "eta": _RATIONAL,
    },
    "theta": {"c1": _RATIONAL, "degB": _RATIONAL, "degY": _RATIONAL, "codim": _POS_INT, "eta": _RATIONAL},
    "galateau": {
        "C0": _RATIONAL, "omega": _RATIONAL, "degY": _RATIONAL, "lambda": _POS_INT, "dimB": _POS_INT, "codim": _POS_INT,
    },
}
_BOUND_REQUIRED = {
    "main": ["degH", "degY", "codim", "eta"],
    "effective": ["degY", "codim", "eta"],
    "isogeny": ["deg_pullback_B", "deg_pullback_Y", "codim", "eta"],
    "theta": ["degB", "degY", "codim", "eta"],
    "galateau": ["C0", "omega", "degY"],
}


def bound_schema() -> dict:
    return {
        "oneOf": [
            _obj(dict({"type": {"const": t}}, **props), ["type"] + _BOUND_REQUIRED[t]) for t, props in _BOUND.items()
        ]
    }


SCHEMAS: dict[str, dict] = {
    "order": _obj({"order": _ORDER, "x": _ELEMENT, "y": _ELEMENT}, ["order", "x", "y"]),
    "deg": _obj({"order": _ORDER, "matrix": _MATRIX}, ["matrix"]),
    "dual": _obj({"order": _ORDER, "matrix": _MATRIX}, ["matrix"]),
    "kernel": _obj(
        {"order": _ORDER, "matrix": _MATRIX, "over": {"enum": ["Z", "order"]}, "enumerate": {"type": "boolean"}},
        ["matrix"],
    ),
    "split": _obj(_SPLIT_PROPS, ["P"]),
    "verify-equivalence": _obj(_SPLIT_PROPS, ["P"]),
    "verify-gael": _obj(
        {
            "order": _ORDER,
            "N": _POS_INT,
            "n": _POS_INT,
            "rows": _MATRIX,
            "reference": {"oneOf": [{"const": "identity"}, {"type": "array", "items": _HCLASS}]},
        },
        ["n", "rows"],
    ),
    "bound": bound_schema(),
    "ledger": {
        "oneOf": [
            _obj({"theorem": {"const": "2.8"}, "g": _POS_INT, "d": _POS_INT, "eta": _RATIONAL}, ["theorem", "g", "d"]),
            _obj(
                {
                    "theorem": {"const": "4.1"},
                    "codim": _POS_INT,
                    "eta": _RATIONAL,
                    "alphas": {"type": "array", "minItems": 0, "items": _POS_INT},
                    "binoms": {"type": "array", "minItems": 0, "items": _POS_INT},
                    "ns": {"type": "array", "items": _POS_INT},
                    "dim_y": {"type": "integer", "minimum": 0},
                    "degH": _RATIONAL,
                    "degY": _RATIONAL,
                },
                ["theorem", "codim", "eta", "alphas", "binoms"],
            ),
        ]
    },
    "oracle": _obj(
        {
            "suite": {"enum": ["degrees", "kernels", "stab", "all"]},
            "orders": {"type": "array", "items": {"oneOf": [{"enum": ["Z", "Zi"]}, _ORDER]}},
            "count": {"type": "integer", "minimum": 0},
            "max_N": _POS_INT,
            "norm_bound": _POS_INT,
            "stab_moduli": {"type": "array", "items": {"type": "integer", "minimum": 2}},
            "stab_N": {"type": "array", "items": _POS_INT},
            "stab_norm_bound": _POS_INT,
            "inject_fault": {"type": "boolean"},
        },
        ["suite"],
    ),
}

SUBCOMMANDS = tuple(SCHEMAS)

# ---------------------------------------------------------------- output documents
_STR_RATIONAL = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
_PAIR = {"type": "array", "items": _STR_RATIONAL, "minItems": 2, "maxItems": 2}
_MATRIX_OUT = {
    "type": "object",
    "properties": {
        "order": _ORDER,
        "rows": _POS_INT,
        "cols": _POS_INT,
        "entries": {"type": "array", "items": {"type": "array", "items": _PAIR}},
    },
    "required": ["order", "rows", "cols", "entries"],
    "additionalProperties": False,
}
_INTERVAL = {
    "type": "object",
    "properties": {
        "lower": _STR_RATIONAL,
        "upper": _STR_RATIONAL,
        "exact": {"type": "boolean"},
        "flags": {"type": "array", "items": {"type": "string"}},
    },
    "required": ["lower", "upper", "exact"],
}


def _out(name: str, props: dict, required=()) -> dict:
    base = {"schema": {"const": SCHEMA_VERSION}, "subcommand": {"const": name}}
    return {
        "type": "object",
        "properties": dict(base, **props),
        "required": ["schema", "subcommand"] + list(required),
    }


OUTPUT_SCHEMAS: dict[str, dict] = {
    "order": _out("order", {"sum": _PAIR, "product": _PAIR, "norm_x": _STR_RATIONAL, "euclidean": {"type": "boolean"}},
                  ["sum", "product", "conj_x", "conj_y", "norm_x", "norm_y", "order", "euclidean"]),
    "deg": _out("deg", {"degree": _POS_INT}, ["degree"]),
    "dual": _out("dual", {"alpha": _POS_INT, "dual": _MATRIX_OUT, "degree_relation": {"const": True}},
                 ["alpha", "dual", "degree", "dual_degree", "degree_relation"]),
    "kernel": _out("kernel", {"over": {"enum": ["Z", "order"]}, "size": _POS_INT,
                              "points": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}},
                   ["over", "divisors", "size"]),
    "split": _out("split", {"phi": _MATRIX_OUT, "phi_hat": _MATRIX_OUT, "T": _MATRIX_OUT, "alpha": _POS_INT,
                            "diagram": {"type": "object", "properties": {"ok": {"type": "boolean"}}, "required": ["ok"]}},
                  ["B", "phi", "phi_hat", "T", "alpha", "degree", "diagram", "push_degree"]),
    "verify-equivalence": _out("verify-equivalence", {"ok": {"type": "boolean"}, "flags": {"type": "object"}},
                               ["alpha", "binom", "flags", "lhs", "rhs", "ok"]),
    "verify-gael": _out("verify-gael", {"lhs": _STR_RATIONAL, "rhs": _STR_RATIONAL, "equal": {"type": "boolean"}},
                        ["lhs", "rhs", "equal", "binom"]),
    "bound": {
        "oneOf": [
            _out("bound", dict(_INTERVAL["properties"], **{"lambda": _POS_INT}), _INTERVAL["required"]),
            _out("bound", {"theta": _INTERVAL, "quarter": _INTERVAL}, ["theta", "quarter"]),
        ]
    },
    "ledger": _out("ledger", {"steps": {"type": "array"}, "proven": {"type": "boolean"},
                              "independent_check": {"type": "boolean"}},
                   ["theorem", "params", "steps", "final", "proven", "independent_check"]),
    "oracle": _out("oracle", {"suites": {"type": "object"}, "ok": {"type": "boolean"}},
                   ["suites", "checked", "passed", "ok"]),
}

ERROR_SCHEMA = {
    "type": "object",
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "error": {
            "type": "object",
            "properties": {"code": {"type": "string"}, "type": {"type": "string"}, "message": {"type": "string"}},
            "required": ["code", "type", "message"],
            "additionalProperties": False,
        },
    },
    "required": ["schema", "error"],
    "additionalProperties": False,
}


def publish(directory) -> list[str]:
    """Write every schema as ``<directory>/{input,output}/<subcommand>.json``."""
    import json
    from pathlib import Path

    root = Path(directory)
    written = []
    for kind, table in (("input", SCHEMAS), ("output", OUTPUT_SCHEMAS)):
        (root / kind).mkdir(parents=True, exist_ok=True)
        for name, schema in table.items():
            doc = dict(schema, **{"$schema": "https://json-schema.org/draft/2020-12/schema", "$id": "%s/%s/%s" % (SCHEMA_VERSION, kind, name)})
            path = root / kind / ("%s.json" % name)
            path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
            written.append(str(path))
    path = root / "error.json"
    path.write_text(json.dumps(ERROR_SCHEMA, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    written.append(str(path))
    return written


if __name__ == "__main__":
    import sys

    for p in publish(sys.argv[1] if len(sys.argv) > 1 else "docs/schemas"):
        print(p)
