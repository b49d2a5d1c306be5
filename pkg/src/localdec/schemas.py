"""Published JSON schemas for CLI output; tests validate every command
against these."""

from __future__ import annotations

INSTANCE = {
    "type": "object",
    "properties": {
        "topology": {"enum": ["path", "cycle"]},
        "n": {"type": "integer", "minimum": 1},
        "x": {"type": "array", "items": {"type": "string"}},
        "ids": {"type": "array", "items": {"type": "integer", "minimum": 1}},
    },
    "required": ["topology", "n", "x", "ids"],
    "additionalProperties": False,
}

NODE_SET = {
    "oneOf": [
        {"const": "all"},
        {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
        {
            "type": "object",
            "properties": {"set": {"type": "array", "items": {"type": "integer"}}},
            "required": ["set"],
            "additionalProperties": False,
        },
    ]
}

PROBABILITY_REPORT = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["exact", "estimated"]},
        "value": {"type": "number", "minimum": 0, "maximum": 1},
        "trials": {"type": "integer", "minimum": 1},
        "ci": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        "nodes": NODE_SET,
    },
    "required": ["kind", "value", "nodes"],
    "additionalProperties": False,
}

SECURE_REPORT = {
    "type": "object",
    "properties": {
        "window": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
        "probability": PROBABILITY_REPORT,
        "secure": {"type": "boolean"},
        "internal": {"type": "boolean"},
    },
    "required": ["window", "probability", "secure", "internal"],
    "additionalProperties": False,
}

_CLASS = {"oneOf": [{"type": "integer"}, {"const": "inf"}, {"type": "null"}]}

AMOS_VERIFY_RESULT = {
    "type": "object",
    "properties": {
        "p_hat": {"type": ["number", "null"]},
        "q_hat": {"type": ["number", "null"]},
        "declared_p": {"type": "number"},
        "declared_q": {"type": "number"},
        "exact": {"type": "boolean"},
        "members": {"type": "integer"},
        "non_members": {"type": "integer"},
        "skipped_promise": {"type": "integer"},
        "class": _CLASS,
        "ok": {"type": "boolean"},
    },
    "required": ["p_hat", "q_hat", "declared_p", "declared_q", "class", "ok"],
    "additionalProperties": False,
}

RATIO_CHECK = {
    "type": "object",
    "properties": {
        "rho": {"type": "number"},
        "pr_yes_legal": {"type": "number"},
        "pr_yes_illegal": {"type": "number"},
        "block_probs": {"type": "array", "items": {"type": "number"}},
        "max_blocks": {"type": "array", "items": {"type": "integer"}},
        "lower_bound": {"type": "number"},
        "upper_bound": {"type": "number"},
        "lower_holds": {"type": "boolean"},
        "upper_holds": {"type": "boolean"},
        "consistent_interval": {"type": "boolean"},
        "vacuous": {"type": "boolean"},
        "contradiction": {"type": "boolean"},
    },
    "required": ["rho", "lower_bound", "upper_bound", "contradiction"],
    "additionalProperties": False,
}

SEPARATION_RESULT = {
    "type": "object",
    "properties": {
        "a": {"type": "integer"},
        "b": {"type": "integer"},
        "delta": {"type": "number"},
        "epsilon": {"type": "number"},
        "ell": {"type": "integer"},
        "t": {"type": "integer"},
        "n": {"type": "integer"},
        "leaders": {"type": "array", "items": {"type": "integer"}},
        "dropped": {"type": "array", "items": {"type": "integer"}},
        "segments": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
        },
        "legal": INSTANCE,
        "illegal": INSTANCE,
        "ratio_check": RATIO_CHECK,
    },
    "required": ["a", "b", "delta", "ell", "n", "legal", "illegal", "ratio_check"],
    "additionalProperties": False,
}

SECURE_SCAN_RESULT = {
    "type": "object",
    "properties": {
        "delta": {"type": "number"},
        "lambda": {"type": "integer"},
        "t": {"type": "integer"},
        "ell": {"type": "integer"},
        "region": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
        "reports": {"type": "array", "items": SECURE_REPORT},
        "secure_windows": {"type": "integer"},
    },
    "required": ["delta", "lambda", "t", "region", "reports"],
    "additionalProperties": False,
}

TREE_CYCLE_RESULT = {
    "type": "object",
    "properties": {
        "n": {"type": "integer"},
        "t": {"type": "integer"},
        "x_cut": {"type": "integer"},
        "delta": {"type": ["number", "null"]},
        "s": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
        "s_prime_labels": {"type": "array", "items": {"type": "integer"}},
        "views_equal": {
            "type": "object",
            "properties": {"s": {"type": "boolean"}, "s_prime": {"type": "boolean"}},
            "required": ["s", "s_prime"],
            "additionalProperties": False,
        },
        "check": {"type": ["object", "null"]},
    },
    "required": ["n", "t", "x_cut", "s", "s_prime_labels", "views_equal"],
    "additionalProperties": True,
}

DERANDOMIZE_RESULT = {
    "type": "object",
    "properties": {
        "input": {"type": "array", "items": {"type": "string"}},
        "radius": {"type": "integer"},
        "oracle": {"enum": ["analytic", "brute"]},
        "verdicts": {"type": "array", "items": {"type": "boolean"}},
        "accepted": {"type": "boolean"},
        "member": {"type": "boolean"},
    },
    "required": ["input", "radius", "verdicts", "accepted", "member"],
    "additionalProperties": False,
}

ENVELOPE = {
    "type": "object",
    "properties": {
        "command": {"type": "string"},
        "parameters": {"type": "object"},
        "result": {"type": "object"},
    },
    "required": ["command", "parameters", "result"],
    "additionalProperties": False,
}

RESULT_SCHEMAS = {
    "amos-verify": AMOS_VERIFY_RESULT,
    "separation": SEPARATION_RESULT,
    "secure-scan": SECURE_SCAN_RESULT,
    "tree-cycle": TREE_CYCLE_RESULT,
    "derandomize": DERANDOMIZE_RESULT,
}
