"""Deterministic JSON output: sorted keys, floats at 9 significant digits."""

import json


def _round_floats(obj):
    if isinstance(obj, float):
        return float(f"{obj:.9g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def canonical_json(obj):
    """Byte-stable JSON text (trailing newline included)."""
    return json.dumps(_round_floats(obj), sort_keys=True, indent=2) + "\n"
