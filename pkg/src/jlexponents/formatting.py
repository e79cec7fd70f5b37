"""Deterministic text rendering: 17 significant digits for every float."""

import json
import math


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def dumps(obj) -> str:
    """Serialise to JSON with floats rendered at 17 significant digits.

    Non-finite floats become ``null``.  Parsing the output and calling
    ``dumps`` again reproduces the same text.
    """
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")
