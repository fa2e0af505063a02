"""JSON output with 17 significant digits per float and ``{re, im}`` complexes."""

from __future__ import annotations

import json
import math
from typing import Any

__all__ = ["complex_to_json", "complex_from_json", "format_float", "dumps", "loads"]


def complex_to_json(z: complex) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def complex_from_json(data: Any) -> complex:
    if isinstance(data, dict):
        return complex(data["re"], data.get("im", 0.0))
    return complex(data)


def format_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    text = format(x, ".17g")
    if "e" not in text and "." not in text and "n" not in text:
        text += ".0"
    return text


def _encode(obj: Any, indent: int | None, level: int) -> str:
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, complex):
        return _encode(complex_to_json(obj), indent, level)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = [(json.dumps(str(k)), _encode(v, indent, level + 1)) for k, v in obj.items()]
        if not items:
            return "{}"
        if indent is None:
            return "{" + ", ".join(f"{k}: {v}" for k, v in items) + "}"
        pad = " " * (indent * (level + 1))
        body = ",\n".join(f"{pad}{k}: {v}" for k, v in items)
        return "{\n" + body + "\n" + " " * (indent * level) + "}"
    if isinstance(obj, (list, tuple)):
        parts = [_encode(v, indent, level + 1) for v in obj]
        if indent is None or not parts:
            return "[" + ", ".join(parts) + "]"
        pad = " " * (indent * (level + 1))
        return "[\n" + ",\n".join(pad + v for v in parts) + "\n" + " " * (indent * level) + "]"
    if hasattr(obj, "to_json"):
        return _encode(obj.to_json(), indent, level)
    raise TypeError(f"cannot encode {type(obj).__name__} as JSON")


def dumps(obj: Any, indent: int | None = None) -> str:
    """Like :func:`json.dumps`, but floats always carry 17 significant digits."""
    return _encode(obj, indent, 0)


def loads(text: str) -> Any:
    return json.loads(text)
