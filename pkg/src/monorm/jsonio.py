"""Deterministic JSON emission for reports.

Numbers are printed with 17 significant digits (enough to round-trip IEEE
doubles byte-identically); the infinity tag serializes as the string "inf"
since JSON has no infinity literal.
"""

from __future__ import annotations

import math

from .extreal import ExtReal

__all__ = ["to_json", "jsonable"]


def jsonable(x):
    """Recursively convert report values into JSON-encodable structures."""
    if isinstance(x, ExtReal):
        return x.value if x.is_finite else "inf"
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


def _emit(x, out: list[str]) -> None:
    if x is None:
        out.append("null")
    elif isinstance(x, bool):
        out.append("true" if x else "false")
    elif isinstance(x, int):
        out.append(str(x))
    elif isinstance(x, float):
        if math.isinf(x):
            out.append('"inf"')
        else:
            out.append(f"{x:.17g}")
    elif isinstance(x, str):
        out.append('"' + x.replace("\\", "\\\\").replace('"', '\\"') + '"')
    elif isinstance(x, dict):
        out.append("{")
        for j, key in enumerate(sorted(x)):
            if j:
                out.append(",")
            _emit(str(key), out)
            out.append(":")
            _emit(x[key], out)
        out.append("}")
    elif isinstance(x, (list, tuple)):
        out.append("[")
        for j, v in enumerate(x):
            if j:
                out.append(",")
            _emit(v, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(x).__name__}")


def to_json(obj) -> str:
    """Deterministic JSON: sorted keys, 17-significant-digit floats."""
    out: list[str] = []
    _emit(jsonable(obj), out)
    return "".join(out)
