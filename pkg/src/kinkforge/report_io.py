"""JSON and CSV writers with a fixed 17-significant-digit float format."""

import json
import math

import numpy as np


def _fmt_float(x):
    x = float(x)
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def plain(obj):
    """Convert numpy scalars/arrays and complex numbers into JSON-ready Python values.

    Complex numbers become ``[re, im]`` pairs.
    """
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def dumps(obj, indent=2, _level=0):
    """Serialize to JSON text; floats use 17 significant digits, NaN/inf become null."""
    obj = plain(obj) if _level == 0 else obj
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_string(k)}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return _string(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _string(s):
    return json.dumps(str(s))


def orbit_csv(profile):
    """Orbit table with header x,e1,e2,de1,de2, one LF-terminated row per node."""
    rows = ["x,e1,e2,de1,de2"]
    for x, e, d in zip(profile.x, profile.e, profile.de):
        rows.append(",".join(_fmt_float(v) for v in (x, e.real, e.imag, d.real, d.imag)))
    return "\n".join(rows) + "\n"


def read_orbit_csv(text):
    """Parse an orbit CSV back into (x, e, de) arrays."""
    lines = text.strip("\n").split("\n")
    if lines[0].strip() != "x,e1,e2,de1,de2":
        raise ValueError("not an orbit CSV (bad header)")
    data = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    return data[:, 0], data[:, 1] + 1j * data[:, 2], data[:, 3] + 1j * data[:, 4]
