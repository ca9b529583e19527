"""JSON formats for elements, Jordan isomorphisms and reports.

Element::

    {"blocks": [[[[re, im], ...], ...], ...], "shape": [n1, ..., nk]}

JordanIso::

    {"perm": [...], "transpose": [bool, ...], "unitaries": [matrix, ...]}

Matrices are row-major lists of rows; each entry is an ``[re, im]`` pair.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .algebra import AlgebraShape, Element
from .errors import ConeLabError, ParseError
from .jordan import JordanIso


class IoError(ConeLabError, OSError):
    pass


def matrix_to_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _matrix_from_json(data, where: str) -> np.ndarray:
    if not isinstance(data, list) or not data:
        raise ParseError(f"{where}: expected a non-empty list of rows")
    n = len(data)
    out = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"{where}: row {i} must have {n} entries")
        for j, entry in enumerate(row):
            if (not isinstance(entry, list) or len(entry) != 2
                    or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in entry)):
                raise ParseError(f"{where}: entry ({i},{j}) must be an [re, im] pair of numbers")
            re_, im_ = float(entry[0]), float(entry[1])
            if not (math.isfinite(re_) and math.isfinite(im_)):
                raise ParseError(f"{where}: entry ({i},{j}) is not finite")
            out[i, j] = complex(re_, im_)
    return out


def element_to_json(a: Element) -> dict:
    return {"shape": list(a.shape.dims), "blocks": [matrix_to_json(b) for b in a.blocks]}


def element_from_json(data) -> Element:
    if not isinstance(data, dict) or set(data) != {"shape", "blocks"}:
        raise ParseError('element JSON must be an object with exactly "shape" and "blocks"')
    shape, blocks = data["shape"], data["blocks"]
    if (not isinstance(shape, list) or not shape
            or not all(isinstance(n, int) and not isinstance(n, bool) and n >= 1 for n in shape)):
        raise ParseError('"shape" must be a non-empty list of positive integers')
    if not isinstance(blocks, list):
        raise ParseError('"blocks" must be a list')
    if len(blocks) != len(shape):
        raise ParseError(f"shape lists {len(shape)} blocks but {len(blocks)} were given")
    mats = []
    for k, (n, b) in enumerate(zip(shape, blocks)):
        m = _matrix_from_json(b, f"block {k}")
        if m.shape != (n, n):
            raise ParseError(f"block {k} is {m.shape[0]}x{m.shape[1]} but shape says {n}x{n}")
        mats.append(m)
    return Element(mats, AlgebraShape(shape))


def jordan_to_json(J: JordanIso) -> dict:
    return {
        "perm": list(J.perm),
        "unitaries": [matrix_to_json(u) for u in J.unitaries],
        "transpose": list(J.transpose),
    }


def jordan_from_json(data) -> JordanIso:
    if not isinstance(data, dict) or set(data) != {"perm", "unitaries", "transpose"}:
        raise ParseError('JordanIso JSON needs exactly "perm", "unitaries" and "transpose"')
    perm, us, flags = data["perm"], data["unitaries"], data["transpose"]
    if not isinstance(perm, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in perm):
        raise ParseError('"perm" must be a list of integers')
    if not isinstance(flags, list) or not all(isinstance(f, bool) for f in flags):
        raise ParseError('"transpose" must be a list of booleans')
    if not isinstance(us, list):
        raise ParseError('"unitaries" must be a list of matrices')
    mats = [_matrix_from_json(u, f"unitary {k}") for k, u in enumerate(us)]
    try:
        return JordanIso(perm, mats, flags)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def dumps(value) -> str:
    """Canonical JSON text (sorted keys, shortest round-trip floats)."""
    if isinstance(value, Element):
        value = element_to_json(value)
    elif isinstance(value, JordanIso):
        value = jordan_to_json(value)
    return json.dumps(value, sort_keys=True) + "\n"


def loads(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if isinstance(data, dict) and "perm" in data:
        return jordan_from_json(data)
    return element_from_json(data)


def save(path, value) -> None:
    try:
        Path(path).write_text(dumps(value))
    except OSError as exc:
        raise IoError(str(exc)) from exc


def load(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IoError(str(exc)) from exc
    return loads(text)


def element_io(path, direction: str, value=None):
    """``element_io(path, "save", x)`` or ``element_io(path, "load")``."""
    if direction == "save":
        save(path, value)
        return None
    if direction == "load":
        return load(path)
    raise ValueError("direction must be 'load' or 'save'")


# ---------------------------------------------------------------------------
# fixed-precision report JSON


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    s = format(x, ".17g")
    if "e" not in s and "." not in s and "n" not in s:
        s += ".0"
    return s


def dumps_fixed(obj) -> str:
    """Deterministic JSON: sorted keys, floats at 17 significant digits."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = sorted(obj.items())
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps_fixed(v)}" for k, v in items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps_fixed(v) for v in obj) + "]"
    if isinstance(obj, Element):
        return dumps_fixed(element_to_json(obj))
    raise TypeError(f"cannot serialise {type(obj).__name__}")
