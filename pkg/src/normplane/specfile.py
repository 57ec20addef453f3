"""Norm specification documents (JSON).

Accepted shapes::

    {"kind": "polygon", "vertices": [[1, -1], [1, 1], ["1/2", 2]]}
    {"kind": "lp", "p": 3}            # p may be "inf"
    {"kind": "regular-polygon", "sides": 8, "rotation": 0.3926990816987241}
    {"kind": "preset", "preset": "hexagon-paper"}

Vertex coordinates are integers, rational strings ("p/q") or decimal
literals; decimals are read exactly (``0.5`` is 1/2), so a polygon written
with decimals still runs through the exact kernel.
"""

from __future__ import annotations

import json
import math
import os
from fractions import Fraction
from typing import Any

from .errors import InvalidInput
from .norms import NormModel, PRESETS, lp_norm, polygon_norm, preset, regular_polygon_norm

KIND_FIELDS = {
    "polygon": {"vertices"},
    "lp": {"p"},
    "regular-polygon": {"sides", "rotation"},
    "preset": {"preset"},
}
OPTIONAL_FIELDS = {"regular-polygon": {"rotation"}}


class SpecError(InvalidInput):
    """Malformed norm specification; carries a line/column when known."""

    def __init__(self, message: str, source: str = "<spec>", line: int | None = None, column: int | None = None):
        self.source, self.line, self.column = source, line, column
        where = source if line is None else f"{source}:{line}:{column}"
        super().__init__(f"{where}: {message}")


class _FieldError(InvalidInput):
    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(message)


def _locate(text: str, key: str) -> tuple[int | None, int | None]:
    # Best-effort position of a key for semantic errors.
    idx = text.find(f'"{key}"')
    if idx < 0:
        return None, None
    line = text.count("\n", 0, idx) + 1
    col = idx - (text.rfind("\n", 0, idx) + 1) + 1
    return line, col


def _coord(value: Any, where: str):
    if isinstance(value, bool) or not isinstance(value, (int, Fraction, str)):
        raise _FieldError("vertices", f"{where}: expected a number or rational string, got {value!r}")
    return value  # Vec2 coercion parses the strings


def _real(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise _FieldError(where, f"{where}: expected a number, got {value!r}")
    return float(value)


def norm_from_document(doc: Any) -> NormModel:
    """Build a norm from an already-parsed document (dict)."""
    if not isinstance(doc, dict):
        raise InvalidInput("norm specification must be a JSON object")
    kind = doc.get("kind")
    if kind not in KIND_FIELDS:
        raise _FieldError("kind", f"field 'kind' must be one of {sorted(KIND_FIELDS)}, got {kind!r}")
    allowed = KIND_FIELDS[kind] | {"kind"}
    extra = sorted(set(doc) - allowed)
    if extra:
        raise _FieldError(extra[0], f"unexpected field(s) for kind {kind!r}: {', '.join(extra)}")
    missing = sorted(KIND_FIELDS[kind] - OPTIONAL_FIELDS.get(kind, set()) - set(doc))
    if missing:
        raise InvalidInput(f"missing field(s) for kind {kind!r}: {', '.join(missing)}")

    if kind == "polygon":
        verts = doc["vertices"]
        if not isinstance(verts, list):
            raise _FieldError("vertices", "'vertices' must be a list of [x, y] pairs")
        pts = []
        for i, v in enumerate(verts):
            if not isinstance(v, list) or len(v) != 2:
                raise _FieldError("vertices", f"vertices[{i}] must be a pair [x, y]")
            pts.append((_coord(v[0], f"vertices[{i}][0]"), _coord(v[1], f"vertices[{i}][1]")))
        try:
            return polygon_norm(pts)
        except InvalidInput as exc:
            raise _FieldError("vertices", f"vertices: {exc}") from None
    if kind == "lp":
        p = doc["p"]
        if isinstance(p, str) and p.strip().lower() in ("inf", "infinity"):
            return lp_norm(math.inf)
        try:
            return lp_norm(_real(p, "p"))
        except _FieldError:
            raise
        except InvalidInput as exc:
            raise _FieldError("p", str(exc)) from None
    if kind == "regular-polygon":
        sides = doc["sides"]
        if isinstance(sides, bool) or not isinstance(sides, int):
            raise _FieldError("sides", f"'sides' must be an integer, got {sides!r}")
        try:
            return regular_polygon_norm(sides, _real(doc.get("rotation", 0), "rotation"))
        except _FieldError:
            raise
        except InvalidInput as exc:
            raise _FieldError("sides", str(exc)) from None
    name = doc["preset"]
    if name not in PRESETS:
        raise _FieldError("preset", f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return preset(name)


def parse_norm_spec(text: str, source: str = "<spec>") -> NormModel:
    try:
        doc = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise SpecError(exc.msg, source, exc.lineno, exc.colno) from None
    try:
        return norm_from_document(doc)
    except _FieldError as exc:
        line, col = _locate(text, exc.field)
        raise SpecError(str(exc), source, line, col) from None
    except InvalidInput as exc:
        raise SpecError(str(exc), source) from None


def load_norm(spec: str) -> NormModel:
    """A preset name or the path of a JSON norm specification."""
    if spec in PRESETS and not os.path.exists(spec):
        return preset(spec)
    try:
        with open(spec, encoding="utf-8") as fh:
            text = fh.read()
    except FileNotFoundError:
        raise SpecError(f"no such file or preset (presets: {', '.join(sorted(PRESETS))})", spec) from None
    except OSError as exc:
        raise SpecError(str(exc), spec) from None
    return parse_norm_spec(text, spec)


def dump_norm_spec(norm: NormModel) -> str:
    return json.dumps(norm.to_document(), indent=2) + "\n"
