"""JSON file formats for instances and fences.

Coordinates are strings holding exact rationals: a plain decimal (``"0.5"``,
``"-3"``) or, for values without a finite decimal expansion, ``"p/q"``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .errors import BadCoordinate, ParseError
from .fence import Fence
from .geom import Instance, Point, Polygon, Segment, euclid_length

_DECIMAL = re.compile(r"[+-]?\d+(\.\d+)?")
_RATIO = re.compile(r"[+-]?\d+/\d+")


def format_rational(q: Fraction) -> str:
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{q.numerator}/{q.denominator}"
    places = max(twos, fives)
    if places == 0:
        return str(q.numerator)
    scaled = abs(q.numerator) * (10**places // q.denominator)
    digits = str(scaled).rjust(places + 1, "0")
    sign = "-" if q < 0 else ""
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def parse_rational(text) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise BadCoordinate(f"coordinate {text!r} is not a decimal string")
    if isinstance(text, int):
        return Fraction(text)
    if _DECIMAL.fullmatch(text):
        return Fraction(text)
    if _RATIO.fullmatch(text):
        num, den = text.split("/")
        if int(den) == 0:
            raise BadCoordinate(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    raise BadCoordinate(f"coordinate {text!r} is not a decimal string")


# ---------------------------------------------------------------------------
# Error positions
# ---------------------------------------------------------------------------

def _skip_ws(text: str, i: int) -> int:
    while i < len(text) and text[i] in " \t\r\n":
        i += 1
    return i


def _offset_of(text: str, path) -> int:
    """Character offset of the JSON value found by following ``path``."""
    dec = json.JSONDecoder()
    i = _skip_ws(text, 0)
    for key in path:
        if isinstance(key, int):
            i = _skip_ws(text, i + 1)
            for _ in range(key):
                _, end = dec.raw_decode(text, i)
                i = _skip_ws(text, _skip_ws(text, end) + 1)
        else:
            i = _skip_ws(text, i + 1)
            while True:
                k, end = dec.raw_decode(text, i)
                i = _skip_ws(text, _skip_ws(text, end) + 1)
                if k == key:
                    break
                _, end = dec.raw_decode(text, i)
                i = _skip_ws(text, _skip_ws(text, end) + 1)
    return i


def _error(cls, message: str, text: str, path) -> ParseError:
    try:
        i = _offset_of(text, path)
    except (ValueError, IndexError):
        i = 0
    line = text.count("\n", 0, i) + 1
    column = i - text.rfind("\n", 0, i)
    return cls(message, line, column)


def _load(data) -> tuple[str, object]:
    text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
    try:
        return text, json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def _point(text, raw, path) -> Point:
    if not isinstance(raw, list) or len(raw) != 2:
        raise _error(ParseError, "a point must be a pair [x, y]", text, path)
    coords = []
    for axis, value in enumerate(raw):
        try:
            coords.append(parse_rational(value))
        except BadCoordinate as exc:
            raise _error(BadCoordinate, str(exc), text, path + [axis]) from None
    return Point(*coords)


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------

def parse_instance(data) -> Instance:
    """Read ``{"num_colors": k, "objects": [{"color": c, "vertices": [[x, y], ...]}]}``."""
    text, doc = _load(data)
    if not isinstance(doc, dict):
        raise _error(ParseError, "top level must be an object", text, [])
    k = doc.get("num_colors")
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise _error(ParseError, "num_colors must be a positive integer", text,
                     ["num_colors"] if "num_colors" in doc else [])
    objs = doc.get("objects")
    if not isinstance(objs, list):
        raise _error(ParseError, "objects must be a list", text, ["objects"] if "objects" in doc else [])
    polygons = []
    for i, raw in enumerate(objs):
        path = ["objects", i]
        if not isinstance(raw, dict):
            raise _error(ParseError, "object must be a JSON object", text, path)
        color = raw.get("color")
        if isinstance(color, bool) or not isinstance(color, int) or color < 0:
            raise _error(ParseError, f"malformed color index {color!r}", text,
                         path + ["color"] if "color" in raw else path)
        verts = raw.get("vertices")
        if not isinstance(verts, list):
            raise _error(ParseError, "vertices must be a list", text,
                         path + ["vertices"] if "vertices" in raw else path)
        pts = tuple(_point(text, v, path + ["vertices", j]) for j, v in enumerate(verts))
        polygons.append(Polygon(pts, color))
    return Instance(k, tuple(polygons))


def serialize_instance(inst: Instance) -> bytes:
    lines = ["{", f'  "num_colors": {inst.num_colors},', '  "objects": [']
    for i, obj in enumerate(inst.objects):
        verts = [[format_rational(v.x), format_rational(v.y)] for v in obj.vertices]
        entry = json.dumps({"color": obj.color, "vertices": verts})
        lines.append(f"    {entry}" + ("," if i < len(inst.objects) - 1 else ""))
    lines += ["  ]", "}"]
    return ("\n".join(lines) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# Fences
# ---------------------------------------------------------------------------

def serialize_fence(fence: Fence) -> bytes:
    lines = ["{", f'  "total_length": {json.dumps(fence.total_length)},', '  "segments": [']
    for i, s in enumerate(fence.segments):
        entry = json.dumps([[format_rational(s.a.x), format_rational(s.a.y)],
                            [format_rational(s.b.x), format_rational(s.b.y)]])
        lines.append(f"    {entry}" + ("," if i < len(fence.segments) - 1 else ""))
    lines += ["  ]", "}"]
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_fence(data) -> Fence:
    text, doc = _load(data)
    if not isinstance(doc, dict) or not isinstance(doc.get("segments"), list):
        raise _error(ParseError, "fence must be an object with a segments list", text, [])
    total = doc.get("total_length")
    if isinstance(total, bool) or not isinstance(total, (int, float)):
        raise _error(ParseError, "total_length must be a number", text,
                     ["total_length"] if "total_length" in doc else [])
    segments = []
    for i, raw in enumerate(doc["segments"]):
        path = ["segments", i]
        if not isinstance(raw, list) or len(raw) != 2:
            raise _error(ParseError, "a segment must be a pair of points", text, path)
        a, b = _point(text, raw[0], path + [0]), _point(text, raw[1], path + [1])
        if a == b:
            raise _error(ParseError, "zero-length fence segment", text, path)
        segments.append(Segment(a, b))
    measured = sum(euclid_length(s) for s in segments)
    if abs(measured - float(total)) > 1e-9 * max(1.0, measured):
        raise _error(ParseError, f"total_length {total} disagrees with segments ({measured})",
                     text, ["total_length"])
    return Fence(tuple(segments), float(total))
