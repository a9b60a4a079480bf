"""Instance files: a small JSON format plus the canonical shipped examples.

An instance is UTF-8 JSON with string labels and string rationals (``"p/q"``
or a bare integer string; floats are rejected)::

    {
      "axes":   [{"name": "x", "values": ["x0", "x1"]}, ...],
      "points": [["x0", "y0", "z0"], ...],
      "f":      {"0": "1", "1": "0"},                      # optional
      "pins":   [{"axis": "x", "value": "x0", "rational": "0"}, ...],  # optional
      "measure": {"0": "1/4", ...}                          # optional
    }

``f`` and ``measure`` are keyed by 0-based point index in file order; point
indices in command-line flags and reports use the same convention.  Missing
``f`` entries default to zero.  ``measure`` entries must be positive and sum
to one; indices left out (or given as "0") are outside the support.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .measures import FiniteMeasure
from .model import (
    FunctionTable,
    PinSet,
    Point,
    PointSet,
    Space,
)

__all__ = [
    "Instance",
    "InstanceError",
    "emit_examples",
    "example_names",
    "example_instance",
    "format_rational",
    "instance_to_dict",
    "load_instance",
    "parse_instance",
    "parse_rational",
]

_RATIONAL = re.compile(r"^-?\d+(/[1-9]\d*)?$")


class InstanceError(ValueError):
    """The instance file is malformed or internally inconsistent."""


def parse_rational(text) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL.match(text):
        raise InstanceError(f"not an exact rational string: {text!r}")
    return Fraction(text)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Instance:
    """A parsed instance; `file_points` keeps the file order for index maps."""

    space: Space
    point_set: PointSet
    file_points: tuple[Point, ...]
    f: FunctionTable | None
    pins: PinSet | None
    measure: FiniteMeasure | None

    def index_of(self, point) -> int:
        return self.file_points.index(tuple(point))


def parse_instance(data: dict) -> Instance:
    try:
        axes = [(str(ax["name"]), [str(v) for v in ax["values"]]) for ax in data["axes"]]
        raw_points = [tuple(str(v) for v in p) for p in data["points"]]
    except (KeyError, TypeError) as exc:
        raise InstanceError(f"missing or malformed field: {exc}") from exc
    try:
        space = Space.of(*axes)
        file_points = tuple(space.validate_point(p) for p in raw_points)
        if len(set(file_points)) != len(file_points):
            raise InstanceError("duplicate points in instance")
        point_set = PointSet(space, file_points)
    except InstanceError:
        raise
    except ValueError as exc:
        raise InstanceError(str(exc)) from exc

    f = None
    if "f" in data:
        table = {p: Fraction(0) for p in file_points}
        for key, raw in data["f"].items():
            idx = _point_index(key, file_points)
            table[file_points[idx]] = parse_rational(raw)
        f = FunctionTable(point_set, table)

    pins = None
    if "pins" in data:
        entries = []
        for pin in data["pins"]:
            try:
                axis = space.axis_index(str(pin["axis"]))
                label = str(pin["value"])
                value = parse_rational(pin["rational"])
            except (KeyError, TypeError, ValueError) as exc:
                raise InstanceError(f"malformed pin {pin!r}: {exc}") from exc
            entries.append(((axis, label), value))
        try:
            pins = PinSet(tuple(entries))
        except ValueError as exc:
            raise InstanceError(str(exc)) from exc

    measure = None
    if "measure" in data:
        weights = {}
        for key, raw in data["measure"].items():
            idx = _point_index(key, file_points)
            w = parse_rational(raw)
            if w < 0:
                raise InstanceError("measure weights must be nonnegative")
            if w > 0:
                weights[file_points[idx]] = w
        try:
            support = PointSet(space, tuple(weights))
            measure = FiniteMeasure(support, weights)
        except ValueError as exc:
            raise InstanceError(str(exc)) from exc

    return Instance(space, point_set, file_points, f, pins, measure)


def _point_index(key, file_points) -> int:
    try:
        idx = int(key)
    except (TypeError, ValueError):
        raise InstanceError(f"point index {key!r} is not an integer") from None
    if not 0 <= idx < len(file_points):
        raise InstanceError(f"point index {idx} out of range")
    return idx


def load_instance(path) -> Instance:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InstanceError("instance file must hold a JSON object")
    return parse_instance(data)


def instance_to_dict(instance: Instance) -> dict:
    """Canonical dictionary form; byte-stable through `dumps_canonical`."""
    data = {
        "axes": [
            {"name": ax.name, "values": list(ax.values)}
            for ax in instance.space.axes
        ],
        "points": [list(p) for p in instance.file_points],
    }
    if instance.f is not None:
        data["f"] = {
            str(i): format_rational(instance.f(p))
            for i, p in enumerate(instance.file_points)
        }
    if instance.pins is not None:
        data["pins"] = [
            {
                "axis": instance.space.axes[coord[0]].name,
                "value": coord[1],
                "rational": format_rational(value),
            }
            for coord, value in instance.pins
        ]
    if instance.measure is not None:
        data["measure"] = {
            str(i): format_rational(instance.measure(p))
            for i, p in enumerate(instance.file_points)
            if instance.measure(p) != 0
        }
    return data


def dumps_canonical(data: dict) -> str:
    return json.dumps(data, indent=2, ensure_ascii=True) + "\n"


# ---------------------------------------------------------------------------
# Shipped examples.


def _rectangle() -> dict:
    return {
        "axes": [
            {"name": "x", "values": ["a", "c"]},
            {"name": "y", "values": ["b", "d"]},
        ],
        "points": [["a", "b"], ["a", "d"], ["c", "b"], ["c", "d"]],
    }


def _ex02() -> dict:
    # Three corners of a 2x2 grid: unique split once u1(0) is chosen.
    return {
        "axes": [
            {"name": "x", "values": ["0", "1"]},
            {"name": "y", "values": ["0", "1"]},
        ],
        "points": [["0", "0"], ["1", "0"], ["0", "1"]],
    }


def _ex04() -> dict:
    # Staircase: one unit at a time along the x, then y, then z axis.
    return {
        "axes": [
            {"name": "x", "values": ["0", "1", "2"]},
            {"name": "y", "values": ["0", "1", "2"]},
            {"name": "z", "values": ["0", "1", "2"]},
        ],
        "points": [
            ["0", "0", "0"],
            ["1", "0", "0"],
            ["1", "1", "0"],
            ["1", "1", "1"],
            ["2", "1", "1"],
            ["2", "2", "1"],
            ["2", "2", "2"],
        ],
    }


def _cube_axes() -> list:
    return [
        {"name": "x", "values": ["0", "1"]},
        {"name": "y", "values": ["0", "1"]},
        {"name": "z", "values": ["0", "1"]},
    ]


def _ex05() -> dict:
    return {
        "axes": _cube_axes(),
        "points": [["0", "0", "0"], ["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
    }


def _e5plus() -> dict:
    data = _ex05()
    data["points"] = data["points"] + [["1", "1", "1"]]
    return data


def _t4() -> dict:
    return {
        "axes": _cube_axes(),
        "points": [["1", "0", "1"], ["1", "1", "0"], ["0", "1", "1"], ["0", "0", "0"]],
    }


def _ex07() -> dict:
    return {
        "axes": [
            {"name": "x", "values": ["1", "4", "7"]},
            {"name": "y", "values": ["2", "5", "8"]},
            {"name": "z", "values": ["3", "6", "9"]},
        ],
        "points": [["1", "2", "3"], ["4", "5", "6"], ["7", "8", "9"], ["1", "5", "9"]],
    }


def _ex08() -> dict:
    # The cross through (a1, a2, a3) with three values per axis.
    axes = [
        {"name": "x", "values": ["a1", "b1", "c1"]},
        {"name": "y", "values": ["a2", "b2", "c2"]},
        {"name": "z", "values": ["a3", "b3", "c3"]},
    ]
    points = []
    for i in range(3):
        for v in axes[i]["values"]:
            p = ["a1", "a2", "a3"]
            p[i] = v
            if p not in points:
                points.append(p)
    return {"axes": axes, "points": points}


def _example10(depth: int) -> dict:
    """Doubling-chain prefix: 1 + 3*depth points with axes of size depth + 1."""
    if depth < 1:
        raise InstanceError("depth must be at least 1")
    points = [["x0", "y0", "z0"]]
    for m in range(depth):
        points.append([f"x{m+1}", "y0", f"z{m}"])
        points.append(["x0", f"y{m+1}", f"z{m}"])
        points.append([f"x{m+1}", f"y{m+1}", f"z{m+1}"])
    axes = [
        {"name": "x", "values": [f"x{i}" for i in range(depth + 1)]},
        {"name": "y", "values": [f"y{i}" for i in range(depth + 1)]},
        {"name": "z", "values": [f"z{i}" for i in range(depth + 1)]},
    ]
    f = {str(i): "1" if i == 0 else "0" for i in range(len(points))}
    pins = [
        {"axis": "x", "value": "x0", "rational": "0"},
        {"axis": "y", "value": "y0", "rational": "0"},
    ]
    return {"axes": axes, "points": points, "f": f, "pins": pins}


_BUILDERS = {
    "rectangle": _rectangle,
    "ex02": _ex02,
    "ex04": _ex04,
    "ex05": _ex05,
    "e5plus": _e5plus,
    "t4": _t4,
    "ex07": _ex07,
    "ex08": _ex08,
}
for _depth in range(1, 7):
    _BUILDERS[f"ex10_depth{_depth}"] = (lambda d: (lambda: _example10(d)))(_depth)


def example_names() -> tuple[str, ...]:
    return tuple(_BUILDERS)


def example_instance(name: str) -> dict:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise InstanceError(f"no shipped example named {name!r}") from None


def emit_examples(directory) -> list[Path]:
    """Write every shipped example as `<name>.json` into the directory."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name in example_names():
        path = directory / f"{name}.json"
        path.write_text(dumps_canonical(example_instance(name)), encoding="utf-8")
        written.append(path)
    return written
