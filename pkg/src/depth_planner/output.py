"""Byte-stable rendering of results as bare numbers, CSV tables, or JSON.

Numbers are printed to a fixed count of significant digits with ``%g``
semantics (trailing zeros dropped, scientific notation below 1e-4), so a
given result always serializes to the same bytes. JSON documents carry the
floats re-parsed from that same rendering, which keeps ``json.dumps``
output identical across runs and platforms.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass

from .errors import DomainError
from .series import CurveSeries, SurfaceSeries, Trajectory

__all__ = [
    "OutputEnvelope",
    "format_number",
    "render_table",
    "render_json",
    "series_table",
    "emit",
    "emit_curve",
    "tool_provenance",
]

_FORMATS = ("csv", "json")


def format_number(value, precision: int = 9) -> str:
    """Render a number at ``precision`` significant digits.

    Integers print in full; floats use ``%g``, which switches to scientific
    notation for magnitudes below 1e-4 and never emits trailing zeros.
    """
    if isinstance(value, bool):
        raise DomainError(f"expected a number, got {value!r}")
    if isinstance(value, int):
        return str(value)
    x = float(value)
    if x == 0.0:
        return "0"  # normalize -0.0
    return f"{x:.{int(precision)}g}"


@dataclass(frozen=True, slots=True)
class OutputEnvelope:
    """How to serialize a result: format, significant digits, destination.

    ``destination`` is a file path, or None for standard output.
    """

    format: str = "csv"
    precision: int = 9
    destination: str | None = None

    def __post_init__(self) -> None:
        if self.format not in _FORMATS:
            raise DomainError(f"format must be one of {_FORMATS}, got {self.format!r}")
        if (
            not isinstance(self.precision, int)
            or isinstance(self.precision, bool)
            or self.precision < 1
        ):
            raise DomainError(
                f"precision must be a positive integer, got {self.precision!r}"
            )


def series_table(series):
    """Column labels and rows for a curve, trajectory, or surface."""
    if isinstance(series, CurveSeries):
        return (series.x_label, series.y_label), series.points
    if isinstance(series, Trajectory):
        return (series.t_label, series.y_label), series.points
    if isinstance(series, SurfaceSeries):
        return (series.a_label, series.b_label, series.y_label), series.points
    raise DomainError(f"cannot tabulate a {type(series).__name__}")


def render_table(header, rows, precision: int = 9) -> str:
    """CSV text: header row, comma separator, '.' decimal, LF line endings."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(
            ",".join(
                v if isinstance(v, str) else format_number(v, precision) for v in row
            )
        )
    return "\n".join(lines) + "\n"


def _reparsed(value, precision: int):
    # Floats are replaced by float(format_number(x)) so the JSON bytes only
    # depend on the chosen precision, never on repr() vagaries.
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        return float(format_number(value, precision))
    if isinstance(value, dict):
        return {k: _reparsed(v, precision) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_reparsed(v, precision) for v in value]
    return value


def render_json(inputs: dict, outputs: dict, provenance: dict, precision: int = 9) -> str:
    doc = {
        "inputs": _reparsed(inputs, precision),
        "outputs": _reparsed(outputs, precision),
        "provenance": _reparsed(provenance, precision),
    }
    return json.dumps(doc, indent=2) + "\n"


def tool_provenance(seed=None) -> dict:
    """Provenance block for JSON envelopes; carries the seed when the
    result came from a seeded simulation."""
    from . import __version__

    provenance = {"tool": "depth-planner", "version": __version__}
    if seed is not None:
        provenance["seed"] = int(seed)
    return provenance


def emit(text: str, destination: str | None = None) -> None:
    """Write rendered text to a file or stdout. I/O errors propagate."""
    if destination is None:
        sys.stdout.write(text)
    else:
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def emit_curve(series, envelope: OutputEnvelope, inputs=None, provenance=None) -> str:
    """Serialize a series per the envelope and write it; returns the text."""
    header, rows = series_table(series)
    if envelope.format == "csv":
        text = render_table(header, rows, envelope.precision)
    else:
        outputs = {"labels": list(header), "points": [list(row) for row in rows]}
        text = render_json(
            inputs if inputs is not None else {},
            outputs,
            provenance if provenance is not None else tool_provenance(),
            envelope.precision,
        )
    emit(text, envelope.destination)
    return text
