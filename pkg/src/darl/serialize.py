"""Deterministic serialization: fixed-digit JSON and the CSV artifacts.

Every float is rendered at 15 significant digits so that identical inputs
produce byte-identical files on any platform; shortest-round-trip repr is
never used for persisted output.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Sequence

import numpy as np

FLOAT_DIGITS = 15


def format_float(value: float) -> str:
    """Render a finite float at FLOAT_DIGITS significant digits."""
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"cannot serialize non-finite value {value!r}")
    return format(value, f".{FLOAT_DIGITS}g")


def _scalar(obj) -> str | None:
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    return None


def _render(obj, level: int) -> str:
    atom = _scalar(obj)
    if atom is not None:
        return atom
    pad = "  " * (level + 1)
    close = "  " * level
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        parts = []
        for key, value in obj.items():
            if not isinstance(key, (str, int, np.integer)):
                raise TypeError(f"JSON keys must be str or int, got {type(key).__name__}")
            parts.append(f"{pad}{json.dumps(str(key))}: {_render(value, level + 1)}")
        return "{\n" + ",\n".join(parts) + f"\n{close}}}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        items = list(obj)
        if not items:
            return "[]"
        atoms = [_scalar(item) for item in items]
        if all(a is not None for a in atoms):
            return "[" + ", ".join(atoms) + "]"
        return "[\n" + ",\n".join(pad + _render(item, level + 1) for item in items) + f"\n{close}]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def render_json(obj) -> str:
    """Deterministic JSON text: 2-space indent, insertion-ordered keys,
    scalar-only arrays inlined, floats at 15 significant digits."""
    return _render(obj, 0)


def render_series_csv(values: Iterable[float]) -> str:
    """Single-column CSV with an unquoted Ordered_Value header."""
    lines = ["Ordered_Value"]
    lines.extend(format_float(v) for v in values)
    return "\n".join(lines) + "\n"


def render_plot_csv(rows: Iterable[tuple[float, float, float]]) -> str:
    """Figure-data CSV with columns length_m,t_sim_c,t_obs_c."""
    lines = ["length_m,t_sim_c,t_obs_c"]
    for length, t_sim, t_obs in rows:
        lines.append(",".join((format_float(length), format_float(t_sim), format_float(t_obs))))
    return "\n".join(lines) + "\n"


def render_table(headers: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    """Aligned human-readable table: first column left, the rest right."""
    cells = [[str(h) for h in headers]]
    for row in rows:
        cells.append([c if isinstance(c, str) else format(c, ".4f") if isinstance(c, float) else str(c) for c in row])
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    out = []
    for r, row in enumerate(cells):
        line = "  ".join(
            row[i].ljust(widths[i]) if i == 0 else row[i].rjust(widths[i])
            for i in range(len(row))
        )
        out.append(line.rstrip())
        if r == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out) + "\n"
