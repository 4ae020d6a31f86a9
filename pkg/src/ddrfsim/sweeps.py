"""Labeled 2D parameter-sweep results and their CSV representation.

The file format is plain CSV with a leading comment block: a magic line,
one ``# key: value`` line per metadata entry, then a header naming the axes
and their units, then ``x,y,value`` triples in row-major order (x slowest).
All numbers are printed with 9 significant digits, so identical sweeps
serialize to identical bytes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError

_MAGIC = "# ddrfsim-sweep 1"
_HEADER_RE = re.compile(r"^(?P<xn>[^,\[\]]+) \[(?P<xu>[^\]]*)\],(?P<yn>[^,\[\]]+) \[(?P<yu>[^\]]*)\],value$")


@dataclass(frozen=True)
class SweepResult:
    """A scalar quantity evaluated on an x-by-y grid, with axis metadata."""

    x_name: str
    x_unit: str
    x_values: np.ndarray
    y_name: str
    y_unit: str
    y_values: np.ndarray
    values: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        x = np.asarray(self.x_values, dtype=float)
        y = np.asarray(self.y_values, dtype=float)
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "x_values", x)
        object.__setattr__(self, "y_values", y)
        object.__setattr__(self, "values", v)
        if x.ndim != 1 or y.ndim != 1:
            raise InvalidInputError("axis grids must be 1D")
        if v.shape != (x.size, y.size):
            raise InvalidInputError(
                f"values shape {v.shape} does not match grids ({x.size}, {y.size})"
            )
        if np.any(np.isnan(v)):
            raise InvalidInputError("sweep values must not contain NaN")

    def argbest(self, mode="min"):
        """Grid indices (i, j) of the smallest or largest value."""
        op = np.argmin if mode == "min" else np.argmax
        return np.unravel_index(op(self.values), self.values.shape)


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def write_sweep_csv(sweep: SweepResult, path) -> None:
    lines = [_MAGIC]
    for key, value in sweep.metadata.items():
        lines.append(f"# {key}: {value}")
    lines.append(
        f"{sweep.x_name} [{sweep.x_unit}],{sweep.y_name} [{sweep.y_unit}],value"
    )
    for i, x in enumerate(sweep.x_values):
        for j, y in enumerate(sweep.y_values):
            lines.append(f"{_fmt(x)},{_fmt(y)},{_fmt(sweep.values[i, j])}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_sweep_csv(path) -> SweepResult:
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines or lines[0] != _MAGIC:
        raise InvalidInputError(f"{path}: not a ddrfsim sweep CSV (missing magic line)")
    metadata = {}
    idx = 1
    while idx < len(lines) and lines[idx].startswith("#"):
        body = lines[idx][1:].strip()
        if ":" in body:
            key, _, value = body.partition(":")
            metadata[key.strip()] = value.strip()
        idx += 1
    if idx >= len(lines):
        raise InvalidInputError(f"{path}: missing header line")
    m = _HEADER_RE.match(lines[idx])
    if not m:
        raise InvalidInputError(f"{path}: malformed header {lines[idx]!r}")
    idx += 1
    rows = []
    for ln in lines[idx:]:
        if not ln:
            continue
        parts = ln.split(",")
        if len(parts) != 3:
            raise InvalidInputError(f"{path}: malformed data row {ln!r}")
        try:
            rows.append(tuple(float(p) for p in parts))
        except ValueError as exc:
            raise InvalidInputError(f"{path}: non-numeric data row {ln!r}") from exc
    if not rows:
        raise InvalidInputError(f"{path}: no data rows")
    data = np.asarray(rows)
    # rows are x-major: the leading block of identical x spans the y grid
    ny = 1
    while ny < data.shape[0] and data[ny, 0] == data[0, 0]:
        ny += 1
    if data.shape[0] % ny != 0:
        raise InvalidInputError(f"{path}: row count does not form a full grid")
    nx = data.shape[0] // ny
    x_values = data[::ny, 0]
    y_values = data[:ny, 1]
    if not np.array_equal(np.tile(y_values, nx), data[:, 1]) or not np.array_equal(
        np.repeat(x_values, ny), data[:, 0]
    ):
        raise InvalidInputError(f"{path}: rows are not in row-major grid order")
    values = data[:, 2].reshape(nx, ny)
    return SweepResult(
        x_name=m["xn"], x_unit=m["xu"], x_values=x_values,
        y_name=m["yn"], y_unit=m["yu"], y_values=y_values,
        values=values, metadata=metadata,
    )
