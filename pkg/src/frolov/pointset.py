"""Plain-text point-set files.

Layout::

    frolovpts 1
    d=<d> n=<n> N=<N> method=<label>
    <x_1> ... <x_d>        (N lines)

Coordinates are written with 17 significant digits, which round-trips
doubles exactly.  ``n`` is the scaling parameter a rule was generated with
(``0`` if there is none).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from .exceptions import PointSetFormatError, PointSetValidationError

__all__ = ["PointSet", "MAGIC", "format_pointset", "write_pointset", "parse_pointset", "read_pointset"]

MAGIC = "frolovpts 1"
_KEYS = ("d", "n", "N", "method")


@dataclass(frozen=True)
class PointSet:
    """Parsed contents of a point-set file."""

    d: int
    n: float
    method: str
    points: np.ndarray = field(repr=False)

    @property
    def N(self) -> int:
        return self.points.shape[0]


def _fmt_n(n) -> str:
    n = float(n)
    return str(int(n)) if n.is_integer() else repr(n)


def format_pointset(points, n=0, method="custom") -> str:
    """Serialize ``points`` (shape ``(N, d)``) to the file format."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise ValueError("points must have shape (N, d)")
    if not method or any(c.isspace() for c in method):
        raise ValueError(f"method label must be a non-empty word, got {method!r}")
    N, d = pts.shape
    lines = [MAGIC, f"d={d} n={_fmt_n(n)} N={N} method={method}"]
    lines += [" ".join("%.17g" % v for v in row) for row in pts]
    return "\n".join(lines) + "\n"


def write_pointset(path, points, n=0, method="custom") -> None:
    """Write a point-set file.  ``OSError`` propagates for unwritable paths."""
    text = format_pointset(points, n, method)
    with open(os.fspath(path), "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)


def _parse_header(line, lineno):
    fields = {}
    for tok in line.split():
        key, sep, val = tok.partition("=")
        if not sep or key not in _KEYS or key in fields:
            raise PointSetFormatError(f"bad header field {tok!r}", lineno)
        fields[key] = val
    missing = [k for k in _KEYS if k not in fields]
    if missing:
        raise PointSetFormatError(f"header lacks {', '.join(missing)}", lineno)
    try:
        d = int(fields["d"])
        N = int(fields["N"])
        n = float(fields["n"])
    except ValueError as exc:
        raise PointSetFormatError(f"bad header value ({exc})", lineno) from None
    if d < 1 or N < 0 or not math.isfinite(n) or n < 0:
        raise PointSetFormatError("header needs d >= 1, N >= 0 and finite n >= 0", lineno)
    if not fields["method"]:
        raise PointSetFormatError("empty method label", lineno)
    return d, n, N, fields["method"]


def parse_pointset(text: str) -> PointSet:
    """Parse file contents.

    Raises
    ------
    PointSetFormatError
        Any structural problem; ``.line`` is the 1-based line number.
    PointSetValidationError
        A coordinate is not a finite number in ``[0, 1]``.
    """
    lines = text.splitlines()
    if not lines or lines[0].strip() != MAGIC:
        raise PointSetFormatError(f"expected {MAGIC!r}", 1)
    if len(lines) < 2:
        raise PointSetFormatError("missing header", 2)
    d, n, N, method = _parse_header(lines[1], 2)
    body = lines[2:]
    # tolerate trailing blank lines only
    while body and not body[-1].strip():
        body.pop()
    if len(body) != N:
        raise PointSetFormatError(f"header says N={N} but found {len(body)} rows", 3 + min(N, len(body)))
    pts = np.empty((N, d))
    for i, row in enumerate(body):
        lineno = i + 3
        toks = row.split()
        if len(toks) != d:
            raise PointSetFormatError(f"expected {d} coordinates, found {len(toks)}", lineno)
        try:
            vals = [float(t) for t in toks]
        except ValueError:
            raise PointSetFormatError(f"cannot parse coordinates {row.strip()!r}", lineno) from None
        for v in vals:
            if not (math.isfinite(v) and 0.0 <= v <= 1.0):
                raise PointSetValidationError(f"coordinate {v!r} outside [0, 1]", lineno)
        pts[i] = vals
    pts.setflags(write=False)
    return PointSet(d=d, n=n, method=method, points=pts)


def read_pointset(path) -> PointSet:
    """Read and parse a point-set file.  ``OSError`` propagates."""
    with open(os.fspath(path), "r", encoding="ascii", errors="replace") as fh:
        return parse_pointset(fh.read())
