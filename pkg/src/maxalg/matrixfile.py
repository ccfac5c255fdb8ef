"""Plain-text matrix files.

A file starts with a header line ``DENSE n`` or ``COORD n`` (a bare ``n``
means DENSE), followed by the body:

* DENSE: n rows of n whitespace-separated nonnegative decimals.
* COORD: lines ``i j value`` with 1-based indices; absent entries are 0
  and repeated ``(i, j)`` pairs are rejected.

Blank lines and lines starting with ``#`` are ignored anywhere.
"""

import math

import numpy as np

from .errors import MatrixFileError
from .maxcore import MaxMatrix

DIGITS = 12


def fmt(x):
    """Decimal rendering at 12 significant digits."""
    return f"{x:.{DIGITS}g}"


def _number(tok, lineno):
    try:
        v = float(tok)
    except ValueError:
        raise MatrixFileError(lineno, f"not a number: {tok!r}") from None
    if not math.isfinite(v):
        raise MatrixFileError(lineno, f"entry must be finite: {tok!r}")
    if v < 0:
        raise MatrixFileError(lineno, f"entry must be nonnegative: {tok!r}")
    return v


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line.split()


def parse_matrix(text):
    """Parse matrix-file text into a MaxMatrix."""
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise MatrixFileError(0, "empty matrix file") from None
    if len(header) == 1:
        kind, size = "DENSE", header[0]
    elif len(header) == 2:
        kind, size = header[0].upper(), header[1]
    else:
        raise MatrixFileError(lineno, "header must be 'DENSE n', 'COORD n' or 'n'")
    if kind not in ("DENSE", "COORD"):
        raise MatrixFileError(lineno, f"unknown format {header[0]!r}")
    try:
        n = int(size)
    except ValueError:
        raise MatrixFileError(lineno, f"dimension is not an integer: {size!r}") from None
    if n < 1:
        raise MatrixFileError(lineno, "dimension must be at least 1")

    values = np.zeros((n, n))
    if kind == "DENSE":
        row = 0
        for lineno, toks in lines:
            if row == n:
                raise MatrixFileError(lineno, f"more than {n} rows")
            if len(toks) != n:
                raise MatrixFileError(lineno, f"row has {len(toks)} entries, expected {n}")
            values[row] = [_number(t, lineno) for t in toks]
            row += 1
        if row != n:
            raise MatrixFileError(0, f"expected {n} rows, found {row}")
    else:
        seen = set()
        for lineno, toks in lines:
            if len(toks) != 3:
                raise MatrixFileError(lineno, "coordinate line must be 'i j value'")
            try:
                i, j = int(toks[0]), int(toks[1])
            except ValueError:
                raise MatrixFileError(lineno, "indices must be integers") from None
            if not (1 <= i <= n and 1 <= j <= n):
                raise MatrixFileError(lineno, f"index ({i}, {j}) out of range 1..{n}")
            if (i, j) in seen:
                raise MatrixFileError(lineno, f"duplicate entry ({i}, {j})")
            seen.add((i, j))
            values[i - 1, j - 1] = _number(toks[2], lineno)
    return MaxMatrix.from_values(values)


def read_matrix(path):
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def format_dense(a, comment=None):
    """DENSE-format text for ``a`` (entries at 12 significant digits)."""
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"DENSE {a.n}")
    vals = a.values()
    for row in vals:
        out.append(" ".join(fmt(v) for v in row))
    return "\n".join(out) + "\n"


def format_coord(a, comment=None):
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"COORD {a.n}")
    vals = a.values()
    for i, j in zip(*np.nonzero(a.positive())):
        out.append(f"{i + 1} {j + 1} {fmt(vals[i, j])}")
    return "\n".join(out) + "\n"
