"""Text formats for transfer matrices and Markov measures.

Matrix file::

    2
    1 1
    1 0

Measure file (``m``, initial vector, then the ``m`` transition rows)::

    2
    0.56984029099805 0.43015970900195
    0.56984029099805 0.43015970900195
    1 0

Decimals are written with 17 significant digits so files round-trip exactly.
"""

from __future__ import annotations

import warnings
from pathlib import Path

import numpy as np

from .errors import NotPrimitiveWithinCap, ParseError
from .markov import MarkovMeasure
from .subshift import TransferMatrix, validate_primitive


def _read(source) -> str:
    if isinstance(source, Path):
        return source.read_text()
    if isinstance(source, str) and "\n" not in source and Path(source).exists():
        return Path(source).read_text()
    return str(source)


def _tokens(line: str):
    """Yield ``(column, token)`` with 1-based columns."""
    col = 0
    for tok in line.split():
        col = line.index(tok, col)
        yield col + 1, tok
        col += len(tok)


def _lines(text: str):
    lines = text.splitlines()
    # leading/trailing blank lines are whitespace; interior ones are not
    start = 0
    while start < len(lines) and not lines[start].strip():
        start += 1
    end = len(lines)
    while end > start and not lines[end - 1].strip():
        end -= 1
    return [(i + 1, lines[i]) for i in range(start, end)]


def _header(lines) -> int:
    if not lines:
        raise ParseError("empty document", 1, 1)
    lineno, first = lines[0]
    toks = list(_tokens(first))
    if len(toks) != 1:
        raise ParseError("first line must hold the alphabet size m alone", lineno, 1)
    col, tok = toks[0]
    try:
        m = int(tok)
    except ValueError:
        raise ParseError(f"alphabet size {tok!r} is not an integer", lineno, col) from None
    if m < 2:
        raise ParseError(f"alphabet size must be >= 2, got {m}", lineno, col)
    return m


def parse_matrix_text(text: str) -> TransferMatrix:
    lines = _lines(text)
    m = _header(lines)
    body = lines[1:]
    if len(body) != m:
        last = lines[-1][0]
        raise ParseError(f"expected {m} matrix rows, found {len(body)}", last, 1)
    rows = []
    for lineno, line in body:
        toks = list(_tokens(line))
        if len(toks) != m:
            raise ParseError(f"expected {m} entries, found {len(toks)}", lineno, 1)
        row = []
        for col, tok in toks:
            if tok not in ("0", "1"):
                raise ParseError(f"entry {tok!r} is not 0 or 1", lineno, col)
            row.append(int(tok))
        rows.append(row)
    return TransferMatrix(np.array(rows, dtype=np.int64))


def parse_matrix(source, strict: bool = True) -> TransferMatrix:
    """Parse a matrix document (path or text) and check primitivity.

    Non-primitive matrices raise ``NotPrimitiveWithinCap`` when ``strict``,
    otherwise a warning is issued and the matrix returned.
    """
    A = parse_matrix_text(_read(source))
    try:
        validate_primitive(A)
    except NotPrimitiveWithinCap as exc:
        if strict:
            raise
        warnings.warn(str(exc), stacklevel=2)
    return A


def format_matrix(A: TransferMatrix) -> str:
    rows = [" ".join(str(int(x)) for x in row) for row in A.entries]
    return f"{A.m}\n" + "\n".join(rows) + "\n"


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def format_measure(mu: MarkovMeasure) -> str:
    lines = [str(mu.m), " ".join(_fmt(x) for x in mu.initial)]
    lines += [" ".join(_fmt(x) for x in row) for row in mu.transitions]
    return "\n".join(lines) + "\n"


def parse_measure_text(text: str, support: TransferMatrix | None = None) -> MarkovMeasure:
    """Parse a measure document; the support defaults to the positive pattern of P."""
    lines = _lines(text)
    m = _header(lines)
    body = lines[1:]
    if len(body) != m + 1:
        raise ParseError(f"expected {m + 1} lines after the header, found {len(body)}", lines[-1][0], 1)
    vals = []
    for lineno, line in body:
        toks = list(_tokens(line))
        if len(toks) != m:
            raise ParseError(f"expected {m} decimals, found {len(toks)}", lineno, 1)
        row = []
        for col, tok in toks:
            try:
                row.append(float(tok))
            except ValueError:
                raise ParseError(f"{tok!r} is not a decimal", lineno, col) from None
        vals.append(row)
    init = np.array(vals[0])
    P = np.array(vals[1:])
    if support is None:
        support = TransferMatrix((P > 0).astype(np.int64))
    try:
        return MarkovMeasure(init, P, support)
    except ValueError as exc:
        raise ParseError(str(exc), body[0][0], 1) from None


def parse_measure(source, support: TransferMatrix | None = None) -> MarkovMeasure:
    return parse_measure_text(_read(source), support)
