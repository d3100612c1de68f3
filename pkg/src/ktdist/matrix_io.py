"""Matrix interchange: plain text, JSON and CSV."""

from __future__ import annotations

import csv
import io
import json
from typing import Sequence

from .linalg import IntMatrix


class MatrixFormatError(ValueError):
    pass


def format_text(m: Sequence[Sequence[int]]) -> str:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    lines = [f"{rows} {cols}"]
    lines.extend(" ".join(str(x) for x in row) for row in m)
    return "\n".join(lines) + "\n"


def format_json(m: Sequence[Sequence[int]]) -> str:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    return json.dumps({"rows": rows, "cols": cols, "data": [list(r) for r in m]}) + "\n"


def format_csv(m: Sequence[Sequence[int]], labels: Sequence[str] | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if labels is not None:
        w.writerow(["", *labels])
        for lab, row in zip(labels, m):
            w.writerow([lab, *row])
    else:
        w.writerows(m)
    return buf.getvalue()


def _int(token: str, line: int, col: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise MatrixFormatError(f"line {line}, column {col}: not an integer: {token!r}") from None


def parse_text(text: str) -> IntMatrix:
    lines = [ln for ln in text.splitlines()]
    body = [(i + 1, ln) for i, ln in enumerate(lines) if ln.strip()]
    if not body:
        raise MatrixFormatError("line 1: empty input, expected 'rows cols'")
    lineno, header = body[0]
    parts = header.split()
    if len(parts) != 2:
        raise MatrixFormatError(f"line {lineno}: header must be 'rows cols', got {header.strip()!r}")
    rows, cols = _int(parts[0], lineno, 1), _int(parts[1], lineno, 2)
    if rows < 0 or cols < 0:
        raise MatrixFormatError(f"line {lineno}: negative dimensions")
    data = body[1:]
    if len(data) != rows:
        where = data[-1][0] + 1 if data else lineno + 1
        raise MatrixFormatError(f"line {where}: expected {rows} rows, found {len(data)}")
    out = []
    for lineno, ln in data:
        tokens = ln.split()
        if len(tokens) != cols:
            raise MatrixFormatError(
                f"line {lineno}, column {min(len(tokens), cols) + 1}: expected {cols} entries, found {len(tokens)}"
            )
        out.append([_int(tok, lineno, c + 1) for c, tok in enumerate(tokens)])
    return out


def parse_json(text: str) -> IntMatrix:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise MatrixFormatError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(obj, dict) or not {"rows", "cols", "data"} <= obj.keys():
        raise MatrixFormatError("line 1: JSON matrix must have keys rows, cols, data")
    rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    if len(data) != rows:
        raise MatrixFormatError(f"row {len(data) + 1}: expected {rows} rows, found {len(data)}")
    for i, row in enumerate(data):
        if len(row) != cols:
            raise MatrixFormatError(f"row {i + 1}: expected {cols} entries, found {len(row)}")
        for j, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool):
                raise MatrixFormatError(f"row {i + 1}, column {j + 1}: not an integer: {x!r}")
    return [list(r) for r in data]


def parse_csv(text: str) -> tuple[IntMatrix, list[str] | None]:
    records = [r for r in csv.reader(io.StringIO(text)) if r]
    if not records:
        raise MatrixFormatError("line 1: empty CSV")
    labels = None
    if records[0] and records[0][0].strip() == "":
        labels = [x.strip() for x in records[0][1:]]
        body = [(i + 2, r[1:]) for i, r in enumerate(records[1:])]
    else:
        body = [(i + 1, r) for i, r in enumerate(records)]
    out = []
    width = len(body[0][1]) if body else 0
    for lineno, r in body:
        if len(r) != width:
            raise MatrixFormatError(f"line {lineno}: expected {width} entries, found {len(r)}")
        out.append([_int(x.strip(), lineno, c + 1) for c, x in enumerate(r)])
    return out, labels


def parse_matrix(text: str) -> IntMatrix:
    """Sniff JSON / CSV / plain text and parse."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_json(text)
    first = stripped.splitlines()[0] if stripped else ""
    # text headers are always "rows cols"; anything else is CSV
    if "," in first or len(first.split()) == 1:
        return parse_csv(text)[0]
    return parse_text(text)
