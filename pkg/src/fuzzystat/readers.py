"""Numeric series ingestion from CSV and JSONL."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Iterable, TextIO

import numpy as np


class ParseError(ValueError):
    pass


def infer_format(path: str | None) -> str:
    if path and path.lower().endswith((".jsonl", ".ndjson")):
        return "jsonl"
    return "csv"


def _finish(values: list[float], nonfinite: list[int]) -> np.ndarray:
    if nonfinite:
        raise ParseError(
            f"{len(nonfinite)} non-finite value(s) rejected (first at line {nonfinite[0]})"
        )
    if not values:
        raise ParseError("input contains no values")
    return np.array(values, dtype=np.float64)


def read_csv(lines: Iterable[str], column: int = 0) -> np.ndarray:
    values, nonfinite = [], []
    seen_row = False
    for lineno, row in enumerate(csv.reader(lines), start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        first, seen_row = not seen_row, True
        if column >= len(row):
            raise ParseError(f"line {lineno}: no column {column} (row has {len(row)})")
        cell = row[column].strip()
        try:
            x = float(cell)
        except ValueError:
            if first:
                continue  # header row
            raise ParseError(f"line {lineno}: not a number: {cell!r}") from None
        if not math.isfinite(x):
            nonfinite.append(lineno)
        values.append(x)
    return _finish(values, nonfinite)


def read_jsonl(lines: Iterable[str], field: str | None = None) -> np.ndarray:
    values, nonfinite = [], []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {lineno}: invalid JSON ({exc.msg})") from None
        if isinstance(obj, dict):
            if field is None:
                raise ParseError(f"line {lineno}: object row needs --field")
            if field not in obj:
                raise ParseError(f"line {lineno}: missing field {field!r}")
            obj = obj[field]
        if isinstance(obj, bool) or not isinstance(obj, (int, float)):
            raise ParseError(f"line {lineno}: not a number: {obj!r}")
        x = float(obj)
        if not math.isfinite(x):
            nonfinite.append(lineno)
        values.append(x)
    return _finish(values, nonfinite)


def read_series(
    stream: TextIO | str,
    fmt: str = "csv",
    column: int = 0,
    field: str | None = None,
) -> np.ndarray:
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    if fmt == "csv":
        return read_csv(stream, column)
    if fmt == "jsonl":
        return read_jsonl(stream, field)
    raise ValueError(f"unknown format {fmt!r}")
