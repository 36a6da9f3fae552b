"""Shared CSV loading for the figure scripts.

Each figure script declares the columns it needs; anything missing is a
schema error that names the column, and zero usable data rows is an
error rather than an empty image.
"""

from __future__ import annotations

import csv


class SchemaError(ValueError):
    pass


class EmptyDataError(ValueError):
    pass


def load_rows(path: str, required: list[str]) -> list[dict[str, str]]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        fields = reader.fieldnames or []
        for col in required:
            if col not in fields:
                raise SchemaError(f"{path}: missing required column {col!r}")
        rows = list(reader)
    if not rows:
        raise EmptyDataError(f"{path}: no data rows")
    return rows


def fnum(row: dict[str, str], col: str) -> float:
    return float(row[col])


def print_aggregate(name: str, value: float, **labels) -> None:
    """One machine-checkable line per printed aggregate."""
    tag = " ".join(f"{k}={v}" for k, v in labels.items())
    print(f"{name} {tag} {value!r}".replace("  ", " "))
