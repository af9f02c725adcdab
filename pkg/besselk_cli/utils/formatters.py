"""
Formatting utilities for command-line output
"""

import json
from typing import Iterable, Sequence

import pandas as pd

# Fixed column order per command
COLUMNS = {
    "eval": ["x", "n", "t_derivative", "k_derivative", "error_estimate", "oracle", "rel_diff"],
    "table": ["x", "n", "t_derivative", "k_derivative", "error_estimate"],
    "verify": ["check_id", "at", "lhs", "rhs", "abs_diff", "rel_diff", "tol", "pass"],
    "alpha": ["n", "alpha", "tail_estimate", "fd_comparator", "rel_diff", "terms"],
}


def reports_to_records(reports: Iterable) -> list[dict]:
    """VerificationReport objects to plain dicts with a 'pass' key"""
    return [r.to_record() for r in reports]


def _round(value, digits: int):
    if isinstance(value, bool) or not isinstance(value, float):
        return value
    if digits >= 17:
        return value
    return float(f"{value:.{digits}g}")


def _ordered(record: dict, columns: Sequence[str], digits: int) -> dict:
    ordered = {}
    for key in columns:
        value = record.get(key)
        if isinstance(value, list):
            value = [_round(v, digits) for v in value]
        ordered[key] = _round(value, digits)
    return ordered


def format_records(records: list[dict], command: str, fmt: str = "json", digits: int = 17) -> str:
    """
    Serialize records for stdout.

    JSON keeps the per-j 'terms' list of alpha rows; CSV drops it and writes
    floats with `digits` significant digits.
    """
    columns = COLUMNS[command]
    if fmt == "json":
        rows = [_ordered(r, columns, digits) for r in records]
        return json.dumps(rows, indent=2)
    if fmt == "csv":
        csv_columns = [c for c in columns if c != "terms"]
        frame = pd.DataFrame([{c: r.get(c) for c in csv_columns} for r in records], columns=csv_columns)
        return frame.to_csv(index=False, float_format=f"%.{digits}g", lineterminator="\n")
    raise ValueError(f"unknown output format {fmt!r}; use json or csv")
