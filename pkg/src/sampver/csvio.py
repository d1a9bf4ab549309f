"""Sample CSV files.

SDF-value files hold one number per line with an optional ``g`` header.
Point files hold one comma-separated point per line with an optional header
line. Blank lines are ignored. Values are written with 17 significant digits.
"""

import math

import numpy as np

from .errors import InputError


def _lines(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read().splitlines()
    except FileNotFoundError:
        raise InputError(f"sample file not found: {path}") from None
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _number(text, lineno, path):
    try:
        value = float(text)
    except ValueError:
        raise InputError(f"{path}:{lineno}: cannot parse {text.strip()!r} as a number") from None
    if not math.isfinite(value):
        raise InputError(f"{path}:{lineno}: non-finite value {text.strip()!r}")
    return value


def read_values(path):
    values = []
    for lineno, line in enumerate(_lines(path), start=1):
        text = line.strip()
        if not text:
            continue
        if not values and lineno == 1 and text.lower() == "g":
            continue
        values.append(_number(text, lineno, path))
    if not values:
        raise InputError(f"{path}: no samples")
    return np.array(values)


def read_points(path):
    rows, width = [], None
    for lineno, line in enumerate(_lines(path), start=1):
        text = line.strip()
        if not text:
            continue
        fields = text.split(",")
        if lineno == 1:
            try:
                [float(f) for f in fields]
            except ValueError:
                continue  # header
        row = [_number(f, lineno, path) for f in fields]
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise InputError(f"{path}:{lineno}: expected {width} columns, got {len(row)}")
        rows.append(row)
    if not rows:
        raise InputError(f"{path}: no samples")
    return np.array(rows)


def write_values(path, values):
    np.savetxt(path, np.asarray(values, dtype=np.float64).reshape(-1), fmt="%.17g")


def write_points(path, points):
    np.savetxt(path, np.atleast_2d(points), fmt="%.17g", delimiter=",")
