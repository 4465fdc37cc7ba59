"""Input validation for the array-based estimator API."""
from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .errors import OutOfRangeScore
from .model import LIKERT_MAX, LIKERT_MIN


def check_likert(X: np.ndarray, *, allow_nan: bool = False, columns: Optional[Sequence[str]] = None) -> np.ndarray:
    """Ensure every cell is an integer score in 1..5 (NaN allowed when ``allow_nan``).

    Returns a float array for NaN-tolerant input, an int array otherwise.
    """
    X = np.asarray(X, dtype=float)
    present = ~np.isnan(X)
    if not allow_nan and not present.all():
        row, col = np.argwhere(~present)[0]
        raise OutOfRangeScore("missing score", int(row), _col(columns, col))
    vals = np.where(present, X, LIKERT_MIN)
    bad = (vals < LIKERT_MIN) | (vals > LIKERT_MAX) | (vals != np.round(vals))
    if bad.any():
        row, col = np.argwhere(bad)[0]
        raise OutOfRangeScore(f"{X[row, col]!r} is not an integer score in 1..5", int(row), _col(columns, col))
    return X if allow_nan else X.astype(np.int64)


def _col(columns, index) -> Optional[str]:
    if columns is None:
        return str(int(index))
    return str(columns[int(index)])
