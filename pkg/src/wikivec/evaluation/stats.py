"""Rank correlation with proper tie handling.

Spearman's coefficient is computed as the Pearson correlation of average
(fractional) ranks, which stays correct in the presence of ties where the
popular 6*sum(d^2) shortcut does not.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np


def average_ranks(values: Sequence[float]) -> np.ndarray:
    """1-based ranks; tied values share the mean of the ranks they occupy."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError("values must be one-dimensional")
    order = np.argsort(arr, kind="stable")
    ranks = np.empty(arr.size, dtype=np.float64)
    i = 0
    while i < arr.size:
        j = i
        while j + 1 < arr.size and arr[order[j + 1]] == arr[order[i]]:
            j += 1
        # Positions i..j (0-based) hold one tie group; average their 1-based ranks.
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Spearman rho of two equal-length sequences (n >= 2).

    A constant sequence has zero rank variance, which leaves the coefficient
    undefined; that case returns NaN.
    """
    rx = average_ranks(x)
    ry = average_ranks(y)
    if rx.size != ry.size:
        raise ValueError("sequences must have equal length")
    if rx.size < 2:
        raise ValueError("need at least two observations")
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        return float("nan")
    return float((dx @ dy) / np.sqrt(sxx * syy))
