"""Map real-valued samples onto integer classes 1..c.

Five approaches are provided: linear min/max scaling, rank-based sorting,
and three sigmoid-family transforms (logistic, tanh, normal CDF) centred on
the signal mean and scaled by its standard deviation.  Apart from sorting,
which assigns classes straight from ranks, every approach funnels through
the same rule: a unit-range value y is stretched to z = c*y + 0.5, rounded
half-up, and clamped into [1, c].  Classes are therefore equal-width bins
of y, with only the exact endpoints touching the clamp.

Statistics follow the population convention (divide by N, not N-1).  All
mappings recompute their statistics from the segment they are given, so
windowed callers get per-window adaptation for free.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import expit, ndtr

from .errors import UndefinedResultError

MAPPING_KINDS = ("linear", "sorting", "logsig", "tansig", "ncdf")


def as_signal(x) -> np.ndarray:
    """Return ``x`` as a 1-D float64 array, rejecting empty or non-finite input."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    elif arr.ndim != 1:
        raise ValueError(f"expected a 1-D signal, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("empty signal")
    if not np.all(np.isfinite(arr)):
        raise ValueError("signal contains NaN or infinite samples")
    return arr


@dataclass(frozen=True)
class SignalStats:
    mean: float
    sd: float
    min: float
    max: float


def compute_stats(x) -> SignalStats:
    """Population mean and SD plus exact extrema of a signal."""
    arr = as_signal(x)
    return SignalStats(
        mean=float(arr.mean()),
        sd=float(arr.std()),
        min=float(arr.min()),
        max=float(arr.max()),
    )


def _check_classes(c: int) -> int:
    if int(c) != c or c < 2:
        raise ValueError(f"class count must be an integer >= 2, got {c!r}")
    return int(c)


def discretize_unit(y, c: int) -> np.ndarray:
    """Turn unit-range values into classes 1..c.

    Parameters
    ----------
    y : array_like
        Values in [0, 1].  Anything outside (including NaN) is an error.
    c : int
        Number of classes, at least 2.

    Returns
    -------
    numpy.ndarray of int64
        Class labels in [1, c].  Each value is c*y + 0.5 rounded half-up
        (ties away from zero is irrelevant here since z > 0), then clamped
        so the exact endpoints y=0 and y=1 land in classes 1 and c.
    """
    c = _check_classes(c)
    arr = np.asarray(y, dtype=np.float64)
    with np.errstate(invalid="ignore"):
        bad = ~((arr >= 0.0) & (arr <= 1.0))
    if np.any(bad):
        raise ValueError("mapped values fall outside the unit interval")
    z = np.floor(c * arr + 1.0).astype(np.int64)
    return np.clip(z, 1, c)


def map_linear(x, c: int) -> np.ndarray:
    """Min/max scaling.  A constant signal maps to the middle class."""
    c = _check_classes(c)
    arr = as_signal(x)
    lo = arr.min()
    hi = arr.max()
    if hi == lo:
        return np.full(arr.size, c // 2 + 1, dtype=np.int64)
    return discretize_unit((arr - lo) / (hi - lo), c)


def map_sorting(x, c: int) -> np.ndarray:
    """Rank-based classes: sample with rank r gets ceil(r*c/N).

    Ranks come from a stable sort, so ties resolve in order of appearance
    and the classes split the signal into near-equal-count bins regardless
    of its amplitude distribution.
    """
    c = _check_classes(c)
    arr = as_signal(x)
    order = np.argsort(arr, kind="stable")
    ranks = np.empty(arr.size, dtype=np.int64)
    ranks[order] = np.arange(1, arr.size + 1)
    return (ranks * c + arr.size - 1) // arr.size


def _standardized(x) -> np.ndarray:
    arr = as_signal(x)
    sd = arr.std()
    if sd == 0.0:
        raise UndefinedResultError("constant signal: sigmoid mapping undefined")
    return (arr - arr.mean()) / sd


def map_logsig(x, c: int) -> np.ndarray:
    """Logistic sigmoid 1/(1 + exp(-(x-mu)/sigma)), then unit discretization."""
    c = _check_classes(c)
    return discretize_unit(expit(_standardized(x)), c)


def map_tansig(x, c: int) -> np.ndarray:
    """tanh((x-mu)/sigma) rescaled from [-1, 1] to [0, 1], then discretized."""
    c = _check_classes(c)
    return discretize_unit((np.tanh(_standardized(x)) + 1.0) / 2.0, c)


def map_ncdf(x, c: int) -> np.ndarray:
    """Standard normal CDF of the standardized signal, then discretized.

    For Gaussian input the mapped values are uniform on [0, 1], so the
    classes come out near-equiprobable.
    """
    c = _check_classes(c)
    return discretize_unit(ndtr(_standardized(x)), c)


MAPPINGS = {
    "linear": map_linear,
    "sorting": map_sorting,
    "logsig": map_logsig,
    "tansig": map_tansig,
    "ncdf": map_ncdf,
}


def map_classes(x, c: int, kind: str = "logsig") -> np.ndarray:
    """Dispatch to one of the named mapping approaches."""
    try:
        fn = MAPPINGS[kind]
    except KeyError:
        raise ValueError(
            f"unknown mapping {kind!r}; expected one of {', '.join(MAPPING_KINDS)}"
        ) from None
    return fn(x, c)
