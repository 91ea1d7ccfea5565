"""Entropy measures over pattern distributions, plus sample entropy.

The three pattern entropies (dispersion, frequency-dispersion, permutation)
are Shannon entropies in nats over their pattern histograms, reported both
raw and normalized by the log of the alphabet size.  Sample entropy is the
negative log of the conditional match probability A/B and has no finite
normalizer, so its ``normalized`` field is None.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import InsufficientDataError, UndefinedResultError
from .mapping import as_signal, map_classes
from .patterns import (
    PatternHistogram,
    encode_dispersion,
    encode_freq_dispersion,
    encode_permutation,
    histogram,
)


@dataclass(frozen=True)
class EntropyResult:
    """One entropy evaluation: raw nats, optional normalized value, provenance."""

    raw: float
    normalized: "float | None"
    method: str
    params: dict = field(default_factory=dict)

    @property
    def value(self) -> float:
        """Normalized value when defined, raw otherwise."""
        return self.raw if self.normalized is None else self.normalized


def shannon(hist: PatternHistogram) -> float:
    """Shannon entropy in nats over the occupied histogram cells."""
    p = hist.probabilities()
    return float(-np.sum(p * np.log(p)))


def dispen(x, m: int = 2, c: int = 6, d: int = 1, mapping: str = "logsig") -> EntropyResult:
    """Dispersion entropy of a signal.

    The signal is mapped to classes 1..c, embedded into m-sample windows
    with delay d, and the Shannon entropy of the resulting dispersion
    pattern distribution is normalized by log(c**m).

    >>> round(dispen([2.1, 2.2, 2.0, 2.3], m=2, c=3, mapping='linear').raw, 4)
    1.0397
    """
    u = map_classes(x, c, mapping)
    codes = encode_dispersion(u, c, m, d)
    hist = histogram(codes, c**m)
    raw = shannon(hist)
    return EntropyResult(
        raw=raw,
        normalized=raw / (m * math.log(c)),
        method="dispen",
        params={"m": m, "c": c, "d": d, "mapping": mapping},
    )


def fdispen(x, m: int = 3, c: int = 5, d: int = 1, mapping: str = "logsig") -> EntropyResult:
    """Frequency-dispersion entropy: dispersion entropy of class differences.

    Patterns are the m-1 adjacent differences of the mapped classes, so the
    measure ignores the baseline class level and reacts to class-to-class
    movement.  Normalizer is log((2c-1)**(m-1)).
    """
    u = map_classes(x, c, mapping)
    codes = encode_freq_dispersion(u, c, m, d)
    hist = histogram(codes, (2 * c - 1) ** (m - 1))
    raw = shannon(hist)
    return EntropyResult(
        raw=raw,
        normalized=raw / ((m - 1) * math.log(2 * c - 1)),
        method="fdispen",
        params={"m": m, "c": c, "d": d, "mapping": mapping},
    )


def peren(x, m: int = 4, d: int = 1) -> EntropyResult:
    """Permutation entropy over ordinal patterns, normalized by log(m!)."""
    codes = encode_permutation(x, m, d)
    hist = histogram(codes, math.factorial(m))
    raw = shannon(hist)
    return EntropyResult(
        raw=raw,
        normalized=raw / math.log(math.factorial(m)),
        method="peren",
        params={"m": m, "d": d},
    )


def _match_counts(x: np.ndarray, m: int, tolerances: np.ndarray) -> "tuple[np.ndarray, np.ndarray]":
    """Template match counts for sample entropy, shared across tolerances.

    Returns (A, B) per tolerance: B counts pairs i < j whose length-m
    templates are within the tolerance in Chebyshev distance, A the pairs
    whose length-(m+1) extensions also are.  Both use the first N - m
    starting positions, so every counted template has an extension.
    """
    windows = sliding_window_view(x, m + 1)
    n = windows.shape[0]
    a = np.zeros(tolerances.size, dtype=np.int64)
    b = np.zeros(tolerances.size, dtype=np.int64)
    for i in range(n - 1):
        gaps = np.abs(windows[i + 1 :] - windows[i])
        dist_m = gaps[:, :m].max(axis=1)
        dist_m1 = np.maximum(dist_m, gaps[:, m])
        for t, tol in enumerate(tolerances):
            b[t] += int(np.count_nonzero(dist_m <= tol))
            a[t] += int(np.count_nonzero(dist_m1 <= tol))
    return a, b


def sampen(x, m: int = 2, r: float = 0.2) -> EntropyResult:
    """Sample entropy with tolerance r as a fraction of the signal SD.

    Self-matches are excluded (pairs i < j only) and both template lengths
    use the same N - m starting positions, so a perfectly periodic signal
    scores exactly 0.  Raises UndefinedResultError for a constant signal
    (zero SD leaves the tolerance undefined) and when no matches exist at
    either length.
    """
    result = sampen_batch(x, m, [r])[0]
    if math.isnan(result.raw):
        raise UndefinedResultError(
            f"undefined sample entropy (no template matches at r={float(r):g})"
        )
    return result


def sampen_batch(x, m: int = 2, r_values=(0.2,)) -> "list[EntropyResult]":
    """Sample entropy at several tolerances from one pass over the pairs.

    The pairwise distance computation dominates the cost and does not
    depend on r, so evaluating a tolerance grid this way is close to the
    price of a single call.  A tolerance with no matches at either length
    yields a result with ``raw`` set to NaN instead of failing the batch.
    """
    arr = as_signal(x)
    if int(m) != m or m < 1:
        raise ValueError(f"template length must be an integer >= 1, got {m!r}")
    if arr.size < m + 2:
        raise InsufficientDataError(
            f"signal of length {arr.size} too short for sample entropy with m={m}"
        )
    r_arr = np.asarray(list(r_values), dtype=np.float64)
    if r_arr.size == 0:
        raise ValueError("no tolerance values given")
    if np.any(r_arr <= 0):
        raise ValueError("tolerance must be positive")
    sd = arr.std()
    if sd == 0.0:
        raise UndefinedResultError("zero SD: sample entropy tolerance undefined")
    a, b = _match_counts(arr, m, r_arr * sd)
    out = []
    for t, r in enumerate(r_arr):
        if a[t] == 0 or b[t] == 0:
            raw = math.nan
        else:
            raw = float(math.log(b[t] / a[t]))
        out.append(
            EntropyResult(
                raw=raw,
                normalized=None,
                method="sampen",
                params={"m": m, "r": float(r)},
            )
        )
    return out
