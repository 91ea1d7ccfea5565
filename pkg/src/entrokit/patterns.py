"""Pattern encoders and histograms.

Three pattern families share the sliding-embedding layout (m samples, delay
d, giving n - (m-1)*d windows):

* dispersion patterns: the class labels themselves, alphabet c**m;
* frequency-dispersion patterns: adjacent differences of the class labels,
  entries in [-(c-1), c-1], alphabet (2c-1)**(m-1);
* permutation patterns: the stable argsort of each window, alphabet m!.

Encoders return one integer code per window (mixed-radix for the dispersion
families, Lehmer code for permutations) so histogramming is a bincount when
the alphabet is small and a dict otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import InsufficientDataError
from .mapping import as_signal

# Above this alphabet size histograms switch from a dense count vector to a
# dict keyed by occupied codes, keeping memory proportional to the data.
DENSE_ALPHABET_LIMIT = 10**7


def embedded_count(n: int, m: int, d: int) -> int:
    """Number of embedding windows for a length-n series: n - (m-1)*d."""
    _check_embedding_params(m, d)
    count = n - (m - 1) * d
    if count < 1:
        raise InsufficientDataError(
            f"signal of length {n} too short for m={m}, d={d} embedding"
        )
    return count


def _check_embedding_params(m: int, d: int) -> None:
    if int(m) != m or m < 1:
        raise ValueError(f"embedding dimension must be an integer >= 1, got {m!r}")
    if int(d) != d or d < 1:
        raise ValueError(f"delay must be an integer >= 1, got {d!r}")


def _as_classes(u, c: int) -> np.ndarray:
    arr = np.ascontiguousarray(u, dtype=np.int64)
    if arr.ndim != 1:
        arr = arr.reshape(-1)
    if arr.size == 0:
        raise ValueError("empty class series")
    if arr.min() < 1 or arr.max() > c:
        raise ValueError(f"class labels must lie in [1, {c}]")
    return arr


def encode_dispersion(u, c: int, m: int, d: int = 1) -> np.ndarray:
    """Encode class windows as base-c integers.

    Window (v_0, ..., v_{m-1}) maps to sum of (v_k - 1) * c**(m-1-k), i.e.
    the first sample is the most significant digit.  Codes cover [0, c**m).
    """
    u = _as_classes(u, c)
    count = embedded_count(u.size, m, d)
    codes = np.zeros(count, dtype=np.int64)
    for k in range(m):
        codes *= c
        codes += u[k * d : k * d + count]
        codes -= 1
    return codes


def decode_dispersion(codes, c: int, m: int) -> np.ndarray:
    """Inverse of encode_dispersion: codes back to (n, m) class windows."""
    codes = np.asarray(codes, dtype=np.int64)
    out = np.empty((codes.size, m), dtype=np.int64)
    rem = codes.copy()
    for k in range(m - 1, -1, -1):
        out[:, k] = rem % c + 1
        rem //= c
    return out


def encode_freq_dispersion(u, c: int, m: int, d: int = 1) -> np.ndarray:
    """Encode windows of class differences as base-(2c-1) integers.

    The window at position j collects u[j + (k+1)d] - u[j + kd] for
    k = 0..m-2; each difference lies in [-(c-1), c-1] and is shifted by
    c - 1 to form a digit.  Codes cover [0, (2c-1)**(m-1)).
    """
    if m < 2:
        raise ValueError("frequency-dispersion patterns need m >= 2")
    u = _as_classes(u, c)
    count = embedded_count(u.size, m, d)
    diffs = u[d:] - u[:-d]
    base = 2 * c - 1
    codes = np.zeros(count, dtype=np.int64)
    for k in range(m - 1):
        codes *= base
        codes += diffs[k * d : k * d + count]
        codes += c - 1
    return codes


def decode_freq_dispersion(codes, c: int, m: int) -> np.ndarray:
    """Inverse of encode_freq_dispersion: codes to (n, m-1) difference rows."""
    codes = np.asarray(codes, dtype=np.int64)
    base = 2 * c - 1
    out = np.empty((codes.size, m - 1), dtype=np.int64)
    rem = codes.copy()
    for k in range(m - 2, -1, -1):
        out[:, k] = rem % base - (c - 1)
        rem //= base
    return out


def encode_permutation(x, m: int, d: int = 1) -> np.ndarray:
    """Encode ordinal patterns as Lehmer codes in [0, m!).

    Each window is ranked with a stable argsort, so tied samples keep their
    order of appearance (the earlier sample ranks lower).  The Lehmer code
    of the resulting permutation weights position j by the count of later
    positions holding a smaller rank, times (m-1-j)!.
    """
    if m < 2:
        raise ValueError("permutation patterns need m >= 2")
    arr = as_signal(x)
    count = embedded_count(arr.size, m, d)
    cols = np.arange(m) * d
    windows = sliding_window_view(arr, (m - 1) * d + 1)[:, cols]
    perm = np.argsort(windows, axis=1, kind="stable")
    codes = np.zeros(count, dtype=np.int64)
    for j in range(m - 1):
        smaller = np.zeros(count, dtype=np.int64)
        for k in range(j + 1, m):
            smaller += perm[:, k] < perm[:, j]
        codes += smaller * factorial(m - 1 - j)
    return codes


@dataclass
class PatternHistogram:
    """Pattern counts over a finite alphabet.

    ``counts`` is either a dense int64 vector of length ``alphabet_size``
    or, for very large alphabets, a dict mapping occupied codes to counts.
    """

    counts: "np.ndarray | dict[int, int]"
    total: int
    alphabet_size: int

    @property
    def occupied(self) -> int:
        if isinstance(self.counts, dict):
            return len(self.counts)
        return int(np.count_nonzero(self.counts))

    def occupied_counts(self) -> np.ndarray:
        """Counts of the occupied cells only, in ascending code order."""
        if isinstance(self.counts, dict):
            return np.array([self.counts[k] for k in sorted(self.counts)], dtype=np.int64)
        return self.counts[self.counts > 0]

    def probabilities(self) -> np.ndarray:
        """Relative frequencies of the occupied cells (they sum to 1)."""
        return self.occupied_counts() / self.total


def histogram(codes, alphabet_size: int) -> PatternHistogram:
    """Count pattern codes over [0, alphabet_size)."""
    codes = np.asarray(codes, dtype=np.int64)
    if codes.size == 0:
        raise ValueError("no patterns to count")
    if codes.min() < 0 or codes.max() >= alphabet_size:
        raise ValueError("pattern code outside the alphabet")
    if alphabet_size <= DENSE_ALPHABET_LIMIT:
        counts: "np.ndarray | dict[int, int]" = np.bincount(
            codes, minlength=alphabet_size
        )
    else:
        values, freqs = np.unique(codes, return_counts=True)
        counts = {int(v): int(f) for v, f in zip(values, freqs)}
    return PatternHistogram(counts=counts, total=int(codes.size), alphabet_size=int(alphabet_size))


def forbidden_fraction(hist: PatternHistogram) -> float:
    """Fraction of alphabet cells that never occur."""
    return (hist.alphabet_size - hist.occupied) / hist.alphabet_size
