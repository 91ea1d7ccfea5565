"""Synthetic test signals and signal file I/O.

Every stochastic generator takes a seed (int or numpy SeedSequence) and is
fully deterministic given it.  Experiments that need many independent
streams derive them with :func:`subseed`, which hashes the root seed
together with an integer branch path, so realization k of grid cell (i, j)
gets its own reproducible stream regardless of evaluation order.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np

from .mapping import as_signal

NOISE_KINDS = ("white", "pink", "brown")

GENERATOR_KINDS = ("white", "pink", "brown", "logistic", "mix", "spike")

# Root seed used by the command line and the experiment registry when the
# caller does not pick one.  Fixed so that published numbers reproduce.
DEFAULT_SEED = 42


class SignalFileError(ValueError):
    """A signal file exists but cannot be parsed into samples."""


def subseed(seed, *branch: int) -> np.random.SeedSequence:
    """Deterministic sub-stream seed for a branch path under a root seed."""
    return np.random.SeedSequence([int(seed), *(int(b) for b in branch)])


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def _check_length(n: int, minimum: int = 1) -> int:
    if int(n) != n or n < minimum:
        raise ValueError(f"length must be an integer >= {minimum}, got {n!r}")
    return int(n)


def _standardize(x: np.ndarray) -> np.ndarray:
    return (x - x.mean()) / x.std()


def gen_noise(kind: str, n: int, seed) -> np.ndarray:
    """Generate white, pink, or brown noise with zero mean and unit SD.

    White noise is i.i.d. standard normal.  Pink noise shapes the spectrum
    of white noise by 1/sqrt(f) (power ~ 1/f) with the DC bin zeroed.
    Brown noise is the running sum of white noise.  Pink and brown are
    standardized after construction; white is left as drawn.
    """
    n = _check_length(n, minimum=2)
    rng = _rng(seed)
    if kind == "white":
        return rng.standard_normal(n)
    if kind == "brown":
        return _standardize(np.cumsum(rng.standard_normal(n)))
    if kind == "pink":
        spec = np.fft.rfft(rng.standard_normal(n))
        freqs = np.fft.rfftfreq(n)
        spec[1:] /= np.sqrt(freqs[1:])
        spec[0] = 0.0
        return _standardize(np.fft.irfft(spec, n))
    raise ValueError(f"unknown noise kind {kind!r}; expected one of {', '.join(NOISE_KINDS)}")


def gen_logistic(
    n: int = 15000,
    alpha_start: float = 3.5,
    alpha_end: float = 3.99,
    x0: float = 0.23,
    burn_in: int = 0,
) -> np.ndarray:
    """Iterate the logistic map x_j = alpha_j * x_{j-1} * (1 - x_{j-1}).

    The control parameter ramps linearly from alpha_start to alpha_end
    across the n returned samples (hold alpha_end == alpha_start for a
    fixed parameter).  burn_in extra iterations at alpha_start are run
    first and discarded, letting the orbit settle before recording.
    """
    n = _check_length(n)
    if not 0.0 < x0 < 1.0:
        raise ValueError(f"initial state must lie in (0, 1), got {x0!r}")
    for alpha in (alpha_start, alpha_end):
        if not 3.5 <= alpha <= 4.0:
            raise ValueError(f"control parameter must lie in [3.5, 4], got {alpha!r}")
    if burn_in < 0:
        raise ValueError("burn-in must be non-negative")
    x = float(x0)
    for _ in range(burn_in):
        x = alpha_start * x * (1.0 - x)
    alphas = np.linspace(alpha_start, alpha_end, n).tolist()
    out = np.empty(n, dtype=np.float64)
    for j, alpha in enumerate(alphas):
        x = alpha * x * (1.0 - x)
        out[j] = x
    return out


def gen_mix(n: int, p: float, seed, p_end: "float | None" = None) -> np.ndarray:
    """MIX process: a deterministic sine with samples randomly replaced by noise.

    Sample k is sqrt(2)*sin(2*pi*k/12) with probability 1-p and uniform
    noise on [-sqrt(3), sqrt(3)] with probability p, so both branches have
    unit variance and p moves the signal from periodic (0) to fully random
    (1).  When p_end is given, p ramps linearly across the samples.
    """
    n = _check_length(n)
    last = p if p_end is None else p_end
    for value in (p, last):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"replacement probability must lie in [0, 1], got {value!r}")
    rng = _rng(seed)
    k = np.arange(1, n + 1, dtype=np.float64)
    sine = math.sqrt(2.0) * np.sin(2.0 * np.pi * k / 12.0)
    noise = rng.uniform(-math.sqrt(3.0), math.sqrt(3.0), n)
    probs = np.linspace(p, last, n)
    take_noise = rng.random(n) < probs
    return np.where(take_noise, noise, sine)


def gen_spike(
    n: int = 2000,
    spike_pos: int = 1000,
    spike_amp: "float | None" = None,
    noise_sd: float = 1.0,
    seed=None,
) -> np.ndarray:
    """Gaussian background with one additive spike at a 1-based position.

    spike_amp defaults to ten times noise_sd, or to 10 outright when
    noise_sd is 0 so that the noise-free case still yields a pure impulse
    on a flat baseline.
    """
    n = _check_length(n)
    if not 1 <= spike_pos <= n:
        raise ValueError(f"spike position must lie in [1, {n}], got {spike_pos!r}")
    if noise_sd < 0:
        raise ValueError("noise SD must be non-negative")
    if spike_amp is None:
        spike_amp = 10.0 * noise_sd if noise_sd > 0 else 10.0
    x = _rng(seed).standard_normal(n) * noise_sd
    x[spike_pos - 1] += spike_amp
    return x


def add_wgn_snr(x, snr_db: float, seed) -> np.ndarray:
    """Add white Gaussian noise sized to a target signal-to-noise ratio.

    The noise variance is mean(x**2) / 10**(snr_db/10).  An infinite
    snr_db returns a copy of the signal unchanged; a zero-power signal is
    an error since no finite SNR can be realized.
    """
    arr = as_signal(x)
    power = float(np.mean(arr * arr))
    if math.isinf(snr_db) and snr_db > 0:
        return arr.copy()
    if power == 0.0:
        raise ValueError("zero-power signal: SNR is undefined")
    noise_sd = math.sqrt(power / 10.0 ** (snr_db / 10.0))
    return arr + _rng(seed).standard_normal(arr.size) * noise_sd


def generate(kind: str, n: int, seed, **params) -> np.ndarray:
    """Dispatch to a generator by name (see GENERATOR_KINDS)."""
    if kind in NOISE_KINDS:
        return gen_noise(kind, n, seed)
    if kind == "logistic":
        return gen_logistic(n, **params)
    if kind == "mix":
        return gen_mix(n, seed=seed, **params)
    if kind == "spike":
        return gen_spike(n, seed=seed, **params)
    raise ValueError(
        f"unknown generator {kind!r}; expected one of {', '.join(GENERATOR_KINDS)}"
    )


def load_signal(path, fmt: str = "auto", column: int = 1) -> np.ndarray:
    """Read a signal from a text file.

    ``plain`` files hold one real number per line (blank lines are
    skipped).  ``csv`` files are read at the given 1-based column, with a
    single header row auto-detected.  ``auto`` picks csv for a .csv suffix
    and plain otherwise.  Unparseable or non-finite samples raise
    SignalFileError naming the offending line.
    """
    path = Path(path)
    if fmt == "auto":
        fmt = "csv" if path.suffix.lower() == ".csv" else "plain"
    if fmt not in ("plain", "csv"):
        raise ValueError(f"unknown signal format {fmt!r}")
    if column < 1:
        raise ValueError("column numbers are 1-based")
    values: "list[float]" = []
    with open(path, newline="") as fh:
        if fmt == "plain":
            for lineno, line in enumerate(fh, start=1):
                token = line.strip()
                if not token:
                    continue
                values.append(_parse_sample(token, path, lineno))
        else:
            reader = csv.reader(fh)
            for lineno, row in enumerate(reader, start=1):
                if not row or all(not cell.strip() for cell in row):
                    continue
                if len(row) < column:
                    raise SignalFileError(
                        f"{path}:{lineno}: expected at least {column} columns, got {len(row)}"
                    )
                token = row[column - 1].strip()
                if lineno == 1 and not values and not _is_number(token):
                    continue
                values.append(_parse_sample(token, path, lineno))
    if not values:
        raise SignalFileError(f"{path}: no samples found")
    return np.asarray(values, dtype=np.float64)


def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def _parse_sample(token: str, path, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise SignalFileError(f"{path}:{lineno}: not a number: {token!r}") from None
    if not math.isfinite(value):
        raise SignalFileError(f"{path}:{lineno}: non-finite sample {token!r}")
    return value


def save_signal(x, path) -> None:
    """Write a signal as plain text, one full-precision sample per line."""
    arr = as_signal(x)
    with open(path, "w") as fh:
        for v in arr:
            fh.write(repr(float(v)))
            fh.write("\n")
