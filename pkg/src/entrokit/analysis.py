"""Windowed analysis, summary statistics, and the named experiments.

This module owns the CSV contract used by every experiment: one header
``experiment,method,mapping,m,c,d,axis1,axis2,mean,sd,n_realizations,seed``
and one row per aggregated grid cell.  Floats are written with repr (full
round-trip precision) and NaN cells become the literal ``NA``, so a fixed
seed yields byte-identical files.

Experiments are registered by name (fig2, fig3, fig4, fig5, fig6, fig7,
fig10, table1, table2) with their default grids frozen in the packaged
``experiments.yaml``; :func:`run_experiment` merges overrides on top of
those defaults.  Realizations may run in parallel threads, but results are
always reduced in grid order, so the output does not depend on the job
count.
"""

from __future__ import annotations

import csv
import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from time import perf_counter

import numpy as np
import yaml

from .entropy import EntropyResult, dispen, fdispen, peren, sampen, sampen_batch
from .errors import InsufficientDataError, UndefinedResultError
from .mapping import MAPPING_KINDS, as_signal, map_logsig
from .patterns import (
    encode_dispersion,
    encode_freq_dispersion,
    encode_permutation,
    forbidden_fraction,
    histogram,
)
from .signals import (
    DEFAULT_SEED,
    add_wgn_snr,
    gen_logistic,
    gen_mix,
    gen_noise,
    gen_spike,
    load_signal,
    subseed,
)

METHODS = {
    "dispen": dispen,
    "fdispen": fdispen,
    "peren": peren,
    "sampen": sampen,
}

# Methods whose results carry a normalized value alongside the raw nats.
NORMALIZED_METHODS = frozenset({"dispen", "fdispen", "peren"})


@dataclass(frozen=True)
class WindowSpec:
    """Sliding analysis windows: length L, fractional overlap in [0, 1).

    The hop is round-half-up of L*(1 - overlap), floored at one sample, so
    e.g. length 1500 at 50% overlap hops 750 and length 100 at 90% overlap
    hops 10.  Windows are numbered from 1; window w covers the samples
    starting at offset (w-1)*step, and a trailing partial window is
    dropped.
    """

    length: int
    overlap: float = 0.0

    def __post_init__(self):
        if int(self.length) != self.length or self.length < 2:
            raise ValueError(f"window length must be an integer >= 2, got {self.length!r}")
        if not 0.0 <= self.overlap < 1.0:
            raise ValueError(f"overlap must lie in [0, 1), got {self.overlap!r}")

    @property
    def step(self) -> int:
        return max(1, math.floor(self.length * (1.0 - self.overlap) + 0.5))

    def starts(self, n: int) -> range:
        if n < self.length:
            raise ValueError(f"signal of length {n} shorter than window length {self.length}")
        return range(0, n - self.length + 1, self.step)

    def count(self, n: int) -> int:
        return len(self.starts(n))


def windowed_entropy(
    x, window: WindowSpec, method: str, **params
) -> "list[tuple[int, EntropyResult]]":
    """Evaluate an entropy method on every window of a signal.

    Returns (window_index, result) pairs with indices from 1.  Windows
    where the method is undefined (constant segment under a sigmoid
    mapping, unmatched sample-entropy templates) come back with raw set to
    NaN instead of aborting the sweep.
    """
    arr = as_signal(x)
    try:
        fn = METHODS[method]
    except KeyError:
        raise ValueError(
            f"unknown method {method!r}; expected one of {', '.join(METHODS)}"
        ) from None
    out = []
    for index, start in enumerate(window.starts(arr.size), start=1):
        segment = arr[start : start + window.length]
        try:
            result = fn(segment, **params)
        except UndefinedResultError:
            result = EntropyResult(
                raw=math.nan,
                normalized=math.nan if method in NORMALIZED_METHODS else None,
                method=method,
                params=dict(params),
            )
        out.append((index, result))
    return out


def windowed_profile(x, window: WindowSpec, method: str, **params) -> np.ndarray:
    """Per-window entropy values (normalized where defined, NaN when undefined)."""
    return np.array(
        [result.value for _, result in windowed_entropy(x, window, method, **params)],
        dtype=np.float64,
    )


def _safe_ratio(numerator: np.ndarray, denominator: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = numerator / denominator
    ratio = np.asarray(ratio, dtype=np.float64)
    ratio[denominator == 0.0] = math.nan
    return ratio


def nrm_ent_n(clean, noisy, window: WindowSpec, method: str, **params) -> np.ndarray:
    """Per-window ratio of noisy-signal entropy to clean-signal entropy.

    A value of 1 means the noise did not move the measure in that window.
    Ratios with an undefined window on either side, or a zero clean
    entropy, are NaN.  The two signals must have equal length.
    """
    clean = as_signal(clean)
    noisy = as_signal(noisy)
    if clean.size != noisy.size:
        raise ValueError("clean and noisy signals must have the same length")
    base = windowed_profile(clean, window, method, **params)
    contaminated = windowed_profile(noisy, window, method, **params)
    return _safe_ratio(contaminated, base)


def mean_sd(values) -> "tuple[float, float]":
    """Population mean and SD; NaN inputs propagate to the outputs."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("no values to aggregate")
    return float(arr.mean()), float(arr.std())


def cv(values) -> float:
    """Coefficient of variation: population SD over mean (mean must be nonzero)."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("no values")
    mean = arr.mean()
    if mean == 0.0:
        raise ValueError("coefficient of variation undefined for zero mean")
    return float(arr.std() / mean)


def hedges_g(a, b) -> float:
    """Hedges' g effect size between two samples.

    Pooled SD uses sample variances (ddof=1) and the small-sample bias
    correction J = 1 - 3/(4*(na+nb) - 9).  Groups need at least two values
    each and a nonzero pooled variance.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    na, nb = a.size, b.size
    if na < 2 or nb < 2:
        raise ValueError("each group needs at least two values")
    pooled = ((na - 1) * a.var(ddof=1) + (nb - 1) * b.var(ddof=1)) / (na + nb - 2)
    if pooled == 0.0:
        raise ValueError("zero pooled variance: effect size undefined")
    correction = 1.0 - 3.0 / (4.0 * (na + nb) - 9.0)
    return float((a.mean() - b.mean()) / math.sqrt(pooled) * correction)


@dataclass
class GroupResult:
    label: str
    files: "list[str]"
    values: "list[float]"

    @property
    def mean(self) -> float:
        return float(np.mean(self.values))

    @property
    def sd(self) -> float:
        return float(np.std(self.values))

    @property
    def median(self) -> float:
        return float(statistics.median(self.values))


@dataclass
class GroupComparison:
    method: str
    params: dict
    group_a: GroupResult
    group_b: GroupResult
    effect_size: float
    skipped: "list[tuple[str, str]]"


def group_compare(files_a, files_b, method: str = "dispen", **params) -> GroupComparison:
    """Score two groups of signal files and report their separation.

    Files that cannot be read or scored are collected in ``skipped`` with
    the reason; each group must retain at least two scored files for the
    effect size to exist.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")
    skipped: "list[tuple[str, str]]" = []
    groups = []
    for label, paths in (("a", files_a), ("b", files_b)):
        files, values = [], []
        for path in paths:
            try:
                value = METHODS[method](load_signal(path), **params).value
            except (OSError, ValueError) as exc:
                skipped.append((str(path), str(exc)))
                continue
            files.append(str(path))
            values.append(float(value))
        if len(values) < 2:
            raise ValueError(
                f"group {label} too small: {len(values)} usable signals, need at least 2"
                + (f" (skipped: {'; '.join(msg for _, msg in skipped)})" if skipped else "")
            )
        groups.append(GroupResult(label, files, values))
    effect = hedges_g(groups[0].values, groups[1].values)
    return GroupComparison(
        method=method,
        params=dict(params),
        group_a=groups[0],
        group_b=groups[1],
        effect_size=effect,
        skipped=skipped,
    )


# ---------------------------------------------------------------------------
# Experiment results and the CSV contract
# ---------------------------------------------------------------------------

CSV_COLUMNS = (
    "experiment",
    "method",
    "mapping",
    "m",
    "c",
    "d",
    "axis1",
    "axis2",
    "mean",
    "sd",
    "n_realizations",
    "seed",
)


@dataclass
class ExperimentRow:
    method: str
    mapping: "str | None"
    m: "int | None"
    c: "int | None"
    d: "int | None"
    axis1: "str | int | float | None"
    axis2: "str | int | float | None"
    mean: float
    sd: float


@dataclass
class ExperimentResult:
    """Aggregated rows of one experiment run, serializable to the CSV schema."""

    experiment: str
    seed: int
    n_realizations: int
    rows: "list[ExperimentRow]" = field(default_factory=list)

    def write_csv(self, dest) -> None:
        """Write to a path or text stream; a fixed seed gives identical bytes."""
        if hasattr(dest, "write"):
            self._write(dest)
        else:
            with open(dest, "w", newline="") as fh:
                self._write(fh)

    def _write(self, fh) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in self.rows:
            writer.writerow(
                [
                    self.experiment,
                    row.method,
                    _csv_cell(row.mapping),
                    _csv_cell(row.m),
                    _csv_cell(row.c),
                    _csv_cell(row.d),
                    _csv_cell(row.axis1),
                    _csv_cell(row.axis2),
                    _csv_cell(row.mean),
                    _csv_cell(row.sd),
                    self.n_realizations,
                    self.seed,
                ]
            )


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return "NA" if math.isnan(value) else repr(value)
    return str(value)


# ---------------------------------------------------------------------------
# Experiment runners
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MethodSpec:
    """One method configuration evaluated inside an experiment grid."""

    method: str
    mapping: "str | None" = None
    m: "int | None" = None
    c: "int | None" = None
    d: "int | None" = 1
    r: "float | None" = None

    def params(self) -> dict:
        if self.method == "sampen":
            return {"m": self.m, "r": self.r}
        if self.method == "peren":
            return {"m": self.m, "d": self.d}
        return {"m": self.m, "c": self.c, "d": self.d, "mapping": self.mapping}

    def evaluate(self, x) -> float:
        """Entropy value for this configuration, NaN where undefined."""
        try:
            return float(METHODS[self.method](x, **self.params()).value)
        except (UndefinedResultError, InsufficientDataError):
            return math.nan

    def profile(self, x, window: WindowSpec) -> np.ndarray:
        return windowed_profile(x, window, self.method, **self.params())


def _all_mapping_specs() -> "list[MethodSpec]":
    """DispEn and FDispEn under every mapping, plus PerEn."""
    specs = [MethodSpec("dispen", kind, 2, 6) for kind in MAPPING_KINDS]
    specs += [MethodSpec("fdispen", kind, 3, 5) for kind in MAPPING_KINDS]
    specs.append(MethodSpec("peren", None, 4, None))
    return specs


def _run_realizations(fn, realizations: int, jobs: int) -> list:
    """Evaluate fn(k) for k = 0..realizations-1, in order, optionally threaded."""
    if realizations < 1:
        raise ValueError("need at least one realization")
    if jobs is not None and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, range(realizations)))
    return [fn(k) for k in range(realizations)]


# Branch ids keep sub-seed streams distinct across experiments that share
# a root seed.
_BRANCH = {
    "fig2": 2,
    "fig3": 3,
    "fig4": 4,
    "fig5": 5,
    "fig6": 6,
    "fig7": 7,
    "fig10": 10,
    "table1": 101,
    "table2": 102,
}


def length_dependence_experiment(
    seed: int = DEFAULT_SEED,
    realizations: int = 40,
    lengths=(30, 100, 300, 1000, 3000, 10000),
    m_values=(2, 3),
    c_values=(4, 6, 8),
    jobs: int = 1,
) -> ExperimentResult:
    """fig2: normalized DispEn/FDispEn of white noise vs length over (m, c) grids."""
    lengths = [int(n) for n in lengths]
    specs = [
        MethodSpec(method, "logsig", m, c)
        for method in ("dispen", "fdispen")
        for m in m_values
        for c in c_values
    ]

    def one(k: int) -> np.ndarray:
        values = np.empty((len(lengths), len(specs)))
        for li, n in enumerate(lengths):
            x = gen_noise("white", n, subseed(seed, _BRANCH["fig2"], li, k))
            for si, spec in enumerate(specs):
                values[li, si] = spec.evaluate(x)
        return values

    stack = np.stack(_run_realizations(one, realizations, jobs))
    rows = []
    for si, spec in enumerate(specs):
        for li, n in enumerate(lengths):
            mean, sd = mean_sd(stack[:, li, si])
            rows.append(
                ExperimentRow(spec.method, spec.mapping, spec.m, spec.c, spec.d, n, None, mean, sd)
            )
    return ExperimentResult("fig2", int(seed), int(realizations), rows)


def noise_sensitivity_experiment(
    seed: int = DEFAULT_SEED,
    realizations: int = 40,
    c_values=(2, 3, 4, 5, 6, 7, 8),
    snr_db=(0, 10, 20, 30, 40, 50),
    n: int = 15000,
    window_length: int = 1500,
    window_overlap: float = 0.5,
    jobs: int = 1,
) -> ExperimentResult:
    """fig3: NrmEntN of DispEn(logsig, m=2) per class count, SNR, and window.

    The clean signal is the ramped logistic map (alpha 3.5 -> 3.99, no
    burn-in: the ramp itself is the object under study); white Gaussian
    noise is drawn independently per (realization, SNR) cell.
    """
    window = WindowSpec(window_length, window_overlap)
    clean = gen_logistic(n, 3.5, 3.99)
    specs = [MethodSpec("dispen", "logsig", 2, c) for c in c_values]
    base = np.stack([spec.profile(clean, window) for spec in specs])

    def one(k: int) -> np.ndarray:
        values = np.empty((len(specs), len(snr_db), base.shape[1]))
        for si, snr in enumerate(snr_db):
            noisy = add_wgn_snr(clean, snr, subseed(seed, _BRANCH["fig3"], si, k))
            for ci, spec in enumerate(specs):
                values[ci, si] = _safe_ratio(spec.profile(noisy, window), base[ci])
        return values

    stack = np.stack(_run_realizations(one, realizations, jobs))
    rows = []
    for ci, spec in enumerate(specs):
        for si, snr in enumerate(snr_db):
            for wi in range(base.shape[1]):
                mean, sd = mean_sd(stack[:, ci, si, wi])
                rows.append(
                    ExperimentRow(
                        spec.method, spec.mapping, spec.m, spec.c, spec.d,
                        snr, wi + 1, mean, sd,
                    )
                )
    return ExperimentResult("fig3", int(seed), int(realizations), rows)


def mapping_sensitivity_experiment(
    seed: int = DEFAULT_SEED,
    realizations: int = 40,
    snr_db=(0, 10, 20, 30, 40, 50),
    n: int = 15000,
    window_length: int = 1500,
    window_overlap: float = 0.5,
    jobs: int = 1,
) -> ExperimentResult:
    """fig4: NrmEntN per (method, mapping), SNR, and window on the logistic ramp."""
    window = WindowSpec(window_length, window_overlap)
    clean = gen_logistic(n, 3.5, 3.99)
    specs = _all_mapping_specs()
    base = np.stack([spec.profile(clean, window) for spec in specs])

    def one(k: int) -> np.ndarray:
        values = np.empty((len(specs), len(snr_db), base.shape[1]))
        for si, snr in enumerate(snr_db):
            noisy = add_wgn_snr(clean, snr, subseed(seed, _BRANCH["fig4"], si, k))
            for mi, spec in enumerate(specs):
                values[mi, si] = _safe_ratio(spec.profile(noisy, window), base[mi])
        return values

    stack = np.stack(_run_realizations(one, realizations, jobs))
    rows = []
    for mi, spec in enumerate(specs):
        for si, snr in enumerate(snr_db):
            for wi in range(base.shape[1]):
                mean, sd = mean_sd(stack[:, mi, si, wi])
                rows.append(
                    ExperimentRow(
                        spec.method, spec.mapping, spec.m, spec.c, spec.d,
                        snr, wi + 1, mean, sd,
                    )
                )
    return ExperimentResult("fig4", int(seed), int(realizations), rows)


def noise_ordering_experiment(
    seed: int = DEFAULT_SEED,
    realizations: int = 40,
    lengths=(10, 20, 50, 100, 200, 500, 1000),
    jobs: int = 1,
) -> ExperimentResult:
    """fig5: every method on white/pink/brown noise across short lengths.

    Lengths small enough that some cells are undefined (too few samples
    for the embedding) still complete, recording NA.
    """
    if realizations < 2:
        raise ValueError("noise ordering needs at least 2 realizations")
    lengths = [int(n) for n in lengths]
    kinds = ("white", "pink", "brown")
    specs = _all_mapping_specs()

    def one(k: int) -> np.ndarray:
        values = np.empty((len(kinds), len(lengths), len(specs)))
        for ki, kind in enumerate(kinds):
            for li, n in enumerate(lengths):
                x = gen_noise(kind, n, subseed(seed, _BRANCH["fig5"], ki, li, k))
                for si, spec in enumerate(specs):
                    values[ki, li, si] = spec.evaluate(x)
        return values

    stack = np.stack(_run_realizations(one, realizations, jobs))
    rows = []
    for si, spec in enumerate(specs):
        for ki, kind in enumerate(kinds):
            for li, n in enumerate(lengths):
                mean, sd = mean_sd(stack[:, ki, li, si])
                rows.append(
                    ExperimentRow(spec.method, spec.mapping, spec.m, spec.c, spec.d, kind, n, mean, sd)
                )
    return ExperimentResult("fig5", int(seed), int(realizations), rows)


def _forbidden_families(x) -> "tuple[float, float, float]":
    """Forbidden fractions of the three pattern families on one signal."""
    try:
        u6 = map_logsig(x, 6)
        disp = forbidden_fraction(histogram(encode_dispersion(u6, 6, 2, 1), 6**2))
        u5 = map_logsig(x, 5)
        freq = forbidden_fraction(histogram(encode_freq_dispersion(u5, 5, 3, 1), 9**2))
        perm = forbidden_fraction(histogram(encode_permutation(x, 4, 1), 24))
    except (UndefinedResultError, InsufficientDataError):
        return math.nan, math.nan, math.nan
    return disp, freq, perm


def forbidden_decay_experiment(
    seed: int = DEFAULT_SEED,
    realizations: int = 40,
    lengths=(100, 300, 1000, 3000, 10000, 30000, 100000),
    burn_in: int = 1000,
    jobs: int = 1,
) -> ExperimentResult:
    """fig6: forbidden-pattern fraction vs length on the chaotic logistic map.

    Realizations differ by a random initial state drawn per (length,
    realization) sub-seed; the map itself is deterministic at alpha = 4.
    Families: dispersion (m=2, c=6), frequency-dispersion (m=3, c=5),
    permutation (m=4), all on the logsig mapping.
    """
    lengths = [int(n) for n in lengths]

    def one(k: int) -> np.ndarray:
        values = np.empty((len(lengths), 3))
        for li, n in enumerate(lengths):
            rng = np.random.default_rng(subseed(seed, _BRANCH["fig6"], li, k))
            x0 = rng.uniform(0.01, 0.99)
            x = gen_logistic(n, 4.0, 4.0, x0=x0, burn_in=burn_in)
            values[li] = _forbidden_families(x)
        return values

    stack = np.stack(_run_realizations(one, realizations, jobs))
    families = (
        MethodSpec("dispen", "logsig", 2, 6),
        MethodSpec("fdispen", "logsig", 3, 5),
        MethodSpec("peren", None, 4, None),
    )
    rows = []
    for fi, spec in enumerate(families):
        for li, n in enumerate(lengths):
            mean, sd = mean_sd(stack[:, li, fi])
            rows.append(
                ExperimentRow(spec.method, spec.mapping, spec.m, spec.c, spec.d, n, None, mean, sd)
            )
    return ExperimentResult("fig6", int(seed), int(realizations), rows)


def spike_profile_experiment(
    seed: int = DEFAULT_SEED,
    realizations: int = 40,
    n: int = 2000,
    spike_pos: int = 1000,
    spike_amp: "float | None" = None,
    noise_sd: float = 1.0,
    window_length: int = 100,
    window_overlap: float = 0.9,
    jobs: int = 1,
) -> ExperimentResult:
    """fig7: windowed entropy profiles around an impulse in Gaussian noise.

    Contrasts sorting-based measures (PerEn, DispEn with sorting), which
    barely register the spike, with sigmoid-mapped DispEn/FDispEn, which
    dip sharply in windows containing it.
    """
    window = WindowSpec(window_length, window_overlap)
    specs = [
        MethodSpec("peren", None, 4, None),
        MethodSpec("dispen", "logsig", 2, 6),
        MethodSpec("dispen", "sorting", 2, 6),
        MethodSpec("fdispen", "logsig", 3, 5),
    ]
    n_windows = window.count(n)

    def one(k: int) -> np.ndarray:
        x = gen_spike(n, spike_pos, spike_amp, noise_sd, subseed(seed, _BRANCH["fig7"], k))
        return np.stack([spec.profile(x, window) for spec in specs])

    stack = np.stack(_run_realizations(one, realizations, jobs))
    rows = []
    for si, spec in enumerate(specs):
        for wi in range(n_windows):
            mean, sd = mean_sd(stack[:, si, wi])
            rows.append(
                ExperimentRow(spec.method, spec.mapping, spec.m, spec.c, spec.d, wi + 1, None, mean, sd)
            )
    return ExperimentResult("fig7", int(seed), int(realizations), rows)


def _mix_specs(c_values, r_values) -> "list[MethodSpec]":
    specs = [MethodSpec("dispen", "logsig", 2, c) for c in c_values]
    specs += [MethodSpec("fdispen", "logsig", 3, c) for c in c_values]
    specs += [MethodSpec("sampen", None, 2, None, None, r) for r in r_values]
    return specs


def _spec_axis1(spec: MethodSpec):
    return spec.r if spec.method == "sampen" else spec.c


def mix_sweep_experiment(
    seed: int = DEFAULT_SEED,
    realizations: int = 20,
    n: int = 15000,
    p: float = 0.99,
    p_end: float = 0.01,
    c_values=(2, 4, 6, 8, 10),
    r_values=(0.1, 0.2, 0.3, 0.4, 0.5),
    window_length: int = 1500,
    window_overlap: float = 0.5,
    jobs: int = 1,
) -> ExperimentResult:
    """fig10: windowed DispEn/FDispEn/SampEn on a MIX ramp from random to periodic.

    axis1 holds the class count (dispersion methods) or tolerance
    (sample entropy); axis2 the window index.
    """
    window = WindowSpec(window_length, window_overlap)
    specs = _mix_specs(c_values, r_values)
    pattern_specs = [s for s in specs if s.method != "sampen"]
    r_list = [float(r) for r in r_values]
    n_windows = window.count(n)

    def one(k: int) -> np.ndarray:
        x = gen_mix(n, p, subseed(seed, _BRANCH["fig10"], k), p_end=p_end)
        profiles = [spec.profile(x, window) for spec in pattern_specs]
        sampen_rows = np.full((len(r_list), n_windows), math.nan)
        for wi, start in enumerate(window.starts(x.size)):
            segment = x[start : start + window.length]
            try:
                results = sampen_batch(segment, 2, r_list)
            except (UndefinedResultError, InsufficientDataError):
                continue
            sampen_rows[:, wi] = [res.raw for res in results]
        return np.vstack([np.stack(profiles), sampen_rows])

    stack = np.stack(_run_realizations(one, realizations, jobs))
    rows = []
    for si, spec in enumerate(specs):
        for wi in range(n_windows):
            mean, sd = mean_sd(stack[:, si, wi])
            rows.append(
                ExperimentRow(
                    spec.method, spec.mapping, spec.m, spec.c, spec.d,
                    _spec_axis1(spec), wi + 1, mean, sd,
                )
            )
    return ExperimentResult("fig10", int(seed), int(realizations), rows)


def cv_experiment(
    seed: int = DEFAULT_SEED,
    realizations: int = 20,
    n: int = 1500,
    p: float = 0.5,
    c_values=(2, 4, 6, 8, 10),
    r_values=(0.1, 0.2, 0.3, 0.4, 0.5),
    jobs: int = 1,
) -> ExperimentResult:
    """table2: spread of each method over MIX(p) realizations.

    Row mean and sd aggregate the per-realization entropies, so each
    row's coefficient of variation is simply sd/mean.
    """
    specs = _mix_specs(c_values, r_values)
    pattern_specs = [s for s in specs if s.method != "sampen"]
    r_list = [float(r) for r in r_values]

    def one(k: int) -> np.ndarray:
        x = gen_mix(n, p, subseed(seed, _BRANCH["table2"], k))
        values = [spec.evaluate(x) for spec in pattern_specs]
        try:
            values += [res.raw for res in sampen_batch(x, 2, r_list)]
        except (UndefinedResultError, InsufficientDataError):
            values += [math.nan] * len(r_list)
        return np.asarray(values)

    stack = np.stack(_run_realizations(one, realizations, jobs))
    rows = []
    for si, spec in enumerate(specs):
        mean, sd = mean_sd(stack[:, si])
        rows.append(
            ExperimentRow(
                spec.method, spec.mapping, spec.m, spec.c, spec.d,
                _spec_axis1(spec), None, mean, sd,
            )
        )
    return ExperimentResult("table2", int(seed), int(realizations), rows)


def cv_table(result: ExperimentResult) -> "dict[tuple[str, float], float]":
    """Coefficient of variation per (method, axis1) row of a cv_experiment run."""
    return {
        (row.method, float(row.axis1)): row.sd / row.mean
        for row in result.rows
    }


def timing_benchmark(
    lengths=(300, 1000, 3000, 10000, 30000, 100000, 300000),
    m_values=(2, 3, 4, 5),
    repeats: int = 5,
    seed: int = DEFAULT_SEED,
    methods=("dispen", "fdispen", "peren"),
) -> ExperimentResult:
    """table1: median-of-repeats wall time for each (method, m, length) cell.

    One white-noise signal per length is shared by all methods so the
    comparison isolates algorithmic cost.  Each cell runs once unrecorded
    to warm caches, then ``repeats`` timed runs on the monotonic clock;
    the row mean is the median time in seconds and the row sd the spread
    of the repeats.  Always runs serially.
    """
    if repeats < 3:
        raise ValueError("timing needs at least 3 repeats")
    configs = {
        "dispen": dict(c=6, mapping="logsig"),
        "fdispen": dict(c=5, mapping="logsig"),
        "peren": dict(),
        "sampen": dict(r=0.2),
    }
    rows = []
    for li, n in enumerate(lengths):
        signal = gen_noise("white", int(n), subseed(seed, _BRANCH["table1"], li))
        for method in methods:
            fn = METHODS[method]
            extra = configs[method]
            for m in m_values:
                fn(signal, m=m, **extra)
                times = []
                for _ in range(repeats):
                    start = perf_counter()
                    fn(signal, m=m, **extra)
                    times.append(perf_counter() - start)
                mean, sd = float(np.median(times)), float(np.std(times))
                rows.append(
                    ExperimentRow(
                        method=method,
                        mapping=extra.get("mapping"),
                        m=m,
                        c=extra.get("c"),
                        d=None if method == "sampen" else 1,
                        axis1=int(n),
                        axis2=None,
                        mean=mean,
                        sd=sd,
                    )
                )
    return ExperimentResult("table1", int(seed), int(repeats), rows)


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

RUNNERS = {
    "fig2": length_dependence_experiment,
    "fig3": noise_sensitivity_experiment,
    "fig4": mapping_sensitivity_experiment,
    "fig5": noise_ordering_experiment,
    "fig6": forbidden_decay_experiment,
    "fig7": spike_profile_experiment,
    "fig10": mix_sweep_experiment,
    "table1": timing_benchmark,
    "table2": cv_experiment,
}

_registry_cache: "dict | None" = None


def experiment_registry() -> dict:
    """Load the versioned experiment defaults shipped with the package."""
    global _registry_cache
    if _registry_cache is None:
        text = resources.files(__package__).joinpath("experiments.yaml").read_text()
        _registry_cache = yaml.safe_load(text)
    return _registry_cache


def experiment_names() -> "list[str]":
    return list(experiment_registry()["experiments"])


def run_experiment(
    name: str,
    seed: "int | None" = None,
    realizations: "int | None" = None,
    jobs: int = 1,
    **overrides,
) -> ExperimentResult:
    """Run a registered experiment with its frozen defaults plus overrides.

    ``realizations`` maps to ``repeats`` for the timing benchmark.  Extra
    keyword overrides must be parameters the experiment actually takes.
    """
    registry = experiment_registry()["experiments"]
    if name not in registry:
        raise ValueError(
            f"unknown experiment {name!r}; valid names: {', '.join(registry)}"
        )
    runner = RUNNERS[name]
    kwargs = dict(registry[name].get("defaults") or {})
    if seed is not None:
        kwargs["seed"] = int(seed)
    if realizations is not None:
        kwargs["repeats" if name == "table1" else "realizations"] = int(realizations)
    if name != "table1":
        kwargs["jobs"] = jobs
    allowed = set(runner.__code__.co_varnames[: runner.__code__.co_argcount])
    for key, value in overrides.items():
        if value is None:
            continue
        if key not in allowed:
            raise ValueError(f"experiment {name!r} does not take a {key!r} setting")
        kwargs[key] = value
    return runner(**kwargs)
