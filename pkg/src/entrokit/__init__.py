"""Time-series irregularity analysis.

Dispersion entropy, frequency-based dispersion entropy, permutation
entropy, and sample entropy, with five amplitude-to-class mappings,
seed-deterministic synthetic signal generators, and named windowed
experiments that emit a fixed CSV schema.
"""

from .analysis import (
    ExperimentResult,
    ExperimentRow,
    GroupComparison,
    WindowSpec,
    cv,
    experiment_names,
    group_compare,
    hedges_g,
    nrm_ent_n,
    run_experiment,
    timing_benchmark,
    windowed_entropy,
    windowed_profile,
)
from .entropy import (
    EntropyResult,
    dispen,
    fdispen,
    peren,
    sampen,
    sampen_batch,
    shannon,
)
from .errors import InsufficientDataError, UndefinedResultError
from .mapping import (
    MAPPING_KINDS,
    compute_stats,
    discretize_unit,
    map_classes,
    map_linear,
    map_logsig,
    map_ncdf,
    map_sorting,
    map_tansig,
)
from .patterns import (
    PatternHistogram,
    decode_dispersion,
    decode_freq_dispersion,
    embedded_count,
    encode_dispersion,
    encode_freq_dispersion,
    encode_permutation,
    forbidden_fraction,
    histogram,
)
from .signals import (
    DEFAULT_SEED,
    GENERATOR_KINDS,
    NOISE_KINDS,
    SignalFileError,
    add_wgn_snr,
    gen_logistic,
    gen_mix,
    gen_noise,
    gen_spike,
    generate,
    load_signal,
    save_signal,
    subseed,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_SEED",
    "EntropyResult",
    "ExperimentResult",
    "ExperimentRow",
    "GENERATOR_KINDS",
    "GroupComparison",
    "InsufficientDataError",
    "MAPPING_KINDS",
    "NOISE_KINDS",
    "PatternHistogram",
    "SignalFileError",
    "UndefinedResultError",
    "WindowSpec",
    "add_wgn_snr",
    "compute_stats",
    "cv",
    "decode_dispersion",
    "decode_freq_dispersion",
    "discretize_unit",
    "dispen",
    "embedded_count",
    "encode_dispersion",
    "encode_freq_dispersion",
    "encode_permutation",
    "experiment_names",
    "fdispen",
    "forbidden_fraction",
    "gen_logistic",
    "gen_mix",
    "gen_noise",
    "gen_spike",
    "generate",
    "group_compare",
    "hedges_g",
    "histogram",
    "load_signal",
    "map_classes",
    "map_linear",
    "map_logsig",
    "map_ncdf",
    "map_sorting",
    "map_tansig",
    "nrm_ent_n",
    "peren",
    "run_experiment",
    "sampen",
    "sampen_batch",
    "shannon",
    "save_signal",
    "subseed",
    "timing_benchmark",
    "windowed_entropy",
    "windowed_profile",
]
