"""Command-line interface.

Five subcommands: ``entropy`` scores a signal file, ``generate`` writes
synthetic signals, ``experiment`` runs the named experiments from the
registry, ``bench`` times the estimators, and ``compare`` contrasts two
groups of signal files.  Results go to stdout unless ``-o`` is given; log
lines go to stderr.  Exit codes: 0 success, 1 computation errors, 2 usage
and input-file errors.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys

import numpy as np

from .analysis import (
    METHODS,
    WindowSpec,
    experiment_registry,
    group_compare,
    run_experiment,
    timing_benchmark,
    windowed_entropy,
)
from .signals import (
    DEFAULT_SEED,
    GENERATOR_KINDS,
    SignalFileError,
    add_wgn_snr,
    generate,
    load_signal,
    save_signal,
    subseed,
)

METHOD_DEFAULTS = {
    "dispen": {"m": 2, "c": 6, "d": 1, "mapping": "logsig"},
    "fdispen": {"m": 3, "c": 5, "d": 1, "mapping": "logsig"},
    "peren": {"m": 4, "d": 1},
    "sampen": {"m": 2, "r": 0.2},
}


class UsageError(Exception):
    """Flag combinations the parser cannot catch; exits with code 2."""


def _int_list(text: str) -> "list[int]":
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> "list[float]":
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _seed(text: str):
    if text == "random":
        return None
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer or 'random', got {text!r}")


def _resolve_seed(value) -> int:
    """Materialize 'random' into a concrete, reportable seed."""
    if value is not None:
        return value
    entropy = np.random.SeedSequence().entropy
    print(f"seed=random resolved to {entropy}", file=sys.stderr)
    return entropy


def _add_method_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--method", choices=sorted(METHODS), default="dispen",
        help="entropy method (default: dispen)",
    )
    parser.add_argument(
        "--mapping", choices=("linear", "sorting", "logsig", "tansig", "ncdf"),
        default=None, help="class mapping for dispen/fdispen (default: logsig)",
    )
    parser.add_argument("-m", type=int, default=None, metavar="M",
                        help="embedding dimension (method-specific default)")
    parser.add_argument("-c", type=int, default=None, metavar="C",
                        help="number of classes for dispen/fdispen")
    parser.add_argument("-d", type=int, default=None, metavar="D",
                        help="embedding delay for pattern methods (default: 1)")
    parser.add_argument("-r", type=float, default=None, metavar="R",
                        help="sampen tolerance as a fraction of the SD (default: 0.2)")


def _method_params(args) -> dict:
    defaults = METHOD_DEFAULTS[args.method]
    supplied = {"mapping": args.mapping, "m": args.m, "c": args.c, "d": args.d, "r": args.r}
    params = dict(defaults)
    for key, value in supplied.items():
        if value is None:
            continue
        if key not in defaults:
            flag = "--mapping" if key == "mapping" else f"-{key}"
            raise UsageError(f"{args.method} does not take {flag}")
        params[key] = value
    return params


def _open_output(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entrokit",
        description="Irregularity analysis: dispersion, frequency-dispersion, "
        "permutation, and sample entropy.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ent = sub.add_parser("entropy", help="score a signal file")
    _add_method_flags(p_ent)
    p_ent.add_argument("--window", type=int, default=None, metavar="L",
                       help="switch to per-window CSV with windows of L samples")
    p_ent.add_argument("--overlap", type=float, default=0.0, metavar="F",
                       help="fractional window overlap in [0, 1) (default: 0)")
    p_ent.add_argument("--format", choices=("auto", "plain", "csv"), default="auto",
                       help="input format (default: by file suffix)")
    p_ent.add_argument("--column", type=int, default=1, metavar="N",
                       help="1-based column for csv input (default: 1)")
    p_ent.add_argument("-o", "--output", default=None, metavar="PATH",
                       help="write results here instead of stdout")
    p_ent.add_argument("file", help="signal file to score")
    p_ent.set_defaults(func=cmd_entropy)

    p_gen = sub.add_parser("generate", help="write a synthetic signal")
    p_gen.add_argument("kind", choices=GENERATOR_KINDS, help="generator name")
    p_gen.add_argument("-n", type=int, default=None, metavar="N",
                       help="number of samples (default: 15000; spike: 2000)")
    p_gen.add_argument("--seed", type=_seed, default=DEFAULT_SEED, metavar="S",
                       help="integer seed or 'random' (default: %(default)s)")
    p_gen.add_argument("--alpha-start", type=float, default=None, metavar="A",
                       help="logistic: initial control parameter (default: 3.5)")
    p_gen.add_argument("--alpha-end", type=float, default=None, metavar="A",
                       help="logistic: final control parameter (default: 3.99)")
    p_gen.add_argument("--x0", type=float, default=None, metavar="X",
                       help="logistic: initial state in (0, 1) (default: 0.23)")
    p_gen.add_argument("--burn-in", type=int, default=None, metavar="B",
                       help="logistic: discarded leading iterations (default: 0)")
    p_gen.add_argument("--p", type=float, default=None, metavar="P",
                       help="mix: noise replacement probability (default: 0.5)")
    p_gen.add_argument("--p-end", type=float, default=None, metavar="P",
                       help="mix: ramp the probability linearly to this value")
    p_gen.add_argument("--spike-pos", type=int, default=None, metavar="K",
                       help="spike: 1-based impulse position (default: n/2)")
    p_gen.add_argument("--spike-amp", type=float, default=None, metavar="A",
                       help="spike: impulse amplitude (default: 10x noise SD)")
    p_gen.add_argument("--noise-sd", type=float, default=None, metavar="S",
                       help="spike: background noise SD (default: 1)")
    p_gen.add_argument("--snr-db", type=float, default=None, metavar="DB",
                       help="add white Gaussian noise at this SNR after generating")
    p_gen.add_argument("-o", "--output", default=None, metavar="PATH",
                       help="write the signal here instead of stdout")
    p_gen.set_defaults(func=cmd_generate)

    p_exp = sub.add_parser("experiment", help="run a registered experiment")
    p_exp.add_argument("name", nargs="?", default=None,
                       help="experiment name (see --list)")
    p_exp.add_argument("--list", action="store_true",
                       help="list registered experiments and exit")
    p_exp.add_argument("--seed", type=_seed, default=DEFAULT_SEED, metavar="S",
                       help="integer seed or 'random' (default: %(default)s)")
    p_exp.add_argument("--realizations", type=int, default=None, metavar="K",
                       help="override the number of realizations (table1: repeats)")
    p_exp.add_argument("--jobs", type=int, default=1, metavar="J",
                       help="worker threads for realizations; output is identical "
                       "for any value (default: 1)")
    p_exp.add_argument("--lengths", type=_int_list, default=None, metavar="N,N,...",
                       help="override the signal length grid")
    p_exp.add_argument("--m-values", type=_int_list, default=None, metavar="M,M,...",
                       help="override the embedding dimension grid")
    p_exp.add_argument("--c-values", type=_int_list, default=None, metavar="C,C,...",
                       help="override the class count grid")
    p_exp.add_argument("--r-values", type=_float_list, default=None, metavar="R,R,...",
                       help="override the sampen tolerance grid")
    p_exp.add_argument("--snr-db", type=_float_list, default=None, metavar="DB,DB,...",
                       help="override the SNR grid")
    p_exp.add_argument("-n", type=int, default=None, metavar="N",
                       help="override the signal length")
    p_exp.add_argument("--window-length", type=int, default=None, metavar="L",
                       help="override the analysis window length")
    p_exp.add_argument("--window-overlap", type=float, default=None, metavar="F",
                       help="override the analysis window overlap")
    p_exp.add_argument("--burn-in", type=int, default=None, metavar="B",
                       help="override the logistic burn-in")
    p_exp.add_argument("-o", "--output", default=None, metavar="PATH",
                       help="CSV destination (default: <name>.csv; '-' for stdout)")
    p_exp.add_argument("--plot", action="store_true",
                       help="also render a PNG next to the CSV")
    p_exp.set_defaults(func=cmd_experiment)

    p_bench = sub.add_parser("bench", help="time the pattern-entropy estimators")
    p_bench.add_argument("--lengths", type=_int_list,
                         default=[300, 1000, 3000, 10000, 30000, 100000, 300000],
                         metavar="N,N,...", help="signal length grid")
    p_bench.add_argument("--m-values", type=_int_list, default=[2, 3, 4, 5],
                         metavar="M,M,...", help="embedding dimension grid")
    p_bench.add_argument("--repeats", type=int, default=5, metavar="K",
                         help="timed repetitions per cell, median reported (default: 5)")
    p_bench.add_argument("--seed", type=_seed, default=DEFAULT_SEED, metavar="S",
                         help="seed for the timed input signals (default: %(default)s)")
    p_bench.add_argument("-o", "--output", default=None, metavar="PATH",
                         help="CSV destination (default: stdout)")
    p_bench.set_defaults(func=cmd_bench)

    p_cmp = sub.add_parser("compare", help="effect size between two groups of files")
    _add_method_flags(p_cmp)
    p_cmp.add_argument("--group-a", nargs="+", required=True, metavar="FILE",
                       help="signal files of the first group")
    p_cmp.add_argument("--group-b", nargs="+", required=True, metavar="FILE",
                       help="signal files of the second group")
    p_cmp.add_argument("-o", "--output", default=None, metavar="PATH",
                       help="CSV destination (default: stdout)")
    p_cmp.set_defaults(func=cmd_compare)

    return parser


def cmd_entropy(args) -> int:
    params = _method_params(args)
    if args.column < 1:
        raise UsageError("column numbers are 1-based")
    signal = load_signal(args.file, fmt=args.format, column=args.column)
    out, close = _open_output(args.output)
    try:
        if args.window is not None:
            window = WindowSpec(args.window, args.overlap)
            pairs = windowed_entropy(signal, window, args.method, **params)
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(["window", "start", "raw", "normalized"])
            for index, result in pairs:
                writer.writerow([
                    index,
                    (index - 1) * window.step,
                    _text_cell(result.raw),
                    _text_cell(result.normalized),
                ])
        else:
            result = METHODS[args.method](signal, **params)
            settings = " ".join(f"{k}={v}" for k, v in result.params.items())
            print(f"method={result.method} {settings} n={signal.size}", file=out)
            print(f"raw={result.raw!r}", file=out)
            if result.normalized is not None:
                print(f"normalized={result.normalized!r}", file=out)
    finally:
        if close:
            out.close()
    return 0


def _text_cell(value) -> str:
    if value is None:
        return ""
    return "NA" if math.isnan(value) else repr(float(value))


_GENERATE_FLAGS = {
    "logistic": ("alpha_start", "alpha_end", "x0", "burn_in"),
    "mix": ("p", "p_end"),
    "spike": ("spike_pos", "spike_amp", "noise_sd"),
    "white": (),
    "pink": (),
    "brown": (),
}


def cmd_generate(args) -> int:
    seed = _resolve_seed(args.seed)
    allowed = _GENERATE_FLAGS[args.kind]
    params = {}
    for key in ("alpha_start", "alpha_end", "x0", "burn_in", "p", "p_end",
                "spike_pos", "spike_amp", "noise_sd"):
        value = getattr(args, key)
        if value is None:
            continue
        if key not in allowed:
            raise UsageError(f"--{key.replace('_', '-')} does not apply to {args.kind!r}")
        params[key] = value
    n = args.n if args.n is not None else (2000 if args.kind == "spike" else 15000)
    if args.kind == "mix" and "p" not in params:
        params["p"] = 0.5
    if args.kind == "spike" and "spike_pos" not in params:
        params["spike_pos"] = max(1, n // 2)
    signal = generate(args.kind, n, subseed(seed, 0), **params)
    if args.snr_db is not None:
        signal = add_wgn_snr(signal, args.snr_db, subseed(seed, 1))
    if args.output:
        save_signal(signal, args.output)
    else:
        for value in signal:
            print(repr(float(value)))
    print(f"generated {args.kind} n={n} seed={seed}", file=sys.stderr)
    return 0


def cmd_experiment(args) -> int:
    registry = experiment_registry()["experiments"]
    if args.list:
        for name, entry in registry.items():
            print(f"{name}: {entry.get('summary', '')}")
        return 0
    if args.name is None:
        print("error: no experiment named; valid names: " + ", ".join(registry), file=sys.stderr)
        return 2
    if args.name not in registry:
        print(
            f"error: unknown experiment {args.name!r}; valid names: " + ", ".join(registry),
            file=sys.stderr,
        )
        return 2
    seed = _resolve_seed(args.seed)
    overrides = {
        "lengths": args.lengths,
        "m_values": args.m_values,
        "c_values": args.c_values,
        "r_values": args.r_values,
        "snr_db": args.snr_db,
        "n": args.n,
        "window_length": args.window_length,
        "window_overlap": args.window_overlap,
        "burn_in": args.burn_in,
    }
    try:
        result = run_experiment(
            args.name,
            seed=seed,
            realizations=args.realizations,
            jobs=args.jobs,
            **overrides,
        )
    except ValueError as exc:
        if "does not take" in str(exc):
            print(f"error: {exc}", file=sys.stderr)
            return 2
        raise
    out_path = args.output if args.output is not None else f"{args.name}.csv"
    if out_path == "-":
        result.write_csv(sys.stdout)
    else:
        result.write_csv(out_path)
        print(f"wrote {out_path} ({len(result.rows)} rows, seed={result.seed})", file=sys.stderr)
    if args.plot:
        from . import plots

        png_path = (
            f"{args.name}.png"
            if out_path == "-"
            else (out_path[:-4] if out_path.endswith(".csv") else out_path) + ".png"
        )
        plots.render(result, png_path)
        print(f"wrote {png_path}", file=sys.stderr)
    return 0


def cmd_bench(args) -> int:
    seed = _resolve_seed(args.seed)
    result = timing_benchmark(
        lengths=args.lengths, m_values=args.m_values, repeats=args.repeats, seed=seed
    )
    if args.output:
        result.write_csv(args.output)
        print(f"wrote {args.output} ({len(result.rows)} rows)", file=sys.stderr)
    else:
        result.write_csv(sys.stdout)
    return 0


def cmd_compare(args) -> int:
    params = _method_params(args)
    comparison = group_compare(args.group_a, args.group_b, args.method, **params)
    out, close = _open_output(args.output)
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["record", "group", "file", "method", "value", "note"])
        for group in (comparison.group_a, comparison.group_b):
            for path, value in zip(group.files, group.values):
                writer.writerow(["signal", group.label, path, args.method, repr(value), ""])
        for group in (comparison.group_a, comparison.group_b):
            for stat in ("mean", "median", "sd"):
                writer.writerow(
                    ["group_" + stat, group.label, "", args.method,
                     repr(getattr(group, stat)), ""]
                )
        writer.writerow(["hedges_g", "", "", args.method, repr(comparison.effect_size), ""])
        for path, note in comparison.skipped:
            writer.writerow(["skipped", "", path, "", "", note])
    finally:
        if close:
            out.close()
    print(
        f"hedges_g={comparison.effect_size:.6g} "
        f"(a: n={len(comparison.group_a.values)}, mean={comparison.group_a.mean:.6g}; "
        f"b: n={len(comparison.group_b.values)}, mean={comparison.group_b.mean:.6g})",
        file=sys.stderr,
    )
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FileNotFoundError, IsADirectoryError, PermissionError, SignalFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
