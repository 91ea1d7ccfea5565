"""Render experiment results to figure files.

Importing this module selects the Agg backend so rendering works headless;
the library's analysis path never imports it.  Each renderer consumes an
ExperimentResult and produces a single PNG summarizing the grid: curve
plots with SD error bars where one axis dominates, heat maps for the
(SNR, window) ratio grids.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .analysis import ExperimentResult, ExperimentRow


def _spec_label(row: ExperimentRow) -> str:
    parts = [row.method]
    if row.mapping:
        parts.append(row.mapping)
    if row.m is not None:
        parts.append(f"m={row.m}")
    if row.c is not None:
        parts.append(f"c={row.c}")
    return " ".join(parts)


def _grouped(rows, key):
    groups: "dict[object, list[ExperimentRow]]" = {}
    for row in rows:
        groups.setdefault(key(row), []).append(row)
    return groups


def _curves(result, x_of, label_of, xlabel, ylabel, logx=False, logy=False):
    fig, ax = plt.subplots(figsize=(8, 5))
    for label, rows in _grouped(result.rows, label_of).items():
        xs = np.array([x_of(r) for r in rows], dtype=float)
        means = np.array([r.mean for r in rows])
        sds = np.array([r.sd for r in rows])
        ax.errorbar(xs, means, yerr=sds, marker="o", markersize=3, capsize=2, label=str(label))
    if logx:
        ax.set_xscale("log")
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(result.experiment)
    ax.legend(fontsize=7)
    fig.tight_layout()
    return fig


def _heatmaps(result, panel_of, xlabel="window", ylabel="SNR (dB)"):
    panels = _grouped(result.rows, panel_of)
    ncols = min(4, len(panels))
    nrows = -(-len(panels) // ncols)
    fig, axes = plt.subplots(nrows, ncols, figsize=(4 * ncols, 3 * nrows), squeeze=False)
    for ax in axes.flat[len(panels) :]:
        ax.set_axis_off()
    for ax, (label, rows) in zip(axes.flat, panels.items()):
        snrs = sorted({r.axis1 for r in rows})
        windows = sorted({r.axis2 for r in rows})
        grid = np.full((len(snrs), len(windows)), np.nan)
        for r in rows:
            grid[snrs.index(r.axis1), windows.index(r.axis2)] = r.mean
        image = ax.imshow(grid, aspect="auto", origin="lower", cmap="viridis")
        ax.set_title(str(label), fontsize=8)
        ax.set_xlabel(xlabel, fontsize=7)
        ax.set_ylabel(ylabel, fontsize=7)
        ax.set_yticks(range(len(snrs)), [str(s) for s in snrs], fontsize=6)
        fig.colorbar(image, ax=ax, shrink=0.8)
    fig.suptitle(result.experiment)
    fig.tight_layout()
    return fig


def _render_fig2(result):
    return _curves(
        result, lambda r: r.axis1, _spec_label,
        "signal length", "normalized entropy", logx=True,
    )


def _render_snr_grid(result):
    return _heatmaps(result, _spec_label)


def _render_fig5(result):
    fig, axes = plt.subplots(1, 3, figsize=(15, 5), sharey=True)
    by_kind = _grouped(result.rows, lambda r: r.axis1)
    for ax, (kind, rows) in zip(axes, by_kind.items()):
        for label, sub in _grouped(rows, _spec_label).items():
            xs = np.array([r.axis2 for r in sub], dtype=float)
            ax.errorbar(
                xs, [r.mean for r in sub], yerr=[r.sd for r in sub],
                marker="o", markersize=3, capsize=2, label=label,
            )
        ax.set_xscale("log")
        ax.set_title(f"{kind} noise")
        ax.set_xlabel("signal length")
    axes[0].set_ylabel("entropy")
    axes[-1].legend(fontsize=6)
    fig.suptitle(result.experiment)
    fig.tight_layout()
    return fig


def _render_fig6(result):
    return _curves(
        result, lambda r: r.axis1, _spec_label,
        "signal length", "forbidden fraction", logx=True,
    )


def _render_fig7(result):
    return _curves(result, lambda r: r.axis1, _spec_label, "window", "entropy")


def _render_fig10(result):
    fig, axes = plt.subplots(1, 3, figsize=(15, 5))
    by_method = _grouped(result.rows, lambda r: r.method)
    for ax, (method, rows) in zip(axes, by_method.items()):
        for axis1, sub in _grouped(rows, lambda r: r.axis1).items():
            xs = [r.axis2 for r in sub]
            ax.errorbar(
                xs, [r.mean for r in sub], yerr=[r.sd for r in sub],
                marker="o", markersize=3, capsize=2,
                label=f"r={axis1}" if method == "sampen" else f"c={axis1}",
            )
        ax.set_title(method)
        ax.set_xlabel("window")
        ax.set_ylabel("entropy")
        ax.legend(fontsize=7)
    fig.suptitle(result.experiment)
    fig.tight_layout()
    return fig


def _render_table1(result):
    return _curves(
        result, lambda r: r.axis1, lambda r: f"{r.method} m={r.m}",
        "signal length", "median time (s)", logx=True, logy=True,
    )


def _render_table2(result):
    fig, ax = plt.subplots(figsize=(9, 5))
    labels, cvs = [], []
    for row in result.rows:
        tag = f"r={row.axis1}" if row.method == "sampen" else f"c={row.axis1}"
        labels.append(f"{row.method} {tag}")
        cvs.append(row.sd / row.mean if row.mean else np.nan)
    ax.bar(range(len(labels)), cvs)
    ax.set_xticks(range(len(labels)), labels, rotation=60, ha="right", fontsize=7)
    ax.set_ylabel("coefficient of variation")
    ax.set_title(result.experiment)
    fig.tight_layout()
    return fig


_RENDERERS = {
    "fig2": _render_fig2,
    "fig3": _render_snr_grid,
    "fig4": _render_snr_grid,
    "fig5": _render_fig5,
    "fig6": _render_fig6,
    "fig7": _render_fig7,
    "fig10": _render_fig10,
    "table1": _render_table1,
    "table2": _render_table2,
}


def _render_generic(result):
    fig, ax = plt.subplots(figsize=(8, 5))
    ax.errorbar(
        range(len(result.rows)),
        [r.mean for r in result.rows],
        yerr=[r.sd for r in result.rows],
        marker="o", markersize=2, linestyle="none",
    )
    ax.set_xlabel("row")
    ax.set_ylabel("mean")
    ax.set_title(result.experiment)
    fig.tight_layout()
    return fig


def render(result: ExperimentResult, path) -> None:
    """Write a PNG summary of an experiment result."""
    fig = _RENDERERS.get(result.experiment, _render_generic)(result)
    try:
        fig.savefig(path, dpi=150)
    finally:
        plt.close(fig)
