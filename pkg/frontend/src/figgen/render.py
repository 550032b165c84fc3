"""Deterministic rendering of the three figure kinds.

Style mirrors the source plots: solid red for empirical curves, dashed black
for the theoretical approximation, and point-ranges with a dashed theory
curve for convergence rates. Every plotted number is taken verbatim from the
input files; nothing is recomputed.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .spec import FigureSpec, read_table

# fixed, timestamp-free output so renders are reproducible byte for byte
matplotlib.rcParams.update({
    "svg.hashsalt": "figure-gen",
    "figure.dpi": 100,
    "savefig.dpi": 100,
    "font.size": 9,
})

_EMPIRICAL = dict(color="#d62728", linewidth=1.4)
_THEORY = dict(color="black", linestyle="--", linewidth=1.2)


def _grid(n_panels, layout):
    if layout is not None:
        return layout
    cols = min(n_panels, 2 if n_panels != 3 else 3)
    rows = math.ceil(n_panels / cols)
    return rows, cols


def _cdf_axes(ax, table, title):
    eps = [r["eps"] for r in table]
    ax.plot(eps, [r["empirical"] for r in table], label="empirical",
            drawstyle="steps-post", **_EMPIRICAL)
    ax.plot(eps, [r["psi_hat"] for r in table], label="Tracy-Widom", **_THEORY)
    ax.set_xlabel(r"$\epsilon$")
    ax.set_ylabel("embedding probability")
    ax.set_ylim(-0.02, 1.02)
    if title:
        ax.set_title(title)
    ax.legend(loc="lower right", frameon=False)


def _render_cdf_panels(spec):
    tables = [read_table(path, spec.kind) for path in spec.inputs]
    rows, cols = _grid(len(tables), spec.layout)
    fig, axes = plt.subplots(rows, cols, figsize=(3.4 * cols, 2.8 * rows),
                             squeeze=False)
    flat = [ax for row in axes for ax in row]
    for i, table in enumerate(tables):
        title = spec.titles[i] if spec.titles else ""
        _cdf_axes(flat[i], table, title)
    for ax in flat[len(tables):]:
        ax.set_visible(False)
    fig.tight_layout()
    return fig


def _render_conv_rate(spec):
    table = read_table(spec.inputs[0], spec.kind)
    kinds = []
    for row in table:
        if row["kind"] not in kinds:
            kinds.append(row["kind"])
    rows, cols = _grid(len(kinds), spec.layout)
    fig, axes = plt.subplots(rows, cols, figsize=(3.4 * cols, 2.8 * rows),
                             squeeze=False)
    flat = [ax for row in axes for ax in row]
    for i, kind in enumerate(kinds):
        ax = flat[i]
        rows_k = [r for r in table if r["kind"] == kind]
        ks = [r["k"] for r in rows_k]
        rates = [r["rate"] for r in rows_k]
        lo = [r["rate"] - r["lo"] for r in rows_k]
        hi = [r["hi"] - r["rate"] for r in rows_k]
        ax.errorbar(ks, rates, yerr=[lo, hi], fmt="o", color="black",
                    markersize=3.5, capsize=2, linewidth=1.0,
                    label="empirical")
        ax.plot(ks, [r["gamma_hat"] for r in rows_k], color="#d62728",
                linestyle="--", linewidth=1.2, label="Tracy-Widom")
        ax.set_xlabel("sketch size k")
        ax.set_ylabel("convergence probability")
        ax.set_ylim(-0.05, 1.05)
        title = spec.titles[i] if spec.titles else kind
        ax.set_title(title)
        ax.legend(loc="lower right", frameon=False)
    for ax in flat[len(kinds):]:
        ax.set_visible(False)
    fig.tight_layout()
    return fig


def render(spec: FigureSpec) -> list:
    """Render the figure and write <out>.png and <out>.svg.

    Returns the list of written paths.
    """
    if spec.kind == "conv-rate":
        fig = _render_conv_rate(spec)
    else:
        fig = _render_cdf_panels(spec)
    png = f"{spec.out}.png"
    svg = f"{spec.out}.svg"
    try:
        fig.savefig(png)
        fig.savefig(svg, metadata={"Date": None})
    finally:
        plt.close(fig)
    return [png, svg]
