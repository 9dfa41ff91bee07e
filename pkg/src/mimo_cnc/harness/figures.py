"""Matplotlib rendering of sweep results, written next to the CSV output.

The CSV is the machine-readable contract; these figures are the human view
of the same records.  Everything is rendered headless to a file.
"""

from __future__ import annotations

import math
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

_BER_FLOOR = 1e-7  # display floor for zero-error points on log axes


def _label(parts) -> str:
    return ", ".join(str(p) for p in parts if p not in (None, ""))


def _finite_ebn0(value) -> float:
    return 60.0 if value is not None and math.isinf(value) else value


def _ber_for_plot(value) -> float:
    return max(value, _BER_FLOOR)


def _group(records, key):
    grouped = defaultdict(list)
    for record in records:
        grouped[key(record)].append(record)
    return grouped


def _render_ber_vs_ebn0(records, ax):
    grouped = _group(
        records,
        lambda r: (r.receiver, r.iterations, r.k, r.ibo_db, r.csi_error),
    )
    for (receiver, iterations, k, ibo, eps), rows in sorted(grouped.items(), key=str):
        rows = sorted(rows, key=lambda r: _finite_ebn0(r.ebn0_db))
        x = [_finite_ebn0(r.ebn0_db) for r in rows]
        y = [_ber_for_plot(r.ber) for r in rows]
        parts = [f"{receiver} I={iterations}", f"K={k}", f"IBO={ibo} dB"]
        if eps:
            parts.append(f"eps={eps}")
        ax.semilogy(x, y, marker="o", label=_label(parts))
    ax.set_xlabel("Eb/N0 [dB]")
    ax.set_ylabel("BER")


def _render_convergence(records, ax):
    grouped = _group(records, lambda r: (r.receiver, r.ebn0_db, r.ibo_db, r.k))
    for (receiver, ebn0, ibo, k), rows in sorted(grouped.items(), key=str):
        rows = sorted(rows, key=lambda r: r.iterations)
        x = [r.iterations for r in rows]
        y = [_ber_for_plot(r.ber) for r in rows]
        ax.semilogy(x, y, marker="o", label=_label([receiver, f"Eb/N0={ebn0}", f"IBO={ibo} dB"]))
    ax.set_xlabel("iterations")
    ax.set_ylabel("BER")


def _render_berin_berout(records, ax):
    ber_in = {}
    for r in records:
        if r.iterations == 0:
            ber_in[(r.k, r.ibo_db, r.ebn0_db, r.csi_error)] = r.ber
    grouped = _group(records, lambda r: (r.receiver, r.iterations, r.ebn0_db, r.csi_error))
    for (receiver, iterations, ebn0, eps), rows in sorted(grouped.items(), key=str):
        if iterations == 0:
            continue
        pairs = []
        for r in rows:
            key = (r.k, r.ibo_db, r.ebn0_db, r.csi_error)
            if key in ber_in:
                pairs.append((ber_in[key], r.ber))
        if not pairs:
            continue
        pairs.sort()
        x = [_ber_for_plot(p) for p, _ in pairs]
        y = [_ber_for_plot(q) for _, q in pairs]
        parts = [f"{receiver} I={iterations}", f"Eb/N0={ebn0}"]
        if eps:
            parts.append(f"eps={eps}")
        ax.loglog(x, y, marker="o", label=_label(parts))
    span = np.logspace(math.log10(_BER_FLOOR), 0, 50)
    ax.loglog(span, span, "k--", linewidth=0.8, label="no gain")
    ax.set_xlabel("BER in (standard receiver)")
    ax.set_ylabel("BER out")


def _render_sdr(records, ax):
    grouped = _group(records, lambda r: (r.channel, r.k))
    for (channel, k), rows in sorted(grouped.items(), key=str):
        rows = sorted(rows, key=lambda r: r.ibo_db)
        x = [r.ibo_db for r in rows]
        y = [r.sdr_db for r in rows]
        ax.plot(x, y, marker="o", label=_label([channel, f"K={k}"]))
    ax.set_xlabel("IBO [dB]")
    ax.set_ylabel("SDR [dB]")


def _render_alpha(records, ax):
    grouped = _group(records, lambda r: (r.channel, r.k, r.ibo_db))
    for (channel, k, ibo), rows in sorted(grouped.items(), key=str):
        x = [r.ibo_k_db for r in rows]
        y = [r.alpha_mean for r in rows]
        ax.plot(x, y, "o", markersize=3, label=_label([channel, f"K={k}", f"IBO={ibo} dB"]))
    points = [r.ibo_k_db for r in records if r.ibo_k_db is not None]
    if points:
        from ..frontend import alpha_analytic

        grid = np.linspace(min(points) - 0.5, max(points) + 0.5, 200)
        ax.plot(grid, alpha_analytic(grid), "k-", linewidth=1.0, label="analytic")
    ax.set_xlabel("per-antenna IBO [dB]")
    ax.set_ylabel("Bussgang gain")


def render_sweep(kind, records, path, title=None):
    """Render the figure matching a sweep kind; returns the output path."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    if kind in ("ber-sweep",):
        _render_ber_vs_ebn0(records, ax)
    elif kind == "convergence":
        _render_convergence(records, ax)
    elif kind == "berin-berout":
        _render_berin_berout(records, ax)
    elif kind == "sdr-sweep":
        _render_sdr(records, ax)
    elif kind == "alpha-check":
        _render_alpha(records, ax)
    else:
        raise ValueError(f"no figure defined for sweep kind {kind!r}")
    ax.grid(True, which="both", alpha=0.4)
    ax.set_title(title or kind)
    ax.legend(fontsize=7, loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_complexity(rows, path, title=None):
    """Operation counts per data subcarrier versus iteration count."""
    fig, axes = plt.subplots(1, 2, figsize=(9.0, 4.0), sharex=True)
    grouped = defaultdict(list)
    for row in rows:
        grouped[row["kind"]].append(row)
    for kind, entries in sorted(grouped.items()):
        entries = sorted(entries, key=lambda r: r["iterations"])
        x = [r["iterations"] for r in entries]
        axes[0].semilogy(x, [r["adds_per_data_subcarrier"] for r in entries], marker="o", label=kind)
        axes[1].semilogy(x, [r["mults_per_data_subcarrier"] for r in entries], marker="o", label=kind)
    axes[0].set_ylabel("additions/subtractions per data subcarrier")
    axes[1].set_ylabel("multiplications/divisions per data subcarrier")
    for ax in axes:
        ax.set_xlabel("iterations")
        ax.grid(True, which="both", alpha=0.4)
        ax.legend(fontsize=8)
    fig.suptitle(title or "receiver complexity")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
