"""Matplotlib figure rendering for the CLI report paths.

Every figure is written to a file; nothing is shown interactively.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def save_histogram_figure(histogram: dict, path, title: str = "Compressed bit lengths",
                          xlabel: str = "bits", ylabel: str = "sequences") -> None:
    keys = sorted(histogram)
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(keys, [histogram[k] for k in keys], width=0.8, color="#3b6ea5")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_ledger_figure(records, path) -> None:
    steps = [r.step_index for r in records]
    info = [r.subjective_information for r in records]
    surprising = [r.was_surprising for r in records]
    fig, ax = plt.subplots(figsize=(7, 4))
    colors = ["#c0392b" if s else "#3b6ea5" for s in surprising]
    ax.bar(steps, info, color=colors)
    ax.set_xlabel("observation step")
    ax.set_ylabel("subjective information (bits)")
    ax.set_title("Observer update ledger (red = surprising)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_scan_figure(rows, path) -> None:
    ns = [n for n, _ in rows]
    fracs = [f for _, f in rows]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(ns, fracs, marker="o", ms=3, color="#3b6ea5")
    ax.set_xlabel("conjunction length n (blocks)")
    ax.set_ylabel("fraction of seeds with all-true verdicts")
    ax.set_ylim(-0.05, 1.05)
    ax.set_title("Witness phase transition")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_rank_figure(items, path) -> None:
    ranks = [rank for _, _, rank in items]
    bits = [b for _, b, _ in items]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ranks, bits, marker="o", color="#3b6ea5")
    ax.set_xlabel("rank (1 = most plausibly random)")
    ax.set_ylabel("compressed bits")
    ax.set_xticks(ranks)
    ax.set_title("Compressed bit length by rank")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
