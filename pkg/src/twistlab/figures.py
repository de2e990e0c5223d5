"""Matplotlib rendering of sweep reports to PNG files."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .theorems import TheoremId  # noqa: E402


def render_sweep_figures(report: dict, outdir: str | Path) -> list[Path]:
    """Write summary figures for a verify report; returns the paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = [
        _verdict_bars(report, outdir / "verdicts_by_theorem.png"),
        _growth_scatter(report, outdir / "odd_growth_by_d.png"),
    ]
    return paths


def _verdict_bars(report: dict, path: Path) -> Path:
    ids = [tid.value for tid in TheoremId]
    stats = report["verdicts_by_theorem"]
    verified = [stats[i]["verified"] for i in ids]
    held_failed = [stats[i]["hypotheses_held"] - stats[i]["verified"] for i in ids]
    vacuous = [stats[i]["vacuous"] for i in ids]
    fig, ax = plt.subplots(figsize=(9, 4.5))
    xs = range(len(ids))
    ax.bar(xs, verified, label="hypotheses held, conclusion verified", color="#2a7e43")
    ax.bar(xs, held_failed, bottom=verified, label="hypotheses held, conclusion FAILED", color="#c0392b")
    ax.bar(
        xs,
        vacuous,
        bottom=[a + b for a, b in zip(verified, held_failed)],
        label="hypotheses not met (vacuous)",
        color="#b0b7bd",
    )
    ax.set_xticks(list(xs))
    ax.set_xticklabels([i.removeprefix("Thm_").removeprefix("Cor_") for i in ids], rotation=20, ha="right")
    ax.set_ylabel("(curve, d) pairs")
    ax.set_title(f"Verdicts over {report['pairs_checked']} pairs, d in {report['d_range']}")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _growth_scatter(report: dict, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(9, 4.5))
    labels = sorted({row["label"] for row in report["pairs"]})
    cmap = plt.get_cmap("tab10")
    for i, label in enumerate(labels):
        ds = [r["d"] for r in report["pairs"] if r["label"] == label]
        qs = [r["quotient_odd_part"] for r in report["pairs"] if r["label"] == label]
        ax.scatter(ds, qs, s=18, label=label, color=cmap(i % 10), alpha=0.8)
    ax.set_xlabel("twist parameter d (squarefree)")
    ax.set_ylabel("odd part of |E(L)_tors| / |E(Q)_tors|")
    ax.set_yticks(sorted({r["quotient_odd_part"] for r in report["pairs"]}))
    ax.set_title("Odd torsion growth across the corpus")
    ax.legend(fontsize=8, ncol=2)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
