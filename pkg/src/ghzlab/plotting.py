"""Figures written next to CLI reports.

Uses the non-interactive Agg backend; every function saves one PNG and
returns its path.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .report import LhvReport, OverlapReport, SampleReport, VerificationReport  # noqa: E402

FIG_WIDTH = 6.0
DPI = 120


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def plot_overlaps(report: OverlapReport, path: Path) -> Path:
    values = np.asarray(report.overlaps)
    fig, ax = plt.subplots(figsize=(FIG_WIDTH, FIG_WIDTH * 0.85))
    im = ax.imshow(values, cmap="viridis", vmin=0.0, origin="upper")
    fig.colorbar(im, ax=ax, label=r"$|{}_x\langle n|m\rangle_y|^2$")
    ax.set_xlabel("m (Y eigenvector)")
    ax.set_ylabel("n (X eigenvector)")
    ax.set_title(f"X/Y eigenbasis overlaps, d={report.d}, N={report.N}")
    if report.d <= 8:
        for n in range(report.d):
            for m in range(report.d):
                ax.text(m, n, f"{values[n, m]:.3f}", ha="center", va="center", color="w", fontsize=8)
    return _save(fig, path)


def plot_counts(report: SampleReport, path: Path) -> Path:
    labels = list(report.counts)
    counts = [report.counts[k] for k in labels]
    width = max(FIG_WIDTH, 0.35 * len(labels))
    fig, ax = plt.subplots(figsize=(width, FIG_WIDTH * 0.6))
    if labels:
        colors = []
        for k in labels:
            total = sum(int(v) for v in k.split(","))
            on = report.expected_residue is None or total % report.d == report.expected_residue
            colors.append("tab:blue" if on else "tab:red")
        ax.bar(range(len(labels)), counts, color=colors)
        ax.set_xticks(range(len(labels)))
        ax.set_xticklabels(labels, rotation=90, fontsize=7)
    ax.set_xlabel("outcome exponents (n_1, ..., n_N)")
    ax.set_ylabel("counts")
    ax.set_title(f"{report.settings} on GHZ(d={report.d}, N={report.N}), {report.shots} shots")
    return _save(fig, path)


def plot_verification(report: VerificationReport, path: Path) -> Path:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(2 * FIG_WIDTH, FIG_WIDTH * 0.6))
    res = report.eigen_residuals
    floor = 1e-18
    ax1.bar(range(len(res)), [max(v, floor) for v in res.values()], color="tab:blue")
    ax1.axhline(report.tol, color="k", ls="--", lw=1, label=f"tol = {report.tol:g}")
    ax1.set_yscale("log")
    ax1.set_xticks(range(len(res)))
    ax1.set_xticklabels(list(res), rotation=45, fontsize=7)
    ax1.set_ylabel(r"$\|v_i\psi - \lambda_i\psi\|$")
    ax1.legend(fontsize=8)
    comm = report.commutator_norms
    ax2.bar(range(len(comm)), [max(v, floor) for v in comm.values()], color="tab:orange")
    ax2.axhline(1e-6, color="k", ls="--", lw=1, label="incompatibility floor")
    ax2.set_yscale("log")
    ax2.set_xticks(range(len(comm)))
    ax2.set_xticklabels(list(comm), rotation=90, fontsize=6)
    ax2.set_ylabel(r"$\|[v_i, v_j]\|_F$")
    ax2.legend(fontsize=8)
    status = "PASS" if report.passed else "FAIL"
    fig.suptitle(f"d={report.d}, N={report.N}: {status}, LHV {report.lhv_verdict['status']}")
    return _save(fig, path)


def plot_lhv(report: LhvReport, path: Path) -> Path:
    """Residue of the summed realism condition over every y-sum S."""
    d, N = report.d, report.N
    s = np.arange(d)
    residue = ((N - 1) * s + N) % d
    fig, ax = plt.subplots(figsize=(FIG_WIDTH, FIG_WIDTH * 0.6))
    hit = residue == 0
    ax.scatter(s[~hit], residue[~hit], color="tab:gray", label="condition violated")
    ax.scatter(s[hit], residue[hit], color="tab:green", label="condition met")
    ax.axhline(0, color="k", lw=0.8)
    ax.legend(fontsize=8)
    ax.set_xlabel("S = sum of y values (mod d)")
    ax.set_ylabel(f"({N}-1) S + {N}  mod {d}")
    ax.set_ylim(-0.5, d - 0.5)
    ax.set_title(f"local realism, d={d}, N={N}: {report.status}")
    return _save(fig, path)
