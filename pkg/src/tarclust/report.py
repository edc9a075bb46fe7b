"""JSON reports and SVG figures for clustering and simulation runs.

JSON is written with sorted keys and fixed float formatting so identical
runs give identical bytes. SVGs carry no date and use a fixed hash salt.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Sequence

import numpy as np

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

plt.rcParams["svg.hashsalt"] = "tarclust"

__all__ = [
    "write_json",
    "plot_silhouette_curves",
    "plot_cluster_timeline",
    "plot_silhouette_boxes",
    "plot_exact_grouping",
    "write_replicates_csv",
    "scenario_summary",
]

REPORT_VERSION = 1


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if np.isfinite(v) else None
    if isinstance(obj, np.datetime64):
        return str(obj)
    return obj


def write_json(path, obj) -> None:
    text = json.dumps(_plain(obj), sort_keys=True, indent=2)
    Path(path).write_text(text + "\n")


def _save(fig, path) -> None:
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def plot_silhouette_curves(windows: Sequence[dict], path) -> None:
    """Average silhouette against candidate cluster count, one line per window."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for w in windows:
        curve = w.get("silhouette_by_c") or {}
        if not curve:
            continue
        cs = sorted(int(c) for c in curve)
        ax.plot(cs, [curve[str(c)] for c in cs], marker="o", label=w["name"])
        ax.axvline(w["c"], color=ax.lines[-1].get_color(), linestyle=":", linewidth=0.8)
    ax.set_xlabel("number of clusters c")
    ax.set_ylabel("average silhouette")
    if ax.lines:
        ax.legend(fontsize="small")
    fig.tight_layout()
    _save(fig, path)


def plot_cluster_timeline(windows: Sequence[dict], labels: Sequence[str], path) -> None:
    """Cluster id of every series (rows) in every window (columns)."""
    done = [w for w in windows if w.get("clusters") is not None]
    grid = np.full((len(labels), max(1, len(done))), np.nan)
    for j, w in enumerate(done):
        for i, lab in enumerate(labels):
            if lab in w["clusters"]:
                grid[i, j] = w["clusters"][lab]
    fig, ax = plt.subplots(figsize=(1.6 + 1.4 * grid.shape[1], 0.8 + 0.3 * len(labels)))
    ax.imshow(np.ma.masked_invalid(grid), aspect="auto", cmap="tab20", vmin=0, vmax=19, interpolation="nearest")
    for i in range(grid.shape[0]):
        for j in range(grid.shape[1]):
            if np.isfinite(grid[i, j]):
                ax.text(j, i, str(int(grid[i, j]) + 1), ha="center", va="center", fontsize=7)
    ax.set_yticks(range(len(labels)), labels, fontsize=7)
    ax.set_xticks(range(len(done)), [w["name"] for w in done], fontsize=7, rotation=30, ha="right")
    ax.set_title("cluster membership by window", fontsize=9)
    fig.tight_layout()
    _save(fig, path)


def plot_silhouette_boxes(replicates: Sequence[dict], path) -> None:
    """Box plot of average silhouette by candidate c across replicates."""
    by_c: dict[int, list] = {}
    for r in replicates:
        for c, s in (r.get("silhouette_by_c") or {}).items():
            by_c.setdefault(int(c), []).append(s)
    cs = sorted(by_c)
    fig, ax = plt.subplots(figsize=(7, 4))
    if cs:
        ax.boxplot([by_c[c] for c in cs], positions=cs)
    ax.set_xlabel("number of clusters c")
    ax.set_ylabel("average silhouette")
    fig.tight_layout()
    _save(fig, path)


def plot_exact_grouping(replicates: Sequence[dict], path) -> None:
    """Exact-grouping percentage per replicate."""
    ids = [r["replicate_id"] + 1 for r in replicates]
    pct = [r["exact_grouping_pct"] if r["exact_grouping_pct"] is not None else 0.0 for r in replicates]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(ids, pct)
    ax.set_ylim(0, 100)
    ax.set_xlabel("replicate")
    ax.set_ylabel("exact grouping (%)")
    fig.tight_layout()
    _save(fig, path)


def write_replicates_csv(results, path) -> None:
    """One row per series per replicate."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["replicate_id", "series", "true_dgm", "cluster", "chosen_c", "exact_grouping_pct"])
        for r in results:
            assigned = r.assignments or [None] * len(r.labels)
            for lab, truth, a in zip(r.labels, r.true_labels, assigned):
                w.writerow([r.replicate_id, lab, truth, "" if a is None else a, r.chosen_c or "", r.exact_grouping_pct])


def scenario_summary(results, scenario: dict) -> dict:
    ok = [r for r in results if r.exact_grouping_pct is not None]
    total = sum(len(r.labels) for r in ok)
    correct = sum(r.exact_grouping_pct * len(r.labels) / 100.0 for r in ok)
    chosen: dict[str, int] = {}
    for r in ok:
        chosen[str(r.chosen_c)] = chosen.get(str(r.chosen_c), 0) + 1
    return {
        "report_version": REPORT_VERSION,
        "scenario": scenario,
        "replicates": [r.to_dict() for r in results],
        "overall_exact_grouping_pct": 100.0 * correct / total if total else None,
        "chosen_c_counts": chosen,
        "failed_replicates": len(results) - len(ok),
    }
