"""Figures and CSV tables for the report commands.

Figures are drawn on a bare ``Figure`` with the Agg canvas, so nothing here
touches pyplot state or needs a display.  The output format follows the file
suffix (png, svg, pdf).
"""

from __future__ import annotations

import csv
import functools
import math
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

import matplotlib as mpl
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure
from matplotlib.ticker import MaxNLocator

golden_mean = (math.sqrt(5) - 1.0) / 2.0
fig_width = 6.4
colors = ["#2b8cbe", "#e34a33", "#31a354", "#756bb1", "#636363"]

params = {
    "axes.labelsize": 10,
    "axes.titlesize": 10,
    "font.size": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "lines.linewidth": 1.2,
    "lines.markersize": 4,
}

# strip timestamps so repeated runs write identical files
_METADATA = {"png": {"Software": None}, "svg": {"Date": None}, "pdf": {"CreationDate": None, "Producer": None}}


def styled(fn):
    """Run a plotting function under the module rc parameters."""

    @functools.wraps(fn)
    def wrapper(*args, **kw):
        with mpl.rc_context(params):
            return fn(*args, **kw)

    return wrapper


def new_figure(nrows: int = 1, height: Optional[float] = None):
    fig = Figure(figsize=(fig_width, height or fig_width * golden_mean * nrows))
    FigureCanvasAgg(fig)
    axes = fig.subplots(nrows, 1, squeeze=False)[:, 0]
    return fig, list(axes)


def save(fig: Figure, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fmt = path.suffix.lstrip(".").lower() or "png"
    fig.tight_layout()
    fig.savefig(path, format=fmt, dpi=120, metadata=_METADATA.get(fmt))
    return path


def write_csv(rows: Sequence[Mapping[str, object]], path, fieldnames: Optional[Sequence[str]] = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fieldnames is None:
        fieldnames = list(rows[0]) if rows else []
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=fieldnames, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: r.get(k, "") for k in fieldnames})
    return path


def additive_rows(p: int, max_m: int) -> List[Dict[str, int]]:
    """One row per Chow degree with rank, torsion multiplicity and odd-cohomology multiplicity."""
    from .additive import count_r, count_s, count_s_prime

    return [{"m": m, "rank": count_r(m, p), "torsion": count_s(m, p), "odd_torsion": count_s_prime(m, p)}
            for m in range(max_m + 1)]


@styled
def plot_additive(p: int, rows: Sequence[Mapping[str, int]], path) -> Path:
    ms = [r["m"] for r in rows]
    fig, (ax0, ax1) = new_figure(2)
    ax0.bar(ms, [r["rank"] for r in rows], color=colors[0], width=0.8)
    ax0.set_ylabel("free rank r(m, p)")
    ax0.set_title(f"CH^m(BPGL_{p})")
    ax1.bar(ms, [r["torsion"] for r in rows], color=colors[1], width=0.8, label="CH^m (j > 0)")
    ax1.plot(ms, [r["odd_torsion"] for r in rows], "o", color=colors[2], label="H^(2m+3) (j >= 0)")
    ax1.set_ylabel(f"copies of Z/{p}")
    ax1.set_xlabel("m")
    ax1.set_ylim(0, 1.3 * max([1] + [r["odd_torsion"] for r in rows] + [r["torsion"] for r in rows]))
    for ax in (ax0, ax1):
        ax.yaxis.set_major_locator(MaxNLocator(integer=True))
    ax1.legend(loc="upper left", frameon=False, ncol=2)
    return save(fig, path)


@styled
def plot_generator_degrees(p: int, degrees: Iterable[int], max_degree: int, path, expected=None) -> Path:
    counts = [0] * (max_degree + 1)
    for d in degrees:
        counts[d] += 1
    fig, (ax,) = new_figure(1)
    xs = list(range(max_degree + 1))
    ax.bar(xs, counts, color=colors[0], width=0.8, label="computed")
    if expected is not None:
        exp = [0] * (max_degree + 1)
        for d in expected:
            exp[d] += 1
        ax.plot(xs, exp, "x", color=colors[1], label="expected")
        ax.legend(loc="upper right", frameon=False)
    ax.set_xlabel("degree")
    ax.set_ylabel("new generators")
    ax.set_title(f"minimal generators, p = {p}")
    return save(fig, path)


@styled
def plot_check_times(results, path) -> Path:
    fig, (ax,) = new_figure(1)
    names = [f"{r.criterion}" for r in results]
    col = {"pass": colors[2], "fail": colors[1], "skipped": colors[4]}
    ax.bar(names, [r.seconds for r in results], color=[col[r.status] for r in results])
    ax.set_xlabel("criterion")
    ax.set_ylabel("seconds")
    ax.set_title("verification (green pass, red fail, grey skipped)")
    return save(fig, path)
