"""Training-curve figures from metrics JSONL logs. File in, files out."""

import json
import math
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

SERIES_KEYS = (
    "ep", "wr_roll100", "wr_cum", "ent_pink", "ent_green", "ev_pink", "ev_green",
)


class MetricsFormatError(ValueError):
    """Metrics log does not parse; message carries file:line context."""


def load_series(path) -> dict:
    """Read the plotted columns out of one metrics JSONL file."""
    out: dict = {k: [] for k in SERIES_KEYS}
    with open(path) as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError:
                raise MetricsFormatError(f"{path}:{lineno}: not valid json") from None
            if not isinstance(row, dict):
                raise MetricsFormatError(f"{path}:{lineno}: record is not an object")
            for k in SERIES_KEYS:
                if k not in row:
                    raise MetricsFormatError(f"{path}:{lineno}: missing key {k!r}")
                v = row[k]
                if not isinstance(v, (int, float)) or isinstance(v, bool):
                    raise MetricsFormatError(f"{path}:{lineno}: key {k!r} is not numeric")
                out[k].append(v)
    if not out["ep"]:
        raise MetricsFormatError(f"{path}: empty metrics file")
    return {k: np.asarray(v, dtype=np.float64) for k, v in out.items()}


@dataclass
class PlotReport:
    files: list
    entropy_start: float
    ev_ylim: tuple


def plot_metrics(metrics_path, out_dir, overlay_paths=()) -> PlotReport:
    """Render the three standard figures for one run.

    overlay_paths adds further runs to the learning-curve comparison chart.
    Returns the written file paths plus the quantities tests pin down.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    runs = [(Path(p).stem, load_series(p)) for p in (metrics_path, *overlay_paths)]
    main = runs[0][1]
    files = []

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(main["ep"], main["wr_roll100"], lw=1.2, label="rolling-100")
    ax.plot(main["ep"], main["wr_cum"], lw=1.2, label="cumulative")
    ax.axhline(0.5, color="grey", lw=0.8, ls="--")
    ax.set_xlabel("episode")
    ax.set_ylabel("pink win rate")
    ax.set_ylim(0.0, 1.0)
    ax.set_title("self-play win rate")
    ax.legend()
    path = out / "win_rate.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    files.append(str(path))

    fig, ax = plt.subplots(figsize=(7, 4))
    for label, series in runs:
        ax.plot(series["ep"], series["wr_roll100"], lw=1.0, label=label)
    ax.axhline(0.5, color="grey", lw=0.8, ls="--")
    ax.set_xlabel("episode")
    ax.set_ylabel("rolling-100 win rate")
    ax.set_ylim(0.0, 1.0)
    ax.set_title("learning curves")
    ax.legend(fontsize=8)
    path = out / "learning_curves.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    files.append(str(path))

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.plot(main["ep"], main["ent_pink"], lw=1.0, label="pink")
    ax1.plot(main["ep"], main["ent_green"], lw=1.0, label="green")
    ax1.axhline(math.log(5), color="grey", lw=0.8, ls="--", label="uniform")
    ax1.set_xlabel("episode")
    ax1.set_ylabel("policy entropy (nats)")
    ax1.set_title("entropy")
    ax1.legend(fontsize=8)
    ax2.plot(main["ep"], main["ev_pink"], lw=1.0, label="pink")
    ax2.plot(main["ep"], main["ev_green"], lw=1.0, label="green")
    ax2.axhline(1.0, color="grey", lw=0.8, ls="--")
    # keep the perfect-critic level in frame no matter how bad the data is
    ev_lo = float(min(-0.05, main["ev_pink"].min() - 0.05, main["ev_green"].min() - 0.05))
    ev_hi = float(max(1.05, main["ev_pink"].max() + 0.05, main["ev_green"].max() + 0.05))
    ax2.set_ylim(ev_lo, ev_hi)
    ax2.set_xlabel("episode")
    ax2.set_ylabel("explained variance")
    ax2.set_title("critic quality")
    ax2.legend(fontsize=8)
    fig.tight_layout()
    path = out / "diagnostics.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    files.append(str(path))

    return PlotReport(
        files=files,
        entropy_start=float(main["ent_pink"][0]),
        ev_ylim=(ev_lo, ev_hi),
    )
