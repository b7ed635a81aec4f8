"""Figure rendering for run outputs: tracking, gains, wind and rewards.

Figures are rendered headlessly to PNG files next to the trajectory CSV.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .config import CHANNELS  # noqa: E402
from .harness import RunMetrics  # noqa: E402

_UNITS = {"roll": "rad", "pitch": "rad", "yaw": "rad", "z": "m"}


def tracking_figure(result: RunMetrics, path: str) -> str:
    fig, axes = plt.subplots(len(CHANNELS), 1, figsize=(8, 10), sharex=True)
    t = result.column("time")
    for ax, ch in zip(axes, CHANNELS):
        ax.plot(t, result.column(f"ref_{ch}"), "k--", lw=1, label="reference")
        ax.plot(t, result.column(f"out_{ch}"), lw=1.2, label="output")
        ax.set_ylabel(f"{ch} [{_UNITS[ch]}]")
        ax.grid(alpha=0.3)
    axes[0].legend(loc="upper right", fontsize=8)
    axes[-1].set_xlabel("time [s]")
    fig.suptitle("Attitude and altitude tracking")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def gains_figure(result: RunMetrics, path: str) -> str:
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(8, 6), sharex=True)
    t = result.column("time")
    for ch in CHANNELS:
        ax1.plot(t, result.column(f"gamma_{ch}"), lw=1, label=ch)
        ax2.plot(t, result.column(f"tau_{ch}"), lw=1, label=ch)
    ax1.set_ylabel("gamma")
    ax2.set_ylabel("tau [s]")
    ax2.set_xlabel("time [s]")
    for ax in (ax1, ax2):
        ax.grid(alpha=0.3)
    ax1.legend(loc="upper right", fontsize=8, ncol=4)
    fig.suptitle("Adapted controller gains")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def wind_figure(result: RunMetrics, path: str) -> str:
    fig, ax = plt.subplots(figsize=(8, 3.5))
    t = result.column("time")
    for axis in ("x", "y", "z"):
        ax.plot(t, result.column(f"wind_{axis}"), lw=1, label=axis)
    ax.set_xlabel("time [s]")
    ax.set_ylabel("wind [m/s]")
    ax.grid(alpha=0.3)
    ax.legend(loc="upper right", fontsize=8)
    fig.suptitle("Wind gust and turbulence profile")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def rewards_figure(result: RunMetrics, path: str) -> str:
    fig, ax = plt.subplots(figsize=(8, 3.5))
    t = result.column("time")
    for ch in CHANNELS:
        ax.plot(t, result.column(f"reward_{ch}"), lw=0.8, label=ch)
    ax.set_xlabel("time [s]")
    ax.set_ylabel("reward")
    ax.grid(alpha=0.3)
    ax.legend(loc="upper right", fontsize=8, ncol=4)
    fig.suptitle("Per-channel learning rewards")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_all(result: RunMetrics, out_dir: str) -> list:
    os.makedirs(out_dir, exist_ok=True)
    return [
        tracking_figure(result, os.path.join(out_dir, "tracking.png")),
        gains_figure(result, os.path.join(out_dir, "gains.png")),
        wind_figure(result, os.path.join(out_dir, "wind.png")),
        rewards_figure(result, os.path.join(out_dir, "rewards.png")),
    ]
