"""Matplotlib rendering of the CLI report data to image files."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bell import FringeFit
from .vectorfield import FieldSample


def render_field(samples: list[FieldSample], path: str, title: str | None = None) -> None:
    """Quiver plot of the transverse polarization direction field."""
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.quiver(
        [s.x for s in samples],
        [s.y for s in samples],
        [s.ex for s in samples],
        [s.ey for s in samples],
        pivot="middle",
        scale=30,
        width=0.003,
        color="tab:blue",
    )
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_fringe(
    deltas: list[float],
    rates: list[float],
    path: str,
    fit: FringeFit | None = None,
    title: str | None = None,
) -> None:
    """Coincidence fringe vs analyzer rotation difference, with fit overlay."""
    fig, ax = plt.subplots(figsize=(8, 5))
    ax.plot(deltas, rates, ".", markersize=3, label="coincidence")
    if fit is not None and math.isfinite(fit.period):
        omega = 2.0 * math.pi / fit.period
        model = [
            fit.visibility * math.cos(0.5 * omega * d + fit.offset_delta0) ** 2
            + (1.0 - fit.visibility) / 2.0
            for d in deltas
        ]
        label = f"fit: V={fit.visibility:.3f}, period={fit.period:.4f}"
        ax.plot(deltas, model, "-", alpha=0.6, label=label)
    ax.set_xlabel("beta_t - beta_r (rad)")
    ax.set_ylabel("normalized coincidence")
    ax.set_ylim(-0.05, 1.05)
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
