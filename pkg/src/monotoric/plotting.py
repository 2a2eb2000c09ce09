"""Vector-graphics figures of planar fans, divisions and monodromy traces."""
from __future__ import annotations

import math
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .division import MonomialDivision, region  # noqa: E402
from .errors import UnsupportedError  # noqa: E402
from .fan import Fan  # noqa: E402
from .lattice.polyhedron import Polyhedron, vertices  # noqa: E402

COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]


def _deterministic():
    plt.rcParams["svg.hashsalt"] = "monotoric"
    plt.rcParams["svg.fonttype"] = "path"


def _box(R):
    R = Fraction(R)
    return Polyhedron((((1, 0), -R), ((-1, 0), -R), ((0, 1), -R), ((0, -1), -R)), 2)


def _polygon(P: Polyhedron):
    V = [(float(x), float(y)) for x, y in vertices(P)]
    if len(V) < 3:
        return V
    cx = sum(v[0] for v in V) / len(V)
    cy = sum(v[1] for v in V) / len(V)
    return sorted(V, key=lambda v: math.atan2(v[1] - cy, v[0] - cx))


def _save(fig, out):
    fig.savefig(out, format="svg", metadata={"Date": None})
    plt.close(fig)


def plot_division(fan: Fan, division: MonomialDivision | None, out, view: int = 4) -> None:
    """Rays and cones of the fan with the division regions clipped to [-view, view]^2."""
    if fan.dim != 2:
        raise UnsupportedError("only planar fans can be plotted")
    _deterministic()
    fig, ax = plt.subplots(figsize=(5, 5))
    box = _box(view)
    if division is not None:
        for i, alpha in enumerate(division.rays):
            poly = _polygon(region(division, i).intersect(box))
            if len(poly) >= 3:
                ax.fill([p[0] for p in poly], [p[1] for p in poly],
                        color=COLORS[i % len(COLORS)], alpha=0.3, linewidth=0)
                ax.plot([p[0] for p in poly] + [poly[0][0]], [p[1] for p in poly] + [poly[0][1]],
                        color=COLORS[i % len(COLORS)], linewidth=1)
            elif len(poly) == 2:
                ax.plot([p[0] for p in poly], [p[1] for p in poly],
                        color=COLORS[i % len(COLORS)], linewidth=2)
    for r in fan.rays:
        s = view / max(abs(r[0]), abs(r[1]))
        ax.plot([0, r[0] * s], [0, r[1] * s], color="black", linewidth=1.5)
        ax.annotate(f"({r[0]},{r[1]})", (r[0] * s * 0.9, r[1] * s * 0.9), fontsize=8)
    ax.set_xlim(-view, view)
    ax.set_ylim(-view, view)
    ax.set_aspect("equal")
    _save(fig, out)


def plot_trace(trace, out) -> None:
    _deterministic()
    fig, ax = plt.subplots(figsize=(5, 5))
    for i, path in enumerate(trace.values):
        ax.plot(path.real, path.imag, color=COLORS[i % len(COLORS)], linewidth=1)
        ax.plot([path[0].real], [path[0].imag], "o", color=COLORS[i % len(COLORS)])
    ax.set_aspect("equal")
    ax.set_xlabel("Re W")
    ax.set_ylabel("Im W")
    _save(fig, out)
