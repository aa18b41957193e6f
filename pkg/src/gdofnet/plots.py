"""Figure rendering for CLI reports (presentation only, never exact)."""

from __future__ import annotations

import math


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_region_figure(sys, path: str, x: int = 0, y: int = 1):
    """Draw the 2-D slice of a region with all other variables at zero.

    The slice polygon is recovered from exact vertex enumeration of the
    two-variable subsystem, then rendered with matplotlib to ``path``.
    """
    from .polyhedra import LinSystem, vertices

    rows = []
    for coeffs, rhs in sys.rows:
        sub = (coeffs[x], coeffs[y])
        if any(sub):
            rows.append((sub, rhs))
        elif rhs < 0:
            rows.append((sub, rhs))
    names = (sys.vars[x], sys.vars[y])
    nonneg = frozenset(n for n in names if n in sys.nonneg)
    sub = LinSystem(names, tuple(rows), nonneg)
    pts = [(float(px), float(py)) for px, py in vertices(sub)]
    plt = _plt()
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    if pts:
        cx = sum(p[0] for p in pts) / len(pts)
        cy = sum(p[1] for p in pts) / len(pts)
        pts.sort(key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
        xs = [p[0] for p in pts] + [pts[0][0]]
        ys = [p[1] for p in pts] + [pts[0][1]]
        ax.fill(xs, ys, alpha=0.3)
        ax.plot(xs, ys, marker="o")
    ax.set_xlabel(names[0])
    ax.set_ylabel(names[1])
    ax.set_title("region slice (other variables at 0)")
    ax.grid(True, linewidth=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_search_figure(samples, bound, path: str):
    """Scatter of gain ratio versus regime margin for search samples."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(5.5, 4))
    xs = [float(s.margin) for s in samples]
    ys = [float(s.ratio) for s in samples]
    ax.scatter(xs, ys, s=18, alpha=0.7)
    if bound is not None:
        ax.axhline(float(bound), linestyle="--", linewidth=1, label="regime bound")
        ax.legend()
    ax.set_xlabel("regime margin (min slack)")
    ax.set_ylabel("cooperation gain ratio")
    ax.set_title("sampled gain ratios")
    ax.grid(True, linewidth=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
