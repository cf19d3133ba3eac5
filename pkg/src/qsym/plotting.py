"""Figures for the analysis report: entry-class pattern and the 1-skeleton."""
from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402

from .analyzer import AnalysisReport  # noqa: E402
from .composition import Triple  # noqa: E402

EDGE_COLORS = ("tab:red", "tab:blue")


def _positions(n: int) -> list[tuple[float, float]]:
    return [(math.cos(math.pi / 2 - 2 * math.pi * k / n), math.sin(math.pi / 2 - 2 * math.pi * k / n))
            for k in range(n)]


def draw_entry_pattern(ax, report: AnalysisReport, n: int) -> None:
    grid = [[0] * n for _ in range(n)]
    for k, cls in enumerate(report.entry_classes, start=1):
        for i, j in cls:
            grid[i][j] = k
    k = len(report.entry_classes)
    # white for proved zeros, one tint per class
    cmap = ListedColormap(["white"] + [plt.get_cmap("tab20")(c % 20) for c in range(max(k, 1))])
    ax.imshow(grid, cmap=cmap, vmin=0, vmax=max(k, 1))
    for i in range(n):
        for j in range(n):
            ax.text(j, i, str(grid[i][j]) if grid[i][j] else "0", ha="center", va="center", fontsize=8)
    ticks = list(range(n))
    ax.set_xticks(ticks, [str(k + 1) for k in ticks])
    ax.set_yticks(ticks, [str(k + 1) for k in ticks])
    ax.set_title(f"entry classes (L={report.degree_bound_used})")


def draw_skeleton(ax, t: Triple) -> None:
    pos = _positions(t.n)
    for which, (g, color) in enumerate(zip((t.g1, t.g2), EDGE_COLORS)):
        bend = 0.15 + 0.15 * which
        for e in g.edges:
            (x0, y0), (x1, y1) = pos[e.source], pos[e.target]
            if e.source == e.target:
                r = 0.12 + 0.06 * which
                ax.add_patch(plt.Circle((x0 * (1 + r), y0 * (1 + r)), r, fill=False, color=color, lw=1))
                continue
            ax.annotate("", xy=(x1, y1), xytext=(x0, y0),
                        arrowprops=dict(arrowstyle="-|>", color=color, lw=1,
                                        shrinkA=8, shrinkB=8, connectionstyle=f"arc3,rad={bend}"))
    for k, (x, y) in enumerate(pos):
        ax.plot(x, y, "o", color="black", ms=10)
        ax.text(x, y, t.g1.vertex_labels[k], color="white", ha="center", va="center", fontsize=7)
    ax.set_xlim(-1.5, 1.5)
    ax.set_ylim(-1.5, 1.5)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title("1-skeleton (red: graph 1, blue: graph 2)")


def report_figure(t: Triple, report: AnalysisReport, path) -> None:
    fig, (a0, a1) = plt.subplots(1, 2, figsize=(9, 4.5))
    draw_entry_pattern(a0, report, t.n)
    draw_skeleton(a1, t)
    fig.suptitle(report.headline)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
