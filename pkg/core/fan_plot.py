# core/fan_plot.py
"""
SVG drawing of a complete fan in the plane (matplotlib, Agg backend).
"""

from pathlib import Path
from typing import Optional, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Polygon  # noqa: E402

from core.toric_systems import Fan, ToricSystem  # noqa: E402

# ray colours (RGB)
RAY_COLORS = [
    [255, 107, 107],
    [78, 205, 196],
    [69, 183, 209],
    [255, 160, 122],
    [152, 216, 200],
    [247, 220, 111],
    [187, 143, 206],
    [133, 193, 226],
    [248, 184, 139],
    [169, 223, 191],
]


def _rgb(i: int):
    return [c / 255 for c in RAY_COLORS[i % len(RAY_COLORS)]]


def render_fan_svg(
    fan: Fan,
    path: Union[str, Path],
    system: Optional[ToricSystem] = None,
    title: Optional[str] = None,
) -> Path:
    path = Path(path)
    rays = fan.rays
    N = len(rays)
    reach = max(max(abs(x), abs(y)) for x, y in rays) + 1

    fig, ax = plt.subplots(figsize=(5, 5))
    for i in range(N):
        u, v = rays[i], rays[(i + 1) % N]
        cone = Polygon([(0, 0), u, v], closed=True, facecolor=_rgb(i), alpha=0.15, edgecolor="none")
        ax.add_patch(cone)
    for i, (x, y) in enumerate(rays):
        ax.plot([0, x], [0, y], color=_rgb(i), linewidth=2)
        label = f"v{i}" if system is None else f"v{i} ({system.self_intersections[i]})"
        ax.annotate(label, (x, y), textcoords="offset points", xytext=(4, 4), fontsize=9)
    ax.plot([0], [0], "ko", markersize=3)
    ax.set_xlim(-reach, reach)
    ax.set_ylim(-reach, reach)
    ax.set_aspect("equal")
    ax.grid(True, linewidth=0.3)
    if title:
        ax.set_title(title)
    fig.savefig(path, format="svg", bbox_inches="tight")
    plt.close(fig)
    return path
