"""Plot functions for corpus statistics.

Used by the CLI `stats --plot` option; the caller owns the figure.
"""

from __future__ import annotations

FAMILY_STYLES = {
    "hex":    {"color": "#3498db", "marker": "h", "label": "Honeycomb patch"},
    "random": {"color": "#2ecc71", "marker": "o", "label": "Random girth 6"},
}


def _style_axes(ax) -> None:
    ax.set_facecolor("#161b22")
    ax.tick_params(colors="#c9d1d9", labelsize=10)
    ax.xaxis.label.set_color("#c9d1d9")
    ax.yaxis.label.set_color("#c9d1d9")
    ax.title.set_color("#e6edf3")
    for spine in ax.spines.values():
        spine.set_color("#30363d")
    ax.grid(True, alpha=0.15, color="#484f58")


def plot_path_orders(ax, results, bound: int, show_legend=True):
    """Scatter of instance size vs longest monochromatic path order."""
    _style_axes(ax)
    for family, style in FAMILY_STYLES.items():
        pts = [r for r in results if r["family"] == family and r["ok"]]
        if not pts:
            continue
        ax.scatter(
            [r["n"] for r in pts], [r["max_mono_path_order"] for r in pts],
            c=style["color"], marker=style["marker"], s=40, label=style["label"],
            zorder=5, edgecolors="white", linewidths=0.5, alpha=0.85,
        )
    failed = [r for r in results if not r["ok"]]
    if failed:
        ax.scatter([r["n"] for r in failed], [r["max_mono_path_order"] for r in failed],
                   c="#e74c3c", marker="x", s=60, label="Failed", zorder=6)

    ax.axhline(bound, color="#f39c12", linestyle="--", linewidth=1.5, alpha=0.8)
    ax.text(0.01, bound, f" bound {bound}", transform=ax.get_yaxis_transform(),
            va="bottom", fontsize=8, color="#f39c12")
    ax.set_xlabel("Vertices", fontsize=11)
    ax.set_ylabel("Longest monochromatic path (vertices)", fontsize=11)
    ax.set_title("Monochromatic Path Order by Instance Size",
                 fontsize=13, fontweight="bold", color="#e6edf3")
    ax.set_ylim(0, bound + 3)

    if show_legend:
        ax.legend(loc="lower right", fontsize=9,
                  facecolor="#161b22", edgecolor="#30363d", labelcolor="#c9d1d9")


def plot_runtime(ax, results):
    """Solve time against instance size."""
    _style_axes(ax)
    for family, style in FAMILY_STYLES.items():
        pts = sorted((r for r in results if r["family"] == family), key=lambda r: r["n"])
        if not pts:
            continue
        ax.scatter([r["n"] for r in pts], [r["seconds"] for r in pts],
                   c=style["color"], marker=style["marker"], s=30, zorder=5,
                   edgecolors="white", linewidths=0.5)
        if len(pts) >= 2:
            ax.plot([r["n"] for r in pts], [r["seconds"] for r in pts],
                    color=style["color"], alpha=0.25, linewidth=1.5, linestyle="--", zorder=3)
    ax.set_xlabel("Vertices", fontsize=11)
    ax.set_ylabel("Solve time (s)", fontsize=11)
    ax.set_title("Solver Runtime", fontsize=13, fontweight="bold", color="#e6edf3")


def save_stats_plot(results, bound: int, output_path) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (left, right) = plt.subplots(1, 2, figsize=(14, 6))
    fig.patch.set_facecolor("#0d1117")
    plot_path_orders(left, results, bound)
    plot_runtime(right, results)
    fig.tight_layout()
    fig.savefig(output_path, dpi=150, facecolor=fig.get_facecolor())
    plt.close(fig)
