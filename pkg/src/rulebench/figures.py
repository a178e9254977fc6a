"""Static SVG charts for the report bundle, rendered with matplotlib.

Uses the Agg backend and fixed SVG metadata so repeated renders of the
same data produce identical bytes.
"""

import io

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .report import (  # noqa: E402
    CORRECT_COLOR,
    INCORRECT_COLOR,
    PyramidPlotData,
    ScatterPlotData,
)

DIAGONAL_COLOR = "#d62728"

plt.rcParams["svg.hashsalt"] = "rulebench"


def _render(fig) -> bytes:
    buffer = io.BytesIO()
    fig.savefig(buffer, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buffer.getvalue()


def render_scatter_svg(data: ScatterPlotData) -> bytes:
    """Dispersion plot on percent axes, ideal corner top-left, red region
    under the diagonal where TPr falls below FPr."""
    fig, ax = plt.subplots(figsize=(5.2, 5.2))
    ax.fill_between([0, 100], [0, 100], [0, 0], color=DIAGONAL_COLOR, alpha=0.2)
    ax.plot([0, 100], [0, 100], color=DIAGONAL_COLOR, linewidth=1, linestyle="--")
    if data.points:
        xs = [p.x for p in data.points]
        ys = [p.y for p in data.points]
        ax.scatter(xs, ys, color=CORRECT_COLOR, zorder=3)
        for point in data.points:
            ax.annotate(
                str(point.rule_id),
                (point.x, point.y),
                textcoords="offset points",
                xytext=(5, 5),
                fontsize=9,
            )
    ax.set_xlim(0, 100)
    ax.set_ylim(0, 100)
    ax.set_xlabel("FPr (%)")
    ax.set_ylabel("TPr (%)")
    ax.set_title("Rule dispersion")
    fig.tight_layout()
    return _render(fig)


def render_pyramid_svg(data: PyramidPlotData) -> bytes:
    """Mirrored horizontal bars: TPr grows leftwards, FPr rightwards, one
    row per rule in id order."""
    height = max(2.2, 0.5 * len(data.rows) + 1.4)
    fig, ax = plt.subplots(figsize=(5.6, height))
    positions = range(len(data.rows))
    ax.barh(
        positions,
        [-row.tpr for row in data.rows],
        color=CORRECT_COLOR,
        label="TPr",
    )
    ax.barh(
        positions,
        [row.fpr for row in data.rows],
        color=INCORRECT_COLOR,
        label="FPr",
    )
    ax.set_yticks(list(positions))
    ax.set_yticklabels([str(row.rule_id) for row in data.rows])
    ax.set_xlim(-1.05, 1.05)
    ax.set_xticks([-1.0, -0.5, 0.0, 0.5, 1.0])
    ax.set_xticklabels(["1.0", "0.5", "0.0", "0.5", "1.0"])
    ax.axvline(0.0, color="#444", linewidth=0.8)
    ax.invert_yaxis()
    ax.set_xlabel("TPr / FPr")
    ax.set_ylabel("Rule")
    ax.set_title("TPr and FPr per rule")
    ax.legend(loc="lower right")
    fig.tight_layout()
    return _render(fig)
