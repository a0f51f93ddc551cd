"""Board rendering: monospaced text and publication-style figures.

Text boards use ``O`` for the ball, ``X`` for chaps and ``.`` for empty
points, drawn in chessboard orientation (row 1 at the bottom). Figures
follow the same conventions as the corpus diagrams: black stones for
chaps, one grey stone for the ball.
"""

from __future__ import annotations

from .board import Position
from .notation import COLUMN_LETTERS


def ascii_board(pos: Position) -> str:
    geom = pos.geometry
    header = "   " + " ".join(COLUMN_LETTERS[: geom.cols])
    lines = [header]
    for row in range(geom.rows, 0, -1):
        cells = []
        for col in range(1, geom.cols + 1):
            if (col, row) == pos.ball:
                cells.append("O")
            elif (col, row) in pos.chaps:
                cells.append("X")
            else:
                cells.append(".")
        lines.append(f"{row:2d} " + " ".join(cells) + f" {row}")
    lines.append(header)
    return "\n".join(lines) + "\n"


def _draw_board(ax, pos: Position, title: str | None = None) -> None:
    geom = pos.geometry
    for col in range(1, geom.cols + 1):
        ax.plot([col, col], [1, geom.rows], color="0.6", lw=0.6, zorder=1)
    for row in range(1, geom.rows + 1):
        ax.plot([1, geom.cols], [row, row], color="0.6", lw=0.6, zorder=1)
    if pos.chaps:
        xs, ys = zip(*sorted(pos.chaps))
        ax.scatter(xs, ys, s=110, c="black", zorder=2)
    ax.scatter(
        [pos.ball[0]], [pos.ball[1]],
        s=110, c="0.8", edgecolors="black", linewidths=1.2, zorder=3,
    )
    ax.set_xticks(range(1, geom.cols + 1))
    ax.set_xticklabels(list(COLUMN_LETTERS[: geom.cols]))
    ax.set_yticks(range(1, geom.rows + 1))
    ax.set_xlim(0.4, geom.cols + 0.6)
    ax.set_ylim(0.4, geom.rows + 0.6)
    ax.set_aspect("equal")
    ax.tick_params(length=0, labelsize=7)
    for spine in ax.spines.values():
        spine.set_visible(False)
    if title:
        ax.set_title(title, fontsize=9)


def save_board_png(pos: Position, path: str, title: str | None = None) -> None:
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    geom = pos.geometry
    fig, ax = plt.subplots(figsize=(0.45 * geom.cols + 1, 0.45 * geom.rows + 1))
    _draw_board(ax, pos, title)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def save_line_panels(
    positions: list[Position], labels: list[str], path: str, per_row: int = 3
) -> None:
    """A grid of boards, one panel per step of a replayed line."""
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    count = len(positions)
    rows = (count + per_row - 1) // per_row
    geom = positions[0].geometry
    fig, axes = plt.subplots(
        rows,
        per_row,
        figsize=(per_row * (0.3 * geom.cols + 1), rows * (0.3 * geom.rows + 1)),
        squeeze=False,
    )
    for idx in range(rows * per_row):
        ax = axes[idx // per_row][idx % per_row]
        if idx < count:
            _draw_board(ax, positions[idx], labels[idx])
        else:
            ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
