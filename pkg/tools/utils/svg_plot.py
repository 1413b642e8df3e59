import logging
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from utils.csv_report import ReportError, read_csv  # noqa: E402

logger = logging.getLogger(__name__)

# fixed ids and no timestamp keep the SVG text identical between runs
matplotlib.rcParams.update({"font.size": 11, "svg.hashsalt": "rpq", "svg.fonttype": "none"})


def numeric_columns(header, rows) -> list[str]:
    """Columns whose every cell is a number (booleans excluded)."""
    columns = []
    for name in header:
        cells = [r[name] for r in rows]
        if all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in cells):
            columns.append(name)
    return columns


def _no_data(ax, header):
    ax.text(0.5, 0.5, "no data", ha="center", va="center", transform=ax.transAxes)
    if len(header) >= 2:
        ax.set_xlabel(header[0])
        ax.set_ylabel(header[1])


def _columns_or_fail(header, rows, needed: int) -> list[str]:
    columns = numeric_columns(header, rows)
    if len(columns) < needed:
        raise ReportError(f"need {needed} numeric columns, found {columns or 'none'} in {header}")
    return columns


def stems(ax, header, rows):
    x_name, y_name = _columns_or_fail(header, rows, 2)[:2]
    x = [r[x_name] for r in rows]
    y = [r[y_name] for r in rows]
    ax.stem(x, y)
    ax.set_xlabel(x_name)
    ax.set_ylabel(y_name)


def lines(ax, header, rows):
    """First numeric column against the rest; log-log with a fitted slope when all positive."""
    columns = _columns_or_fail(header, rows, 2)
    x_name, y_names = columns[0], columns[1:]
    x = np.array([r[x_name] for r in rows], dtype=float)
    ys = {name: np.array([r[name] for r in rows], dtype=float) for name in y_names}
    ys = {name: y for name, y in ys.items() if np.all(np.isfinite(y))}
    if not ys:
        raise ReportError(f"no finite numeric column to draw against {x_name}")

    loglog = len(x) >= 2 and np.all(x > 0) and all(np.all(y > 0) for y in ys.values())
    for name, y in ys.items():
        ax.plot(x, y, marker="o", label=name)
    if loglog:
        ax.set_xscale("log")
        ax.set_yscale("log")
        first = next(iter(ys))
        slope, _ = np.polyfit(np.log(x), np.log(ys[first]), 1)
        ax.annotate(f"slope {slope:.3f}", xy=(0.05, 0.92), xycoords="axes fraction")
    ax.set_xlabel(x_name)
    ax.set_ylabel(", ".join(ys))
    ax.legend()


def heatmap(ax, header, rows):
    columns = _columns_or_fail(header, rows, 1)
    grid = np.array([[r[c] for c in columns] for r in rows], dtype=float)
    image = ax.imshow(grid, aspect="auto", interpolation="nearest", cmap="viridis")
    ax.set_xticks(range(len(columns)))
    ax.set_xticklabels(columns, rotation=45, ha="right")
    ax.set_ylabel("row")
    ax.figure.colorbar(image, ax=ax)


plot_list = [
    lines,
    stems,
    heatmap,
]

plots = {
    f.__name__: f for f in plot_list
}


def plot_csv(csv_path: Path, kind: str, svg_path: Path | None = None) -> Path:
    """Renders a report CSV as a standalone SVG next to it (or at svg_path)."""
    if kind not in plots:
        raise ReportError(f"unknown plot kind {kind!r}; choose from {', '.join(plots)}")
    header, rows = read_csv(csv_path)
    svg_path = Path(svg_path) if svg_path else Path(csv_path).with_suffix(".svg")

    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    try:
        if rows:
            plots[kind](ax, header, rows)
        else:
            _no_data(ax, header)
        ax.set_title(Path(csv_path).stem)
        fig.tight_layout()
        svg_path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(svg_path, format="svg", metadata={"Date": None})
    finally:
        plt.close(fig)
    logger.info("wrote %s (%s, %d rows)", svg_path, kind, len(rows))
    return svg_path
