"""Render concurrence sweep CSVs into figure images.

Input files come from the simulator CLI (`cohnet figure figN`): fig2 and
fig5..fig7 are full grids rendered as 3D surfaces, fig3 and fig4 are
families of curves with one line per photon number.  Rendering is read-only
over the CSVs; view angles and the colormap are fixed here so re-running
reproduces the same image.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

FIGURE_IDS = ("fig2", "fig3", "fig4", "fig5", "fig6", "fig7")

SCHEMAS = {
    "fig2": ["c", "theta", "C11"],
    "fig3": ["varphi", "n", "C11"],
    "fig4": ["varphi", "n", "C11"],
    "fig5": ["varphi", "theta", "C12"],
    "fig6": ["varphi", "theta", "C12"],
    "fig7": ["varphi", "theta", "C12"],
}

SURFACE_IDS = ("fig2", "fig5", "fig6", "fig7")
LINE_IDS = ("fig3", "fig4")

AXIS_TEXT = {
    "c": "c",
    "n": "n",
    "theta": r"$\theta$",
    "varphi": r"$\varphi$",
    "C11": r"$C_{1,1}$",
    "C12": r"$C_{1,2}$",
}

# fixed presentation defaults so output is reproducible
COLORMAP = "viridis"
VIEW_ELEV = 24.0
VIEW_AZIM = -55.0
DPI = 150


class RenderError(Exception):
    """CSV missing, empty, or not matching the figure schema."""


@dataclass(frozen=True)
class FigureJob:
    csv_path: Path
    figure_id: str
    output_path: Path

    def __post_init__(self):
        if self.figure_id not in FIGURE_IDS:
            raise RenderError(f"unknown figure id {self.figure_id!r}; expected one of {FIGURE_IDS}")


def load_table(csv_path: Path, figure_id: str) -> np.ndarray:
    """Read and validate one sweep CSV; returns an (N, 3) float array."""
    expected = SCHEMAS[figure_id]
    if not csv_path.exists():
        raise RenderError(f"{csv_path} does not exist")
    with open(csv_path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise RenderError(f"{csv_path} is empty") from None
        if header != expected:
            raise RenderError(
                f"{csv_path} has columns {header}, but {figure_id} needs {expected}"
            )
        rows = [row for row in reader if row]
    if not rows:
        raise RenderError(f"{csv_path} has a header but no data rows")
    try:
        table = np.array(rows, dtype=float)
    except ValueError as exc:
        raise RenderError(f"{csv_path} has non-numeric data: {exc}") from None
    if table.shape[1] != 3:
        raise RenderError(f"{csv_path} rows have {table.shape[1]} fields, expected 3")
    return table


def _as_grid(table: np.ndarray, csv_path: Path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Reshape row-major grid samples into meshgrid arrays."""
    u = np.unique(table[:, 0])
    v = np.unique(table[:, 1])
    if len(u) * len(v) != table.shape[0]:
        raise RenderError(f"{csv_path} is not a full grid ({len(u)} x {len(v)} vs {table.shape[0]} rows)")
    order = np.lexsort((table[:, 1], table[:, 0]))
    z = table[order, 2].reshape(len(u), len(v))
    uu, vv = np.meshgrid(u, v, indexing="ij")
    return uu, vv, z


def build_figure(job: FigureJob) -> plt.Figure:
    """Build the matplotlib figure for one job without writing any file."""
    table = load_table(job.csv_path, job.figure_id)
    xlabel, ylabel, zlabel = (AXIS_TEXT[name] for name in SCHEMAS[job.figure_id])

    if job.figure_id in SURFACE_IDS:
        uu, vv, zz = _as_grid(table, job.csv_path)
        fig = plt.figure(figsize=(7, 5))
        ax = fig.add_subplot(projection="3d")
        ax.plot_surface(uu, vv, np.clip(zz, 0.0, 1.0), cmap=COLORMAP, linewidth=0)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.set_zlabel(zlabel)
        ax.set_zlim(0.0, 1.0)
        ax.view_init(elev=VIEW_ELEV, azim=VIEW_AZIM)
    else:
        fig, ax = plt.subplots(figsize=(7, 5))
        for n in sorted(set(table[:, 1])):
            curve = table[table[:, 1] == n]
            order = np.argsort(curve[:, 0])
            ax.plot(curve[order, 0], np.clip(curve[order, 2], 0.0, 1.0), label=f"n = {int(n)}")
        ax.set_xlabel(xlabel)
        ax.set_ylabel(zlabel)
        ax.set_ylim(0.0, 1.0)
        ax.legend()
        ax.grid(True, alpha=0.3)
    fig.suptitle(job.figure_id)
    return fig


def render(job: FigureJob) -> Path:
    """Render one job to its output image; nothing is written on failure."""
    fig = build_figure(job)
    try:
        job.output_path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(job.output_path, dpi=DPI)
    finally:
        plt.close(fig)
    return job.output_path


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render_figures", description="Render cohnet sweep CSVs into images."
    )
    parser.add_argument("csv_dir", type=Path, help="directory holding figN.csv files")
    parser.add_argument("out_dir", type=Path, help="directory for figN.png outputs")
    parser.add_argument(
        "--only",
        action="append",
        choices=FIGURE_IDS,
        help="render only this figure (repeatable)",
    )
    args = parser.parse_args(argv)

    targets = tuple(args.only) if args.only else FIGURE_IDS
    failures = 0
    for figure_id in targets:
        job = FigureJob(
            csv_path=args.csv_dir / f"{figure_id}.csv",
            figure_id=figure_id,
            output_path=args.out_dir / f"{figure_id}.png",
        )
        try:
            path = render(job)
        except RenderError as exc:
            print(f"error: {figure_id}: {exc}", file=sys.stderr)
            failures += 1
            continue
        print(f"wrote {path}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
