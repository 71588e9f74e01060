"""Figure parameter sweeps and deterministic CSV serialization.

Grids follow fixed defaults: the two-block surface runs overlap x phase,
the line plots run varphi for a handful of photon numbers, and the
three-block surfaces run varphi x phase.  Whenever the overlap axis reaches
one, the phase axis stops at pi - 0.01 so the superposition never becomes
null; otherwise it may end exactly at pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .entanglement import concurrence_pure_uniform
from .errors import SpecError

FIGURE_IDS = ("fig2", "fig3", "fig4", "fig5", "fig6", "fig7")

THETA_GUARD = 0.01
C_UNITY_TOL = 1e-6

LINE_PLOT_N_VALUES = (1, 2, 5, 10, 20)
SURFACE_N = {"fig5": 1, "fig6": 5, "fig7": 10}


@dataclass(frozen=True)
class SweepSpec:
    figure_id: str
    resolution: int
    n_values: tuple[int, ...]
    theta: float | None  # fixed phase for line plots, None for surfaces

    def __post_init__(self):
        if self.figure_id not in FIGURE_IDS:
            raise SpecError(f"unknown figure id {self.figure_id!r}; choose from {FIGURE_IDS}")
        if self.resolution < 2:
            raise SpecError("grid resolution must be at least 2")


def default_sweep(figure_id: str) -> SweepSpec:
    if figure_id == "fig2":
        return SweepSpec(figure_id, resolution=101, n_values=(1,), theta=None)
    if figure_id == "fig3":
        return SweepSpec(figure_id, resolution=181, n_values=LINE_PLOT_N_VALUES, theta=0.0)
    if figure_id == "fig4":
        return SweepSpec(figure_id, resolution=181, n_values=LINE_PLOT_N_VALUES, theta=math.pi / 2.0)
    if figure_id in SURFACE_N:
        return SweepSpec(figure_id, resolution=91, n_values=(SURFACE_N[figure_id],), theta=None)
    raise SpecError(f"unknown figure id {figure_id!r}; choose from {FIGURE_IDS}")


def theta_axis(points: int, max_c: float) -> np.ndarray:
    """Phase axis on [0, pi], ending short of pi when overlaps can reach one."""
    top = math.pi if max_c < 1.0 - C_UNITY_TOL else math.pi - THETA_GUARD
    return np.linspace(0.0, top, points)


def figure_table(spec: SweepSpec) -> tuple[list[str], np.ndarray]:
    """Column names and the row matrix for one figure sweep."""
    fid = spec.figure_id
    if fid == "fig2":
        c = np.linspace(0.0, 1.0, spec.resolution)
        theta = theta_axis(spec.resolution, max_c=1.0)
        cc, tt = np.meshgrid(c, theta, indexing="ij")
        vals = concurrence_pure_uniform(cc.ravel(), n=spec.n_values[0], p=2, q=1, theta=tt.ravel())
        rows = np.column_stack([cc.ravel(), tt.ravel(), vals])
        return ["c", "theta", "C11"], rows

    if fid in ("fig3", "fig4"):
        varphi = np.linspace(0.0, math.pi / 2.0, spec.resolution)
        c = np.cos(varphi)
        blocks = []
        for n in spec.n_values:
            vals = concurrence_pure_uniform(c, n=n, p=2, q=1, theta=spec.theta)
            blocks.append(np.column_stack([varphi, np.full_like(varphi, float(n)), vals]))
        return ["varphi", "n", "C11"], np.vstack(blocks)

    if fid in SURFACE_N:
        varphi = np.linspace(0.0, math.pi / 2.0, spec.resolution)
        theta = theta_axis(spec.resolution, max_c=1.0)  # varphi = 0 gives c = 1
        vv, tt = np.meshgrid(varphi, theta, indexing="ij")
        vals = concurrence_pure_uniform(
            np.cos(vv.ravel()), n=spec.n_values[0], p=3, q=1, theta=tt.ravel()
        )
        rows = np.column_stack([vv.ravel(), tt.ravel(), vals])
        return ["varphi", "theta", "C12"], rows

    raise SpecError(f"unknown figure id {fid!r}")


def csv_bytes(header: Sequence[str], rows: np.ndarray) -> bytes:
    """Comma-separated, 12 significant digits, LF endings; byte-stable."""
    lines = [",".join(header)]
    for row in np.asarray(rows):
        lines.append(",".join(f"{v:.12g}" for v in row))
    return ("\n".join(lines) + "\n").encode("ascii")


def write_csv(path, header: Sequence[str], rows: np.ndarray) -> None:
    data = csv_bytes(header, rows)
    with open(path, "wb") as fh:
        fh.write(data)
