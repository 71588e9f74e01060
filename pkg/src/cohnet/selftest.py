"""Oracle-equivalence suite: every closed form checked against brute evolution.

Each check computes a scalar metric (a worst-case discrepancy or deficit)
and passes when the metric stays at or below its threshold.  A tolerance
override replaces every threshold at once, which is mainly useful for
demonstrating that the checks are live.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product as iter_product

import numpy as np

from . import coherent, entanglement, networks
from .coherent import SUNCoherentLabel, contraction_fidelity, su_coherent_closed_form
from .entanglement import (
    concurrence_pure_report,
    concurrence_mixed_report,
    concurrence_pure_uniform,
    mixed_logical_density,
    spin_flip_spectrum,
    swapped_superposition,
    uniform_superposition,
)
from .errors import DegenerateLogicalBasis, SpecError
from .fock import PureState, add, inner_product, partial_trace
from .networks import ChainTopology, KerrSpec, ParallelTopology, apply_kerr, apply_network

DEFAULT_SEED = 12345

PURE_GRID_P_Q = ((2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3))
PURE_GRID_N = (1, 5, 10)
MIXED_GRID_P = (2, 3)
MIXED_GRID_N = (1, 3, 5)
VARPHI_POINTS = 11
THETA_POINTS = (0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4, math.pi - 0.01)


@dataclass(frozen=True)
class RunConfig:
    seed: int = DEFAULT_SEED
    tolerance: float | None = None
    jobs: int = 1


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    metric: float
    threshold: float
    seconds: float


def _max_amplitude_diff(a: PureState, b: PureState) -> float:
    keys = set(a.amplitudes) | set(b.amplitudes)
    return max(abs(a.amplitudes.get(t, 0.0) - b.amplitudes.get(t, 0.0)) for t in keys)


def check_network_vs_closed_form(config: RunConfig) -> float:
    """Chain evolution of |n,0,...,0> against the closed-form coherent state."""
    rng = np.random.default_rng(config.seed)
    worst = 0.0
    for k in range(1, 5):
        for n in range(1, 7):
            for _ in range(20):
                angles = rng.uniform(0.1, 2.9, size=k)
                net = networks.network_from_angles(ChainTopology(k), angles)
                evolved = apply_network(PureState.basis_state((n,) + (0,) * k), net)
                label = SUNCoherentLabel(k=k, n=n, xi=coherent.xi_from_angles(angles))
                closed = su_coherent_closed_form(label)
                worst = max(worst, _max_amplitude_diff(evolved, closed))
    return worst


def check_displacement_vs_closed_form(config: RunConfig) -> float:
    """Generator-exponential construction against the closed form (fidelity deficit)."""
    rng = np.random.default_rng(config.seed + 1)
    worst = 0.0
    for k in range(1, 4):
        for n in range(1, 6):
            for _ in range(5):
                mags = rng.uniform(0.0, 1.2, size=k)
                phases = rng.uniform(0.0, 2 * math.pi, size=k)
                xi = tuple(m * np.exp(1j * ph) for m, ph in zip(mags, phases))
                closed = su_coherent_closed_form(SUNCoherentLabel(k=k, n=n, xi=xi))
                displaced = coherent.displacement_state(k, n, xi)
                deficit = 1.0 - abs(inner_product(closed, displaced)) ** 2
                worst = max(worst, deficit)
    return worst


def _pure_grid_points() -> list[tuple[int, int, int, float, float]]:
    varphi = np.linspace(0.0, math.pi / 2.0, VARPHI_POINTS)
    return [
        (p, q, n, float(v), t)
        for (p, q), n, v, t in iter_product(PURE_GRID_P_Q, PURE_GRID_N, varphi, THETA_POINTS)
    ]


def _eval_pure_point(point: tuple[int, int, int, float, float]) -> float:
    p, q, n, varphi, theta = point
    report = concurrence_pure_report(uniform_superposition(p, n, varphi, theta), q)
    return report.discrepancy


def check_pure_dual_path(config: RunConfig) -> float:
    """Closed-form concurrence against the spin-flip numeric on the full grid."""
    points = _pure_grid_points()
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            discrepancies = list(pool.map(_eval_pure_point, points, chunksize=32))
    else:
        discrepancies = [_eval_pure_point(pt) for pt in points]
    return max(discrepancies)


def check_mixed_dual_path(config: RunConfig) -> float:
    varphi = np.linspace(0.0, math.pi / 2.0, VARPHI_POINTS)
    worst = 0.0
    for p, n, v, t in iter_product(MIXED_GRID_P, MIXED_GRID_N, varphi, THETA_POINTS):
        report = concurrence_mixed_report(swapped_superposition(p, n, float(v), t))
        worst = max(worst, report.discrepancy)
    return worst


def check_mixed_spin_flip_tail(config: RunConfig) -> float:
    """The two smallest spin-flip singular values should vanish."""
    varphi = np.linspace(0.0, math.pi / 2.0, VARPHI_POINTS)
    worst = 0.0
    for p, n, v, t in iter_product(MIXED_GRID_P, MIXED_GRID_N, varphi, THETA_POINTS):
        try:
            lam = spin_flip_spectrum(mixed_logical_density(swapped_superposition(p, n, float(v), t)))
        except DegenerateLogicalBasis:
            continue  # swapped labels coincide; no logical basis, state separable
        worst = max(worst, float(lam[2]), float(lam[3]))
    return worst


def check_kerr_cat_fidelity(config: RunConfig) -> float:
    """Quarter-period Kerr evolution against the balanced two-branch target."""
    chi = 0.8
    worst = 0.0
    base_angles = (0.7, 1.3, 2.1)
    for p in range(1, 4):
        for n in range(1, 5):
            alphas = tuple(coherent.alpha_from_angle(a) for a in base_angles[:p])
            branch = entanglement.block_product(n, alphas)
            branch_neg = entanglement.block_product(n, tuple(-a for a in alphas))
            evolved = apply_kerr(
                branch,
                KerrSpec(chi=chi, time=math.pi / (2 * chi), acted_modes=frozenset(range(1, 2 * p, 2))),
            )
            target = add(
                branch.scaled(np.exp(-1j * math.pi / 4) / math.sqrt(2)),
                branch_neg.scaled(np.exp(1j * math.pi / 4) / math.sqrt(2)),
            )
            deficit = 1.0 - abs(inner_product(target, evolved)) ** 2
            worst = max(worst, deficit)
    return worst


def check_contraction_limit(config: RunConfig) -> float:
    """Glauber fidelity must rise through n = 25, 100, 400 and clear 0.99."""
    fids = [contraction_fidelity(k=1, n=n, z=(1.0,), cutoff=40) for n in (25, 100, 400)]
    return max(0.0, 0.99 - fids[2], fids[0] - fids[1], fids[1] - fids[2])


def check_separability(config: RunConfig) -> float:
    """Parallel-network outputs are block products; unit overlaps mean zero concurrence."""
    rng = np.random.default_rng(config.seed + 2)
    worst = 0.0
    for p in (2, 3):
        for n in (1, 3):
            angles = rng.uniform(0.1, 2.9, size=p)
            net = networks.network_from_angles(ParallelTopology(p=p, k=1), angles)
            state = apply_network(PureState.basis_state((n, 0) * p), net)
            for block in range(p):
                rho = partial_trace(state, {2 * block, 2 * block + 1})
                worst = max(worst, abs(1.0 - rho.purity()))
    for p in (2, 3):
        report = concurrence_pure_report(uniform_superposition(p, 2, 0.0, math.pi / 2), 1)
        worst = max(worst, report.closed_form, report.numeric)
    return worst


def check_point_value_theta0(config: RunConfig) -> float:
    return abs(concurrence_pure_uniform(0.5, n=1, p=2, q=1, theta=0.0) - 0.6)


def check_point_value_theta_pi(config: RunConfig) -> float:
    return abs(concurrence_pure_uniform(0.3, n=2, p=2, q=1, theta=math.pi) - 1.0)


CHECKS: tuple[tuple[str, float, object], ...] = (
    ("network_vs_closed_form", 1e-10, check_network_vs_closed_form),
    ("displacement_vs_closed_form", 1e-9, check_displacement_vs_closed_form),
    ("pure_dual_path", 1e-8, check_pure_dual_path),
    ("mixed_dual_path", 1e-8, check_mixed_dual_path),
    ("mixed_spin_flip_tail", 1e-9, check_mixed_spin_flip_tail),
    ("kerr_cat_fidelity", 1e-10, check_kerr_cat_fidelity),
    ("contraction_limit", 0.0, check_contraction_limit),
    ("separability", 1e-10, check_separability),
    ("point_value_theta0", 1e-12, check_point_value_theta0),
    ("point_value_theta_pi", 1e-9, check_point_value_theta_pi),
)


def run_selftest(
    config: RunConfig | None = None, only: list[str] | None = None
) -> list[CheckResult]:
    config = config or RunConfig()
    if only:
        unknown = set(only) - {name for name, _, _ in CHECKS}
        if unknown:
            raise SpecError(f"unknown selftest checks: {sorted(unknown)}")
    results = []
    for name, threshold, fn in CHECKS:
        if only and name not in only:
            continue
        if config.tolerance is not None:
            threshold = config.tolerance
        start = time.perf_counter()
        metric = float(fn(config))
        elapsed = time.perf_counter() - start
        results.append(
            CheckResult(
                name=name,
                passed=metric <= threshold,
                metric=metric,
                threshold=threshold,
                seconds=elapsed,
            )
        )
    return results
