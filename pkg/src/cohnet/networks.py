"""Beam-splitter unitaries, chain and parallel networks, Kerr evolution.

A beam splitter on modes (a, b) is exp(i (theta/2) (a+ b- + a- b+)) with
transmission cos(theta/2) and reflection sin(theta/2).  All three operations
conserve the photon number of every occupation tuple, so each application is
exact within the finite sectors it touches; no global cutoff is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .errors import ShapeError, SpecError
from .fock import PRUNE_THRESHOLD, Occupation, PureState


@dataclass(frozen=True)
class BeamSplitterSpec:
    mode_a: int
    mode_b: int
    angle: float

    @property
    def transmission(self) -> float:
        return math.cos(self.angle / 2.0)

    @property
    def reflection(self) -> float:
        return math.sin(self.angle / 2.0)


@dataclass(frozen=True)
class ChainTopology:
    """k beam splitters coupling modes (0,1), (1,2), ..., (k-1,k)."""

    k: int

    @property
    def mode_count(self) -> int:
        return self.k + 1

    @property
    def angle_count(self) -> int:
        return self.k


@dataclass(frozen=True)
class ParallelTopology:
    """p disjoint chains of k splitters, each on its own block of k+1 modes."""

    p: int
    k: int

    @property
    def mode_count(self) -> int:
        return self.p * (self.k + 1)

    @property
    def angle_count(self) -> int:
        return self.p * self.k


Topology = ChainTopology | ParallelTopology


@dataclass(frozen=True)
class NetworkSpec:
    """Splitters listed in application order (first entry acts first)."""

    topology: Topology
    splitters: tuple[BeamSplitterSpec, ...]


@dataclass(frozen=True)
class KerrSpec:
    """Kerr medium: each amplitude gains exp(-i chi time N^2), N counted over acted_modes."""

    chi: float
    time: float
    acted_modes: frozenset[int]

    def __post_init__(self):
        if self.chi <= 0.0:
            raise SpecError(f"chi must be positive, got {self.chi}")
        if not self.acted_modes:
            raise SpecError("acted_modes must be nonempty")


def network_from_angles(topology: Topology, angles: Sequence[float]) -> NetworkSpec:
    """Build a network, honoring the application order of the topology."""
    angles = [float(a) for a in angles]
    if len(angles) != topology.angle_count:
        raise SpecError(
            f"{type(topology).__name__} needs {topology.angle_count} angles, got {len(angles)}"
        )
    splitters: list[BeamSplitterSpec] = []
    if isinstance(topology, ChainTopology):
        for l in range(topology.k):
            splitters.append(BeamSplitterSpec(l, l + 1, angles[l]))
    else:
        for block in range(topology.p):
            off = block * (topology.k + 1)
            for l in range(topology.k):
                splitters.append(
                    BeamSplitterSpec(off + l, off + l + 1, angles[block * topology.k + l])
                )
    return NetworkSpec(topology=topology, splitters=tuple(splitters))


def _pair_generator(n_total: int) -> np.ndarray:
    """Tridiagonal coupling matrix on the (n_total+1)-dim two-mode sector.

    Basis index m is the occupation of the first mode of the pair;
    <m+1 | g | m> = sqrt((m+1)(n_total-m)).
    """
    g = np.zeros((n_total + 1, n_total + 1), dtype=complex)
    for m in range(n_total):
        val = math.sqrt((m + 1) * (n_total - m))
        g[m + 1, m] = val
        g[m, m + 1] = val
    return g


def apply_beam_splitter(state: PureState, bs: BeamSplitterSpec) -> PureState:
    """Apply one beam splitter; identity on all other modes."""
    a, b = bs.mode_a, bs.mode_b
    if a == b or not (0 <= a < state.mode_count) or not (0 <= b < state.mode_count):
        raise ShapeError(f"invalid mode pair ({a}, {b}) for a {state.mode_count}-mode state")

    # group amplitudes by (everything else, n_a + n_b); each group transforms
    # by the same (N+1)-dimensional unitary
    groups: dict[tuple[Occupation, int], list[tuple[int, complex]]] = {}
    for t, amp in state.amplitudes.items():
        rest = tuple(c for i, c in enumerate(t) if i not in (a, b))
        n_tot = t[a] + t[b]
        groups.setdefault((rest, n_tot), []).append((t[a], amp))

    unitaries: dict[int, np.ndarray] = {}
    out: dict[Occupation, complex] = {}
    for (rest, n_tot), members in groups.items():
        u = unitaries.get(n_tot)
        if u is None:
            u = linalg.exp_i_hermitian(_pair_generator(n_tot), bs.angle / 2.0)
            unitaries[n_tot] = u
        vec = np.zeros(n_tot + 1, dtype=complex)
        for m, amp in members:
            vec[m] = amp
        vec = u @ vec
        rest_iter = iter(rest)
        template = [0] * state.mode_count
        for i in range(state.mode_count):
            if i not in (a, b):
                template[i] = next(rest_iter)
        for m in range(n_tot + 1):
            if abs(vec[m]) < PRUNE_THRESHOLD:
                continue
            t_out = list(template)
            t_out[a] = m
            t_out[b] = n_tot - m
            key = tuple(t_out)
            out[key] = out.get(key, 0.0) + vec[m]
    return PureState(state.mode_count, out, _validate=False).pruned()


def apply_network(state: PureState, net: NetworkSpec) -> PureState:
    if state.mode_count != net.topology.mode_count:
        raise ShapeError(
            f"state has {state.mode_count} modes, topology wants {net.topology.mode_count}"
        )
    for bs in net.splitters:
        state = apply_beam_splitter(state, bs)
    return state


def apply_kerr(state: PureState, kerr: KerrSpec) -> PureState:
    """Diagonal phase evolution; norm is preserved exactly."""
    if any(m < 0 or m >= state.mode_count for m in kerr.acted_modes):
        raise ShapeError(f"acted modes {sorted(kerr.acted_modes)} outside the state's modes")
    phase_arg = -kerr.chi * kerr.time
    out = {}
    for t, amp in state.amplitudes.items():
        n_acted = sum(t[m] for m in kerr.acted_modes)
        out[t] = amp * np.exp(1j * phase_arg * n_acted * n_acted)
    return PureState(state.mode_count, out, _validate=False)
