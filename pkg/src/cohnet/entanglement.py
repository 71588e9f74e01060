"""Balanced superpositions of block-coherent states and their concurrence.

A superposition spec holds p two-mode blocks with n photons each, two label
sets alpha / alpha', and a relative phase theta.  The pure-state path
expresses the 2p-mode state as two logical qubits (first q blocks vs the
rest) and runs the spin-flip concurrence on the resulting 4x4 projector;
the mixed path keeps only the first two blocks.  Closed forms in the block
overlaps are provided for both, so every value can be cross-checked along
two independent routes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np

from . import linalg
from .coherent import SU2CoherentLabel, su2_coherent, su2_overlap
from .errors import (
    DegenerateLogicalBasis,
    DegenerateSuperposition,
    NumericalError,
    ShapeError,
    SpecError,
)
from .fock import DensityMatrix, PureState, add, inner_product, partial_trace, tensor, to_density_matrix

OVERLAP_IMAG_TOL = 1e-10
DEGENERATE_NORM_TOL = 1e-10
# overlap products this close to +-1 make the orthogonalized basis numerically useless
LOGICAL_DEGENERACY_TOL = 1e-9

_SIGMA_YY = np.array(
    [
        [0, 0, 0, -1],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [-1, 0, 0, 0],
    ],
    dtype=complex,
)


@dataclass(frozen=True)
class BipartitionSpec:
    """First q blocks against the remaining p - q."""

    q: int

    def validated(self, p: int) -> int:
        if not 1 <= self.q <= p - 1:
            raise SpecError(f"q must satisfy 1 <= q <= {p - 1}, got {self.q}")
        return self.q


@dataclass(frozen=True)
class OverlapVector:
    c: tuple[float, ...]

    def __post_init__(self):
        if any(abs(v) > 1.0 + 1e-12 for v in self.c):
            raise SpecError(f"overlaps must lie in [-1, 1]: {self.c}")


@dataclass(frozen=True)
class ConcurrenceReport:
    closed_form: float
    numeric: float

    @property
    def discrepancy(self) -> float:
        return abs(self.closed_form - self.numeric)


@dataclass(frozen=True)
class SuperpositionSpec:
    """Balanced two-branch superposition of p block-coherent products."""

    p: int
    n: int
    alphas: tuple[complex, ...]
    alphas_prime: tuple[complex, ...]
    theta: float

    def __post_init__(self):
        if self.p < 2:
            raise SpecError(f"need at least two blocks, got p={self.p}")
        if self.n < 1:
            raise SpecError(f"need at least one photon per block, got n={self.n}")
        if len(self.alphas) != self.p or len(self.alphas_prime) != self.p:
            raise SpecError("label tuples must have length p")
        object.__setattr__(self, "alphas", tuple(complex(a) for a in self.alphas))
        object.__setattr__(self, "alphas_prime", tuple(complex(a) for a in self.alphas_prime))
        for c in self._raw_overlaps():
            if abs(c.imag) > OVERLAP_IMAG_TOL:
                raise SpecError(
                    f"branch overlap {c} is not real; only real-overlap superpositions are supported"
                )
        if self.norm_factor_inv_sq() <= DEGENERATE_NORM_TOL:
            raise DegenerateSuperposition(
                "normalization vanishes (identical branches with opposite phase)"
            )

    def _raw_overlaps(self) -> list[complex]:
        return [
            su2_overlap(self.n, a, ap) for a, ap in zip(self.alphas, self.alphas_prime)
        ]

    def overlaps(self) -> tuple[float, ...]:
        return tuple(c.real for c in self._raw_overlaps())

    def norm_factor_inv_sq(self) -> float:
        prod = float(np.prod(self.overlaps()))
        return 2.0 * (1.0 + prod * math.cos(self.theta))

    def normalization(self) -> float:
        return 1.0 / math.sqrt(self.norm_factor_inv_sq())


@lru_cache(maxsize=4096)
def _block_state(n: int, alpha: complex) -> PureState:
    return su2_coherent(SU2CoherentLabel(n=n, alpha=alpha))


@lru_cache(maxsize=1024)
def block_product(n: int, labels: tuple[complex, ...]) -> PureState:
    return reduce(tensor, (_block_state(n, a) for a in labels))


def build_superposition(spec: SuperpositionSpec) -> PureState:
    """The normalized 2p-mode state N_p (|branch> + e^{i theta} |branch'>)."""
    branch = block_product(spec.n, spec.alphas)
    branch_prime = block_product(spec.n, spec.alphas_prime)
    norm = spec.normalization()
    phase = norm * np.exp(1j * spec.theta)
    return add(branch.scaled(norm), branch_prime.scaled(phase)).pruned()


def overlaps_from_angles(
    theta_list, theta_prime_list, n: int
) -> OverlapVector:
    """c_i = cos((theta_i - theta'_i)/2)^n for two lists of splitter angles."""
    if len(theta_list) != len(theta_prime_list):
        raise ShapeError("angle lists must have equal length")
    return OverlapVector(
        tuple(
            math.cos((a - b) / 2.0) ** n
            for a, b in zip(theta_list, theta_prime_list)
        )
    )


def _overlap_products(c: tuple[float, ...], q: int) -> tuple[float, float, float]:
    first = float(np.prod(c[:q])) if q else 1.0
    second = float(np.prod(c[q:])) if q < len(c) else 1.0
    return first, second, first * second


def concurrence_pure_closed(c, q, theta: float) -> float:
    """Closed-form bipartite concurrence of the balanced superposition.

    sqrt(1 - prod_first^2) * sqrt(1 - prod_second^2) / (1 + prod_all cos theta)
    """
    cvec = tuple(c.c) if isinstance(c, OverlapVector) else tuple(float(v) for v in c)
    q = q.validated(len(cvec)) if isinstance(q, BipartitionSpec) else int(q)
    if not 1 <= q <= len(cvec) - 1:
        raise SpecError(f"q must satisfy 1 <= q <= {len(cvec) - 1}, got {q}")
    first, second, full = _overlap_products(cvec, q)
    denom = 1.0 + full * math.cos(theta)
    if denom <= DEGENERATE_NORM_TOL:
        raise DegenerateSuperposition("denominator vanishes: null superposition")
    val = (
        math.sqrt(max(0.0, 1.0 - first * first))
        * math.sqrt(max(0.0, 1.0 - second * second))
        / denom
    )
    return min(1.0, max(0.0, val))


def concurrence_pure_uniform(c, n: int, p: int, q: int, theta):
    """Uniform-overlap closed form; broadcasts over numpy arrays of c and theta."""
    if not 1 <= q <= p - 1:
        raise SpecError(f"q must satisfy 1 <= q <= {p - 1}, got {q}")
    c = np.asarray(c, dtype=float)
    theta = np.asarray(theta, dtype=float)
    denom = 1.0 + c ** (n * p) * np.cos(theta)
    if np.any(denom <= DEGENERATE_NORM_TOL):
        raise DegenerateSuperposition("denominator vanishes on the requested grid")
    val = (
        np.sqrt(np.clip(1.0 - c ** (2 * n * q), 0.0, None))
        * np.sqrt(np.clip(1.0 - c ** (2 * n * (p - q)), 0.0, None))
        / denom
    )
    val = np.clip(val, 0.0, 1.0)
    return float(val) if val.ndim == 0 else val


@lru_cache(maxsize=1024)
def _orthogonalized_pair(
    n: int, zero_labels: tuple[complex, ...], one_labels: tuple[complex, ...]
) -> tuple[PureState, PureState, float]:
    """(|0>, |1>, overlap): |0> is the zero-label product, |1> the Gram-Schmidt
    complement of the one-label product against it."""
    zero = block_product(n, zero_labels)
    other = block_product(n, one_labels)
    ov = inner_product(zero, other)
    if abs(ov.imag) > OVERLAP_IMAG_TOL:
        raise SpecError(f"branch overlap {ov} is not real")
    ov = float(ov.real)
    if abs(ov) >= 1.0 - LOGICAL_DEGENERACY_TOL:
        raise DegenerateLogicalBasis(
            f"overlap product {ov} too close to unity to orthogonalize"
        )
    one = add(other, zero.scaled(-ov)).scaled(1.0 / math.sqrt(1.0 - ov * ov))
    return zero, one, ov


def logical_qubit_density(state: PureState, spec: SuperpositionSpec, q) -> DensityMatrix:
    """Express the superposition as two logical qubits and project.

    Subsystem 1 (first q blocks) uses {unprimed product, orthogonalized
    primed product}; subsystem 2 uses {primed product, orthogonalized
    unprimed product}.  Returns the rank-1 4x4 density matrix in
    {|00>, |01>, |10>, |11>} order.
    """
    q = q.validated(spec.p) if isinstance(q, BipartitionSpec) else int(q)
    if not 1 <= q <= spec.p - 1:
        raise SpecError(f"q must satisfy 1 <= q <= {spec.p - 1}, got {q}")
    zero_a, one_a, _ = _orthogonalized_pair(spec.n, spec.alphas[:q], spec.alphas_prime[:q])
    zero_b, one_b, _ = _orthogonalized_pair(
        spec.n, spec.alphas_prime[q:], spec.alphas[q:]
    )
    psi = np.empty(4, dtype=complex)
    for idx, (ka, kb) in enumerate(((zero_a, zero_b), (zero_a, one_b), (one_a, zero_b), (one_a, one_b))):
        psi[idx] = inner_product(tensor(ka, kb), state)
    norm_sq = float(np.sum(np.abs(psi) ** 2))
    if abs(norm_sq - 1.0) > 1e-8:
        raise NumericalError(
            f"state leaks outside the logical-qubit span (captured weight {norm_sq})"
        )
    psi /= math.sqrt(norm_sq)
    return DensityMatrix(np.outer(psi, psi.conj()), basis=None)


# eigenvalues of rho below this times the largest are eigensolver noise for
# the rank <= 2 reduced states handled here
_RANK_NOISE_FLOOR = 1e-13


def spin_flip_spectrum(rho: DensityMatrix | np.ndarray) -> np.ndarray:
    """Square roots of the eigenvalues of sqrt(rho) rho~ sqrt(rho), descending.

    rho~ is the spin-flipped matrix (sy x sy) rho* (sy x sy).  The Hermitian
    sandwich factors as B'B with B = sqrt(rho)* (sy x sy) sqrt(rho), so the
    square roots of its eigenvalues are the singular values of B; computing
    them directly keeps the small ones at roundoff level instead of
    sqrt(roundoff).
    """
    entries = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if entries.shape != (4, 4):
        raise ShapeError(f"spin flip needs a 4x4 matrix, got {entries.shape}")
    root = linalg.sqrt_psd(entries, relative_floor=_RANK_NOISE_FLOOR)
    factor = root.conj() @ _SIGMA_YY @ root
    return np.linalg.svd(factor, compute_uv=False)


def wootters_concurrence(rho: DensityMatrix | np.ndarray) -> float:
    lam = spin_flip_spectrum(rho)
    return float(min(1.0, max(0.0, lam[0] - lam[1] - lam[2] - lam[3])))


def reduced_pair_density(spec: SuperpositionSpec) -> DensityMatrix:
    """Density matrix of the first two blocks (modes 0..3) of the superposition."""
    state = build_superposition(spec)
    if spec.p == 2:
        return to_density_matrix(state)
    return partial_trace(state, keep_modes=range(4))


def mixed_logical_density(spec: SuperpositionSpec) -> DensityMatrix:
    """Project the two-block reduced state onto its two logical qubits.

    Each block's qubit basis is {its unprimed label state, the orthogonalized
    primed one}; the reduced state is supported on that span, which the
    projection verifies.
    """
    rho = reduced_pair_density(spec)
    zero_a, one_a, _ = _orthogonalized_pair(spec.n, spec.alphas[:1], spec.alphas_prime[:1])
    zero_b, one_b, _ = _orthogonalized_pair(spec.n, spec.alphas[1:2], spec.alphas_prime[1:2])
    kets = [
        tensor(zero_a, zero_b),
        tensor(zero_a, one_b),
        tensor(one_a, zero_b),
        tensor(one_a, one_b),
    ]
    vectors = np.zeros((4, rho.dim), dtype=complex)
    for i, ket in enumerate(kets):
        for r, t in enumerate(rho.basis):
            vectors[i, r] = ket.amplitudes.get(t, 0.0)
    small = vectors.conj() @ rho.entries @ vectors.T
    tr = float(np.real(np.trace(small)))
    if abs(tr - 1.0) > 1e-8:
        raise NumericalError(f"reduced state leaks outside the logical span (trace {tr})")
    small = (small + small.conj().T) / 2.0
    return DensityMatrix(small / tr, basis=None)


def _check_swap_condition(spec: SuperpositionSpec) -> None:
    ok = (
        abs(spec.alphas_prime[0] - spec.alphas[1]) <= 1e-12
        and abs(spec.alphas_prime[1] - spec.alphas[0]) <= 1e-12
    )
    if not ok:
        raise SpecError(
            "mixed closed form needs the swapped preparation "
            "alpha'_1 = alpha_3 and alpha'_3 = alpha_1"
        )


def concurrence_mixed_closed(spec: SuperpositionSpec) -> float:
    """Closed-form concurrence of the two-block reduced state (swap preparation).

    (1 - o^2) |c_5 ... c_{2p-1}| / (1 + c_1 c_3 ... c_{2p-1} cos theta) with
    o the overlap of the two swapped labels.
    """
    _check_swap_condition(spec)
    c = spec.overlaps()
    o = c[0]
    residual = float(np.prod(c[2:])) if spec.p > 2 else 1.0
    denom = 1.0 + float(np.prod(c)) * math.cos(spec.theta)
    if denom <= DEGENERATE_NORM_TOL:
        raise DegenerateSuperposition("denominator vanishes: null superposition")
    val = (1.0 - o * o) * abs(residual) / denom
    return min(1.0, max(0.0, val))


def concurrence_pure_report(spec: SuperpositionSpec, q) -> ConcurrenceReport:
    """Closed form vs spin-flip numeric for a pure bipartition."""
    closed = concurrence_pure_closed(OverlapVector(spec.overlaps()), q, spec.theta)
    try:
        rho = logical_qubit_density(build_superposition(spec), spec, q)
        numeric = wootters_concurrence(rho)
    except DegenerateLogicalBasis:
        numeric = 0.0
    return ConcurrenceReport(closed_form=closed, numeric=numeric)


def concurrence_mixed_report(spec: SuperpositionSpec) -> ConcurrenceReport:
    """Closed form vs spin-flip numeric for the two-block mixed state."""
    closed = concurrence_mixed_closed(spec)
    try:
        numeric = wootters_concurrence(mixed_logical_density(spec))
    except DegenerateLogicalBasis:
        numeric = 0.0
    return ConcurrenceReport(closed_form=closed, numeric=numeric)


def uniform_superposition(p: int, n: int, varphi: float, theta: float) -> SuperpositionSpec:
    """All blocks share overlap cos(varphi)^n: labels i*tan(varphi/2) vs their negatives."""
    alpha = 1j * math.tan(varphi / 2.0)
    return SuperpositionSpec(
        p=p,
        n=n,
        alphas=(alpha,) * p,
        alphas_prime=(-alpha,) * p,
        theta=theta,
    )


def swapped_superposition(
    p: int, n: int, varphi_pair: float, theta: float, varphi_rest: float | None = None
) -> SuperpositionSpec:
    """Swap-prepared spec: blocks 1 and 2 exchange labels between branches.

    The two swapped labels overlap by cos(varphi_pair)^n; blocks >= 3 are
    uniform with overlap cos(varphi_rest)^n (defaults to varphi_pair).
    """
    if varphi_rest is None:
        varphi_rest = varphi_pair
    a = 1j * math.tan(varphi_pair / 2.0)
    rest = 1j * math.tan(varphi_rest / 2.0)
    alphas = (a, -a) + (rest,) * (p - 2)
    alphas_prime = (-a, a) + (-rest,) * (p - 2)
    return SuperpositionSpec(p=p, n=n, alphas=alphas, alphas_prime=alphas_prime, theta=theta)
