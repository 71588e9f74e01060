"""Closed-form coherent states on fixed-photon-number sectors.

A chain of k beam splitters fed with |n, 0, ..., 0> produces a coherent
state of the k+1-mode sector, labeled either by per-splitter variables
xi_1..xi_k or by their cumulative products zeta_i = xi_1*...*xi_i.  Both
parametrizations build the same amplitudes; the zeta form also accepts
labels outside the cumulative-product family, which the contraction limit
needs.  Multinomial weights are computed in log space so photon numbers in
the hundreds stay finite.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .errors import SingularAngle, SpecError
from .fock import Occupation, PureState, SectorBasis, inner_product, tensor

_SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class SUNCoherentLabel:
    """Label of a (k+1)-mode coherent state with n photons total."""

    k: int
    n: int
    xi: tuple[complex, ...]

    def __post_init__(self):
        if self.k < 1 or self.n < 0:
            raise SpecError(f"need k >= 1 and n >= 0, got k={self.k}, n={self.n}")
        if len(self.xi) != self.k:
            raise SpecError(f"expected {self.k} labels, got {len(self.xi)}")

    def normalization(self) -> float:
        """C = (1 + |xi_1|^2 + |xi_1 xi_2|^2 + ...)^(-n/2)."""
        total = 1.0
        running = 1.0
        for x in self.xi:
            running *= abs(x) ** 2
            total += running
        return total ** (-self.n / 2.0)


@dataclass(frozen=True)
class SU2CoherentLabel:
    n: int
    alpha: complex


@dataclass(frozen=True)
class GlauberLabel:
    z: complex
    cutoff: int

    def __post_init__(self):
        if self.cutoff < 0:
            raise SpecError(f"cutoff must be >= 0, got {self.cutoff}")


def alpha_from_angle(angle: float) -> complex:
    """Two-mode label of a single splitter: alpha = i r / t = i tan(angle/2)."""
    t = math.cos(angle / 2.0)
    if abs(t) < _SINGULAR_TOL:
        raise SingularAngle(f"angle {angle} has zero transmission")
    return 1j * math.sin(angle / 2.0) / t


def xi_from_angles(angles: Sequence[float]) -> tuple[complex, ...]:
    """Map chain angles to state labels: xi_l = i t_{l+1} r_l / t_l, xi_k = i r_k / t_k."""
    angles = [float(a) for a in angles]
    k = len(angles)
    if k < 1:
        raise SpecError("need at least one angle")
    t = [math.cos(a / 2.0) for a in angles]
    r = [math.sin(a / 2.0) for a in angles]
    for l, tl in enumerate(t):
        if abs(tl) < _SINGULAR_TOL:
            raise SingularAngle(f"angle {angles[l]} has zero transmission (index {l})")
    xi = []
    for l in range(k - 1):
        xi.append(1j * t[l + 1] * r[l] / t[l])
    xi.append(1j * r[k - 1] / t[k - 1])
    return tuple(xi)


def _log_multinomial_sqrt(n: int, counts: Occupation) -> float:
    """0.5 * log( n! / (c_0! c_1! ... ) )."""
    val = math.lgamma(n + 1)
    for c in counts:
        val -= math.lgamma(c + 1)
    return 0.5 * val


def su_coherent_closed_form(label: SUNCoherentLabel) -> PureState:
    """Coherent state amplitudes C * xi_1^{n_1}...xi_k^{n_k} * sqrt(multinomial).

    n_i are the suffix sums of the occupation tuple over modes i..k.
    """
    basis = SectorBasis(label.k + 1, label.n)
    norm_const = label.normalization()
    amps: dict[Occupation, complex] = {}
    for t in basis:
        power = 1.0 + 0.0j
        suffix = 0
        for i in range(label.k, 0, -1):
            suffix += t[i]
            if suffix:
                power *= label.xi[i - 1] ** suffix
        amp = norm_const * math.exp(_log_multinomial_sqrt(label.n, t)) * power
        if amp != 0.0:
            amps[t] = amp
    return PureState(label.k + 1, amps, _validate=False).normalize()


def su_coherent_from_zeta(k: int, n: int, zeta: Sequence[complex]) -> PureState:
    """Same family in cumulative-product variables: amplitudes prop. to
    zeta_1^{m_1}...zeta_k^{m_k} over |n - sum(m), m_1, ..., m_k>."""
    zeta = tuple(complex(z) for z in zeta)
    if len(zeta) != k:
        raise SpecError(f"expected {k} labels, got {len(zeta)}")
    basis = SectorBasis(k + 1, n)
    norm_const = (1.0 + sum(abs(z) ** 2 for z in zeta)) ** (-n / 2.0)
    amps: dict[Occupation, complex] = {}
    for t in basis:
        power = 1.0 + 0.0j
        for i in range(1, k + 1):
            if t[i]:
                power *= zeta[i - 1] ** t[i]
        amp = norm_const * math.exp(_log_multinomial_sqrt(n, t)) * power
        if amp != 0.0:
            amps[t] = amp
    return PureState(k + 1, amps, _validate=False).normalize()


def su2_coherent(label: SU2CoherentLabel) -> PureState:
    """Two-mode state with amplitude(m) prop. to alpha^m sqrt(binomial(n, m)) on |n-m, m>."""
    n, alpha = label.n, complex(label.alpha)
    norm_const = (1.0 + abs(alpha) ** 2) ** (-n / 2.0)
    amps: dict[Occupation, complex] = {}
    for m in range(n + 1):
        amp = norm_const * math.sqrt(math.comb(n, m)) * (alpha**m if m else 1.0)
        if amp != 0.0:
            amps[(n - m, m)] = amp
    return PureState(2, amps, _validate=False).normalize()


def su2_overlap(n: int, alpha: complex, alpha_prime: complex) -> complex:
    """<alpha|alpha'> for two n-photon two-mode coherent states."""
    alpha, alpha_prime = complex(alpha), complex(alpha_prime)
    base = (1.0 + alpha.conjugate() * alpha_prime) / math.sqrt(
        (1.0 + abs(alpha) ** 2) * (1.0 + abs(alpha_prime) ** 2)
    )
    return base**n


def su3_coherent(n: int, beta_pair: Sequence[complex]) -> PureState:
    """Three-mode coherent state from a pair of labels (double-sum form)."""
    b1, b2 = (complex(b) for b in beta_pair)
    norm_const = (1.0 + abs(b1) ** 2 + abs(b1 * b2) ** 2) ** (-n / 2.0)
    amps: dict[Occupation, complex] = {}
    for n1 in range(n + 1):
        for n2 in range(n1 + 1):
            coeff = norm_const * math.exp(
                _log_multinomial_sqrt(n, (n - n1, n1 - n2, n2))
            )
            amp = coeff * (b1**n1 if n1 else 1.0) * (b2**n2 if n2 else 1.0)
            if amp != 0.0:
                amps[(n - n1, n1 - n2, n2)] = amp
    return PureState(3, amps, _validate=False).normalize()


@dataclass(frozen=True)
class GeneratorSet:
    """Bilinear mode-coupling generators as matrices over one sector basis.

    ``t_plus[i-1]`` moves a photon from mode 0 to mode i (i = 1..k);
    ``e_plus[i]`` couples neighbor modes (i, i+1) for i = 0..k-1.
    """

    k: int
    n: int
    basis: SectorBasis
    e_plus: tuple[np.ndarray, ...]
    e_minus: tuple[np.ndarray, ...]
    cartan: tuple[np.ndarray, ...]
    t_plus: tuple[np.ndarray, ...]
    t_minus: tuple[np.ndarray, ...]


def _hop_matrix(basis: SectorBasis, src: int, dst: int) -> np.ndarray:
    """Matrix of a_dst^+ a_src^- : amplitude sqrt((n_dst + 1) n_src)."""
    mat = np.zeros((basis.dim, basis.dim), dtype=complex)
    for col, t in enumerate(basis):
        if t[src] == 0:
            continue
        out = list(t)
        out[src] -= 1
        out[dst] += 1
        row = basis.rank(tuple(out))
        mat[row, col] = math.sqrt((t[dst] + 1) * t[src])
    return mat


def generator_set(k: int, n: int) -> GeneratorSet:
    basis = SectorBasis(k + 1, n)
    e_plus = tuple(_hop_matrix(basis, src=i, dst=i + 1) for i in range(k))
    e_minus = tuple(_hop_matrix(basis, src=i + 1, dst=i) for i in range(k))
    cartan = []
    for i in range(k):
        diag = np.array([t[i] - t[i + 1] for t in basis], dtype=complex)
        cartan.append(np.diag(diag))
    t_plus = tuple(_hop_matrix(basis, src=0, dst=i) for i in range(1, k + 1))
    t_minus = tuple(_hop_matrix(basis, src=i, dst=0) for i in range(1, k + 1))
    return GeneratorSet(
        k=k,
        n=n,
        basis=basis,
        e_plus=e_plus,
        e_minus=e_minus,
        cartan=tuple(cartan),
        t_plus=t_plus,
        t_minus=t_minus,
    )


def displacement_state(k: int, n: int, xi: Sequence[complex]) -> PureState:
    """Exponential-of-generators construction of the coherent state.

    The displacement parameters are the polar recoding of the cumulative
    labels: tau_i = arctan(|zeta|) * zeta_i / |zeta| with
    |zeta|^2 = sum |zeta_i|^2.  Calibrated so the k = 1 case reproduces
    alpha = tan|tau| * tau/|tau|, and checked against the closed form.
    """
    xi = tuple(complex(x) for x in xi)
    if len(xi) != k:
        raise SpecError(f"expected {k} labels, got {len(xi)}")
    zeta = []
    running = 1.0 + 0.0j
    for x in xi:
        running *= x
        zeta.append(running)
    norm_zeta = math.sqrt(sum(abs(z) ** 2 for z in zeta))
    basis = SectorBasis(k + 1, n)
    start = PureState.basis_state((n,) + (0,) * k)
    if norm_zeta == 0.0:
        return start
    tau = [math.atan(norm_zeta) * z / norm_zeta for z in zeta]

    gens = generator_set(k, n)
    anti = np.zeros((basis.dim, basis.dim), dtype=complex)
    for i in range(k):
        anti += tau[i] * gens.t_plus[i] - np.conj(tau[i]) * gens.t_minus[i]
    # anti is anti-Hermitian; exp(anti) = exp(i * (-i * anti)) with -i*anti Hermitian
    unitary = linalg.exp_i_hermitian(-1j * anti, 1.0)
    vec = unitary[:, basis.rank((n,) + (0,) * k)]
    amps = {t: vec[i] for i, t in enumerate(basis) if abs(vec[i]) > 0.0}
    return PureState(k + 1, amps, _validate=False).pruned().normalize()


def glauber_truncated(label: GlauberLabel) -> PureState:
    """Single-mode coherent state renormalized over Fock levels 0..cutoff."""
    z = complex(label.z)
    amps: dict[Occupation, complex] = {(0,): 1.0 + 0.0j}
    if z != 0.0:
        mag, phase = abs(z), cmath.phase(z)
        for m in range(1, label.cutoff + 1):
            log_mag = m * math.log(mag) - 0.5 * math.lgamma(m + 1)
            amp = math.exp(log_mag) * cmath.exp(1j * m * phase)
            if amp != 0.0:
                amps[(m,)] = amp
    return PureState(1, amps, _validate=False).normalize()


def contraction_fidelity(
    k: int, n: int, z: Sequence[complex], cutoff: int
) -> float:
    """Overlap-squared between the coherent sector state at zeta_i = z_i/sqrt(n)
    and the truncated Glauber product carried into the same sector.

    The product state is embedded by letting mode 0 absorb the remaining
    n - sum(m) photons of each term, which is the finite-n reading of the
    large-n factorization; the embedded vector is renormalized after the
    truncation and the sum(m) <= n restriction.
    """
    z = tuple(complex(v) for v in z)
    if len(z) != k:
        raise SpecError(f"expected {k} amplitudes, got {len(z)}")
    zeta = [v / math.sqrt(n) for v in z]
    state = su_coherent_from_zeta(k, n, zeta)

    glauber = glauber_truncated(GlauberLabel(z[0], cutoff))
    for zi in z[1:]:
        glauber = tensor(glauber, glauber_truncated(GlauberLabel(zi, cutoff)))

    embedded: dict[Occupation, complex] = {}
    for m, amp in glauber.amplitudes.items():
        total = sum(m)
        if total <= n:
            embedded[(n - total,) + m] = amp
    reference = PureState(k + 1, embedded, _validate=False).normalize()
    return abs(inner_product(reference, state)) ** 2
