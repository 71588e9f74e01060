"""Dense complex linear algebra for small Hermitian matrices.

Everything here routes through the Hermitian eigendecomposition, so the
concurrence pipeline never needs a general complex eigensolver.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotPSD, NumericalError

HERMITIAN_TOL = 1e-12
PSD_SLACK = 1e-10


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray  # real, ascending
    eigenvectors: np.ndarray  # unitary, columns are eigenvectors


def _as_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NumericalError(f"expected a square matrix, got shape {a.shape}")
    asym = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
    if asym > tol:
        raise NumericalError(f"matrix not Hermitian: max asymmetry {asym:.3e} > {tol:.1e}")
    return (a + a.conj().T) / 2.0


def eig_hermitian(a: np.ndarray) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    h = _as_hermitian(a)
    w, v = np.linalg.eigh(h)
    return EigenDecomposition(eigenvalues=w, eigenvectors=v)


def exp_i_hermitian(a: np.ndarray, scale: float) -> np.ndarray:
    """exp(i * scale * A) for Hermitian A; the result is unitary."""
    dec = eig_hermitian(a)
    phases = np.exp(1j * scale * dec.eigenvalues)
    v = dec.eigenvectors
    return (v * phases) @ v.conj().T


def sqrt_psd(a: np.ndarray, relative_floor: float = 0.0) -> np.ndarray:
    """Hermitian square root of a PSD matrix.

    Eigenvalues in [-PSD_SLACK, 0) are clamped to zero; anything lower raises
    NotPSD.  Roundoff in spin-flip products routinely produces such dust.
    With ``relative_floor`` set, eigenvalues below floor * max(eigenvalue) are
    zeroed too, which keeps square roots of rank-deficient matrices from
    amplifying eigensolver noise into sqrt(eps)-sized phantom directions.
    """
    dec = eig_hermitian(a)
    w = dec.eigenvalues
    if w.min() < -PSD_SLACK:
        raise NotPSD(f"eigenvalue {w.min():.3e} below -{PSD_SLACK:.1e}")
    w = np.clip(w, 0.0, None)
    if relative_floor > 0.0 and w.max() > 0.0:
        w[w < relative_floor * w.max()] = 0.0
    v = dec.eigenvectors
    root = (v * np.sqrt(w)) @ v.conj().T
    return (root + root.conj().T) / 2.0
