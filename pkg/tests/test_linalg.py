import numpy as np
import pytest

from cohnet.errors import NotPSD, NumericalError
from cohnet.linalg import eig_hermitian, exp_i_hermitian, sqrt_psd


def random_hermitian(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2.0


def test_identity_eigenvalues():
    dec = eig_hermitian(np.eye(3, dtype=complex))
    assert np.allclose(dec.eigenvalues, [1.0, 1.0, 1.0])


def test_pauli_x_eigenvalues():
    dec = eig_hermitian(np.array([[0, 1], [1, 0]], dtype=complex))
    assert np.allclose(dec.eigenvalues, [-1.0, 1.0])


def test_reconstruction_dim8():
    rng = np.random.default_rng(11)
    a = random_hermitian(rng, 8)
    dec = eig_hermitian(a)
    rebuilt = (dec.eigenvectors * dec.eigenvalues) @ dec.eigenvectors.conj().T
    assert np.max(np.abs(rebuilt - a)) <= 1e-10 * 8
    gram = dec.eigenvectors.conj().T @ dec.eigenvectors
    assert np.max(np.abs(gram - np.eye(8))) <= 1e-11
    assert np.all(np.diff(dec.eigenvalues) >= 0)


def test_non_hermitian_rejected():
    with pytest.raises(NumericalError):
        eig_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))


def test_exp_zero_scale_is_identity():
    rng = np.random.default_rng(12)
    a = random_hermitian(rng, 5)
    assert np.allclose(exp_i_hermitian(a, 0.0), np.eye(5), atol=1e-14)


def test_exp_pauli_x_quarter_turn():
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    assert np.allclose(exp_i_hermitian(x, np.pi / 2), 1j * x, atol=1e-14)


def test_exp_unitarity_dim10():
    rng = np.random.default_rng(13)
    a = random_hermitian(rng, 10)
    u = exp_i_hermitian(a, 0.7)
    assert np.max(np.abs(u.conj().T @ u - np.eye(10))) <= 1e-11


def test_exp_inverse_scale():
    rng = np.random.default_rng(14)
    a = random_hermitian(rng, 6)
    prod = exp_i_hermitian(a, 1.3) @ exp_i_hermitian(a, -1.3)
    assert np.max(np.abs(prod - np.eye(6))) <= 1e-10


def test_sqrt_diagonal():
    assert np.allclose(sqrt_psd(np.diag([4.0, 1.0]).astype(complex)), np.diag([2.0, 1.0]))


def test_sqrt_zero():
    assert np.allclose(sqrt_psd(np.zeros((3, 3), dtype=complex)), np.zeros((3, 3)))


def test_sqrt_random_psd_residual():
    rng = np.random.default_rng(15)
    b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    a = b @ b.conj().T
    a /= np.trace(a).real
    root = sqrt_psd(a)
    assert np.max(np.abs(root @ root - a)) <= 1e-9
    assert np.min(np.linalg.eigvalsh(root)) >= -1e-12


def test_sqrt_clamps_small_negatives_only():
    a = np.diag([1.0, -5e-11]).astype(complex)
    root = sqrt_psd(a)
    assert np.allclose(root, np.diag([1.0, 0.0]))
    with pytest.raises(NotPSD):
        sqrt_psd(np.diag([1.0, -1e-6]).astype(complex))


def test_sqrt_monotone_on_diagonals():
    vals = np.array([9.0, 2.5, 0.04, 0.0])
    root = sqrt_psd(np.diag(vals).astype(complex))
    assert np.allclose(np.diag(root).real, np.sqrt(vals), atol=1e-14)


def test_sqrt_relative_floor_zeroes_noise():
    a = np.diag([1.0, 1e-16]).astype(complex)
    root = sqrt_psd(a, relative_floor=1e-13)
    assert root[1, 1] == 0.0
