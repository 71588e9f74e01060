import math

import numpy as np
import pytest
from scipy.linalg import expm

from cohnet.coherent import SU2CoherentLabel, alpha_from_angle, su2_coherent, xi_from_angles
from cohnet.entanglement import block_product
from cohnet.errors import ShapeError, SpecError
from cohnet.fock import PureState, SectorBasis, add, inner_product, partial_trace, tensor
from cohnet.networks import (
    BeamSplitterSpec,
    ChainTopology,
    KerrSpec,
    NetworkSpec,
    ParallelTopology,
    apply_beam_splitter,
    apply_kerr,
    apply_network,
    network_from_angles,
)


def brute_force_beam_splitter(state: PureState, bs: BeamSplitterSpec) -> PureState:
    """Dense oracle: exponentiate the full-sector coupling matrix with scipy."""
    total = sum(next(iter(state.amplitudes)))
    basis = SectorBasis(state.mode_count, total)
    gen = np.zeros((basis.dim, basis.dim), dtype=complex)
    for col, t in enumerate(basis):
        # a_a^+ a_b^-
        if t[bs.mode_b] >= 1:
            out = list(t)
            out[bs.mode_a] += 1
            out[bs.mode_b] -= 1
            gen[basis.rank(tuple(out)), col] += math.sqrt((t[bs.mode_a] + 1) * t[bs.mode_b])
        # a_a^- a_b^+
        if t[bs.mode_a] >= 1:
            out = list(t)
            out[bs.mode_a] -= 1
            out[bs.mode_b] += 1
            gen[basis.rank(tuple(out)), col] += math.sqrt(t[bs.mode_a] * (t[bs.mode_b] + 1))
    unitary = expm(1j * (bs.angle / 2.0) * gen)
    vec = np.zeros(basis.dim, dtype=complex)
    for t, amp in state.amplitudes.items():
        vec[basis.rank(t)] = amp
    vec = unitary @ vec
    return PureState(
        state.mode_count,
        {basis.unrank(i): vec[i] for i in range(basis.dim) if abs(vec[i]) > 1e-16},
    )


def max_amp_diff(a: PureState, b: PureState) -> float:
    keys = set(a.amplitudes) | set(b.amplitudes)
    return max(abs(a.amplitudes.get(t, 0.0) - b.amplitudes.get(t, 0.0)) for t in keys)


class TestApplyBeamSplitter:
    def test_zero_angle_is_identity(self):
        psi = PureState(2, {(2, 0): 0.6, (1, 1): 0.8j}).normalize()
        out = apply_beam_splitter(psi, BeamSplitterSpec(0, 1, 0.0))
        assert max_amp_diff(out, psi) < 1e-14

    def test_half_angle_on_single_photon(self):
        out = apply_beam_splitter(PureState.basis_state((1, 0)), BeamSplitterSpec(0, 1, math.pi / 2))
        expected = PureState(2, {(1, 0): 1 / math.sqrt(2), (0, 1): 1j / math.sqrt(2)})
        assert max_amp_diff(out, expected) < 1e-14

    def test_full_angle_swaps_with_phase(self):
        out = apply_beam_splitter(PureState.basis_state((1, 0)), BeamSplitterSpec(0, 1, math.pi))
        expected = PureState(2, {(0, 1): 1j})
        assert max_amp_diff(out, expected) < 1e-14

    def test_against_dense_expm_oracle(self):
        rng = np.random.default_rng(21)
        for _ in range(10):
            n = int(rng.integers(1, 5))
            basis = SectorBasis(3, n)
            amps = {t: complex(rng.normal(), rng.normal()) for t in basis}
            psi = PureState(3, amps).normalize()
            pair = rng.permutation(3)[:2]
            bs = BeamSplitterSpec(int(pair[0]), int(pair[1]), float(rng.uniform(0, 2 * math.pi)))
            assert max_amp_diff(apply_beam_splitter(psi, bs), brute_force_beam_splitter(psi, bs)) < 1e-12

    def test_photon_conservation_and_norm(self):
        rng = np.random.default_rng(22)
        basis = SectorBasis(2, 4)
        psi = PureState(2, {t: complex(rng.normal(), rng.normal()) for t in basis}).normalize()
        out = apply_beam_splitter(psi, BeamSplitterSpec(0, 1, 1.1))
        assert abs(out.norm_sq() - 1.0) < 1e-12
        assert all(sum(t) == 4 for t in out.amplitudes)

    def test_invalid_modes_rejected(self):
        psi = PureState.basis_state((1, 0))
        with pytest.raises(ShapeError):
            apply_beam_splitter(psi, BeamSplitterSpec(0, 2, 0.3))
        with pytest.raises(ShapeError):
            apply_beam_splitter(psi, BeamSplitterSpec(1, 1, 0.3))


class TestNetworkFromAngles:
    def test_chain_single_splitter(self):
        net = network_from_angles(ChainTopology(1), [math.pi / 2])
        assert net.splitters == (BeamSplitterSpec(0, 1, math.pi / 2),)

    def test_parallel_blocks(self):
        net = network_from_angles(ParallelTopology(p=2, k=1), [0.3, 0.7])
        assert net.splitters == (BeamSplitterSpec(0, 1, 0.3), BeamSplitterSpec(2, 3, 0.7))

    def test_chain_application_order(self):
        net = network_from_angles(ChainTopology(2), [0.3, 0.7])
        assert [ (s.mode_a, s.mode_b) for s in net.splitters ] == [(0, 1), (1, 2)]
        assert [s.angle for s in net.splitters] == [0.3, 0.7]

    def test_angle_count_mismatch(self):
        with pytest.raises(SpecError):
            network_from_angles(ChainTopology(2), [0.3])
        with pytest.raises(SpecError):
            network_from_angles(ParallelTopology(p=2, k=2), [0.1, 0.2, 0.3])

    def test_transmission_reflection_identity(self):
        bs = BeamSplitterSpec(0, 1, 1.234)
        assert bs.transmission**2 + bs.reflection**2 == pytest.approx(1.0, abs=1e-15)


class TestApplyNetwork:
    def test_single_splitter_matches_two_mode_coherent(self):
        for n in (1, 3, 5):
            net = network_from_angles(ChainTopology(1), [math.pi / 2])
            out = apply_network(PureState.basis_state((n, 0)), net)
            expected = su2_coherent(SU2CoherentLabel(n=n, alpha=1j))
            assert max_amp_diff(out, expected) < 1e-12

    def test_parallel_output_is_block_tensor(self):
        n = 2
        angles = [0.9, 1.7]
        net = network_from_angles(ParallelTopology(p=2, k=1), angles)
        out = apply_network(PureState.basis_state((n, 0, n, 0)), net)
        blocks = [su2_coherent(SU2CoherentLabel(n=n, alpha=alpha_from_angle(a))) for a in angles]
        assert max_amp_diff(out, tensor(blocks[0], blocks[1])) < 1e-12

    def test_vacuum_unchanged(self):
        net = network_from_angles(ChainTopology(3), [0.4, 1.1, 2.0])
        out = apply_network(PureState.basis_state((0, 0, 0, 0)), net)
        assert max_amp_diff(out, PureState.basis_state((0, 0, 0, 0))) < 1e-15

    def test_mode_count_checked(self):
        net = network_from_angles(ChainTopology(2), [0.4, 1.1])
        with pytest.raises(ShapeError):
            apply_network(PureState.basis_state((1, 0)), net)

    def test_cross_block_purity_of_parallel_output(self):
        net = network_from_angles(ParallelTopology(p=2, k=1), [0.8, 2.3])
        out = apply_network(PureState.basis_state((3, 0, 3, 0)), net)
        rho = partial_trace(out, keep_modes={0, 1})
        assert rho.purity() == pytest.approx(1.0, abs=1e-10)


class TestApplyKerr:
    def test_zero_time_is_identity(self):
        psi = su2_coherent(SU2CoherentLabel(n=3, alpha=0.5j))
        out = apply_kerr(psi, KerrSpec(chi=1.0, time=0.0, acted_modes=frozenset({1})))
        assert max_amp_diff(out, psi) < 1e-15

    def test_fock_eigenstate_global_phase(self):
        psi = PureState.basis_state((3,))
        out = apply_kerr(psi, KerrSpec(chi=0.7, time=0.5, acted_modes=frozenset({0})))
        assert out.amplitudes[(3,)] == pytest.approx(np.exp(-1j * 0.7 * 0.5 * 9), abs=1e-14)

    def test_quarter_period_makes_balanced_cat(self):
        # e^{-i pi/4}|a...> + e^{+i pi/4}|-a...> over sqrt(2), counting the
        # second mode of each pair
        chi = 1.3
        for p, n in ((1, 2), (2, 3), (3, 1)):
            alphas = tuple(alpha_from_angle(a) for a in (0.6, 1.2, 2.2)[:p])
            branch = block_product(n, alphas)
            evolved = apply_kerr(
                branch,
                KerrSpec(chi=chi, time=math.pi / (2 * chi), acted_modes=frozenset(range(1, 2 * p, 2))),
            )
            target = add(
                branch.scaled(np.exp(-1j * math.pi / 4) / math.sqrt(2)),
                block_product(n, tuple(-a for a in alphas)).scaled(
                    np.exp(1j * math.pi / 4) / math.sqrt(2)
                ),
            )
            fidelity = abs(inner_product(target, evolved)) ** 2
            assert abs(1.0 - fidelity) < 1e-12
            # this particular identity even fixes the global phase
            assert max_amp_diff(evolved, target) < 1e-12

    def test_norm_preserved_exactly(self):
        rng = np.random.default_rng(23)
        basis = SectorBasis(2, 5)
        psi = PureState(2, {t: complex(rng.normal(), rng.normal()) for t in basis}).normalize()
        out = apply_kerr(psi, KerrSpec(chi=2.0, time=0.9, acted_modes=frozenset({0, 1})))
        assert out.norm_sq() == pytest.approx(1.0, abs=1e-14)

    def test_spec_validation(self):
        with pytest.raises(SpecError):
            KerrSpec(chi=-1.0, time=1.0, acted_modes=frozenset({0}))
        with pytest.raises(SpecError):
            KerrSpec(chi=1.0, time=1.0, acted_modes=frozenset())
        with pytest.raises(ShapeError):
            apply_kerr(PureState.basis_state((1, 0)), KerrSpec(chi=1.0, time=1.0, acted_modes=frozenset({5})))


class TestChainOracle:
    def test_chain_against_closed_form_small(self):
        from cohnet.coherent import SUNCoherentLabel, su_coherent_closed_form

        rng = np.random.default_rng(24)
        for k in (1, 2, 3):
            for _ in range(5):
                n = int(rng.integers(1, 5))
                angles = rng.uniform(0.1, 2.9, size=k)
                net = network_from_angles(ChainTopology(k), angles)
                out = apply_network(PureState.basis_state((n,) + (0,) * k), net)
                closed = su_coherent_closed_form(
                    SUNCoherentLabel(k=k, n=n, xi=xi_from_angles(angles))
                )
                assert max_amp_diff(out, closed) < 1e-12
