import math

import numpy as np
import pytest

import ddrfsim as dd
from ddrfsim.engine import (
    ConditionalGate,
    conditional_block,
    reconstruct_rotation,
    unitarity_defect,
)
from ddrfsim.errors import InvalidInputError, UndefinedAxesError

TWO_PI = 2 * math.pi
SX = np.array([[0, 1], [1, 0]], dtype=complex)


def product_integrator(delta, omega, phi, duration, n_steps=10_000):
    """Independent fine-step integrator for the segment Hamiltonian.

    Splits the evolution into n_steps constant-Hamiltonian factors, each
    expanded to fourth order; the per-step error is O((h dt)^5).
    """
    h = 0.5 * np.array(
        [[delta, omega * np.exp(-1j * phi)], [omega * np.exp(1j * phi), -delta]],
        dtype=complex,
    )
    a = -1j * (duration / n_steps) * h
    step = np.eye(2) + a + a @ a / 2 + a @ a @ a / 6 + a @ a @ a @ a / 24
    u = np.eye(2, dtype=complex)
    for _ in range(n_steps):
        u = step @ u
    return u


def strip_phase(u, reference):
    """Remove the global phase of u that best matches reference."""
    tr = np.trace(reference.conj().T @ u)
    if abs(tr) < 1e-12:
        k = np.unravel_index(np.argmax(np.abs(reference)), reference.shape)
        tr = u[k] * np.conj(reference[k])
    return u * np.exp(-1j * np.angle(tr))


class TestSegmentPropagator:
    def test_pure_precession(self):
        delta, t = TWO_PI * 11e3, 17e-6
        u = dd.segment_propagator(delta, 0.0, 0.0, t)
        expected = np.diag([np.exp(-0.5j * delta * t), np.exp(0.5j * delta * t)])
        np.testing.assert_allclose(u, expected, atol=1e-14)

    def test_resonant_pi_pulse(self):
        omega = TWO_PI * 1e3
        u = dd.segment_propagator(0.0, omega, 0.0, math.pi / omega)
        np.testing.assert_allclose(u, -1j * SX, atol=1e-12)

    def test_zero_hamiltonian_is_identity(self):
        np.testing.assert_array_equal(dd.segment_propagator(0.0, 0.0, 0.3, 5e-6), np.eye(2))

    def test_matches_product_integrator(self):
        rng = np.random.default_rng(42)
        for _ in range(25):
            delta = rng.uniform(-TWO_PI * 50e3, TWO_PI * 50e3)
            omega = rng.uniform(0, TWO_PI * 10e3)
            phi = rng.uniform(-math.pi, math.pi)
            dur = rng.uniform(0, 100e-6)
            u = dd.segment_propagator(delta, omega, phi, dur)
            np.testing.assert_allclose(u, product_integrator(delta, omega, phi, dur), atol=1e-8)

    def test_exact_unitarity(self):
        rng = np.random.default_rng(1)
        u = dd.segment_propagator(
            rng.uniform(-1e6, 1e6, 50), rng.uniform(0, 1e5, 50),
            rng.uniform(-3, 3, 50), rng.uniform(0, 1e-4, 50),
        )
        assert unitarity_defect(u) < 1e-14

    def test_negative_duration_rejected(self):
        with pytest.raises(InvalidInputError):
            dd.segment_propagator(1.0, 1.0, 0.0, -1e-6)


class TestSequenceParams:
    def test_validation(self):
        with pytest.raises(InvalidInputError):
            dd.SequenceParams(3, 1e-5, 0.0, 0.0, 0.0)
        with pytest.raises(InvalidInputError):
            dd.SequenceParams(4, -1e-5, 0.0, 0.0, 0.0)
        with pytest.raises(InvalidInputError):
            dd.SequenceParams(4, 1e-5, 0.0, 0.0, 0.0, dead_time=1e-5)
        with pytest.raises(InvalidInputError):
            dd.SequenceParams(4, 1e-5, 0.0, 0.0, 0.0, mode="sideways")

    def test_total_time(self):
        seq = dd.SequenceParams(24, 2e-6, 0.0, 0.0, 0.0)
        assert seq.total_time == pytest.approx(96e-6)


class TestBlockUnitary:
    def test_drive_off_phase_closure(self):
        # z rotations close to a full turn: V0 = V1 = -identity
        tau = 13e-6
        d0, d1 = TWO_PI * 21e3, TWO_PI * 4e3
        dphi = -(d0 + d1) * tau + math.pi
        seq = dd.SequenceParams(2, tau, 0.0, 0.0, dphi)
        gate = dd.block_unitary(seq, d0, d1)
        np.testing.assert_allclose(gate.v0, -np.eye(2), atol=1e-9)
        np.testing.assert_allclose(gate.v1, -np.eye(2), atol=1e-9)

    def test_drive_off_accumulated_precession(self):
        tau = 9e-6
        d0, d1 = TWO_PI * 17e3, -TWO_PI * 6e3
        seq = dd.SequenceParams(2, tau, 0.0, 0.0, 0.0)
        gate = dd.block_unitary(seq, d0, d1)
        expected = np.diag(
            [np.exp(-1j * (d0 + d1) * tau), np.exp(1j * (d0 + d1) * tau)]
        )
        np.testing.assert_allclose(gate.v0, expected, atol=1e-12)
        np.testing.assert_allclose(gate.v1, expected, atol=1e-12)

    def test_resonant_gate_antiparallel_axes(self):
        # conditional resonance: axes anti-parallel within the axis tolerance
        tau = 24.654e-6
        d1 = 0.0
        d0 = TWO_PI * 30693.0
        omega = TWO_PI * 313.0
        inc = dd.resonant_phase_increment(d0, d1, tau, omega=omega)
        seq = dd.SequenceParams(32, tau, omega, 0.0, inc.delta_phi)
        dec = dd.decompose_rotation(dd.block_unitary(seq, d0, d1))
        assert abs(dec.dot + 1.0) < 1e-3

    def test_unitarity_of_block(self):
        rng = np.random.default_rng(11)
        v0, v1 = conditional_block(
            rng.uniform(-3e5, 3e5, 64), rng.uniform(-3e5, 3e5, 64),
            rng.uniform(-3, 3, 64), 20e-6, 2e3,
        )
        assert max(unitarity_defect(v0), unitarity_defect(v1)) < 1e-12

    def test_dead_time_reduces_drive(self):
        # with dead time equal to tau the drive never acts in the tau slots
        tau, omega = 10e-6, TWO_PI * 2e3
        v0_full, _ = conditional_block(0.0, 0.0, 0.0, tau, omega, dead_time=0.0)
        v0_dead, _ = conditional_block(0.0, 0.0, 0.0, tau, omega, dead_time=5e-6)
        ang_full = 2 * math.acos(min(1.0, abs(v0_full[0, 0].real)))
        ang_dead = 2 * math.acos(min(1.0, abs(v0_dead[0, 0].real)))
        assert ang_dead < ang_full


class TestSequenceUnitary:
    def test_n2_equals_block(self):
        seq2 = dd.SequenceParams(2, 8e-6, 1e3, 0.0, 0.7)
        a = dd.block_unitary(seq2, 1e4, 2e3)
        b = dd.sequence_unitary(seq2, 1e4, 2e3)
        np.testing.assert_array_equal(a.v0, b.v0)

    def test_power_multiplies_angle(self):
        seq = dd.SequenceParams(12, 8e-6, 1.2e3, 0.0, 0.9)
        block = dd.block_unitary(seq, 4e4, 1e3)
        full = dd.sequence_unitary(seq, 4e4, 1e3)
        dec_b = dd.decompose_rotation(block)
        dec_f = dd.decompose_rotation(full)
        total = dd.wrap_phase(6 * dec_b.theta)  # N/2 = 6 blocks
        assert abs(dd.wrap_phase(dec_f.theta - total)) < 1e-9
        np.testing.assert_allclose(np.abs(dec_f.n0 @ dec_b.n0), 1.0, atol=1e-8)

    def test_entangling_setting(self):
        n, tau = 32, 24.654e-6
        omega = math.pi / (2 * n * tau)
        d0 = 3000.0 / tau  # far off resonance for the undriven transition
        inc = dd.resonant_phase_increment(d0, 0.0, tau)
        seq = dd.SequenceParams(n, tau, omega, 0.0, inc.delta_phi)
        dec = dd.decompose_rotation(dd.sequence_unitary(seq, d0, 0.0))
        assert dec.theta == pytest.approx(math.pi / 2, abs=2e-3)
        assert dec.dot == pytest.approx(-1.0, abs=1e-6)

    def test_delta_phi_periodicity(self):
        tau, d0, d1 = 15e-6, 5e4, -2e4
        a = dd.sequence_unitary(dd.SequenceParams(8, tau, 2e3, 0.0, 0.4), d0, d1)
        b = dd.sequence_unitary(dd.SequenceParams(8, tau, 2e3, 0.0, 0.4 + TWO_PI), d0, d1)
        np.testing.assert_allclose(a.v0, b.v0, atol=5e-14)
        np.testing.assert_allclose(a.v1, b.v1, atol=5e-14)

    def test_unitarity_large_n(self):
        seq = dd.SequenceParams(10_000, 20e-6, 2e3, 0.0, 1.234)
        gate = dd.sequence_unitary(seq, 5e4, 3e3)
        assert max(unitarity_defect(gate.v0), unitarity_defect(gate.v1)) <= 1e-11


class TestDecomposeRotation:
    def test_pi_rotation_about_x(self):
        gate = ConditionalGate(-1j * SX, -1j * SX)
        dec = dd.decompose_rotation(gate)
        assert dec.theta == pytest.approx(math.pi)
        np.testing.assert_allclose(dec.n0, [1, 0, 0], atol=1e-12)
        np.testing.assert_allclose(dec.n1, [1, 0, 0], atol=1e-12)
        assert dec.dot == pytest.approx(1.0)

    def test_antiparallel_quarter_rotations(self):
        v0 = reconstruct_rotation(math.pi / 2, [1, 0, 0])
        v1 = reconstruct_rotation(-math.pi / 2, [1, 0, 0])
        dec = dd.decompose_rotation(ConditionalGate(v0, v1))
        assert dec.theta == pytest.approx(math.pi / 2)
        assert dec.dot == pytest.approx(-1.0)

    def test_identity_returns_sentinel(self):
        dec = dd.decompose_rotation(ConditionalGate(np.eye(2), np.eye(2)))
        assert dec.theta == 0.0
        assert not dec.axes_defined
        assert dec.dot == 1.0
        assert np.isnan(dec.n0).all()

    def test_reconstruction_up_to_phase(self):
        rng = np.random.default_rng(6)
        for _ in range(40):
            axis = rng.normal(size=3)
            axis /= np.linalg.norm(axis)
            theta = rng.uniform(0.05, TWO_PI - 0.05)
            phase = np.exp(1j * rng.uniform(-math.pi, math.pi))
            v = phase * reconstruct_rotation(theta, axis)
            dec = dd.decompose_rotation(ConditionalGate(v, v))
            assert np.linalg.norm(dec.n0) == pytest.approx(1.0, abs=1e-10)
            rebuilt = reconstruct_rotation(dec.theta, dec.n0)
            np.testing.assert_allclose(strip_phase(rebuilt, v), v, atol=1e-9)

    def test_branch_angles_must_match(self):
        v0 = reconstruct_rotation(0.5, [1, 0, 0])
        v1 = reconstruct_rotation(0.9, [1, 0, 0])
        with pytest.raises(InvalidInputError):
            dd.decompose_rotation(ConditionalGate(v0, v1))

    def test_closed_form_cos_theta_single_transition_drive(self):
        # oracle: the one-sided closed form for cos(theta/2), built by
        # composing segments with the drive removed in the |0> branch
        rng = np.random.default_rng(9)
        for _ in range(25):
            tau = rng.uniform(5e-6, 40e-6)
            omega = rng.uniform(0.001, 0.3) / tau
            d0 = rng.uniform(-15, 15) / tau
            d1 = rng.uniform(-3, 3) / tau
            dphi = rng.uniform(-math.pi, math.pi)
            rzp = np.diag([np.exp(-0.5j * dphi), np.exp(0.5j * dphi)])
            t0 = dd.segment_propagator(d0, 0.0, 0.0, tau)
            t1 = dd.segment_propagator(d1, -omega, 0.0, tau)  # drive along -x
            v0 = t0 @ rzp @ (t1 @ t1) @ rzp @ t0
            v1 = t1 @ rzp @ (t0 @ t0) @ rzp @ t1
            dec = dd.decompose_rotation(ConditionalGate(v0, v1))
            w_rot = math.hypot(omega, d1)
            cos_half = (
                math.cos(w_rot * tau) * math.cos(d0 * tau + dphi)
                - (d1 / w_rot) * math.sin(w_rot * tau) * math.sin(d0 * tau + dphi)
            )
            # reported angle is one of the two axis-angle representatives of
            # the rotation whose half-angle cosine is the closed form
            theta_closed = 2.0 * math.acos(max(-1.0, min(1.0, cos_half)))
            assert min(
                abs(dec.theta - theta_closed), abs((TWO_PI - dec.theta) - theta_closed)
            ) <= 1e-9

    def test_appendix_g_axis_overlap(self):
        # with only one transition inside the bandwidth, 1 - n0.n1 follows a
        # Lorentzian in delta1/omega (checked for |d0 tau| = 60 >= 50)
        tau = 20e-6
        d0 = 60.0 / tau
        omega = 0.02 / tau
        for ratio in (0.0, 0.5, 1.0, 3.0):
            d1 = ratio * omega
            dphi = dd.wrap_phase(-d0 * tau + math.pi)
            gate = ConditionalGate(*conditional_block(d0, d1, dphi, tau, omega))
            dec = dd.decompose_rotation(gate)
            lorentz = 2.0 / (1.0 + ratio**2)
            assert (1.0 - float(dec.dot)) == pytest.approx(lorentz, rel=1e-2)


class TestPhaseIncrement:
    def test_trivial_conditional(self):
        inc = dd.resonant_phase_increment(0.0, 0.0, 1e-5)
        assert inc.delta_phi == pytest.approx(math.pi)

    def test_fig2a_line_value(self):
        d0, tau = TWO_PI * 30693.0, 29.632e-6
        inc = dd.resonant_phase_increment(d0, 0.0, tau, omega=0.0)
        assert inc.delta_phi == pytest.approx(dd.wrap_phase(-d0 * tau + math.pi))
        assert not inc.ac_stark_applied

    def test_ac_stark_against_numeric_optimum(self):
        # oracle: dense scan of the phase increment maximizing gate fidelity
        tau, omega, d0 = 25e-6, TWO_PI * 1e3, TWO_PI * 30e3
        base = dd.wrap_phase(-d0 * tau + math.pi)
        grid = base + np.linspace(-0.05, 0.05, 4001)
        v0, v1 = conditional_block(d0, 0.0, grid, tau, omega)
        dec = dd.decompose_rotation(ConditionalGate(v0, v1))
        fid = ((2.0 + dec.n0[:, 0] - dec.n1[:, 0]) ** 2 + 4.0) / 20.0
        numeric = grid[int(np.argmax(fid))]
        offset_numeric = dd.wrap_phase(numeric - base)

        inc = dd.resonant_phase_increment(d0, 0.0, tau, omega=omega, ac_stark=True)
        shift = dd.wrap_phase(inc.delta_phi - base)
        assert inc.ac_stark_applied
        assert shift == pytest.approx(-(omega**2) * tau / d0, rel=1e-12)
        # the closed-form correction covers most of the numeric offset
        assert abs(offset_numeric - shift) < 0.35 * abs(offset_numeric)
        assert abs(offset_numeric) > abs(offset_numeric - shift)

    def test_ac_stark_skipped_at_zero_detuning(self):
        inc = dd.resonant_phase_increment(0.0, 1e3, 1e-5, omega=1e3, ac_stark=True)
        assert not inc.ac_stark_applied
        assert inc.warning is not None

    def test_unconditional_drops_pi(self):
        d0, d1, tau = 1e4, -3e3, 2e-5
        inc = dd.resonant_phase_increment(d0, d1, tau, mode="unconditional", omega=1e3)
        assert inc.delta_phi == pytest.approx(dd.wrap_phase(-(d0 + d1) * tau))
        assert not inc.ac_stark_applied

    def test_numeric_optimizer_recovers_resonance(self):
        tau, omega = 24.654e-6, TWO_PI * 313.0
        d1 = TWO_PI * 5e3
        d0 = d1 + TWO_PI * 30693.0
        best = dd.optimize_phase_increment(d0, d1, tau, omega)
        gate = ConditionalGate(*conditional_block(d0, d1, best, tau, omega))
        assert dd.conditional_gate_fidelity(gate) > 0.999


class TestEffectiveRabi:
    def test_zero_shift_cancels(self):
        assert dd.effective_rabi(1e3, 5e4, 5e4, 1e-5) == 0.0

    def test_reduces_to_bare_rabi(self):
        # far-detuned undriven transition recovers the bare Rabi frequency
        tau = 1e-5
        val = dd.effective_rabi(1e3, 1e3 * math.pi / tau, 0.0, tau)
        assert val == pytest.approx(1e3, rel=1e-3)

    def test_unconditional_doubles(self):
        tau = 1e-5
        val = dd.effective_rabi(1e3, -1e-3 / tau, 0.0, tau, mode="unconditional")
        assert val == pytest.approx(2e3, rel=1e-3)

    def test_enhancement_ratio(self):
        # oracle: direct evaluation of the sinc difference
        tau, d0 = 24.654e-6, TWO_PI * 30693.0
        expected = 1.0 - math.sin(d0 * tau) / (d0 * tau)
        ratio = dd.effective_rabi(1.0, d0, 0.0, tau)
        assert ratio == pytest.approx(expected, rel=1e-12)
        assert ratio == pytest.approx(1.21, abs=5e-3)


class TestResponses:
    def test_full_contrast_point(self):
        assert dd.electron_response(-1.0, math.pi / 2) == pytest.approx(0.0, abs=1e-15)

    def test_no_entanglement(self):
        assert dd.electron_response(1.0, 1.234) == 1.0

    def test_analytic_equivalence_for_antiparallel_axes(self):
        x = np.linspace(0, 4 * math.pi, 101)
        general = dd.electron_response(-1.0, x)
        analytic = 0.5 + 0.5 * np.cos(2 * x)
        np.testing.assert_allclose(general, analytic, atol=1e-15)

    def test_local_window_entangling_point(self):
        n, tau = 32, 20e-6
        omega = math.pi / (2 * n * tau)
        assert dd.local_window_response(omega, 0.0, n, tau) == pytest.approx(0.5, abs=1e-12)

    def test_local_window_first_zero(self):
        n, tau = 32, 20e-6
        omega = math.pi / (2 * n * tau)
        d1 = math.sqrt(15) * math.pi / (2 * n * tau)
        assert dd.local_window_response(omega, d1, n, tau) == pytest.approx(1.0, abs=1e-12)

    def test_local_window_far_detuned(self):
        assert dd.local_window_response(1e2, 1e7, 32, 2e-5) == pytest.approx(1.0, abs=1e-8)


class TestConditionalGateFidelity:
    def test_ideal_gate(self):
        v0 = reconstruct_rotation(math.pi / 2, [1, 0, 0])
        v1 = reconstruct_rotation(-math.pi / 2, [1, 0, 0])
        assert dd.conditional_gate_fidelity(ConditionalGate(v0, v1)) == pytest.approx(1.0)

    def test_matches_average_gate_fidelity(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            n0 = rng.normal(size=3)
            n0 /= np.linalg.norm(n0)
            n1 = rng.normal(size=3)
            n1 /= np.linalg.norm(n1)
            gate = ConditionalGate(
                reconstruct_rotation(0.8, n0), reconstruct_rotation(0.8, n1)
            )
            dec = dd.decompose_rotation(gate)
            u_prime = np.zeros((4, 4), dtype=complex)
            u_prime[:2, :2] = reconstruct_rotation(math.pi / 2, dec.n0)
            u_prime[2:, 2:] = reconstruct_rotation(math.pi / 2, dec.n1)
            ideal = np.zeros((4, 4), dtype=complex)
            ideal[:2, :2] = reconstruct_rotation(math.pi / 2, [1, 0, 0])
            ideal[2:, 2:] = reconstruct_rotation(-math.pi / 2, [1, 0, 0])
            f_ref = dd.average_gate_fidelity(ideal, u_prime, 4)
            assert dd.conditional_gate_fidelity(gate) == pytest.approx(f_ref, abs=1e-12)

    def test_resonant_fig2c(self):
        tau, omega = 24.654e-6, TWO_PI * 313.0
        d0 = TWO_PI * 30693.0
        inc = dd.resonant_phase_increment(d0, 0.0, tau, omega=omega)
        seq = dd.SequenceParams(32, tau, omega, 0.0, inc.delta_phi)
        assert dd.conditional_gate_fidelity(dd.block_unitary(seq, d0, 0.0)) > 0.999

    def test_undefined_axes(self):
        with pytest.raises(UndefinedAxesError):
            dd.conditional_gate_fidelity(ConditionalGate(np.eye(2), np.eye(2)))


class TestFirstOrderEquivalence:
    def test_theta_tracks_effective_rabi(self):
        # full-unitary per-block angle against twice the effective Rabi angle
        tau = 10e-6
        omega_tau = 0.005
        omega = omega_tau / tau
        x = np.linspace(-20, 20, 41)
        d0 = x[:, None] / tau
        d1 = x[None, :] / tau
        dphi = dd.wrap_phase(-(d0 + d1) * tau + math.pi)
        v0, v1 = conditional_block(d0, d1, dphi, tau, omega)
        dec = dd.decompose_rotation(ConditionalGate(v0, v1))
        target = 2.0 * dd.effective_rabi(omega, d0, d1, tau) * tau
        err = np.abs(dd.wrap_phase(dec.theta - target))
        assert err.max() <= 0.01 * omega_tau

    def test_unconditional_branches_agree(self):
        rng = np.random.default_rng(7)
        for omega_tau in (0.05, 0.02):
            for _ in range(60):
                tau = rng.uniform(5e-6, 50e-6)
                omega = omega_tau / tau
                d0 = rng.uniform(-15, 15) / tau
                d1 = rng.uniform(-15, 15) / tau
                dphi = dd.wrap_phase(-(d0 + d1) * tau)
                v0, v1 = conditional_block(d0, d1, dphi, tau, omega)
                assert np.max(np.abs(v0 - v1)) <= 10 * omega_tau**2
