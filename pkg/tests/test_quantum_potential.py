"""Quantum-potential profiles, modified Hamilton-Jacobi residuals, and the
shear-parameter sweep locating where the quantum term vanishes."""

from __future__ import annotations

import math

import numpy as np
import pytest

from epsqp.eps_core import chi_build
from epsqp.quantum_potential import (
    alpha_sweep,
    hj_residual_eps,
    hj_residual_p_harmonic,
    hj_residual_p_linear,
    hj_residual_q,
    hj_residual_transformed,
    polar_decompose,
    quantum_potential_p,
    quantum_potential_q,
)
from epsqp.states import (
    ho_coherent_state,
    linear_potential_gaussian,
    to_momentum_space,
)


def _chi_triplet(q_grid, grid2, params, t=0.4, dt=1e-3, q0=0.5, p0=0.0, linear=False):
    out = []
    for s in (-1, 0, 1):
        if linear:
            psi = linear_potential_gaussian(
                q_grid, params, q0=q0, p0=p0, sigma0=math.sqrt(0.5), t=t + s * dt
            )
        else:
            psi = ho_coherent_state(q_grid, params, q0=q0, p0=p0, t=t + s * dt)
        out.append(chi_build(psi, to_momentum_space(psi), grid2))
    return out


# ---------------------------------------------------------------------------
# polar conventions
# ---------------------------------------------------------------------------


def test_polar_decompose_position_convention(q_grid, harmonic_params):
    psi = ho_coherent_state(q_grid, harmonic_params, q0=1.0, p0=0.0, t=0.3)
    pf = polar_decompose(psi)
    assert pf.space == "q" and pf.sign_convention == "+i"
    rebuilt = pf.R[pf.mask] * np.exp(1j * pf.S[pf.mask] / harmonic_params.hbar)
    np.testing.assert_allclose(rebuilt, psi.values[pf.mask], atol=1e-12)


def test_polar_decompose_momentum_convention(q_grid, harmonic_params):
    phi = to_momentum_space(
        ho_coherent_state(q_grid, harmonic_params, q0=1.0, p0=0.0, t=0.3)
    )
    pf = polar_decompose(phi)
    assert pf.space == "p" and pf.sign_convention == "-i"
    rebuilt = pf.R[pf.mask] * np.exp(-1j * pf.S[pf.mask] / harmonic_params.hbar)
    np.testing.assert_allclose(rebuilt, phi.values[pf.mask], atol=1e-12)


# ---------------------------------------------------------------------------
# quantum-potential profiles
# ---------------------------------------------------------------------------


def test_ground_state_quantum_potential_q(q_grid, harmonic_params):
    # Q(q) = hbar w / 2 - m w^2 q^2 / 2  (= 0.5 - 0.5 q^2 in natural units):
    # the quantum potential completes the classical energy balance of the
    # stationary state
    psi = ho_coherent_state(q_grid, harmonic_params, q0=0.0, p0=0.0, t=0.0)
    prof = quantum_potential_q(polar_decompose(psi))
    x = q_grid.points
    expected = 0.5 - 0.5 * x**2
    assert np.max(np.abs(prof.values[prof.mask] - expected[prof.mask])) < 1e-8
    i0 = int(np.argmin(np.abs(x)))
    assert prof.values[i0] == pytest.approx(0.5, abs=1e-10)
    assert prof.arena == "q-space"


def test_ground_state_quantum_potential_p(q_grid, harmonic_params):
    psi = ho_coherent_state(q_grid, harmonic_params, q0=0.0, p0=0.0, t=0.0)
    phi = to_momentum_space(psi)
    prof = quantum_potential_p(polar_decompose(phi))
    p = phi.grid.points
    expected = 0.5 - 0.5 * p**2
    assert np.max(np.abs(prof.values[prof.mask] - expected[prof.mask])) < 1e-8
    assert prof.arena == "p-space"


def test_quantum_potential_space_and_potential_guards(q_grid, harmonic_params, linear_params):
    psi = ho_coherent_state(q_grid, harmonic_params, q0=0.0, p0=0.0, t=0.0)
    phi = to_momentum_space(psi)
    with pytest.raises(ValueError):
        quantum_potential_q(polar_decompose(phi))
    with pytest.raises(ValueError):
        quantum_potential_p(polar_decompose(psi))
    # no momentum-space curvature term exists for a linear potential
    lin = linear_potential_gaussian(q_grid, linear_params, q0=0.0, p0=0.0, sigma0=1.0)
    with pytest.raises(ValueError):
        quantum_potential_p(polar_decompose(to_momentum_space(lin)))


# ---------------------------------------------------------------------------
# 1D modified Hamilton-Jacobi residuals
# ---------------------------------------------------------------------------


def test_position_space_residual_harmonic(coherent_triplet_factory):
    snaps = coherent_triplet_factory()
    rep = hj_residual_q(snaps)
    assert rep.l2_norm < 1e-5
    # the decomposition is exact as array arithmetic
    full = rep.fields["residual"]
    classical = rep.fields["classical_form"]
    qpot = rep.fields["quantum_potential"]
    mask = rep.fields["mask"]
    np.testing.assert_allclose(
        full[mask], (classical + qpot)[mask], atol=1e-13, rtol=0.0
    )
    # deleting the quantum term leaves exactly -Q as the classical failure
    np.testing.assert_allclose(classical[mask], (full - qpot)[mask], atol=1e-13)


def test_position_space_residual_halves_with_dt(coherent_triplet_factory):
    l2 = hj_residual_q(coherent_triplet_factory(dt=1e-3)).l2_norm
    l2_half = hj_residual_q(coherent_triplet_factory(dt=5e-4)).l2_norm
    assert l2 / l2_half >= 3.5  # second-order time stencil


def test_position_space_residual_linear(linear_triplet_factory):
    rep = hj_residual_q(linear_triplet_factory())
    assert rep.l2_norm < 1e-5


def test_momentum_space_residual_linear(linear_triplet_factory, q_grid):
    snaps = [to_momentum_space(s) for s in linear_triplet_factory()]
    rep = hj_residual_p_linear(snaps)
    assert rep.l2_norm < 1e-5
    # first-order equation: no curvature term exists to delete
    assert rep.metadata["quantum_term_l2"] == 0.0


def test_momentum_space_residual_harmonic(coherent_triplet_factory):
    snaps = [to_momentum_space(s) for s in coherent_triplet_factory()]
    rep = hj_residual_p_harmonic(snaps)
    assert rep.l2_norm < 1e-5


def test_snapshot_validation(coherent_triplet_factory):
    snaps = coherent_triplet_factory()
    with pytest.raises(ValueError):
        hj_residual_q(snaps[:2])
    with pytest.raises(ValueError):
        hj_residual_q([snaps[0], snaps[0], snaps[2]])  # unequal spacing


# ---------------------------------------------------------------------------
# phase-space residuals
# ---------------------------------------------------------------------------


def test_eps_residual_harmonic(q_grid, grid2, harmonic_params):
    snaps = _chi_triplet(q_grid, grid2, harmonic_params)
    rep = hj_residual_eps(snaps)
    assert rep.name == "eps-hj-harmonic"
    assert rep.l2_norm < 1e-5


def test_eps_residual_linear(q_grid, grid2, linear_params):
    snaps = _chi_triplet(q_grid, grid2, linear_params, linear=True)
    rep = hj_residual_eps(snaps)
    assert rep.name == "eps-hj-linear"
    assert rep.l2_norm < 1e-5


def test_classical_form_suffices_only_at_minus_half(q_grid, grid2, harmonic_params):
    base = _chi_triplet(q_grid, grid2, harmonic_params)
    rep_half = hj_residual_transformed(base, -0.5)
    classical_half = rep_half.metadata["classical_form_l2"]
    assert classical_half < 1e-5
    # at alpha = 0 the classical form fails by the full quantum term
    rep_zero = hj_residual_eps(base)
    classical_zero = rep_zero.metadata["classical_form_l2"]
    assert classical_zero > 100.0 * classical_half


# ---------------------------------------------------------------------------
# alpha sweep
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def sweep_inputs(q_grid, grid2, harmonic_params):
    return _chi_triplet(q_grid, grid2, harmonic_params)


def test_alpha_sweep_finds_the_vanishing_point(sweep_inputs):
    alphas = (-1.0, -0.75, -0.5, -0.25, 0.0)
    res = alpha_sweep(sweep_inputs, alphas)
    assert res.fit.r_squared > 0.999
    assert abs(res.fit.zero_crossing - (-0.5)) < 1e-3
    # measured coefficient tracks 1/2 + alpha across the sweep
    for a, c in zip(res.alphas, res.coefficients):
        assert c == pytest.approx(0.5 + a, abs=5e-3)


def test_alpha_sweep_input_validation(sweep_inputs):
    with pytest.raises(ValueError):
        alpha_sweep(sweep_inputs, (0.0, -0.5, -1.0))  # unsorted
    with pytest.raises(ValueError):
        alpha_sweep(sweep_inputs, (-0.5, 0.0))  # too few
    with pytest.raises(ValueError):
        alpha_sweep(sweep_inputs, (-1.0, -0.4, 0.0))  # missing -1/2


def test_alpha_sweep_parallel_is_deterministic(sweep_inputs):
    alphas = (-1.0, -0.5, 0.0)
    serial = alpha_sweep(sweep_inputs, alphas, parallel=False)
    parallel = alpha_sweep(sweep_inputs, alphas, parallel=True)
    assert serial.coefficients == parallel.coefficients
    assert serial.term_norms == parallel.term_norms
    assert serial.fit == parallel.fit
