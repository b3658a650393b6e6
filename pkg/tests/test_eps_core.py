"""Phase-space product distributions, the extended Hamiltonian, polar
decomposition and expectation values."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epsqp.eps_core import (
    ExtendedHamiltonian,
    PhaseSpaceField,
    chi_build,
    eps_rhs_apply,
    expectation,
    polar_decompose_2d,
)
from epsqp.numerics import GridError, unwrap_phase_1d
from epsqp.states import ho_coherent_state, to_momentum_space

HYP = settings(max_examples=20, deadline=None)


def _chi_at(q_grid, grid2, params, q0, p0, t):
    psi = ho_coherent_state(q_grid, params, q0=q0, p0=p0, t=t)
    return chi_build(psi, to_momentum_space(psi), grid2), psi


# ---------------------------------------------------------------------------
# construction and validation
# ---------------------------------------------------------------------------


def test_chi_build_rejects_swapped_spaces(q_grid, grid2, harmonic_params):
    psi = ho_coherent_state(q_grid, harmonic_params, q0=0.0, p0=0.0, t=0.0)
    phi = to_momentum_space(psi)
    with pytest.raises(ValueError):
        chi_build(phi, psi, grid2)


def test_chi_build_rejects_mismatched_params(
    q_grid, grid2, harmonic_params, linear_params
):
    from epsqp.states import linear_potential_gaussian

    psi = ho_coherent_state(q_grid, harmonic_params, q0=0.0, p0=0.0, t=0.0)
    other = linear_potential_gaussian(
        q_grid, linear_params, q0=0.0, p0=0.0, sigma0=1.0
    )
    with pytest.raises(ValueError):
        chi_build(psi, to_momentum_space(other), grid2)


def test_field_kind_and_alpha_tagging(grid2, harmonic_params, ground_chi):
    with pytest.raises(ValueError):
        PhaseSpaceField(
            ground_chi.values, grid2, 0.0, harmonic_params, kind="nonsense"
        )
    with pytest.raises(ValueError):
        PhaseSpaceField(
            ground_chi.values, grid2, 0.0, harmonic_params, kind="transformed"
        )  # transformed fields must record alpha
    with pytest.raises(ValueError):
        PhaseSpaceField(
            ground_chi.values, grid2, 0.0, harmonic_params, kind="chi", alpha=0.3
        )  # untransformed fields must not


def test_amplitude_factorizes(q_grid, grid2, harmonic_params):
    chi, psi = _chi_at(q_grid, grid2, harmonic_params, 0.7, -0.4, 0.3)
    phi = to_momentum_space(psi)
    expected = np.abs(phi.values)[:, None] * np.abs(psi.values)[None, :]
    np.testing.assert_allclose(np.abs(chi.values), expected, atol=1e-14)


# ---------------------------------------------------------------------------
# polar decomposition
# ---------------------------------------------------------------------------


def test_ground_action_is_minus_pq(ground_chi, grid2):
    act = polar_decompose_2d(ground_chi)
    P, Q = grid2.meshes()
    hbar = ground_chi.params.hbar
    diff = act.S[act.mask] + (P * Q)[act.mask]
    # equal up to a single global multiple of 2 pi hbar
    offset = diff[np.argmax(act.R[act.mask])]
    assert np.max(np.abs(diff - offset)) < 1e-8
    winding = offset / (2.0 * np.pi * hbar)
    assert abs(winding - round(winding)) < 1e-8


def test_phase_splits_into_q_and_p_parts(q_grid, grid2, harmonic_params):
    # S(p, q) + p q  =  S_psi(q) - S_phi(p)  (up to one global constant):
    # the product's action separates into its factors' 1D actions
    chi, psi = _chi_at(q_grid, grid2, harmonic_params, 1.0, 0.0, 0.4)
    phi = to_momentum_space(psi)
    hbar = harmonic_params.hbar
    act = polar_decompose_2d(chi)
    P, Q = grid2.meshes()
    s_psi = hbar * unwrap_phase_1d(np.angle(psi.values))
    s_phi = hbar * unwrap_phase_1d(np.angle(phi.values))
    combo = act.S + P * Q - s_psi[None, :] + s_phi[:, None]
    vals = combo[act.mask]
    # compare winding-free: spread modulo 2 pi hbar
    resid = vals - vals[np.argmax(act.R[act.mask])]
    resid -= 2.0 * np.pi * hbar * np.round(resid / (2.0 * np.pi * hbar))
    assert np.max(np.abs(resid)) < 1e-8


def test_polar_decompose_rejects_empty_mask(grid2, harmonic_params):
    zero = PhaseSpaceField(
        np.zeros(grid2.shape), grid2, 0.0, harmonic_params, kind="f"
    )
    with pytest.raises(ValueError):
        polar_decompose_2d(zero)


# ---------------------------------------------------------------------------
# extended Hamiltonian
# ---------------------------------------------------------------------------


def test_operator_reduces_to_transport_at_minus_half(harmonic_params, linear_params):
    for params in (harmonic_params, linear_params):
        ham = ExtendedHamiltonian.from_params(params, alpha=-0.5)
        assert ham.A == 0.0
        assert ham.C == 0.0
        terms = ham.terms()
        assert "pi_q^2" not in terms
        assert "pi_p^2" not in terms
        assert terms["p pi_q"] == pytest.approx(1.0 / params.mass)


def test_operator_action_on_plane_wave(grid2, harmonic_params):
    # exact eigen-relation: for f = exp(i (kq q + kp p)) the operator gives
    # (hbar^2 A kq^2 + hbar B kq p + hbar^2 C kp^2 + hbar (D q + E) kp) f
    P, Q = grid2.meshes()
    kq = 4.0 * (2.0 * np.pi / grid2.q_axis.extent)
    kp = 4.0 * (2.0 * np.pi / grid2.p_axis.extent)
    f = PhaseSpaceField(
        np.exp(1j * (kq * Q + kp * P)), grid2, 0.0, harmonic_params, kind="f"
    )
    ham = ExtendedHamiltonian.from_params(harmonic_params, alpha=0.25)
    hbar = harmonic_params.hbar
    expected = (
        hbar**2 * ham.A * kq**2
        + hbar * ham.B * kq * P
        + hbar**2 * ham.C * kp**2
        + hbar * (ham.D * Q + ham.E) * kp
    ) * f.values
    got = ham.apply(f)
    assert np.max(np.abs(got - expected)) < 1e-9 * np.max(np.abs(expected))


@HYP
@given(alpha=st.floats(min_value=-1.0, max_value=0.5))
def test_second_order_coefficients_scale_as_one_plus_two_alpha(
    harmonic_params, alpha
):
    ham = ExtendedHamiltonian.from_params(harmonic_params, alpha)
    base = ExtendedHamiltonian.from_params(harmonic_params, 0.0)
    factor = 1.0 + 2.0 * alpha
    assert ham.A == pytest.approx(factor * base.A, abs=1e-15)
    assert ham.C == pytest.approx(factor * base.C, abs=1e-15)
    # first-order (transport) coefficients are alpha-independent
    assert ham.B == base.B
    assert ham.D == base.D
    assert ham.E == base.E


def test_evaluate_classical_matches_coefficients(harmonic_params):
    ham = ExtendedHamiltonian.from_params(harmonic_params, alpha=0.0)
    S_q, S_p, P, Q = 2.0, 3.0, 0.5, -1.5
    expected = (
        ham.A * S_q**2 + ham.B * P * S_q + ham.C * S_p**2 + (ham.D * Q + ham.E) * S_p
    )
    assert ham.evaluate_classical(S_q, S_p, P, Q) == pytest.approx(expected)


# ---------------------------------------------------------------------------
# dynamics
# ---------------------------------------------------------------------------


def test_ground_distribution_is_a_zero_mode(ground_chi):
    # the stationary ground-state product is annihilated by the operator
    rhs = eps_rhs_apply(ground_chi)
    assert np.max(np.abs(rhs.values)) < 1e-8


def test_evolution_identity_for_coherent_distribution(q_grid, grid2, harmonic_params):
    # i hbar d(chi)/dt = H' chi, the time derivative from a centred pair
    dt = 1e-3
    t = 0.4
    chis = [
        _chi_at(q_grid, grid2, harmonic_params, 1.0, 0.0, t + s * dt)[0]
        for s in (-1, 0, 1)
    ]
    hbar = harmonic_params.hbar
    lhs = 1j * hbar * (chis[2].values - chis[0].values) / (2.0 * dt)
    rhs = eps_rhs_apply(chis[1]).values
    cell = grid2.cell
    err = np.sqrt(np.sum(np.abs(lhs - rhs) ** 2) * cell)
    assert err < 1e-5


def test_rhs_alpha_selection(ground_chi):
    default = eps_rhs_apply(ground_chi)
    explicit = eps_rhs_apply(ground_chi, transform_alpha=0.0)
    np.testing.assert_array_equal(default.values, explicit.values)
    # a different operator family gives a genuinely different image
    other = eps_rhs_apply(ground_chi, transform_alpha=-0.5)
    assert np.max(np.abs(other.values - default.values)) > 1e-3


# ---------------------------------------------------------------------------
# expectations
# ---------------------------------------------------------------------------


def test_ground_state_moments(ground_chi, grid2):
    P, Q = grid2.meshes()
    m = ground_chi.params.mass
    k = ground_chi.params.potential.k
    assert expectation(Q**2, ground_chi) == pytest.approx(0.5, abs=1e-8)
    assert expectation(P**2 / (2 * m) + 0.5 * k * Q**2, ground_chi) == pytest.approx(
        0.5, abs=1e-8
    )
    assert expectation(Q, ground_chi) == pytest.approx(0.0, abs=1e-10)


def test_coherent_first_moments_track_the_orbit(q_grid, grid2, harmonic_params):
    t = 0.6
    chi, _ = _chi_at(q_grid, grid2, harmonic_params, 1.0, 0.0, t)
    P, Q = grid2.meshes()
    assert expectation(Q, chi) == pytest.approx(math.cos(t), abs=1e-8)
    assert expectation(P, chi) == pytest.approx(-math.sin(t), abs=1e-8)


def test_expectation_validation(grid2, harmonic_params, ground_chi):
    with pytest.raises(GridError):
        expectation(np.ones(4), ground_chi)
    zero = PhaseSpaceField(
        np.zeros(grid2.shape), grid2, 0.0, harmonic_params, kind="f"
    )
    with pytest.raises(ValueError):
        expectation(np.ones(grid2.shape), zero)
