"""Madelung splits, quantum potentials, and Hamilton-Jacobi residuals.

Writing a state in polar form and inserting it into its evolution equation
splits the real part into a classical Hamilton-Jacobi equation plus
curvature ("quantum potential") corrections proportional to hbar^2:

* position space:  dS/dt + (dS/dq)^2/2m + V(q) + Q = 0,
  with Q = -(hbar^2/2m) R''/R;
* momentum space, linear potential V = b q:
  dS/dt + p^2/2m - b dS/dp = 0  — no quantum term at all;
* momentum space, harmonic potential:
  dS/dt + p^2/2m + (k/2)(dS/dp)^2 + Q_p = 0,
  with Q_p = -(hbar^2 k/2) R''/R;
* phase space (sheared by alpha): dS/dt plus the gradient form of the
  sheared Hamiltonian plus (1/2 + alpha) * T, where
  T = -hbar^2 [R_qq/m - k R_pp] / R  (the k-term only for harmonic).

The residual evaluators in this module measure how well those identities
hold on sampled states, using three estimators chosen for conditioning
(all branch-cut-free; explicit unwrapping appears only in
:func:`polar_decompose`, whose output is a deliverable in its own right):

* spatial action gradients from the algebraic identity
  S_x = hbar Im(conj(f) f_x)/|f|^2 with spectral f_x — no truncation
  error at all;
* the action time derivative from the phase of the snapshot ratio,
  S_t = hbar arg(f(t+dt) conj(f(t-dt)))/(2 dt), whose error is exactly
  (dt^2/6) d^3S/dt^3.  The naive Im(conj(f) df/dt)/|f|^2 form hides an
  extra -(dS/dt)^3/hbar^2 term in its dt^2 coefficient (the sine series
  of the rotating phasor), which for these states is orders of magnitude
  larger.  Requires |S(t+dt) - S(t-dt)| < pi hbar pointwise — satisfied
  with two orders to spare by every state here;
* amplitude curvature R''/R via :func:`relative_curvature` (centred
  differences on log R): exact for the Gaussian amplitude family and
  uniformly conditioned on the mask, unlike a spectral derivative of R,
  whose absolute rounding floor is amplified by 1/R at the mask edge.

Momentum-space sign conventions: the stored :class:`PolarField` for a
momentum-space state honours phi = R exp(-i S / hbar) (so the product
distribution's action decomposes additively as S^q + S^p - pq).  The
momentum-space Hamilton-Jacobi identities above, however, hold for the
action +hbar arg(phi) — one sign flip away — and the residual evaluators
use that convention internally.  Both facts are unit-tested; only the
derivatives of S enter any residual, so no global constant is affected.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.typing import NDArray

from .eps_core import ExtendedHamiltonian, PhaseSpaceField
from .numerics import (
    Grid1D,
    HarmonicPotential,
    LinearPotential,
    PhysicalParams,
    amplitude_mask,
    relative_curvature,
    spectral_derivative,
    spectral_derivative_2d,
    unwrap_phase_1d,
)
from .reports import (
    LineFit,
    ResidualReport,
    fit_global_constant,
    fit_line,
    masked_fraction,
    masked_l2,
    masked_max,
)
from .states import WaveFunction
from .transforms import apply_extended_transform

_TIME_ATOL = 1e-12


# ---------------------------------------------------------------------------
# polar decomposition (1D)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolarField:
    """Amplitude/action split of a 1D state.

    ``sign_convention`` records how the action reassembles the state:
    position space uses psi = R exp(+i S / hbar) (``"+i"``), momentum space
    uses phi = R exp(-i S / hbar) (``"-i"``).  ``S`` is NaN off the mask.
    """

    R: NDArray[np.float64]
    S: NDArray[np.float64]
    mask: NDArray[np.bool_]
    space: str
    sign_convention: str
    grid: Grid1D
    t: float
    params: PhysicalParams


def polar_decompose(psi: WaveFunction) -> PolarField:
    """Split a 1D state into amplitude and unwrapped action.

    Contiguous above-threshold runs are unwrapped independently (phase is
    meaningless across a node), and the action is scaled by hbar with the
    sign convention of the state's space.
    """
    R = np.abs(psi.values)
    mask = amplitude_mask(R)
    if not mask.any():
        raise ValueError("state amplitude is everywhere below the node threshold")
    unwrapped = unwrap_phase_1d(np.angle(psi.values), mask)
    sign = 1.0 if psi.space == "q" else -1.0
    S = np.full(R.shape, np.nan)
    S[mask] = sign * psi.params.hbar * unwrapped[mask]
    return PolarField(
        R=R,
        S=S,
        mask=mask,
        space=psi.space,
        sign_convention="+i" if psi.space == "q" else "-i",
        grid=psi.grid,
        t=psi.t,
        params=psi.params,
    )


# ---------------------------------------------------------------------------
# quantum potential profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuantumPotentialProfile:
    """Quantum-potential values (energy units), NaN off the validity mask."""

    values: NDArray[np.float64]
    mask: NDArray[np.bool_]
    arena: str
    grid: Grid1D


def quantum_potential_q(pf: PolarField, params: PhysicalParams | None = None) -> QuantumPotentialProfile:
    """Position-space quantum potential ``-(hbar^2/2m) R''/R`` on the mask.

    The curvature ratio comes from :func:`relative_curvature` (log-space
    differences), which keeps the profile accurate all the way to the mask
    edge, where R is a millionth of its peak and any absolute error in a
    directly differentiated R would be amplified a millionfold.
    """
    if pf.space != "q":
        raise ValueError("quantum_potential_q expects a position-space polar field")
    params = pf.params if params is None else params
    curv = relative_curvature(pf.R, pf.grid.spacing)
    values = np.full(pf.R.shape, np.nan)
    values[pf.mask] = -(params.hbar**2) / (2.0 * params.mass) * curv[pf.mask]
    return QuantumPotentialProfile(values, pf.mask, arena="q-space", grid=pf.grid)


def quantum_potential_p(pf: PolarField, params: PhysicalParams | None = None) -> QuantumPotentialProfile:
    """Momentum-space quantum potential ``-(hbar^2 k/2) R''/R`` (harmonic only).

    For a linear potential the momentum-space equation is first order in
    d/dp and carries no curvature term at all — asking for its quantum
    potential is a usage error (see :func:`hj_residual_p_linear`).
    """
    if pf.space != "p":
        raise ValueError("quantum_potential_p expects a momentum-space polar field")
    params = pf.params if params is None else params
    if not isinstance(params.potential, HarmonicPotential):
        raise ValueError(
            "no momentum-space quantum potential exists for a linear potential"
        )
    k = params.potential.k
    curv = relative_curvature(pf.R, pf.grid.spacing)
    values = np.full(pf.R.shape, np.nan)
    values[pf.mask] = -(params.hbar**2) * k / 2.0 * curv[pf.mask]
    return QuantumPotentialProfile(values, pf.mask, arena="p-space", grid=pf.grid)


# ---------------------------------------------------------------------------
# shared snapshot handling
# ---------------------------------------------------------------------------


def _check_params(center_params: PhysicalParams, params: PhysicalParams | None) -> PhysicalParams:
    if params is not None and params != center_params:
        raise ValueError("explicit params disagree with the snapshots' params")
    return center_params


def _wf_triple(snapshots: Sequence[WaveFunction], space: str):
    if len(snapshots) != 3:
        raise ValueError("need exactly three snapshots (t - dt, t, t + dt)")
    minus, center, plus = snapshots
    for s in snapshots:
        if s.space != space:
            raise ValueError(f"snapshots must be {space}-space states")
        if s.params != center.params:
            raise ValueError("snapshots carry different physical parameters")
        if s.grid != center.grid:
            raise ValueError("snapshots live on different grids")
    dt_lo, dt_hi = center.t - minus.t, plus.t - center.t
    if dt_lo <= 0 or abs(dt_hi - dt_lo) > _TIME_ATOL:
        raise ValueError("snapshots must be equally spaced in time")
    return minus, center, plus, dt_lo


def _field_triple(snapshots: Sequence[PhaseSpaceField]):
    if len(snapshots) != 3:
        raise ValueError("need exactly three snapshots (t - dt, t, t + dt)")
    minus, center, plus = snapshots
    for s in snapshots:
        if s.kind != "chi":
            raise ValueError("phase-space residuals start from untransformed chi fields")
        if s.params != center.params:
            raise ValueError("snapshots carry different physical parameters")
        if s.grid != center.grid:
            raise ValueError("snapshots live on different grids")
    dt_lo, dt_hi = center.t - minus.t, plus.t - center.t
    if dt_lo <= 0 or abs(dt_hi - dt_lo) > _TIME_ATOL:
        raise ValueError("snapshots must be equally spaced in time")
    return minus, center, plus, dt_lo


def _masked(arr: NDArray, mask: NDArray[np.bool_]) -> NDArray[np.float64]:
    out = np.full(arr.shape, np.nan)
    out[mask] = arr[mask]
    return out


# ---------------------------------------------------------------------------
# 1D Hamilton-Jacobi residuals
# ---------------------------------------------------------------------------


def hj_residual_q(
    snapshots: Sequence[WaveFunction], params: PhysicalParams | None = None
) -> ResidualReport:
    """Residual of the position-space modified Hamilton-Jacobi equation.

        dS/dt + (dS/dq)^2 / 2m + V(q) + Q,   Q = -(hbar^2/2m) R''/R

    evaluated at the centre snapshot; the classical-form residual (the
    quantum term deleted) and the quantum potential itself are carried in
    the fields, with ``full = classical_form + Q`` holding exactly as
    array arithmetic.
    """
    minus, center, plus, dt = _wf_triple(snapshots, "q")
    params = _check_params(center.params, params)
    m, hbar = params.mass, params.hbar
    grid = center.grid
    c = center.values

    mask = amplitude_mask(np.abs(c))
    dens = np.where(mask, np.abs(c) ** 2, 1.0)
    c_q = spectral_derivative(c, grid, order=1)

    S_t = hbar * np.angle(plus.values * np.conj(minus.values)) / (2.0 * dt)
    S_q = hbar * np.imag(np.conj(c) * c_q) / dens

    quantum = -(hbar**2) / (2.0 * m) * relative_curvature(np.abs(c), grid.spacing)
    classical = S_t + S_q**2 / (2.0 * m) + params.potential.value(grid.points)
    full = classical + quantum

    return ResidualReport(
        name="qspace-hj",
        l2_norm=masked_l2(full, mask, grid.spacing),
        max_norm=masked_max(full, mask),
        masked_fraction=masked_fraction(mask),
        metadata={
            "dt": dt,
            "t": center.t,
            "grid_n": grid.n_points,
            "potential": params.potential.kind,
            "classical_form_l2": masked_l2(classical, mask, grid.spacing),
            "classical_form_max": masked_max(classical, mask),
            "quantum_term_l2": masked_l2(quantum, mask, grid.spacing),
        },
        fields={
            "residual": _masked(full, mask),
            "classical_form": _masked(classical, mask),
            "quantum_potential": _masked(quantum, mask),
            "mask": mask,
            "axis": grid.points,
        },
    )


def _hj_residual_p(
    snapshots: Sequence[WaveFunction], params: PhysicalParams | None
) -> tuple:
    """Common momentum-space setup: action derivatives and curvature ratio.

    The momentum-space identities hold for S = +hbar arg(phi), so the
    estimators are applied to the raw field without the stored-convention
    sign flip (see the module docstring).
    """
    minus, center, plus, dt = _wf_triple(snapshots, "p")
    params = _check_params(center.params, params)
    grid = center.grid
    c = center.values

    mask = amplitude_mask(np.abs(c))
    dens = np.where(mask, np.abs(c) ** 2, 1.0)
    c_p = spectral_derivative(c, grid, order=1)

    hbar = params.hbar
    S_t = hbar * np.angle(plus.values * np.conj(minus.values)) / (2.0 * dt)
    S_p = hbar * np.imag(np.conj(c) * c_p) / dens
    curv = relative_curvature(np.abs(c), grid.spacing)  # R''/R
    return params, grid, dt, center.t, mask, S_t, S_p, curv


def hj_residual_p_linear(
    snapshots: Sequence[WaveFunction], params: PhysicalParams | None = None
) -> ResidualReport:
    """Residual of the momentum-space Hamilton-Jacobi equation, linear potential.

        dS/dt + p^2 / 2m - b dS/dp

    The equation is first order in d/dp, so it is already in classical form:
    no quantum term exists to delete.  The action convention here is
    S = +hbar arg(phi) (see the module docstring).
    """
    if len(snapshots) == 3 and not isinstance(
        snapshots[1].params.potential, LinearPotential
    ):
        raise ValueError("hj_residual_p_linear requires a linear potential")
    params_out, grid, dt, t, mask, S_t, S_p, _ = _hj_residual_p(snapshots, params)
    b = params_out.potential.b
    m = params_out.mass
    full = S_t + grid.points**2 / (2.0 * m) - b * S_p

    return ResidualReport(
        name="pspace-hj-linear",
        l2_norm=masked_l2(full, mask, grid.spacing),
        max_norm=masked_max(full, mask),
        masked_fraction=masked_fraction(mask),
        metadata={
            "dt": dt,
            "t": t,
            "grid_n": grid.n_points,
            "potential": "linear",
            "quantum_term_l2": 0.0,  # structurally absent, not merely small
        },
        fields={
            "residual": _masked(full, mask),
            "mask": mask,
            "axis": grid.points,
        },
    )


def hj_residual_p_harmonic(
    snapshots: Sequence[WaveFunction], params: PhysicalParams | None = None
) -> ResidualReport:
    """Residual of the momentum-space modified Hamilton-Jacobi equation,
    harmonic potential:

        dS/dt + p^2/2m + (k/2)(dS/dp)^2 + Q_p,   Q_p = -(hbar^2 k/2) R''/R

    with classical-form and quantum-term fields carried alongside, the same
    way as :func:`hj_residual_q`.  Action convention S = +hbar arg(phi).
    """
    if len(snapshots) == 3 and not isinstance(
        snapshots[1].params.potential, HarmonicPotential
    ):
        raise ValueError("hj_residual_p_harmonic requires a harmonic potential")
    params_out, grid, dt, t, mask, S_t, S_p, curv = _hj_residual_p(snapshots, params)
    k = params_out.potential.k
    m, hbar = params_out.mass, params_out.hbar

    quantum = -(hbar**2) * k / 2.0 * curv
    classical = S_t + grid.points**2 / (2.0 * m) + k / 2.0 * S_p**2
    full = classical + quantum

    return ResidualReport(
        name="pspace-hj-harmonic",
        l2_norm=masked_l2(full, mask, grid.spacing),
        max_norm=masked_max(full, mask),
        masked_fraction=masked_fraction(mask),
        metadata={
            "dt": dt,
            "t": t,
            "grid_n": grid.n_points,
            "potential": "harmonic",
            "classical_form_l2": masked_l2(classical, mask, grid.spacing),
            "classical_form_max": masked_max(classical, mask),
            "quantum_term_l2": masked_l2(quantum, mask, grid.spacing),
        },
        fields={
            "residual": _masked(full, mask),
            "classical_form": _masked(classical, mask),
            "quantum_potential": _masked(quantum, mask),
            "mask": mask,
            "axis": grid.points,
        },
    )


# ---------------------------------------------------------------------------
# phase-space Hamilton-Jacobi residuals (untransformed and sheared)
# ---------------------------------------------------------------------------


def _hj_residual_2d(
    snapshots: Sequence[PhaseSpaceField], alpha: float, name: str
) -> ResidualReport:
    """Shared engine for the phase-space modified Hamilton-Jacobi residual.

    Each snapshot is sheared by alpha separately (skipped exactly at
    alpha = 0) and the estimators of the module docstring are applied to
    the transformed fields: the phase of the plus/minus snapshot ratio is
    immune to the catastrophic cancellation a literal difference of the
    sheared fields would suffer near the mask edge.

    Residual pieces:

        classical_form = S_t + H'(dS/dq, dS/dp, p, q)
        quantum        = (1/2 + alpha) * T
        full           = classical_form + quantum

    where T collects the curvature terms at unit coefficient.  The
    projection of -classical_form onto T (metadata ``fitted_coefficient``)
    measures the coefficient the data actually demands, which the exact
    identity fixes at 1/2 + alpha (``expected_coefficient``).
    """
    minus, center, plus, dt = _field_triple(snapshots)
    params = center.params
    grid = center.grid
    m, hbar = params.mass, params.hbar

    if alpha == 0.0:
        c, cm, cp = center.values, minus.values, plus.values
    else:
        c = apply_extended_transform(center, alpha).values
        cm = apply_extended_transform(minus, alpha).values
        cp = apply_extended_transform(plus, alpha).values

    mask = amplitude_mask(np.abs(c))
    dens = np.where(mask, np.abs(c) ** 2, 1.0)
    P, Q = grid.meshes()

    S_t = hbar * np.angle(cp * np.conj(cm)) / (2.0 * dt)
    if alpha == 0.0:
        # An untransformed chi carries the anti-standard kernel
        # exp(-i p q / hbar) by construction, so the p-direction spectrum of
        # the row at position q is centred near wavenumber -q/hbar; for the
        # outer rows of the mask that puts spectral tails at the momentum
        # Nyquist (the paired momentum grid is far coarser than the position
        # grid), flooring a direct spectral gradient.  Peel the kernel,
        # differentiate the centred remainder, and restore the kernel's
        # exact gradients (-p into S_q, -q into S_p) algebraically.  The
        # time derivative needs no peeling: the kernel is static and cancels
        # in the snapshot ratio.
        smooth = c * np.exp(1j * P * Q / hbar)
        sm_q = spectral_derivative_2d(smooth, grid, axis=1, order=1)
        sm_p = spectral_derivative_2d(smooth, grid, axis=0, order=1)
        S_q = hbar * np.imag(np.conj(smooth) * sm_q) / dens - P
        S_p = hbar * np.imag(np.conj(smooth) * sm_p) / dens - Q
    else:
        c_q = spectral_derivative_2d(c, grid, axis=1, order=1)
        c_p = spectral_derivative_2d(c, grid, axis=0, order=1)
        S_q = hbar * np.imag(np.conj(c) * c_q) / dens
        S_p = hbar * np.imag(np.conj(c) * c_p) / dens
    amp = np.abs(c)
    rqq = relative_curvature(amp, grid.q_axis.spacing, axis=1)  # R_qq / R
    rpp = relative_curvature(amp, grid.p_axis.spacing, axis=0)  # R_pp / R

    ham = ExtendedHamiltonian.from_params(params, alpha)
    classical = S_t + ham.evaluate_classical(S_q, S_p, P, Q)

    # curvature terms at unit coefficient: quantum = (1/2 + alpha) * T
    c1 = -params.potential.k if isinstance(params.potential, HarmonicPotential) else 0.0
    T = -(hbar**2) * (rqq / m + c1 * rpp)
    x = 0.5 + alpha
    quantum = x * T
    full = classical + quantum

    fitted = -np.real(fit_global_constant(classical, T, mask))
    remainder_l2 = masked_l2(classical + fitted * T, mask, grid.cell)

    return ResidualReport(
        name=name,
        l2_norm=masked_l2(full, mask, grid.cell),
        max_norm=masked_max(full, mask),
        masked_fraction=masked_fraction(mask),
        metadata={
            "alpha": alpha,
            "expected_coefficient": x,
            "fitted_coefficient": fitted,
            "dt": dt,
            "t": center.t,
            "grid_n": grid.q_axis.n_points,
            "potential": params.potential.kind,
            "classical_form_l2": masked_l2(classical, mask, grid.cell),
            "classical_form_max": masked_max(classical, mask),
            "quantum_term_l2": masked_l2(quantum, mask, grid.cell),
            "term_basis_l2": masked_l2(T, mask, grid.cell),
            "remainder_l2": remainder_l2,
        },
        fields={
            "residual": _masked(full, mask),
            "classical_form": _masked(classical, mask),
            "quantum_term": _masked(quantum, mask),
            "term_basis": _masked(T, mask),
            "q_term": _masked(-(hbar**2) * ham.A * rqq, mask),
            "p_term": _masked(-(hbar**2) * ham.C * rpp, mask),
            "mask": mask,
        },
    )


def hj_residual_eps(
    snapshots: Sequence[PhaseSpaceField], params: PhysicalParams | None = None
) -> ResidualReport:
    """Residual of the phase-space modified Hamilton-Jacobi identity for chi.

    This is the alpha = 0 member of the sheared family: both curvature
    terms enter at coefficient 1/2 (the harmonic case needs the q- and
    p-curvature terms together; the linear case has no p-term).
    """
    if len(snapshots) == 3:
        _check_params(snapshots[1].params, params)
        name = f"eps-hj-{snapshots[1].params.potential.kind}"
    else:
        name = "eps-hj"
    return _hj_residual_2d(snapshots, 0.0, name)


def hj_residual_transformed(
    snapshots: Sequence[PhaseSpaceField],
    alpha: float,
    params: PhysicalParams | None = None,
) -> ResidualReport:
    """Residual of the modified Hamilton-Jacobi identity after shearing by alpha.

    Reports the full residual as the headline norms and the classical-form
    residual (curvature terms deleted) in the metadata: away from
    alpha = -1/2 the classical form fails by exactly the (1/2 + alpha)-
    weighted curvature term; at alpha = -1/2 the two coincide and the
    classical equation holds on its own.
    """
    if len(snapshots) == 3:
        _check_params(snapshots[1].params, params)
    return _hj_residual_2d(snapshots, alpha, f"transformed-hj(alpha={alpha})")


# ---------------------------------------------------------------------------
# alpha sweep
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlphaSweepResult:
    """Per-alpha norms and the affine fit of the measured quantum-term coefficient.

    ``coefficients`` are the projections of the classical-form residual
    onto the unit-coefficient curvature field T — the coefficient the data
    assigns to the quantum term, equal to 1/2 + alpha up to the
    discretisation floor.  ``fit`` is the least-squares line of those
    coefficients against alpha; its ``zero_crossing`` estimates the alpha
    at which the quantum term vanishes.

    ``term_norms`` are the literal L2 norms of the signed quantum-term
    fields (1/2 + alpha) * T.  They are reported for the vanishing check at
    alpha = -1/2, but they are NOT the quantity fitted: a norm folds in
    |1/2 + alpha| and the alpha-dependence of ||T|| itself, making it even
    about alpha = -1/2 rather than affine.  The projection coefficient is
    the faithful affine observable.
    """

    alphas: tuple[float, ...]
    coefficients: tuple[float, ...]
    term_norms: tuple[float, ...]
    classical_norms: tuple[float, ...]
    full_norms: tuple[float, ...]
    remainder_norms: tuple[float, ...]
    fit: LineFit
    reports: tuple[ResidualReport, ...] = field(repr=False, compare=False, default=())


def alpha_sweep(
    snapshots: Sequence[PhaseSpaceField],
    alphas: Sequence[float],
    parallel: bool = False,
    params: PhysicalParams | None = None,
) -> AlphaSweepResult:
    """Evaluate the transformed residual across a shear-parameter sweep.

    ``alphas`` must be sorted ascending, contain at least three values, and
    include -1/2 (the predicted vanishing point must be probed, not merely
    extrapolated).  ``parallel`` evaluates the sweep points concurrently;
    results are assembled in input order either way, so reports are
    identical byte-for-byte.
    """
    alphas = tuple(float(a) for a in alphas)
    if len(alphas) < 3:
        raise ValueError("alpha sweep needs at least three alpha values")
    if any(b <= a for a, b in zip(alphas, alphas[1:])):
        raise ValueError("alphas must be sorted in strictly increasing order")
    if not any(abs(a + 0.5) < 1e-12 for a in alphas):
        raise ValueError("alpha sweep must include alpha = -1/2")
    if len(snapshots) == 3:
        _check_params(snapshots[1].params, params)

    def evaluate(alpha: float) -> ResidualReport:
        return hj_residual_transformed(snapshots, alpha)

    if parallel:
        with ThreadPoolExecutor(max_workers=min(len(alphas), 4)) as pool:
            reports = tuple(pool.map(evaluate, alphas))
    else:
        reports = tuple(evaluate(a) for a in alphas)

    coefficients = tuple(r.metadata["fitted_coefficient"] for r in reports)
    return AlphaSweepResult(
        alphas=alphas,
        coefficients=coefficients,
        term_norms=tuple(r.metadata["quantum_term_l2"] for r in reports),
        classical_norms=tuple(r.metadata["classical_form_l2"] for r in reports),
        full_norms=tuple(r.l2_norm for r in reports),
        remainder_norms=tuple(r.metadata["remainder_l2"] for r in reports),
        fit=fit_line(alphas, coefficients),
        reports=reports,
    )
