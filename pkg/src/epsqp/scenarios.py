"""Named verification scenarios with registered tolerances.

Each scenario builds its states, evaluates the relevant identities, and
returns a :class:`ScenarioReport` whose checks carry explicit tolerances
and pass/fail flags.  Everything a report contains is deterministic —
no timings, timestamps, or paths — so two runs of the same scenario
produce byte-identical JSON.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from .classical import (
    el_solve_q,
    el_solve_p,
    hamiltonian,
    legendre_residual,
    translate_initial_conditions,
)
from .eps_core import chi_build, eps_rhs_apply, expectation, polar_decompose_2d
from .numerics import (
    Grid2D,
    HarmonicPotential,
    LinearPotential,
    PhysicalParams,
    fd_mixed_partial,
    make_grid,
)
from .quantum_potential import (
    alpha_sweep,
    hj_residual_eps,
    hj_residual_p_harmonic,
    hj_residual_p_linear,
    hj_residual_q,
    polar_decompose,
    quantum_potential_p,
    quantum_potential_q,
)
from .reports import ResidualReport, fit_global_constant
from .states import (
    WaveFunction,
    ho_coherent_state,
    linear_potential_gaussian,
    splitstep_propagate,
    to_momentum_space,
)
from .transforms import apply_extended_transform, wigner_direct, wigner_equation_residual

REGISTRY_VERSION = "1.0"

# Analytic quantum-potential profiles are checked against closed forms at
# 1e-8 over the FULL amplitude mask.  The curvature estimator differentiates
# log R (see numerics.relative_curvature), so relative rounding of R maps to
# absolute rounding of log R and the conditioning is uniform in R: the bound
# holds even at the mask edge, where R is a millionth of its peak and any
# absolute error in a directly differentiated R would be amplified a
# millionfold.
TOL_QPOT = 1e-8


@dataclass(frozen=True)
class ScenarioConfig:
    """Numerical defaults shared by all scenarios (overridable via the CLI).

    The test-state parameters are chosen so that every estimator floor sits
    well under the registered tolerances:

    * ``q0 = 0.5`` keeps the Delta-t^2 floor of the time-difference
      estimators (proportional to the oscillation amplitude through
      d^3S/dt^3) a factor of a few below the 1e-5 residual bounds at
      dt = 1e-3;
    * ``sigma0 = sqrt(1/2)`` matches the harmonic ground-state width.  On
      the default grid this keeps the Gaussian tails below 1e-12 at the
      domain edges (periodic spectral arithmetic must not see the
      boundary) and keeps the Wigner function's momentum width resolved
      on the paired momentum grid; a unit-width state fails both by
      orders of magnitude and floors several residuals.
    """

    grid_n: int = 256
    q_min: float = -10.0
    q_max: float = 10.0
    dt: float = 1e-3
    alphas: tuple[float, ...] = (-1.0, -0.75, -0.5, -0.25, 0.0)
    mass: float = 1.0
    hbar: float = 1.0
    spring_k: float = 1.0
    slope_b: float = 1.0
    q0: float = 0.5
    p0: float = 0.0
    sigma0: float = math.sqrt(0.5)
    eval_time: float = 0.4
    parallel: bool = False


@dataclass(frozen=True)
class Check:
    """One tolerance check: ``passed = compare(value, tolerance)``."""

    name: str
    value: float
    tolerance: float
    comparator: str
    passed: bool


_COMPARATORS: dict[str, Callable[[float, float], bool]] = {
    "<": lambda v, t: v < t,
    "<=": lambda v, t: v <= t,
    ">": lambda v, t: v > t,
    ">=": lambda v, t: v >= t,
}


def make_check(name: str, value: float, tolerance: float, comparator: str = "<") -> Check:
    if comparator not in _COMPARATORS:
        raise ValueError(f"unknown comparator {comparator!r}")
    value = float(value)
    tolerance = float(tolerance)
    return Check(name, value, tolerance, comparator, bool(_COMPARATORS[comparator](value, tolerance)))


@dataclass
class ScenarioReport:
    """Everything a scenario run produced, minus anything nondeterministic."""

    name: str
    config: ScenarioConfig
    checks: list[Check] = field(default_factory=list)
    residuals: list[ResidualReport] = field(default_factory=list)
    constants: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    field_bundles: dict = field(default_factory=dict, repr=False)
    subreports: list["ScenarioReport"] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks) and all(s.passed for s in self.subreports)

    def to_dict(self) -> dict:
        return {
            "registry_version": REGISTRY_VERSION,
            "scenario": self.name,
            "config": asdict(self.config),
            "checks": [asdict(c) for c in self.checks],
            "residuals": [
                {
                    "name": r.name,
                    "l2_norm": r.l2_norm,
                    "max_norm": r.max_norm,
                    "masked_fraction": r.masked_fraction,
                    "metadata": r.metadata,
                }
                for r in self.residuals
            ],
            "constants": self.constants,
            "details": self.details,
            "passed": self.passed,
            "subreports": [s.to_dict() for s in self.subreports],
        }


def to_json(report: ScenarioReport) -> str:
    """Deterministic JSON rendering (sorted keys, fixed indentation)."""
    return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# shared construction helpers
# ---------------------------------------------------------------------------


def _harmonic_params(cfg: ScenarioConfig) -> PhysicalParams:
    return PhysicalParams(cfg.mass, cfg.hbar, HarmonicPotential(cfg.spring_k))


def _linear_params(cfg: ScenarioConfig) -> PhysicalParams:
    return PhysicalParams(cfg.mass, cfg.hbar, LinearPotential(cfg.slope_b))


def _grids(cfg: ScenarioConfig, hbar: float, n: int | None = None):
    g = make_grid(n or cfg.grid_n, cfg.q_min, cfg.q_max)
    return g, Grid2D.paired(g, hbar)


def _coherent_triplet(grid, params, q0, p0, t, dt):
    return [ho_coherent_state(grid, params, q0, p0, tt) for tt in (t - dt, t, t + dt)]


def _linear_triplet(grid, params, q0, p0, sigma0, t, dt):
    return [
        linear_potential_gaussian(grid, params, q0, p0, sigma0, tt)
        for tt in (t - dt, t, t + dt)
    ]


def _chi(psi: WaveFunction, grid2: Grid2D):
    return chi_build(psi, to_momentum_space(psi), grid2)


def _chi_triplet(psis, grid2):
    return [_chi(psi, grid2) for psi in psis]


def _order_from_halving(coarse: float, fine: float) -> float:
    """Observed convergence order from residuals at dt and dt/2."""
    if fine == 0.0:
        return math.inf
    return math.log2(coarse / fine)


# ---------------------------------------------------------------------------
# scenarios
# ---------------------------------------------------------------------------


def scenario_wigner_equivalence(cfg: ScenarioConfig) -> ScenarioReport:
    """Shear at alpha = -1/2 versus the direct Wigner construction.

    The two routes agree up to one global constant; the constant is fitted,
    compared against 1/sqrt(2 pi hbar), and checked for stability across
    grid resolutions.  Wigner marginals and the ground-state closed form
    are verified on the side.
    """
    params = _harmonic_params(cfg)
    report = ScenarioReport("wigner-equivalence", cfg)

    def fitted_constant(n: int):
        g, g2 = _grids(cfg, params.hbar, n)
        psi = ho_coherent_state(g, params, cfg.q0, cfg.p0, cfg.eval_time)
        chi = _chi(psi, g2)
        sheared = apply_extended_transform(chi, -0.5).values
        w = np.real(wigner_direct(psi, g2).values)
        c = fit_global_constant(sheared, w)
        deviation = float(
            np.linalg.norm(sheared - c * w) / np.linalg.norm(sheared)
        )
        return c, deviation, g, g2, psi, w

    c_mid, deviation, g, g2, psi, w = fitted_constant(cfg.grid_n)
    report.checks.append(make_check("wigner-shear-rel-l2", deviation, 1e-8))

    sizes = sorted({max(cfg.grid_n // 2, 8), cfg.grid_n, cfg.grid_n * 2})
    constants = {n: (c_mid if n == cfg.grid_n else fitted_constant(n)[0]) for n in sizes}
    spread = max(
        abs(constants[a] - constants[b]) for a in sizes for b in sizes if a < b
    )
    report.checks.append(make_check("wigner-constant-stability", spread, 1e-6))

    reference = 1.0 / math.sqrt(2.0 * math.pi * params.hbar)
    report.checks.append(
        make_check("wigner-constant-vs-reference", abs(c_mid - reference), 1e-6)
    )
    report.constants = {
        "fitted_constant_real": float(c_mid.real),
        "fitted_constant_imag": float(c_mid.imag),
        "reference_constant": reference,
        **{
            f"fitted_constant_abs_n{n}": float(abs(constants[n])) for n in sizes
        },
    }

    # ground-state closed form: W(p, q) = 2 exp(-q^2 - p^2) in natural units
    # (general: 2 exp(-m w q^2 / hbar - p^2 / (m w hbar))), peak value 2.
    psi_g = ho_coherent_state(g, params, 0.0, 0.0, 0.0)
    w_g = np.real(wigner_direct(psi_g, g2).values)
    P, Q = g2.meshes()
    m, hbar, w_freq = params.mass, params.hbar, params.omega
    w_exact = 2.0 * np.exp(-m * w_freq * Q**2 / hbar - P**2 / (m * w_freq * hbar))
    report.checks.append(
        make_check("wigner-groundstate-profile-max-err", float(np.max(np.abs(w_g - w_exact))), 1e-8)
    )
    i_p0 = int(np.argmin(np.abs(g2.p_axis.points)))
    i_q0 = int(np.argmin(np.abs(g.points)))
    report.checks.append(
        make_check("wigner-groundstate-peak-err", abs(float(w_g[i_p0, i_q0]) - 2.0), 1e-8)
    )

    # marginals of the coherent-state Wigner function: integrating out p
    # leaves 2 pi |psi(q)|^2, integrating out q leaves 2 pi |phi(p)|^2
    # (the 2 pi hbar of the correlation integral divided by the hbar of
    # the tau measure).
    phi = to_momentum_space(psi)
    marg_q = w.sum(axis=0) * g2.p_axis.spacing
    marg_p = w.sum(axis=1) * g.spacing
    dens_q = 2.0 * np.pi * np.abs(psi.values) ** 2
    dens_p = 2.0 * np.pi * np.abs(phi.values) ** 2
    report.checks.append(
        make_check(
            "wigner-marginal-q-rel-err",
            float(np.max(np.abs(marg_q - dens_q)) / np.max(dens_q)),
            1e-8,
        )
    )
    report.checks.append(
        make_check(
            "wigner-marginal-p-rel-err",
            float(np.max(np.abs(marg_p - dens_p)) / np.max(dens_p)),
            1e-8,
        )
    )

    report.field_bundles = {
        "wigner": {
            "kind": "2d",
            "p": g2.p_axis.points,
            "q": g.points,
            "values": w,
            "mask": None,
        },
        "sheared-chi": {
            "kind": "2d",
            "p": g2.p_axis.points,
            "q": g.points,
            "values": apply_extended_transform(_chi(psi, g2), -0.5).values,
            "mask": None,
        },
    }
    return report


def scenario_alpha_sweep(cfg: ScenarioConfig) -> ScenarioReport:
    """Coefficient law of the quantum term under the shear family.

    The measured quantum-term coefficient is affine in alpha with unit
    slope, crossing zero at alpha = -1/2; the literal term norm vanishes
    there identically.  The crossing must be stable under grid refinement.
    """
    params = _harmonic_params(cfg)
    report = ScenarioReport("alpha-sweep", cfg)

    def run_sweep(n: int):
        g, g2 = _grids(cfg, params.hbar, n)
        psis = _coherent_triplet(g, params, cfg.q0, cfg.p0, cfg.eval_time, cfg.dt)
        return alpha_sweep(_chi_triplet(psis, g2), cfg.alphas, parallel=cfg.parallel)

    sweep = run_sweep(cfg.grid_n)
    report.checks.append(make_check("alpha-sweep-fit-r2", sweep.fit.r_squared, 0.999, ">"))
    report.checks.append(
        make_check("alpha-sweep-zero-crossing-err", abs(sweep.fit.zero_crossing + 0.5), 1e-3)
    )

    idx_half = min(range(len(sweep.alphas)), key=lambda i: abs(sweep.alphas[i] + 0.5))
    if any(a == 0.0 for a in sweep.alphas):
        idx_ref = sweep.alphas.index(0.0)
    else:
        idx_ref = max(range(len(sweep.alphas)), key=lambda i: sweep.term_norms[i])
    ratio = (
        sweep.term_norms[idx_half] / sweep.term_norms[idx_ref]
        if sweep.term_norms[idx_ref] > 0
        else math.inf
    )
    report.checks.append(make_check("alpha-sweep-vanishing-ratio", ratio, 1e-6))
    report.checks.append(
        make_check("alpha-sweep-full-residual-max", max(sweep.full_norms), 1e-5)
    )
    report.checks.append(
        make_check(
            "alpha-sweep-classical-at-minus-half",
            sweep.classical_norms[idx_half],
            1e-5,
        )
    )
    if any(a == -0.25 for a in sweep.alphas):
        report.checks.append(
            make_check(
                "alpha-sweep-classical-needed-off-center",
                sweep.classical_norms[sweep.alphas.index(-0.25)],
                1e-3,
                ">",
            )
        )

    if cfg.grid_n >= 16:
        sweep_half = run_sweep(cfg.grid_n // 2)
        report.checks.append(
            make_check(
                "alpha-sweep-grid-stability",
                abs(sweep.fit.zero_crossing - sweep_half.fit.zero_crossing),
                1e-4,
            )
        )

    report.constants = {
        "slope": sweep.fit.slope,
        "intercept": sweep.fit.intercept,
        "r_squared": sweep.fit.r_squared,
        "zero_crossing": sweep.fit.zero_crossing,
    }
    report.details = {
        "alphas": [float(a) for a in sweep.alphas],
        "coefficients": [float(v) for v in sweep.coefficients],
        "term_norms": [float(v) for v in sweep.term_norms],
        "classical_norms": [float(v) for v in sweep.classical_norms],
        "full_norms": [float(v) for v in sweep.full_norms],
        "remainder_norms": [float(v) for v in sweep.remainder_norms],
    }
    report.residuals = list(sweep.reports)
    return report


def scenario_harmonic_coherent(cfg: ScenarioConfig) -> ScenarioReport:
    """Harmonic-oscillator battery: analytic quantum potentials, 1D
    Hamilton-Jacobi residuals with convergence order, the Wigner transport
    equation, the averaging rule, and split-step cross-checks."""
    params = _harmonic_params(cfg)
    g, g2 = _grids(cfg, params.hbar)
    m, hbar, w_freq = params.mass, params.hbar, params.omega
    k = params.potential.k
    report = ScenarioReport("harmonic-coherent", cfg)

    # --- analytic quantum potentials on the ground state -------------------
    psi_g = ho_coherent_state(g, params, 0.0, 0.0, 0.0)
    pf_q = polar_decompose(psi_g)
    prof_q = quantum_potential_q(pf_q)
    q_exact = 0.5 * hbar * w_freq - 0.5 * m * w_freq**2 * g.points**2
    err_q = np.abs(prof_q.values - q_exact)
    report.checks.append(
        make_check(
            "quantum-potential-q-max-err",
            float(np.max(err_q[prof_q.mask])),
            TOL_QPOT,
        )
    )

    phi_g = to_momentum_space(psi_g)
    pf_p = polar_decompose(phi_g)
    prof_p = quantum_potential_p(pf_p)
    p_exact = 0.5 * hbar * w_freq - pf_p.grid.points**2 / (2.0 * m)
    err_p = np.abs(prof_p.values - p_exact)
    report.checks.append(
        make_check(
            "quantum-potential-p-max-err",
            float(np.max(err_p[prof_p.mask])),
            TOL_QPOT,
        )
    )

    # --- 1D modified Hamilton-Jacobi residuals + convergence order ---------
    def hj_pair(dt):
        psis = _coherent_triplet(g, params, cfg.q0, cfg.p0, cfg.eval_time, dt)
        r_q = hj_residual_q(psis)
        r_p = hj_residual_p_harmonic([to_momentum_space(p) for p in psis])
        return r_q, r_p

    r_q, r_p = hj_pair(cfg.dt)
    r_q_half, r_p_half = hj_pair(cfg.dt / 2.0)
    report.residuals += [r_q, r_p]
    report.checks.append(make_check("hj-q-l2", r_q.l2_norm, 1e-5))
    report.checks.append(
        make_check("hj-q-halving-ratio", r_q.l2_norm / r_q_half.l2_norm, 3.5, ">=")
    )
    report.checks.append(make_check("hj-p-harmonic-l2", r_p.l2_norm, 1e-5))
    report.checks.append(
        make_check("hj-p-halving-ratio", r_p.l2_norm / r_p_half.l2_norm, 3.5, ">=")
    )

    # --- term deletion: the classical-form residual IS minus the quantum
    # potential (stationary state: time phase supplies -E, potential the
    # rest) ------------------------------------------------------------------
    psis_g = _coherent_triplet(g, params, 0.0, 0.0, cfg.eval_time, cfg.dt)
    r_gq = hj_residual_q(psis_g)
    deletion = r_gq.fields["classical_form"] + r_gq.fields["quantum_potential"]
    mask_g = r_gq.fields["mask"]
    report.checks.append(
        make_check(
            "hj-q-term-deletion-pointwise",
            float(np.max(np.abs(deletion[mask_g]))),
            1e-6,
        )
    )

    # --- Wigner transport equation + convergence order ----------------------
    def wigner_res(dt):
        psis = _coherent_triplet(g, params, cfg.q0, cfg.p0, cfg.eval_time, dt)
        return wigner_equation_residual(psis, g2)

    r_w = wigner_res(cfg.dt)
    r_w_half = wigner_res(cfg.dt / 2.0)
    report.residuals.append(r_w)
    report.checks.append(make_check("wigner-eq-harmonic-l2", r_w.l2_norm, 1e-4))
    report.checks.append(
        make_check(
            "wigner-eq-harmonic-order",
            _order_from_halving(r_w.l2_norm, r_w_half.l2_norm),
            1.9,
            ">=",
        )
    )

    # --- averaging rule ------------------------------------------------------
    chi_g = _chi(psi_g, g2)
    P, Q = g2.meshes()
    q2_val = expectation(Q**2, chi_g)
    h_val = expectation(P**2 / (2.0 * m) + 0.5 * k * Q**2, chi_g)
    report.checks.append(
        make_check("expectation-q2-ground-err", abs(q2_val - hbar / (2.0 * m * w_freq)), 1e-8)
    )
    report.checks.append(
        make_check("expectation-energy-ground-err", abs(h_val - 0.5 * hbar * w_freq), 1e-8)
    )

    period = 2.0 * math.pi / w_freq
    worst_track = 0.0
    for i in range(10):
        t_i = i * period / 10.0
        psi_i = ho_coherent_state(g, params, cfg.q0, cfg.p0, t_i)
        chi_i = _chi(psi_i, g2)
        q_c = cfg.q0 * math.cos(w_freq * t_i) + cfg.p0 / (m * w_freq) * math.sin(w_freq * t_i)
        p_c = cfg.p0 * math.cos(w_freq * t_i) - m * w_freq * cfg.q0 * math.sin(w_freq * t_i)
        worst_track = max(
            worst_track,
            abs(expectation(Q, chi_i) - q_c),
            abs(expectation(P, chi_i) - p_c),
        )
    report.checks.append(make_check("expectation-trajectory-tracking", worst_track, 1e-7))

    # --- split-step cross-checks ---------------------------------------------
    psi0 = ho_coherent_state(g, params, cfg.q0, cfg.p0, 0.0)
    t_half_period = math.pi / w_freq
    evolved = splitstep_propagate(psi0, t_half_period, dt=1e-4)
    analytic = ho_coherent_state(g, params, cfg.q0, cfg.p0, t_half_period)
    diff = float(
        np.sqrt(np.sum(np.abs(evolved.values - analytic.values) ** 2) * g.spacing)
    )
    report.checks.append(make_check("coherent-splitstep-l2", diff, 1e-8))

    ground_evolved = splitstep_propagate(psi_g, period, dt=1e-4)
    overlap = abs(
        complex(np.sum(np.conj(psi_g.values) * ground_evolved.values) * g.spacing)
    )
    report.checks.append(make_check("ground-period-overlap", overlap, 1.0 - 1e-8, ">"))

    report.field_bundles = {
        "quantum-potential-q": {
            "kind": "1d",
            "axis_name": "q",
            "axis": g.points,
            "values": prof_q.values,
            "mask": prof_q.mask,
        },
        "quantum-potential-p": {
            "kind": "1d",
            "axis_name": "p",
            "axis": pf_p.grid.points,
            "values": prof_p.values,
            "mask": prof_p.mask,
        },
    }
    return report


def scenario_linear_gaussian(cfg: ScenarioConfig) -> ScenarioReport:
    """Linear-potential battery: position-space Hamilton-Jacobi residual,
    Wigner transport, and a split-step cross-check on the drifting state."""
    params = _linear_params(cfg)
    g, g2 = _grids(cfg, params.hbar)
    report = ScenarioReport("linear-gaussian", cfg)

    def hj_res(dt):
        psis = _linear_triplet(g, params, cfg.q0, cfg.p0, cfg.sigma0, cfg.eval_time, dt)
        return hj_residual_q(psis)

    r = hj_res(cfg.dt)
    r_half = hj_res(cfg.dt / 2.0)
    report.residuals.append(r)
    report.checks.append(make_check("hj-q-linear-l2", r.l2_norm, 1e-5))
    report.checks.append(
        make_check("hj-q-linear-halving-ratio", r.l2_norm / r_half.l2_norm, 3.5, ">=")
    )

    def wigner_res(dt):
        psis = _linear_triplet(g, params, cfg.q0, cfg.p0, cfg.sigma0, cfg.eval_time, dt)
        return wigner_equation_residual(psis, g2)

    r_w = wigner_res(cfg.dt)
    r_w_half = wigner_res(cfg.dt / 2.0)
    report.residuals.append(r_w)
    report.checks.append(make_check("wigner-eq-linear-l2", r_w.l2_norm, 1e-4))
    report.checks.append(
        make_check(
            "wigner-eq-linear-order",
            _order_from_halving(r_w.l2_norm, r_w_half.l2_norm),
            1.9,
            ">=",
        )
    )

    psi0 = linear_potential_gaussian(g, params, cfg.q0, cfg.p0, cfg.sigma0, 0.0)
    evolved = splitstep_propagate(psi0, 0.5, dt=1e-4)
    analytic = linear_potential_gaussian(g, params, cfg.q0, cfg.p0, cfg.sigma0, 0.5)
    diff = float(
        np.sqrt(np.sum(np.abs(evolved.values - analytic.values) ** 2) * g.spacing)
    )
    report.checks.append(make_check("linear-splitstep-l2", diff, 1e-8))

    psi_t = linear_potential_gaussian(g, params, cfg.q0, cfg.p0, cfg.sigma0, cfg.eval_time)
    b, m = cfg.slope_b, cfg.mass
    q_c = cfg.q0 + cfg.p0 * cfg.eval_time / m - 0.5 * b * cfg.eval_time**2 / m
    mean_q = float(np.sum(g.points * np.abs(psi_t.values) ** 2) * g.spacing)
    report.checks.append(make_check("linear-center-tracking", abs(mean_q - q_c), 1e-8))

    report.field_bundles = {
        "quantum-potential-q": {
            "kind": "1d",
            "axis_name": "q",
            "axis": g.points,
            "values": quantum_potential_q(polar_decompose(psi_t)).values,
            "mask": polar_decompose(psi_t).mask,
        },
    }
    return report


def scenario_pspace_linear(cfg: ScenarioConfig) -> ScenarioReport:
    """The linear potential's momentum-space equation is classical already:
    the Hamilton-Jacobi residual with NO quantum term sits at the
    time-difference floor."""
    params = _linear_params(cfg)
    g, _ = _grids(cfg, params.hbar)
    report = ScenarioReport("pspace-linear", cfg)

    def res(dt):
        psis = _linear_triplet(g, params, cfg.q0, cfg.p0, cfg.sigma0, cfg.eval_time, dt)
        return hj_residual_p_linear([to_momentum_space(p) for p in psis])

    r = res(cfg.dt)
    r_half = res(cfg.dt / 2.0)
    report.residuals.append(r)
    report.checks.append(make_check("pspace-linear-classical-l2", r.l2_norm, 1e-5))
    report.checks.append(
        make_check("pspace-linear-halving-ratio", r.l2_norm / r_half.l2_norm, 3.5, ">=")
    )
    return report


def scenario_eps_residuals(cfg: ScenarioConfig) -> ScenarioReport:
    """Phase-space identities for the product distribution chi: the
    dynamical equation itself, the modified Hamilton-Jacobi residuals for
    both potentials, and the separable structure of amplitude and action."""
    report = ScenarioReport("eps-residuals", cfg)

    # --- harmonic -----------------------------------------------------------
    params = _harmonic_params(cfg)
    g, g2 = _grids(cfg, params.hbar)
    hbar = params.hbar

    def chi_snaps_harmonic(dt):
        psis = _coherent_triplet(g, params, cfg.q0, cfg.p0, cfg.eval_time, dt)
        return _chi_triplet(psis, g2)

    snaps = chi_snaps_harmonic(cfg.dt)
    r_h = hj_residual_eps(snaps)
    r_h_half = hj_residual_eps(chi_snaps_harmonic(cfg.dt / 2.0))
    report.residuals.append(r_h)
    report.checks.append(make_check("eps-hj-harmonic-l2", r_h.l2_norm, 1e-5))
    report.checks.append(
        make_check("eps-hj-harmonic-halving-ratio", r_h.l2_norm / r_h_half.l2_norm, 3.5, ">=")
    )

    # dynamical equation: i hbar d(chi)/dt = H' chi at the operator level
    minus, center, plus = snaps
    lhs = 1j * hbar * (plus.values - minus.values) / (2.0 * cfg.dt)
    rhs = eps_rhs_apply(center).values
    evo_l2 = float(np.sqrt(np.sum(np.abs(lhs - rhs) ** 2) * g2.cell))
    report.checks.append(make_check("eps-evolution-residual-l2", evo_l2, 1e-6))

    # stationary pair: energy phases cancel in psi phi*, so H' chi = 0
    psi_g = ho_coherent_state(g, params, 0.0, 0.0, 0.0)
    chi_g = _chi(psi_g, g2)
    stationary_max = float(np.max(np.abs(eps_rhs_apply(chi_g).values)))
    report.checks.append(make_check("eps-stationary-max", stationary_max, 1e-8))

    # --- separable structure (amplitude factorisation, action additivity) ---
    ea = polar_decompose_2d(center)
    pf_q = polar_decompose(ho_coherent_state(g, params, cfg.q0, cfg.p0, cfg.eval_time))
    phi_c = to_momentum_space(ho_coherent_state(g, params, cfg.q0, cfg.p0, cfg.eval_time))
    pf_p = polar_decompose(phi_c)

    outer = pf_q.R[None, :] * pf_p.R[:, None]
    joint = ea.mask & pf_p.mask[:, None] & pf_q.mask[None, :]
    fact_err = float(np.max(np.abs(ea.R - outer)[joint] / outer[joint]))
    report.checks.append(make_check("eps-amplitude-factorization", fact_err, 1e-10))

    P, Q = g2.meshes()
    additivity = ea.S + P * Q - pf_q.S[None, :] - pf_p.S[:, None]
    spread = float(np.ptp(additivity[joint]))
    report.checks.append(make_check("eps-phase-additivity-spread", spread, 1e-7))

    mixed, valid = fd_mixed_partial(ea.S + P * Q, g2, ea.mask)
    report.checks.append(
        make_check("eps-action-mixed-partial", float(np.max(np.abs(mixed[valid]))), 1e-6)
    )

    # the q-curvature quantum term of the 2D identity equals the 1D quantum
    # potential of the psi factor, broadcast over p
    q_term = r_h.fields["q_term"]
    q_1d = quantum_potential_q(pf_q).values
    sep_err = np.abs(q_term - q_1d[None, :])
    full_joint = joint & r_h.fields["mask"]
    report.checks.append(
        make_check(
            "eps-qterm-separability",
            float(np.max(sep_err[full_joint])),
            TOL_QPOT,
        )
    )

    # --- linear --------------------------------------------------------------
    params_l = _linear_params(cfg)
    g_l, g2_l = _grids(cfg, params_l.hbar)

    def chi_snaps_linear(dt):
        psis = _linear_triplet(g_l, params_l, cfg.q0, cfg.p0, cfg.sigma0, cfg.eval_time, dt)
        return _chi_triplet(psis, g2_l)

    r_l = hj_residual_eps(chi_snaps_linear(cfg.dt))
    r_l_half = hj_residual_eps(chi_snaps_linear(cfg.dt / 2.0))
    report.residuals.append(r_l)
    report.checks.append(make_check("eps-hj-linear-l2", r_l.l2_norm, 1e-5))
    report.checks.append(
        make_check("eps-hj-linear-halving-ratio", r_l.l2_norm / r_l_half.l2_norm, 3.5, ">=")
    )

    report.field_bundles = {
        "eps-quantum-q-term": {
            "kind": "2d",
            "p": g2.p_axis.points,
            "q": g.points,
            "values": q_term,
            "mask": r_h.fields["mask"],
        },
    }
    return report


def scenario_classical_appendix(cfg: ScenarioConfig) -> ScenarioReport:
    """Dual-Lagrangian classical checks: trajectories solved in position and
    momentum space describe one motion, and the Legendre identities hold to
    rounding at arbitrary sample points."""
    params = _harmonic_params(cfg)
    m, k = cfg.mass, cfg.spring_k
    w_freq = params.omega
    period = 2.0 * math.pi / w_freq
    report = ScenarioReport("classical-appendix", cfg)

    tr_q = el_solve_q(params, 0.0, 1.0, period, 1e-3)
    q_exact = (1.0 / w_freq) * np.sin(w_freq * tr_q.times)
    qdot_exact = np.cos(w_freq * tr_q.times)
    err_q = max(
        float(np.max(np.abs(tr_q.coord - q_exact))),
        float(np.max(np.abs(tr_q.velocity - qdot_exact))),
    )
    report.checks.append(make_check("el-q-max-err", err_q, 1e-8))

    p0, pdot0 = translate_initial_conditions(params, 0.0, 1.0)
    tr_p = el_solve_p(params, p0, pdot0, period, 1e-3)
    p_exact = m * np.cos(w_freq * tr_p.times)
    pdot_exact = -m * w_freq * np.sin(w_freq * tr_p.times)
    err_p = max(
        float(np.max(np.abs(tr_p.coord - p_exact))),
        float(np.max(np.abs(tr_p.velocity - pdot_exact))),
    )
    report.checks.append(make_check("el-p-max-err", err_p, 1e-8))

    cross = max(
        float(np.max(np.abs(tr_p.coord - m * tr_q.velocity))),
        float(np.max(np.abs(tr_p.velocity + k * tr_q.coord))),
    )
    report.checks.append(make_check("el-cross-consistency", cross, 1e-7))

    energy_q = hamiltonian(params, tr_q.coord, m * tr_q.velocity)
    energy_p = tr_p.coord**2 / (2.0 * m) + tr_p.velocity**2 / (2.0 * k)
    drift = max(
        float(np.max(np.abs(energy_q - energy_q[0]))),
        float(np.max(np.abs(energy_p - energy_p[0]))),
    )
    report.checks.append(make_check("el-energy-drift", drift, 1e-9))

    rng = np.random.default_rng(20240801)
    samples = rng.uniform(-2.0, 2.0, size=(100, 2))
    res_h = legendre_residual(params, [tuple(s) for s in samples])
    report.checks.append(make_check("legendre-residual-harmonic", res_h, 1e-13))
    res_l = legendre_residual(_linear_params(cfg), [tuple(s) for s in samples])
    report.checks.append(make_check("legendre-residual-linear", res_l, 1e-13))

    return report


def scenario_all(cfg: ScenarioConfig) -> ScenarioReport:
    """Every scenario in registry order, aggregated into one report."""
    report = ScenarioReport("all", cfg)
    for name in SCENARIO_ORDER:
        report.subreports.append(REGISTRY[name][0](cfg))
    return report


SCENARIO_ORDER = (
    "wigner-equivalence",
    "alpha-sweep",
    "harmonic-coherent",
    "linear-gaussian",
    "pspace-linear",
    "eps-residuals",
    "classical-appendix",
)

REGISTRY: dict[str, tuple[Callable[[ScenarioConfig], ScenarioReport], str]] = {
    "wigner-equivalence": (
        scenario_wigner_equivalence,
        "shear at alpha=-1/2 vs direct Wigner construction (constant fitted)",
    ),
    "alpha-sweep": (
        scenario_alpha_sweep,
        "quantum-term coefficient law across the shear family",
    ),
    "harmonic-coherent": (
        scenario_harmonic_coherent,
        "harmonic oscillator: quantum potentials, HJ residuals, averaging rule",
    ),
    "linear-gaussian": (
        scenario_linear_gaussian,
        "linear potential: HJ residual, Wigner transport, split-step cross-check",
    ),
    "pspace-linear": (
        scenario_pspace_linear,
        "momentum-space equation for the linear potential is classical already",
    ),
    "eps-residuals": (
        scenario_eps_residuals,
        "phase-space dynamical equation and separable-structure checks",
    ),
    "classical-appendix": (
        scenario_classical_appendix,
        "dual-Lagrangian trajectories and Legendre identities",
    ),
    "all": (scenario_all, "every scenario in sequence"),
}


def run_scenario(name: str, cfg: ScenarioConfig) -> ScenarioReport:
    """Run a registered scenario; KeyError for unknown names."""
    if name not in REGISTRY:
        raise KeyError(name)
    return REGISTRY[name][0](cfg)
