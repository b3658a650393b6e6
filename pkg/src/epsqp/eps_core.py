"""Phase-space distribution fields and their evolution operators.

The central object is the product distribution

    chi(p, q, t) = psi(q, t) * conj(phi(p, t)) * exp(-i p q / hbar)

built from a position-space wavefunction and its momentum-space transform.
``chi`` evolves under a phase-space Hamiltonian operator that is first order
in time, and applying a shear transform to it produces a one-parameter
family of distributions (the Wigner function among them).

:class:`ExtendedHamiltonian` captures every evolution operator in that
family for linear and harmonic potentials through five coefficients:

    H' = A pi_q^2 + B p pi_q + C pi_p^2 + (D q + E) pi_p

where ``pi_q -> -i hbar d/dq`` and ``pi_p -> -i hbar d/dp`` act on the
distribution.  The untransformed evolution is the ``alpha = 0`` member; at
``alpha = -1/2`` the second-derivative coefficients A and C vanish and the
equation takes the classical transport form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .numerics import (
    Grid2D,
    GridError,
    HarmonicPotential,
    LinearPotential,
    PhysicalParams,
    amplitude_mask,
    paired_momentum_grid,
    spectral_derivative_2d,
    unwrap_phase_2d,
)
from .states import WaveFunction

_TIME_ATOL = 1e-12

#: Valid provenance tags for phase-space fields.
FIELD_KINDS = ("chi", "f", "wigner", "transformed")


@dataclass(frozen=True)
class PhaseSpaceField:
    """Complex field on a ``(p, q)`` grid, tagged with time and provenance.

    ``kind`` is one of ``"chi"`` (product distribution with its ``exp(-ipq/
    hbar)`` phase), ``"f"`` (bare separable product), ``"wigner"`` (direct
    Wigner construction), or ``"transformed"`` (a shear applied), in which
    case ``alpha`` records the accumulated shear parameter.
    """

    values: NDArray[np.complex128]
    grid: Grid2D
    t: float
    params: PhysicalParams
    kind: str = "chi"
    alpha: float | None = None

    def __post_init__(self):
        if self.kind not in FIELD_KINDS:
            raise ValueError(f"kind must be one of {FIELD_KINDS}, got {self.kind!r}")
        if self.kind == "transformed" and self.alpha is None:
            raise ValueError("transformed fields must record their alpha")
        if self.kind != "transformed" and self.alpha is not None:
            raise ValueError(f"{self.kind!r} fields do not carry an alpha")
        values = np.asarray(self.values, dtype=complex)
        if values.shape != self.grid.shape:
            raise GridError(
                f"values shape {values.shape} does not match grid {self.grid.shape}"
            )
        object.__setattr__(self, "values", values)

    def norm(self) -> float:
        """Discrete L2 norm with the phase-space cell measure."""
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * self.grid.cell))


def chi_build(psi: WaveFunction, phi: WaveFunction, grid: Grid2D) -> PhaseSpaceField:
    """Assemble ``chi(p, q) = psi(q) conj(phi(p)) exp(-i p q / hbar)``.

    ``psi`` must live on ``grid.q_axis``, ``phi`` on ``grid.p_axis``, the
    two axes must be Fourier-paired, and the states must agree on time and
    physical parameters.
    """
    if psi.space != "q" or phi.space != "p":
        raise ValueError("chi_build needs a position-space and a momentum-space state")
    if psi.params != phi.params:
        raise ValueError("states carry different physical parameters")
    if abs(psi.t - phi.t) > _TIME_ATOL:
        raise ValueError(f"states are at different times: {psi.t} vs {phi.t}")
    if psi.grid != grid.q_axis:
        raise GridError("position state does not live on the q axis of the grid")
    if phi.grid != grid.p_axis:
        raise GridError("momentum state does not live on the p axis of the grid")
    if grid.p_axis != paired_momentum_grid(grid.q_axis, psi.params.hbar):
        raise GridError("grid axes are not Fourier-paired")

    P, Q = grid.meshes()
    values = (
        psi.values[None, :]
        * np.conj(phi.values)[:, None]
        * np.exp(-1j * P * Q / psi.params.hbar)
    )
    return PhaseSpaceField(values, grid, psi.t, psi.params, kind="chi")


# ---------------------------------------------------------------------------
# extended Hamiltonian family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtendedHamiltonian:
    """One member of ``H' = A pi_q^2 + B p pi_q + C pi_p^2 + (D q + E) pi_p``.

    ``from_params(params, alpha)`` builds the operator governing the
    alpha-sheared distribution; ``alpha = 0`` is the untransformed
    phase-space Hamiltonian.  A and C carry the factor ``(1 + 2 alpha)``,
    so both vanish at ``alpha = -1/2`` and the evolution reduces to
    ``(p/m) pi_q - V'(q) pi_p`` — the classical transport operator.
    """

    A: float
    B: float
    C: float
    D: float
    E: float
    potential_kind: str
    alpha: float

    @classmethod
    def from_params(cls, params: PhysicalParams, alpha: float = 0.0) -> "ExtendedHamiltonian":
        m = params.mass
        pot = params.potential
        if isinstance(pot, LinearPotential):
            return cls(
                A=(1.0 + 2.0 * alpha) / (2.0 * m),
                B=1.0 / m,
                C=0.0,
                D=0.0,
                E=-pot.b,
                potential_kind="linear",
                alpha=alpha,
            )
        if isinstance(pot, HarmonicPotential):
            return cls(
                A=(1.0 + 2.0 * alpha) / (2.0 * m),
                B=1.0 / m,
                C=-(1.0 + 2.0 * alpha) * pot.k / 2.0,
                D=-pot.k,
                E=0.0,
                potential_kind="harmonic",
                alpha=alpha,
            )
        raise ValueError(f"unsupported potential {pot!r}")

    def terms(self) -> dict[str, float]:
        """Nonzero monomial coefficients by name (for reports)."""
        named = {
            "pi_q^2": self.A,
            "p pi_q": self.B,
            "pi_p^2": self.C,
            "q pi_p": self.D,
            "pi_p": self.E,
        }
        return {name: val for name, val in named.items() if val != 0.0}

    def evaluate_classical(self, S_q, S_p, P, Q):
        """The Hamilton-Jacobi (gradient) part of the evolution identity.

        With ``S`` the phase action of the distribution, this is H' with
        ``pi_q -> dS/dq`` and ``pi_p -> dS/dp``:

            A S_q^2 + B p S_q + C S_p^2 + (D q + E) S_p

        the combination a purely classical action balances against
        ``-dS/dt``.
        """
        return (
            self.A * S_q**2
            + self.B * P * S_q
            + self.C * S_p**2
            + (self.D * Q + self.E) * S_p
        )

    def apply(self, field: PhaseSpaceField) -> NDArray[np.complex128]:
        """Apply the operator to the field's raw values:

            H' f = -hbar^2 A f_qq - i hbar B p f_q
                   - hbar^2 C f_pp - i hbar (D q + E) f_p
        """
        hbar = field.params.hbar
        grid = field.grid
        P, Q = grid.meshes()
        out = np.zeros(grid.shape, dtype=complex)
        if self.A != 0.0:
            out -= hbar**2 * self.A * spectral_derivative_2d(field.values, grid, axis=1, order=2)
        if self.B != 0.0:
            out -= 1j * hbar * self.B * P * spectral_derivative_2d(field.values, grid, axis=1, order=1)
        if self.C != 0.0:
            out -= hbar**2 * self.C * spectral_derivative_2d(field.values, grid, axis=0, order=2)
        if self.D != 0.0 or self.E != 0.0:
            out -= 1j * hbar * (self.D * Q + self.E) * spectral_derivative_2d(field.values, grid, axis=0, order=1)
        return out


def eps_rhs_apply(field: PhaseSpaceField, transform_alpha: float | None = None) -> PhaseSpaceField:
    """Right-hand side ``H' chi`` of the dynamical equation ``i hbar d(chi)/dt = H' chi``.

    For ``chi``/``f`` fields the untransformed operator is used; for
    transformed fields the operator matching the field's recorded alpha.
    ``transform_alpha`` overrides the choice explicitly.  The result is
    returned on the same grid with the same tags (it is an operator image,
    not a new distribution).
    """
    if transform_alpha is None:
        transform_alpha = field.alpha if field.kind == "transformed" else 0.0
    ham = ExtendedHamiltonian.from_params(field.params, transform_alpha)
    return PhaseSpaceField(
        ham.apply(field), field.grid, field.t, field.params, field.kind, field.alpha
    )


# ---------------------------------------------------------------------------
# polar decomposition and expectations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtendedAction:
    """Amplitude/phase split of a phase-space field: ``f = R exp(i S / hbar)``.

    ``S`` is NaN where the amplitude is below the node threshold; ``mask``
    marks the valid samples.
    """

    S: NDArray[np.float64]
    R: NDArray[np.float64]
    mask: NDArray[np.bool_]


def polar_decompose_2d(field: PhaseSpaceField) -> ExtendedAction:
    """Split a phase-space field into amplitude and unwrapped phase action.

    The phase is unwrapped row-by-row in q and stitched across rows at the
    highest-amplitude column, so smooth fields recover a smooth action
    (e.g. the stationary ground-state chi gives S = -pq exactly, up to an
    overall multiple of 2 pi hbar).
    """
    R = np.abs(field.values)
    mask = amplitude_mask(R)
    if not mask.any():
        raise ValueError("field amplitude is everywhere below the node threshold")
    wrapped = np.angle(field.values)
    S = np.full(field.grid.shape, np.nan)
    unwrapped = unwrap_phase_2d(wrapped, mask=mask, weights=R)
    S[mask] = field.params.hbar * unwrapped[mask]
    return ExtendedAction(S=S, R=R, mask=mask)


def expectation(observable: NDArray, chi: PhaseSpaceField) -> float:
    """Phase-space average ``int O conj(chi) dp dq / int conj(chi) dp dq``.

    ``observable`` is an array on the field's grid (build it from
    ``grid.meshes()``).  The normalisation by the bare integral of
    ``conj(chi)`` makes the average independent of the Fourier convention's
    overall constants.  The ratio is real for physical observables; a
    relative imaginary part above 1e-8 raises, as does a vanishing
    normalisation integral.
    """
    observable = np.asarray(observable)
    if observable.shape != chi.grid.shape:
        raise GridError("observable does not match the field grid")
    weight = np.conj(chi.values) * chi.grid.cell
    den = np.sum(weight)
    if abs(den) < 1e-12:
        raise ValueError("normalisation integral of the distribution vanishes")
    num = np.sum(observable * weight)
    ratio = num / den
    if abs(ratio.imag) > 1e-8 * max(1.0, abs(ratio.real)):
        raise ValueError(f"expectation value has imaginary part {ratio.imag:.3e}")
    return float(ratio.real)
