"""Residual norms, least-squares fits, and the report container.

Norms are taken over a validity mask with an explicit integration measure
(grid spacing in 1D, phase-space cell in 2D) so values are comparable
across resolutions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray


@dataclass(frozen=True)
class ResidualReport:
    """Named residual norms plus the context needed to interpret them.

    ``metadata`` carries scalar context (alpha, dt, grid size, fitted
    constants); ``fields`` carries the arrays behind the norms for dumps
    and follow-up analysis and is excluded from repr/comparison.
    """

    name: str
    l2_norm: float
    max_norm: float
    masked_fraction: float
    metadata: dict = field(default_factory=dict)
    fields: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.l2_norm < 0 or self.max_norm < 0:
            raise ValueError("norms must be non-negative")
        if not 0.0 <= self.masked_fraction <= 1.0:
            raise ValueError("masked_fraction must lie in [0, 1]")


def masked_l2(values: NDArray, mask: NDArray, measure: float) -> float:
    """``sqrt(sum |values|^2 * measure)`` over the valid samples."""
    values = np.asarray(values)
    mask = np.asarray(mask, dtype=bool)
    if not mask.any():
        raise ValueError("cannot take a norm over an empty mask")
    return float(np.sqrt(np.sum(np.abs(values[mask]) ** 2) * measure))


def masked_max(values: NDArray, mask: NDArray) -> float:
    """Max absolute value over the valid samples."""
    values = np.asarray(values)
    mask = np.asarray(mask, dtype=bool)
    if not mask.any():
        raise ValueError("cannot take a norm over an empty mask")
    return float(np.max(np.abs(values[mask])))


def masked_fraction(mask: NDArray) -> float:
    """Fraction of samples excluded by the mask."""
    mask = np.asarray(mask, dtype=bool)
    return float(1.0 - mask.sum() / mask.size)


@dataclass(frozen=True)
class LineFit:
    """Least-squares line ``y = slope * x + intercept``.

    ``zero_crossing`` is the root ``-intercept/slope`` (NaN for a flat
    line); ``r_squared`` is the coefficient of determination.
    """

    slope: float
    intercept: float
    r_squared: float
    zero_crossing: float


def fit_line(x, y) -> LineFit:
    """Fit a straight line through the sample points."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("fit_line expects matching 1D samples")
    if x.size < 2:
        raise ValueError("need at least two points to fit a line")
    slope, intercept = np.polyfit(x, y, 1)
    predicted = slope * x + intercept
    ss_res = float(np.sum((y - predicted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        r_squared = 1.0 if ss_res == 0.0 else 0.0
    else:
        r_squared = 1.0 - ss_res / ss_tot
    zero = -intercept / slope if slope != 0.0 else math.nan
    return LineFit(float(slope), float(intercept), r_squared, float(zero))


def fit_global_constant(target: NDArray, basis: NDArray, mask: NDArray | None = None) -> complex:
    """Least-squares constant ``c`` minimising ``||target - c * basis||``.

    Works for complex fields; restrict to ``mask`` if given.  Raises if the
    basis is identically zero on the mask.
    """
    target = np.asarray(target)
    basis = np.asarray(basis)
    if target.shape != basis.shape:
        raise ValueError("target and basis shapes differ")
    if mask is not None:
        mask = np.asarray(mask, dtype=bool)
        target = target[mask]
        basis = basis[mask]
    denom = np.sum(np.abs(basis) ** 2)
    if denom == 0.0:
        raise ValueError("cannot fit a constant against a zero basis")
    return complex(np.sum(np.conj(basis) * target) / denom)
