#!/usr/bin/env python3
"""Proportionality constant between the -1/2 shear and the direct Wigner form.

Shearing the product distribution chi by alpha = -1/2 reproduces the Wigner
function up to one global constant.  This script fits that constant at a
range of grid sizes and evaluation times and compares it to the analytic
value 1/sqrt(2 pi hbar), demonstrating it is a fixed property of the two
conventions rather than a numerical artefact.

    python3 scripts/wigner_constant_study.py --sizes 64 128 256 512
"""

from __future__ import annotations

import argparse
import math

import numpy as np

from epsqp.eps_core import chi_build
from epsqp.numerics import Grid2D, HarmonicPotential, PhysicalParams, make_grid
from epsqp.reports import fit_global_constant
from epsqp.states import ho_coherent_state, to_momentum_space
from epsqp.transforms import apply_extended_transform, wigner_direct


def fitted_constant(n: int, t: float):
    params = PhysicalParams(mass=1.0, hbar=1.0, potential=HarmonicPotential(k=1.0))
    g = make_grid(n, -10.0, 10.0)
    g2 = Grid2D.paired(g, params.hbar)
    psi = ho_coherent_state(g, params, q0=1.0, p0=0.0, t=t)
    chi = chi_build(psi, to_momentum_space(psi), g2)
    sheared = apply_extended_transform(chi, -0.5).values
    w = np.real(wigner_direct(psi, g2).values)
    c = fit_global_constant(sheared, w)
    deviation = float(np.linalg.norm(sheared - c * w) / np.linalg.norm(sheared))
    return c, deviation


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256, 512])
    parser.add_argument("--times", type=float, nargs="+", default=[0.0, 0.4, 1.1])
    args = parser.parse_args()

    reference = 1.0 / math.sqrt(2.0 * math.pi)
    print(f"reference 1/sqrt(2 pi hbar) = {reference:.16f}\n")
    print(f"{'n':>5} {'t':>5}  {'fitted constant':>18}  {'|c - ref|':>10}  {'rel L2':>10}")
    for n in args.sizes:
        for t in args.times:
            c, dev = fitted_constant(n, t)
            print(
                f"{n:>5} {t:>5.2f}  {c.real:>18.16f}  "
                f"{abs(c - reference):>10.3e}  {dev:>10.3e}"
            )


if __name__ == "__main__":
    main()
