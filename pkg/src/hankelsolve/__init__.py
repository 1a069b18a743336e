"""Large-order, large-wavenumber solver for the modified Bessel equation.

Discrete Hankel transform plus a closed-form Green's-function convolution,
with scaled special functions and a cylindrical Poisson driver on top.
"""

from .dht import DhtPlan, HankelCoefficients, PlanCache, dht_apply, dht_plan
from .greens import GREEN_SIGN, ModeSolution, green_convolve, solve_mode
from .interp import BlockGrid, block_grid, interpolate
from .poisson import CylGrid, ModeSet, cyl_grid, decompose, resynthesize, solve_poisson
from .specfun import (
    BesselZeros,
    ConvergenceError,
    DomainError,
    RatioTable,
    bessel_j,
    bessel_j_zeros,
    i0_scaled,
    i1_scaled,
    ik_product,
    ik_product_split,
    k0_scaled,
    k1_scaled,
    ratio_table,
)

__version__ = "0.1.0"
