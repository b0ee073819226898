"""Construction of the value-distribution density and its Fourier side.

The distribution of the truncated phasor sum is rotation-invariant factor
by factor, so everything is one-dimensional in the radius: the Fourier
transform of one circle measure of radius c is J0(c*rho), the transform of
the order-N truncation is the product of those factors, and the density
itself is recovered by an order-zero Hankel inversion

    M_N(r) = integral_0^inf rho * J0(rho*r) * prod_{n<=N} J0(c_n*rho) drho.

Planar measure is normalized as |dw| = du dv / (2*pi), so total mass is
integral_0^inf r * M_N(r) dr.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import CubicSpline

from ._backend import char_prod, hankel_sum, j0_arr, j1_arr
from .errors import PrecisionError, QuadratureError, RangeError
from .spectral import CoefficientTable, analytic_tail_remainder, tail_bound
from .testfuncs import TestFunction

__all__ = [
    "CircleMeasure", "CharacteristicProfile", "DensityProfile",
    "bessel_j0", "char_m_n", "char_M_N", "char_tail_gap", "support_radius",
    "default_r_grid", "default_rho_grid", "invert_to_density",
    "invert_limit_density", "convolve_step", "integrate_against",
]

MIN_INVERSION_ORDER = 5
ENVELOPE_CUTOFF = 1e-10
R_GRID_POINTS = 4096
RHO_STEP_DIVISOR = 8
RHO_POINTS_SOFT_CAP = 80000
MASS_REFINE = 4


@dataclass(frozen=True)
class CircleMeasure:
    """Uniform measure on the circle of the given radius."""
    radius: float

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")


@dataclass(frozen=True)
class CharacteristicProfile:
    """The radial Fourier side rho -> prod_{n<=N} J0(c_n*rho)."""
    rho_grid: np.ndarray
    values: np.ndarray
    order: int
    c_used: np.ndarray

    def __post_init__(self):
        if self.rho_grid[0] != 0.0 or np.any(np.diff(self.rho_grid) <= 0):
            raise ValueError("rho grid must start at 0 and increase")
        if abs(self.values[0] - 1.0) > 1e-14:
            raise ValueError("characteristic function must be 1 at rho=0")
        if np.max(np.abs(self.values)) > 1.0 + 1e-12:
            raise ValueError("characteristic values must be bounded by 1")


@dataclass(frozen=True)
class DensityProfile:
    """Radial density samples r -> M_N(r), with bookkeeping."""
    r_grid: np.ndarray
    values: np.ndarray
    order: int | str
    support_radius: float
    mass: float
    negativity_tolerance: float
    error_budget: float | None = None
    n_used: int | None = None

    @property
    def peak(self) -> float:
        return float(np.max(self.values))

    @property
    def leakage(self) -> float:
        """Largest |M| beyond the support radius, relative to the peak."""
        outside = self.r_grid > self.support_radius
        if not np.any(outside):
            return 0.0
        return float(np.max(np.abs(self.values[outside]))) / self.peak


def bessel_j0(x):
    """Order-zero Bessel function, elementwise; scalar in, scalar out."""
    out = j0_arr(np.asarray(x, dtype=np.float64))
    return float(out) if np.isscalar(x) else out


def char_m_n(c: float, rho):
    """Characteristic function of one circle measure: J0(c*rho)."""
    return bessel_j0(c * np.asarray(rho)) if not np.isscalar(rho) \
        else bessel_j0(c * rho)


def support_radius(coeffs: CoefficientTable, n: int,
                   limit: bool = False) -> float:
    """Radius of the disc carrying the order-n truncation (or the limit)."""
    coeffs.check_order(n)
    radius = float(np.sum(coeffs.c[:n]))
    if limit:
        radius += tail_bound(coeffs, n)
    return radius


def char_M_N(coeffs: CoefficientTable, n: int, rho_grid) -> CharacteristicProfile:
    """Pointwise product of the per-circle factors on the given grid."""
    coeffs.check_order(n)
    rho = np.asarray(rho_grid, dtype=np.float64)
    c = coeffs.c[:n]
    return CharacteristicProfile(rho_grid=rho, values=char_prod(rho, c),
                                 order=n, c_used=c)


def _tail_sq_sum(coeffs: CoefficientTable, n: int) -> float:
    """Bound for sum of c_m^2 over m > n (table tail + analytic rest)."""
    coeffs.check_order(n)
    gmax = coeffs.coefficients[-1].gamma
    rest = (math.log(gmax / (2 * math.pi)) / 3.0 + 1.0 / 9.0) \
        / (2 * math.pi * gmax ** 3)
    return float(np.sum(coeffs.c[n:] ** 2)) + rest


def char_tail_gap(coeffs: CoefficientTable, n: int, rho):
    """Certified bound (rho^2/4) * sum_{m>n} c_m^2 for the factor-product gap.

    The 1/4 comes from |e^{ix}-1-ix| <= x^2/2 averaged over the circle,
    where the mean of cos^2 contributes another 1/2.
    """
    return 0.25 * _tail_sq_sum(coeffs, n) * np.asarray(rho, dtype=np.float64) ** 2


def decay_envelope(c: np.ndarray, rho):
    """prod_n min(1, sqrt(2/(pi*c_n*rho))): the |J0| amplitude envelope."""
    rho = np.atleast_1d(np.asarray(rho, dtype=np.float64))
    out = np.ones(rho.shape)
    with np.errstate(divide="ignore"):
        for cn in c:
            out *= np.minimum(1.0, np.sqrt(2.0 / (math.pi * cn * rho)))
    return out


def _envelope_cutoff_rho(c: np.ndarray, threshold: float) -> float:
    """Smallest rho (up to 1%) where the decay envelope drops below threshold."""
    lo = 1.0 / np.max(c)
    hi = lo
    while decay_envelope(c, hi)[0] > threshold:
        hi *= 2.0
        if hi > 1e16:
            raise QuadratureError("envelope cutoff search diverged")
    while hi / lo > 1.01:
        mid = math.sqrt(lo * hi)
        if decay_envelope(c, mid)[0] > threshold:
            lo = mid
        else:
            hi = mid
    return hi


def default_r_grid(coeffs: CoefficientTable, n: int,
                   points: int = R_GRID_POINTS) -> np.ndarray:
    return np.linspace(0.0, 1.1 * support_radius(coeffs, n), points)


def default_rho_grid(coeffs: CoefficientTable, n: int,
                     r_max: float | None = None,
                     step_divisor: int | None = None,
                     tail_eps: float = ENVELOPE_CUTOFF) -> np.ndarray:
    """Frequency grid resolving the fastest J0 oscillation of the inversion.

    Step <= pi / (step_divisor * (r_max + sum c_n)); extends until the
    amplitude envelope of the integrand falls below tail_eps.  When no
    divisor is given, the finest of 32/16/8 whose point count stays below
    the soft cap is chosen (small orders need very long grids, large
    orders can afford fine steps).
    """
    coeffs.check_order(n)
    s = support_radius(coeffs, n)
    if r_max is None:
        r_max = 1.1 * s
    c = coeffs.c[:n]
    rho_max = _envelope_cutoff_rho(c, tail_eps)
    if step_divisor is None:
        for step_divisor in (4 * RHO_STEP_DIVISOR, 2 * RHO_STEP_DIVISOR,
                             RHO_STEP_DIVISOR):
            step = math.pi / (step_divisor * (r_max + s))
            if rho_max / step <= RHO_POINTS_SOFT_CAP:
                break
    step = math.pi / (step_divisor * (r_max + s))
    npts = int(math.ceil(rho_max / step)) + 1
    if npts % 2 == 0:
        npts += 1
    return np.linspace(0.0, rho_max, npts)


def _simpson_weights(n: int, h: float) -> np.ndarray:
    if n < 3 or n % 2 == 0:
        raise ValueError("composite Simpson needs an odd point count >= 3")
    w = np.full(n, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    return w * (h / 3.0)


def _grid_step(grid: np.ndarray) -> float:
    steps = np.diff(grid)
    h = float(steps[0])
    if np.max(np.abs(steps - h)) > 1e-9 * h:
        raise QuadratureError("rho grid must be uniform")
    return h


def _mass_of(c: np.ndarray, r_edge: float, rho_max: float,
             step: float) -> float:
    """integral_0^{r_edge} r*M(r) dr = integral of M~(rho)*r_edge*J1(rho*r_edge) drho.

    Closed-form radial integral of the band-limited representation; the
    remaining rho integral is done with Simpson on a refined grid.
    """
    npts = int(math.ceil(rho_max / step)) + 1
    if npts % 2 == 0:
        npts += 1
    rho = np.linspace(0.0, rho_max, npts)
    w = _simpson_weights(npts, rho[1] - rho[0])
    integrand = char_prod(rho, c) * r_edge * j1_arr(rho * r_edge)
    return float(np.dot(w, integrand))


def invert_to_density(profile: CharacteristicProfile,
                      r_grid=None) -> DensityProfile:
    """Hankel inversion of a characteristic profile to the radial density.

    Requires order >= 5 (below that the truncated density need not be
    bounded; use the Monte-Carlo route instead).  The profile grid must
    satisfy the oscillation step rule and reach the envelope cutoff, else
    QuadratureError.
    """
    n = profile.order
    if n < MIN_INVERSION_ORDER:
        raise RangeError(
            f"pointwise inversion needs order >= {MIN_INVERSION_ORDER}, "
            f"got {n}; use the Monte-Carlo route for smaller orders")
    c = profile.c_used
    s = float(np.sum(c))
    if r_grid is None:
        r_grid = np.linspace(0.0, 1.1 * s, R_GRID_POINTS)
    r_grid = np.asarray(r_grid, dtype=np.float64)
    rho = profile.rho_grid
    h = _grid_step(rho)
    r_max = float(r_grid[-1])
    if h > math.pi / (8.0 * (r_max + s)) * (1.0 + 1e-12):
        raise QuadratureError(
            f"rho step {h:.3e} too coarse for the fastest oscillation; "
            f"need <= {math.pi / (8.0 * (r_max + s)):.3e}")
    if decay_envelope(c, rho[-1])[0] > ENVELOPE_CUTOFF:
        raise QuadratureError(
            "rho grid ends before the envelope cutoff; tail estimate "
            "exceeds tolerance")
    weights = _simpson_weights(len(rho), h)
    values = hankel_sum(r_grid, rho, weights * rho * profile.values)
    mass = _mass_of(c, r_max, rho[-1], h / MASS_REFINE)
    return DensityProfile(
        r_grid=r_grid, values=values, order=n, support_radius=s,
        mass=mass, negativity_tolerance=1e-6 * max(np.max(values), 0.0),
        n_used=n)


def _limit_error_budget(coeffs: CoefficientTable, n: int) -> float:
    """Certified sup bound on the scaled density gap |M - M_n|.

    Integrates rho * min(gap bound, 2*envelope) and converts to density
    units of 1/c_1^2 (the natural O(1) normalization of the problem).
    """
    c1 = coeffs.c[0]
    a = 0.25 * _tail_sq_sum(coeffs, n)
    c = coeffs.c[:n]
    # crossing of a*rho^2 (increasing) with 2*envelope (decreasing)
    lo, hi = 1e-6, 1e12
    for _ in range(200):
        mid = math.sqrt(lo * hi)
        if a * mid ** 2 < 2.0 * decay_envelope(c, mid)[0]:
            lo = mid
        else:
            hi = mid
    rho_star = hi
    inner = a * rho_star ** 4 / 4.0
    grid = np.geomspace(rho_star, rho_star * 1e6, 20001)
    outer = float(np.trapezoid(2.0 * grid * decay_envelope(c, grid), grid))
    # analytic remainder beyond the log grid (pure power law there);
    # log-space to survive the product of many small c_m
    log_k = (0.5 * n * math.log(2.0 / math.pi)
             - 0.5 * float(np.sum(np.log(c))))
    log_rem = (math.log(2.0) + log_k
               + (2.0 - 0.5 * n) * math.log(grid[-1])
               - math.log(0.5 * n - 2.0))
    outer += math.exp(min(log_rem, 700.0))
    return c1 ** 2 * (inner + outer)


def invert_limit_density(coeffs: CoefficientTable, eps: float,
                         r_grid=None) -> DensityProfile:
    """Density of the full limit, to a certified scaled sup-error <= eps.

    Picks the smallest order whose propagated characteristic-function tail
    stays below eps (measured in units of c_1^-2, in which the density
    peak is O(1)), then inverts at that order.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    chosen = None
    for n in range(MIN_INVERSION_ORDER, len(coeffs) + 1):
        budget = _limit_error_budget(coeffs, n)
        if budget <= eps:
            chosen = (n, budget)
            break
    if chosen is None:
        raise PrecisionError(
            f"cannot certify scaled sup-error {eps} with {len(coeffs)} "
            f"zeros (floor {_limit_error_budget(coeffs, len(coeffs)):.3e}); "
            "supply more zeros")
    n, budget = chosen
    if r_grid is None:
        r_grid = default_r_grid(coeffs, n)
    profile = char_M_N(coeffs, n, default_rho_grid(coeffs, n, float(r_grid[-1])))
    density = invert_to_density(profile, r_grid)
    return DensityProfile(
        r_grid=density.r_grid, values=density.values, order="limit",
        support_radius=support_radius(coeffs, n, limit=True),
        mass=density.mass, negativity_tolerance=density.negativity_tolerance,
        error_budget=budget, n_used=n)


def convolve_step(density: DensityProfile, c: float,
                  n_theta: int = 512) -> DensityProfile:
    """One more circle factor: angular convolution on the radial grid.

    M_{N+1}(r) = (1/2pi) integral M_N(sqrt(r^2 + c^2 - 2 r c cos t)) dt.
    """
    if c < 0:
        raise ValueError("radius must be nonnegative")
    if not isinstance(density.order, int) or density.order < MIN_INVERSION_ORDER:
        raise RangeError("convolve_step needs a finite order >= 5 input")
    r = density.r_grid
    h = r[1] - r[0]
    if c != 0.0 and c < 4 * h:
        raise QuadratureError(
            f"grid step {h:.3e} too coarse to resolve circle radius {c:.3e}")
    if c == 0.0:
        return density
    spline = CubicSpline(r, density.values)
    theta = np.linspace(0.0, math.pi, n_theta + 1)
    # cosine symmetry: average over [0, pi] with trapezoid end weights
    wts = np.full(n_theta + 1, 1.0 / n_theta)
    wts[0] = wts[-1] = 0.5 / n_theta
    arg = np.sqrt(np.maximum(
        r[:, None] ** 2 + c * c - 2.0 * c * r[:, None] * np.cos(theta)[None, :],
        0.0))
    vals = np.where(arg <= r[-1], spline(np.minimum(arg, r[-1])), 0.0)
    new_values = vals @ wts
    mass = float(simpson(r * new_values, x=r))
    return DensityProfile(
        r_grid=r, values=new_values, order=density.order + 1,
        support_radius=density.support_radius + c, mass=mass,
        negativity_tolerance=density.negativity_tolerance,
        n_used=density.order + 1)


def integrate_against(density: DensityProfile, phi: TestFunction):
    """integral of M * Phi over the plane (|dw| = du dv / 2pi).

    Radial reduction: integral of r * M(r) * angular-average of Phi.
    """
    r = density.r_grid
    avg = phi.angular_average(r)
    out = simpson(r * density.values * avg, x=r)
    return complex(out) if np.iscomplexobj(avg) else float(out)
