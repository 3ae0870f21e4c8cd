"""
Numerical ground truth that does not use any closed form.

Numerov integration of -psi'' + V psi = E psi on a uniform grid, S-matrix
extraction by matching to e^{+-ikr}, a node-counting shooting solver for the
bound spectrum, and an independent check of the 1/(1-z) connection formula
of the hypergeometric function.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np
from scipy.optimize import brentq

from .exceptions import (
    DegenerateParameterError,
    MatchingError,
    RadialDomainError,
    ShootingError,
    ThresholdError,
)
from .grid import RadialGrid
from .potential import PotentialKind, PotentialParams, v_from_w
from .specfun import INTEGER_TOLERANCE, gamma_ratio, hyp2f1, is_gamma_pole, power_series_2f1
from .spectrum import count_nodes, nu_max

logger = logging.getLogger(__name__)

ORACLE_R_MIN = 1e-3
ORACLE_STEP = 1e-3
RESCALE_LIMIT = 1e100
TAIL_TOLERANCE = 1e-12
MATCH_PHASE = 0.3
MATCH_MARGIN = 0.05
ENERGY_SAMPLING = 0.1
ENERGY_MARGIN = 0.05
ENERGY_XTOL = 1e-12


@dataclass(frozen=True, eq=False)
class WaveSolution:
    """Numerov solution on a grid.

    values are scaled by exp(-log_scale) relative to the seeded solution.
    """

    grid: RadialGrid
    values: np.ndarray
    energy: float
    log_scale: float = field(default=0.0)


# ============================================================================
# NUMEROV PROPAGATION
# ============================================================================

def _numerov_sweep(f: np.ndarray, h: float, psi0: float, psi1: float):
    """Propagate psi'' = f psi from two seed values over the samples of f.

    Uses w = (1 - h^2 f / 12) psi and w[i+1] = 2 w[i] - w[i-1] + h^2 f[i] psi[i].
    Returns the values and the accumulated log of the rescaling factors.
    """
    n = len(f)
    h2 = h * h
    g = (1.0 - h2 * f / 12.0).tolist()
    hf = (h2 * f).tolist()
    psi = [0.0] * n
    psi[0] = psi0
    psi[1] = psi1
    w_prev = g[0] * psi0
    w = g[1] * psi1
    log_scale = 0.0
    for i in range(1, n - 1):
        w_next = 2.0 * w - w_prev + hf[i] * psi[i]
        value = w_next / g[i + 1]
        if abs(value) > RESCALE_LIMIT:
            factor = 1.0 / abs(value)
            psi[: i + 1] = [p * factor for p in psi[: i + 1]]
            w *= factor
            w_next *= factor
            value *= factor
            log_scale -= math.log(factor)
        psi[i + 1] = value
        w_prev, w = w, w_next
    return np.array(psi), log_scale


def _potential_values(kind: PotentialKind, params: PotentialParams, r: np.ndarray) -> np.ndarray:
    return np.asarray(v_from_w(kind, params, r), dtype=float)


def numerov_integrate(
    kind: PotentialKind,
    params: PotentialParams,
    energy: float,
    grid: RadialGrid,
    potential: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    seed_power: Optional[float] = None,
) -> WaveSolution:
    """Regular solution seeded by psi ~ r^(B-A) at the first two grid points.

    Args:
        kind: Which potential to integrate.
        params: Potential parameters.
        energy: Real energy E.
        grid: Uniform grid with r_min <= 1e-3.
        potential: Optional replacement V(r), e.g. a constant stub.
        seed_power: Optional replacement for the seed exponent B - A.

    Raises:
        RadialDomainError: If the grid starts above 1e-3.
    """
    if grid.r_min > ORACLE_R_MIN * (1.0 + 1e-9):
        raise RadialDomainError(f"Numerov grid must start at r_min <= {ORACLE_R_MIN:g}, got {grid.r_min}")
    r = grid.points
    v = np.asarray(potential(r), dtype=float) * np.ones_like(r) if potential else _potential_values(kind, params, r)
    power = params.B - params.A if seed_power is None else seed_power
    values, log_scale = _numerov_sweep(v - energy, grid.step, r[0] ** power, r[1] ** power)
    return WaveSolution(grid, values, float(energy), log_scale)


def numerov_defect(solution: WaveSolution, potential_values: np.ndarray, stride: int = 2, skip: int = 50) -> float:
    """Relative defect of the Numerov relation on a subsample of the solution.

    The subsample uses step stride*h; the defect is O((stride*h)^6 psi^(6))
    relative to max |psi| away from the first ``skip`` points.
    """
    h = solution.grid.step * stride
    psi = solution.values[skip::stride]
    g = 1.0 - h * h * (potential_values[skip::stride] - solution.energy) / 12.0
    w = g * psi
    defect = w[2:] - 2.0 * w[1:-1] + w[:-2] - h * h * (potential_values[skip::stride][1:-1] - solution.energy) * psi[1:-1]
    return float(np.max(np.abs(defect)) / np.max(np.abs(psi)))


# ============================================================================
# S-MATRIX EXTRACTION
# ============================================================================

def _tail_radius(kind: PotentialKind, params: PotentialParams) -> float:
    """First integer radius >= 25 where |V - A^2| < TAIL_TOLERANCE / 10."""
    r = 25.0
    while abs(float(v_from_w(kind, params, r)) - params.threshold) >= TAIL_TOLERANCE / 10.0 and r < 200.0:
        r += 1.0
    return r


def scattering_grid(
    kind: PotentialKind,
    params: PotentialParams,
    k: float,
    step: float = ORACLE_STEP,
    r_min: float = ORACLE_R_MIN,
) -> RadialGrid:
    """Grid long enough for the potential tail to be negligible at both matching radii."""
    r_max = max(25.0, 12.0 + 5.0 / min(k, 1.0), _tail_radius(kind, params)) + MATCH_PHASE / k
    return RadialGrid.with_step(r_min, r_max, step)


def extract_s_numeric(
    kind: PotentialKind,
    params: PotentialParams,
    k: float,
    grid: Optional[RadialGrid] = None,
) -> complex:
    """S from psi(r_i) = A+ e^{ikr_i} + A- e^{-ikr_i} at two radii near r_max, S = -A+/A-.

    The second radius is the last grid point; the first lies a whole number
    of steps before it with k * separation close to 0.3.

    Raises:
        ThresholdError: If k <= 0.
        MatchingError: If the 2x2 system is ill-conditioned or the first
            matching radius still feels the potential.
    """
    if not (k > 0.0):
        raise ThresholdError(f"scattering momentum must be positive, got k={k}")
    if grid is None:
        grid = scattering_grid(kind, params, k)
    r = grid.points
    h = grid.step
    steps = max(1, int(round(MATCH_PHASE / (k * h))))
    phase = math.fmod(k * steps * h, math.pi)
    if min(phase, math.pi - phase) < MATCH_MARGIN:
        raise MatchingError(f"matching separation {steps * h:g} is too close to a multiple of pi/k")
    i2 = grid.n_points - 1
    i1 = i2 - steps
    if i1 < 2:
        raise MatchingError("grid too short for the matching separation")
    tail = abs(float(v_from_w(kind, params, r[i1])) - params.threshold)
    if tail >= TAIL_TOLERANCE:
        raise MatchingError(f"|V - A^2| = {tail:.3g} at r={r[i1]:g}; extend the grid")

    solution = numerov_integrate(kind, params, params.threshold + k * k, grid)
    r1, r2 = r[i1], r[i2]
    logger.debug("extract_s_numeric: k=%g matching at r=%g, %g", k, r1, r2)
    matrix = np.array(
        [[cmath.exp(1j * k * r1), cmath.exp(-1j * k * r1)],
         [cmath.exp(1j * k * r2), cmath.exp(-1j * k * r2)]]
    )
    rhs = np.array([solution.values[i1], solution.values[i2]], dtype=complex)
    amp_plus, amp_minus = np.linalg.solve(matrix, rhs)
    if amp_minus == 0:
        raise MatchingError("incoming amplitude vanished")
    return complex(-amp_plus / amp_minus)


# ============================================================================
# SHOOTING FOR BOUND STATES
# ============================================================================

def bound_state_grid(params: PotentialParams, step: float = ORACLE_STEP, r_min: float = ORACLE_R_MIN) -> RadialGrid:
    kappa = params.A - nu_max(params)
    return RadialGrid.with_step(r_min, max(20.0, 5.0 + 15.0 / kappa), step)


def _matching_index(f: np.ndarray) -> int:
    allowed = np.nonzero(f < 0.0)[0]
    index = int(allowed[-1]) if allowed.size else int(np.argmin(f))
    return min(max(index, 2), len(f) - 3)


class _Shooter:
    """Outward/inward Numerov shots for one potential on one grid."""

    def __init__(self, kind: PotentialKind, params: PotentialParams, grid: RadialGrid):
        self.params = params
        self.h = grid.step
        r = grid.points
        self.v = _potential_values(kind, params, r)
        power = params.B - params.A
        self.seeds = (r[0] ** power, r[1] ** power)

    def nodes(self, e: float) -> int:
        psi, _ = _numerov_sweep(self.v - e, self.h, *self.seeds)
        return count_nodes(psi)

    def matching_index(self, e: float) -> int:
        return _matching_index(self.v - e)

    def mismatch(self, e: float, index: int) -> float:
        """Normalized discrete Wronskian of outward and inward shots at index."""
        f = self.v - e
        out, _ = _numerov_sweep(f[: index + 2], self.h, *self.seeds)
        kappa = math.sqrt(max(self.params.threshold - e, 1e-12))
        inward, _ = _numerov_sweep(f[index:][::-1].copy(), self.h, 1.0, math.exp(kappa * self.h))
        inward = inward[::-1]
        a0, a1 = out[-2], out[-1]
        b0, b1 = inward[0], inward[1]
        return (a1 * b0 - a0 * b1) / (math.hypot(a0, a1) * math.hypot(b0, b1))


def _isolate(shooter: _Shooter, lo: float, n_lo: int, hi: float, n_hi: int) -> List[tuple]:
    """Split [lo, hi] until each bracket holds exactly one eigenvalue."""
    if n_hi - n_lo == 1:
        return [(lo, hi)]
    if hi - lo < ENERGY_XTOL:
        raise ShootingError(f"cannot separate {n_hi - n_lo} eigenvalues near E={lo:.12g}")
    mid = 0.5 * (lo + hi)
    n_mid = shooter.nodes(mid)
    brackets = []
    if n_mid > n_lo:
        brackets += _isolate(shooter, lo, n_lo, mid, n_mid)
    if n_hi > n_mid:
        brackets += _isolate(shooter, mid, n_mid, hi, n_hi)
    return brackets


def _refine(shooter: _Shooter, lo: float, hi: float) -> float:
    index = shooter.matching_index(0.5 * (lo + hi))
    g_lo = shooter.mismatch(lo, index)
    g_hi = shooter.mismatch(hi, index)
    if g_lo * g_hi < 0.0:
        return brentq(shooter.mismatch, lo, hi, args=(index,), xtol=ENERGY_XTOL)

    logger.debug("shoot_spectrum: no mismatch sign change on [%g, %g], bisecting node count", lo, hi)
    n_lo = shooter.nodes(lo)
    while hi - lo > ENERGY_XTOL:
        mid = 0.5 * (lo + hi)
        if shooter.nodes(mid) > n_lo:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def shoot_spectrum(
    kind: PotentialKind,
    params: PotentialParams,
    e_max: float,
    grid: Optional[RadialGrid] = None,
    sampling: float = ENERGY_SAMPLING,
) -> List[float]:
    """All eigenvalues in [-0.05, e_max] without using the energy formula.

    Node counts of the outward solution are sampled every ``sampling`` in
    energy; brackets where the count rises are split until each holds one
    eigenvalue and then refined by Brent's method on the matching mismatch.

    Raises:
        ShootingError: If e_max is not below the threshold A^2.
    """
    if not (e_max < params.threshold):
        raise ShootingError(f"e_max={e_max} must lie below the threshold A^2={params.threshold}")
    if grid is None:
        grid = bound_state_grid(params)
    shooter = _Shooter(kind, params, grid)

    energies = list(np.arange(-ENERGY_MARGIN, e_max, sampling)) + [e_max]
    counts = [shooter.nodes(e) for e in energies]
    logger.debug("shoot_spectrum(%s): node counts %s", kind.value, counts)

    eigenvalues = []
    for (lo, n_lo), (hi, n_hi) in zip(zip(energies, counts), zip(energies[1:], counts[1:])):
        if n_hi <= n_lo:
            continue
        for a, b in _isolate(shooter, lo, n_lo, hi, n_hi):
            eigenvalues.append(float(_refine(shooter, a, b)))
    return eigenvalues


# ============================================================================
# CONNECTION FORMULA
# ============================================================================

def connection_formula_check(a: complex, b: complex, c: complex, z: float) -> float:
    """Relative residual of the 1/(1-z) connection formula.

    RHS = sum over (p, q) in {(a, b), (b, a)} of
          Gamma(c) Gamma(q-p) / (Gamma(q) Gamma(c-p)) (1-z)^(-p) 2F1(p, c-q; p-q+1; 1/(1-z)),
    summed as plain power series, against hyp2f1(a, b, c, z).

    Raises:
        RadialDomainError: If z >= 0.
        DegenerateParameterError: If a - b is within 1e-8 of an integer.
    """
    a, b, c = complex(a), complex(b), complex(c)
    if not (z < 0.0):
        raise RadialDomainError(f"connection check needs z < 0, got {z}")
    diff = a - b
    if abs(diff - round(diff.real)) < INTEGER_TOLERANCE:
        raise DegenerateParameterError(f"connection formula degenerates for integer a-b={diff}")

    lhs = hyp2f1(a, b, c, z)
    log_x = math.log1p(-z)
    w = 1.0 / (1.0 - z)
    rhs = 0j
    for p, q in ((a, b), (b, a)):
        # 1/Gamma vanishes on a pole, so the term drops out.
        if is_gamma_pole(q) or is_gamma_pole(c - p):
            continue
        coeff = gamma_ratio([c, q - p], [q, c - p])
        rhs += coeff * cmath.exp(-p * log_x) * power_series_2f1(p, c - q, p - q + 1.0, w)
    return abs(lhs - rhs) / abs(lhs)
