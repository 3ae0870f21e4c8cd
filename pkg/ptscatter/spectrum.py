"""
Bound states of the rationally extended potential.

Energies follow E_nu = A^2 - (A - nu)^2 for 0 <= nu <= nu_max = ceil(A) - 1.
Eigenfunctions are built from X1 Jacobi polynomials of cosh r. The closed
normalization constant is reported as is; normalized eigenfunctions use the
quadrature norm, and normalization_audit() compares the two.
"""

from __future__ import annotations

import functools
import logging
import math
import warnings
from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np
from numpy.typing import ArrayLike
from scipy.integrate import simpson

from .exceptions import QuadratureResolutionWarning, StateIndexError
from .grid import RadialGrid
from .potential import PotentialKind, PotentialParams, check_radius, v_from_w
from .specfun import gamma_ratio, x1_jacobi_scaled

logger = logging.getLogger(__name__)

__all__ = [
    "BoundState",
    "RadialGrid",
    "nu_max",
    "energy",
    "eigenfunction",
    "norm_const",
    "quadrature_norm",
    "default_quadrature_grid",
    "bound_states",
    "orthonormality_matrix",
    "schrodinger_residual",
    "count_nodes",
    "normalization_audit",
]

QUADRATURE_R_MIN = 1e-4
QUADRATURE_STEP = 2e-3
QUADRATURE_TOLERANCE = 1e-9

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class BoundState:
    nu: int
    energy: float
    norm_const: float


def nu_max(params: PotentialParams) -> int:
    """Largest bound-state index, the unique integer in [A-1, A)."""
    return int(math.ceil(params.A)) - 1


def _check_index(params: PotentialParams, nu: int) -> None:
    top = nu_max(params)
    if not (0 <= nu <= top):
        raise StateIndexError(f"bound-state index nu={nu} outside 0..{top} for A={params.A}")


def energy(params: PotentialParams, nu: int) -> float:
    """E_nu = A^2 - (A - nu)^2."""
    _check_index(params, nu)
    a = params.A
    return a * a - (a - nu) * (a - nu)


def _unnormalized(params: PotentialParams, nu: int, r: np.ndarray) -> np.ndarray:
    a, b = params.A, params.B
    # (cosh r - 1)^((B-A)/2) (cosh r + 1)^(-(B+A)/2) via half angles, times
    # cosh^nu r from the polynomial over the denominator; t = sech r.
    log_sinh_half = r / 2.0 + np.log(-np.expm1(-r)) - _LN2
    log_cosh_half = r / 2.0 + np.log1p(np.exp(-r)) - _LN2
    log_cosh = r + np.log1p(np.exp(-2.0 * r)) - _LN2
    log_envelope = (b - a) * log_sinh_half - (b + a) * log_cosh_half - a * _LN2 + nu * log_cosh
    t = np.exp(-log_cosh)
    poly = np.asarray(x1_jacobi_scaled(nu + 1, params.jacobi(), t))
    return np.exp(log_envelope) * poly / (2.0 * b - (2.0 * a + 1.0) * t)


def eigenfunction(params: PotentialParams, nu: int, r: ArrayLike, normalized: bool = False):
    """Bound-state wavefunction psi_nu(r).

    Args:
        params: Potential parameters.
        nu: State index, 0..nu_max.
        r: Radius or array of radii, r > 0.
        normalized: Scale by the quadrature norm 1/sqrt(int psi^2 dr).

    Raises:
        StateIndexError: nu out of range.
        RadialDomainError: Any r <= 0.
    """
    _check_index(params, nu)
    r = check_radius(r)
    psi = _unnormalized(params, nu, r)
    if normalized:
        psi = psi * quadrature_norm(params, nu)
    return psi[()] if psi.ndim == 0 else psi


def norm_const(params: PotentialParams, nu: int) -> float:
    """Closed-form normalization constant.

    N = -2^(A+2) B sqrt( nu! (2A-2nu)(B+A-nu+1/2) Gamma(B+A-nu-1/2)
                         / ((B-A+nu+1/2) Gamma(B-A+nu-1/2) Gamma(2A-nu+1)) )
    """
    _check_index(params, nu)
    a, b = params.A, params.B
    gammas = gamma_ratio([b + a - nu - 0.5], [b - a + nu - 0.5, 2.0 * a - nu + 1.0]).real
    inner = math.factorial(nu) * (2.0 * a - 2.0 * nu) * (b + a - nu + 0.5) * gammas / (b - a + nu + 0.5)
    return -(2.0 ** (a + 2.0)) * b * math.sqrt(inner)


def default_quadrature_grid(params: PotentialParams, step: float = QUADRATURE_STEP) -> RadialGrid:
    """[1e-4, max(30, 40/(A - nu_max))] with the given step."""
    r_max = max(30.0, 40.0 / (params.A - nu_max(params)))
    return RadialGrid.with_step(QUADRATURE_R_MIN, r_max, step)


def _simpson_checked(values: np.ndarray, r: np.ndarray, label: str) -> float:
    """Composite Simpson with a step-halving resolution check."""
    fine = float(simpson(values, x=r))
    m = len(r) if (len(r) - 1) % 2 == 0 else len(r) - 1
    if m >= 5:
        same = float(simpson(values[:m], x=r[:m]))
        coarse = float(simpson(values[:m:2], x=r[:m:2]))
        estimate = abs(same - coarse) / 15.0
        if estimate > QUADRATURE_TOLERANCE * max(abs(fine), 1.0):
            warnings.warn(
                f"{label}: quadrature error estimate {estimate:.3g} exceeds {QUADRATURE_TOLERANCE:g}; refine the grid",
                QuadratureResolutionWarning,
                stacklevel=3,
            )
    return fine


def quadrature_norm(params: PotentialParams, nu: int, grid: RadialGrid = None) -> float:
    """1/sqrt(int psi~^2 dr) on the grid (default_quadrature_grid when omitted)."""
    _check_index(params, nu)
    if grid is None:
        return _default_quadrature_norm(params, nu)
    r = grid.points
    psi = _unnormalized(params, nu, r)
    return 1.0 / math.sqrt(_simpson_checked(psi * psi, r, f"norm nu={nu}"))


@functools.lru_cache(maxsize=64)
def _default_quadrature_norm(params: PotentialParams, nu: int) -> float:
    return quadrature_norm(params, nu, default_quadrature_grid(params))


def bound_states(params: PotentialParams) -> List[BoundState]:
    return [BoundState(nu, energy(params, nu), norm_const(params, nu)) for nu in range(nu_max(params) + 1)]


def orthonormality_matrix(params: PotentialParams, grid: RadialGrid) -> np.ndarray:
    """Gram matrix of the quadrature-normalized eigenfunctions on the grid.

    Each state is normalized with its own Simpson norm on the same grid, so
    the diagonal is 1 up to rounding and the off-diagonal entries measure
    orthogonality.
    """
    r = grid.points
    states = []
    for nu in range(nu_max(params) + 1):
        psi = _unnormalized(params, nu, r)
        states.append(psi / math.sqrt(_simpson_checked(psi * psi, r, f"norm nu={nu}")))
    size = len(states)
    gram = np.empty((size, size))
    for i in range(size):
        for j in range(i, size):
            value = _simpson_checked(states[i] * states[j], r, f"overlap ({i},{j})")
            gram[i, j] = gram[j, i] = value
    return gram


def schrodinger_residual(params: PotentialParams, nu: int, grid: RadialGrid) -> float:
    """max |-psi'' + (V - E) psi| / max |psi| on interior points of the grid.

    psi'' uses the 5-point central stencil, so the grid should start away
    from the origin (r >= 0.05 for h = 1e-3) where psi ~ r^(B-A) keeps the
    stencil truncation small.
    """
    e = energy(params, nu)
    r = grid.points
    h = grid.step
    psi = _unnormalized(params, nu, r)
    second = (-psi[4:] + 16.0 * psi[3:-1] - 30.0 * psi[2:-2] + 16.0 * psi[1:-3] - psi[:-4]) / (12.0 * h * h)
    inner = r[2:-2]
    v = np.asarray(v_from_w(PotentialKind.EXTENDED, params, inner))
    residual = -second + (v - e) * psi[2:-2]
    return float(np.max(np.abs(residual)) / np.max(np.abs(psi)))


def count_nodes(values: Sequence[float]) -> int:
    """Sign changes of a sampled function, skipping exact zeros."""
    signs = np.sign(np.asarray(values, dtype=float))
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def normalization_audit(params: PotentialParams, grids: Sequence[RadialGrid]) -> List[Dict[str, float]]:
    """Ratio of the closed-form constant to the quadrature norm, per state and grid.

    Returns:
        One record per state: nu, the closed-form value, and ``ratios`` (one
        per grid, in order) together with their spread.
    """
    records = []
    for nu in range(nu_max(params) + 1):
        analytic = norm_const(params, nu)
        ratios = [analytic / quadrature_norm(params, nu, grid) for grid in grids]
        spread = max(ratios) - min(ratios)
        logger.debug("normalization nu=%d ratios=%s", nu, ratios)
        records.append({
            "nu": nu,
            "norm_analytic": analytic,
            "ratios": ratios,
            "spread": abs(spread / ratios[-1]),
        })
    return records
