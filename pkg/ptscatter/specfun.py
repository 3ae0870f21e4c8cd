"""
Special functions on the domains the scattering problem needs.

Complex log-gamma and gamma ratios, the Gauss hypergeometric function on the
negative real ray z <= 0 with complex parameters, Jacobi polynomials by the
three-term recurrence, and X1 exceptional Jacobi polynomials.

Gamma products are always formed in log space so that ratios of very large
gammas (|Im z| up to ~50) neither overflow nor lose their phase.
"""

from __future__ import annotations

import cmath
import logging
import math
import sys
from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np
from numpy.typing import ArrayLike
from scipy import special

from .exceptions import (
    DegenerateParameterError,
    GammaOverflowError,
    GammaPoleError,
    RadialDomainError,
    SeriesConvergenceError,
)

logger = logging.getLogger(__name__)

Number = Union[int, float, complex]

POLE_TOLERANCE = 1e-12
SERIES_MAX_TERMS = 10_000
SERIES_TOLERANCE = 1e-16
SERIES_QUIET_TERMS = 3
INTEGER_TOLERANCE = 1e-8
PFAFF_LIMIT = -0.5
INVERSE_LIMIT = -2.0

_LOG_MAX = math.log(sys.float_info.max)
_LOG_MIN = math.log(sys.float_info.min * sys.float_info.epsilon)


# ============================================================================
# GAMMA FUNCTION
# ============================================================================

def _pole_index(z: complex, tol: float = POLE_TOLERANCE) -> Optional[int]:
    """Return n when z lies within tol of the pole at -n, else None."""
    n = round(z.real)
    if n <= 0 and abs(z - n) < tol:
        return -n
    return None


def is_gamma_pole(z: Number, tol: float = POLE_TOLERANCE) -> bool:
    """True when z is within tol of a non-positive integer."""
    return _pole_index(complex(z), tol) is not None


def log_gamma(z: Number) -> complex:
    """Principal branch of log Gamma(z) for complex z.

    Args:
        z: Argument, not on a pole.

    Returns:
        log Gamma(z); the imaginary part is continuous away from the
        negative real axis.

    Raises:
        GammaPoleError: If z is within 1e-12 of 0, -1, -2, ...
    """
    z = complex(z)
    if _pole_index(z) is not None:
        raise GammaPoleError(f"log_gamma: argument {z} is a pole of Gamma")
    value = complex(special.loggamma(z))
    if not cmath.isfinite(value):
        raise GammaOverflowError(f"log_gamma: non-finite result at {z}")
    return value


def _log_residue(n: int) -> complex:
    # Res Gamma at -n is (-1)^n / n!
    return complex(-math.lgamma(n + 1), math.pi * (n % 2))


def gamma_ratio(
    numerators: Iterable[Number],
    denominators: Iterable[Number],
    residues: bool = False,
) -> complex:
    """prod Gamma(numerators) / prod Gamma(denominators), computed in log space.

    An argument on a pole, numerator or denominator, is an error unless
    ``residues`` is set. Then every pole argument is replaced by its residue
    and the net pole order decides the result: infinite, zero, or the finite
    limit taken with all pole arguments approaching at the same rate.

    Raises:
        GammaPoleError: Any argument on a pole without ``residues``.
        GammaOverflowError: |result| beyond the double range.
    """
    total = 0j
    order = 0
    for z in numerators:
        z = complex(z)
        n = _pole_index(z)
        if n is None:
            total += log_gamma(z)
        elif residues:
            total += _log_residue(n)
            order += 1
        else:
            raise GammaPoleError(f"gamma_ratio: numerator argument {z} is a pole")
    for z in denominators:
        z = complex(z)
        n = _pole_index(z)
        if n is None:
            total -= log_gamma(z)
        elif residues:
            total -= _log_residue(n)
            order -= 1
        else:
            raise GammaPoleError(f"gamma_ratio: denominator argument {z} is a pole")

    if order < 0:
        return 0j
    if order > 0:
        return complex(math.inf, 0.0)
    if total.real > _LOG_MAX:
        raise GammaOverflowError(
            f"gamma_ratio: log-magnitude {total.real:.6g} exceeds double range"
        )
    if total.real < _LOG_MIN:
        return 0j
    return cmath.exp(total)


# ============================================================================
# GAUSS HYPERGEOMETRIC FUNCTION ON z <= 0
# ============================================================================

def power_series_2f1(
    a: Number,
    b: Number,
    c: Number,
    w: Number,
    max_terms: int = SERIES_MAX_TERMS,
) -> complex:
    """Direct Gauss series sum_n (a)_n (b)_n / ((c)_n n!) w^n for |w| < 1.

    Stops once the relative size of the latest term stays below 1e-16 for
    three consecutive terms.

    Raises:
        RadialDomainError: If |w| >= 1.
        GammaPoleError: If c is a non-positive integer.
        SeriesConvergenceError: If max_terms is exhausted.
    """
    a, b, c, w = complex(a), complex(b), complex(c), complex(w)
    if abs(w) >= 1.0:
        raise RadialDomainError(f"power series needs |w| < 1, got {w}")
    if _pole_index(c) is not None:
        raise GammaPoleError(f"2F1 lower parameter c={c} is a non-positive integer")

    term = 1 + 0j
    total = 1 + 0j
    quiet = 0
    for n in range(max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * w
        total += term
        if abs(term) <= SERIES_TOLERANCE * abs(total):
            quiet += 1
            if quiet >= SERIES_QUIET_TERMS:
                return total
        else:
            quiet = 0
    raise SeriesConvergenceError(
        f"2F1 series did not converge in {max_terms} terms "
        f"(a={a}, b={b}, c={c}, w={w})"
    )


def _finite_sum(a: complex, b: complex, c: complex, z: float, degree: int) -> complex:
    term = 1 + 0j
    total = 1 + 0j
    for n in range(degree):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total += term
    return total


def _pfaff(a: complex, b: complex, c: complex, z: float, max_terms: int) -> complex:
    # F(a,b;c;z) = (1-z)^(-a) F(a, c-b; c; z/(z-1))
    w = z / (z - 1.0)
    return cmath.exp(-a * math.log1p(-z)) * power_series_2f1(a, c - b, c, w, max_terms)


def _inverse_argument(a: complex, b: complex, c: complex, z: float, max_terms: int) -> complex:
    # Connection to 1/z, valid for a - b not an integer.
    log_x = math.log(-z)
    w = 1.0 / z
    total = 0j
    for p, q in ((a, b), (b, a)):
        # 1/Gamma vanishes on a pole, so the term drops out.
        if is_gamma_pole(q) or is_gamma_pole(c - p):
            continue
        coeff = gamma_ratio([c, q - p], [q, c - p])
        total += coeff * cmath.exp(-p * log_x) * power_series_2f1(p, p - c + 1, p - q + 1, w, max_terms)
    return total


def _near_integer(z: complex, tol: float = INTEGER_TOLERANCE) -> bool:
    return abs(z - round(z.real)) < tol


def hyp2f1(
    a: Number,
    b: Number,
    c: Number,
    z: float,
    max_terms: int = SERIES_MAX_TERMS,
) -> complex:
    """Gauss hypergeometric 2F1(a, b; c; z) for complex a, b, c and real z <= 0.

    Route by argument: a terminating finite sum when a or b is a non-positive
    integer; the direct series on [-1/2, 0]; the Pfaff transformation on
    [-2, -1/2); the 1/z connection below -2. When a - b is within 1e-8 of an
    integer the connection is singular and Pfaff is used with the full term
    budget instead.

    Args:
        a, b: Upper parameters.
        c: Lower parameter, not a non-positive integer.
        z: Real argument, z <= 0.
        max_terms: Series term budget.

    Returns:
        The principal value of 2F1 as a complex number.

    Raises:
        RadialDomainError: If z > 0.
        GammaPoleError: If c is a non-positive integer.
        SeriesConvergenceError: If a series exhausts its budget.
    """
    a, b, c = complex(a), complex(b), complex(c)
    z = float(z)
    if z > 0.0:
        raise RadialDomainError(f"hyp2f1 is evaluated on z <= 0 only, got z={z}")
    if _pole_index(c) is not None:
        raise GammaPoleError(f"2F1 lower parameter c={c} is a non-positive integer")
    if z == 0.0:
        return 1 + 0j

    degrees = [n for n in (_pole_index(a), _pole_index(b)) if n is not None]
    if degrees:
        return _finite_sum(a, b, c, z, min(degrees))
    if z >= PFAFF_LIMIT:
        return power_series_2f1(a, b, c, z, max_terms)
    if z >= INVERSE_LIMIT:
        return _pfaff(a, b, c, z, max_terms)
    if _near_integer(a - b):
        logger.debug("hyp2f1: a-b=%s near integer at z=%g, using Pfaff", a - b, z)
        return _pfaff(a, b, c, z, max_terms)
    return _inverse_argument(a, b, c, z, max_terms)


# ============================================================================
# JACOBI AND X1 JACOBI POLYNOMIALS
# ============================================================================

@dataclass(frozen=True)
class JacobiParams:
    """Jacobi parameters (alpha, beta); beta may be < -1."""

    alpha: float
    beta: float

    @property
    def jacobi_b(self) -> float:
        """b = (beta + alpha) / (beta - alpha), the X1 shift point."""
        if self.beta == self.alpha:
            raise DegenerateParameterError("X1 Jacobi needs beta != alpha")
        return (self.beta + self.alpha) / (self.beta - self.alpha)


def _as_output(values: np.ndarray):
    values = np.asarray(values)
    return values[()] if values.ndim == 0 else values


def _pochhammer(z: float, k: int) -> float:
    return math.prod(z + j for j in range(k))


def _jacobi_sum(n: int, alpha: float, beta: float, x: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Explicit sum; stays finite when 1 + alpha is a non-positive integer."""
    half = (w - x) / 2.0
    total = np.zeros_like(x)
    for k in range(n + 1):
        upper = math.prod(alpha + 1 + j for j in range(k, n)) / math.factorial(n)
        coeff = upper * _pochhammer(-n, k) * _pochhammer(n + alpha + beta + 1, k) / math.factorial(k)
        total = total + coeff * half ** k * w ** (n - k)
    return total


def _jacobi_homogeneous(n: int, alpha: float, beta: float, x: np.ndarray, w: np.ndarray) -> np.ndarray:
    # w^n P_n(x / w); w = 1 gives P_n(x), x = 1 gives t^n P_n(1 / t).
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev

    ab = alpha + beta
    p = (alpha + 1.0) * w + (ab + 2.0) * (x - w) / 2.0
    for m in range(2, n + 1):
        lead = 2.0 * m * (m + ab) * (2.0 * m + ab - 2.0)
        scale = 2.0 * m * (m + abs(ab) + 1.0) * (2.0 * m + abs(ab) + 2.0)
        if abs(lead) < 1e-10 * scale:
            logger.debug("jacobi_poly: recurrence degenerate at m=%d, using explicit sum", m)
            return _jacobi_sum(n, alpha, beta, x, w)
        mid = (2.0 * m + ab - 1.0) * ((2.0 * m + ab) * (2.0 * m + ab - 2.0) * x + (alpha * alpha - beta * beta) * w)
        low = 2.0 * (m + alpha - 1.0) * (m + beta - 1.0) * (2.0 * m + ab) * w * w
        p_prev, p = p, (mid * p - low * p_prev) / lead
    return p


def jacobi_poly(n: int, alpha: float, beta: float, x: ArrayLike):
    """Jacobi polynomial P_n^(alpha,beta)(x) by the three-term recurrence.

    Works for any real alpha, beta (including beta < -1) and any real x,
    scalar or array. If a leading recurrence coefficient vanishes the
    explicit finite sum is used instead.

    Raises:
        DegenerateParameterError: If n < 0.
        GammaOverflowError: If the value overflows.
    """
    if n < 0:
        raise DegenerateParameterError(f"Jacobi degree must be >= 0, got {n}")
    x = np.asarray(x, dtype=float)
    p = _jacobi_homogeneous(n, alpha, beta, x, np.ones_like(x))
    if not np.all(np.isfinite(p)):
        raise GammaOverflowError(f"jacobi_poly: P_{n} overflowed")
    return _as_output(p)


def x1_combination(x, b, s, p_nu, p_nu_minus_1):
    """[((b - x) s + 2b) P_nu - 2 P_{nu-1}] / (2 s), s = alpha + beta + 2 nu.

    Shared by the polynomial case and the continued (complex-degree) case.
    """
    return (((b - x) * s + 2.0 * b) * p_nu - 2.0 * p_nu_minus_1) / (2.0 * s)


def _x1_homogeneous(n: int, params: JacobiParams, x: np.ndarray, w: np.ndarray) -> np.ndarray:
    if n < 1:
        raise DegenerateParameterError(f"X1 Jacobi degree must be >= 1, got {n}")
    b = params.jacobi_b
    s = params.alpha + params.beta + 2.0 * (n - 1)
    if abs(s) < POLE_TOLERANCE:
        raise DegenerateParameterError(
            f"X1 Jacobi degree {n}: alpha + beta + 2n - 2 vanishes"
        )
    p_nu = _jacobi_homogeneous(n - 1, params.alpha, params.beta, x, w)
    p_prev = _jacobi_homogeneous(n - 2, params.alpha, params.beta, x, w) if n >= 2 else np.zeros_like(x)
    return (((b * w - x) * s + 2.0 * b * w) * p_nu - 2.0 * w * w * p_prev) / (2.0 * s)


def x1_jacobi(n: int, params: JacobiParams, x: ArrayLike):
    """X1 exceptional Jacobi polynomial of degree n >= 1.

    P^_n = -(x - b) P_{n-1} / 2 + (b P_{n-1} - P_{n-2}) / (alpha + beta + 2n - 2),
    with P_{-1} = 0.

    Raises:
        DegenerateParameterError: If n < 1, beta == alpha, or
            alpha + beta + 2n - 2 == 0.
        GammaOverflowError: If the value overflows.
    """
    x = np.asarray(x, dtype=float)
    p = _x1_homogeneous(n, params, x, np.ones_like(x))
    if not np.all(np.isfinite(p)):
        raise GammaOverflowError(f"x1_jacobi: degree {n} overflowed")
    return _as_output(p)


def x1_jacobi_scaled(n: int, params: JacobiParams, t: ArrayLike):
    """t^n P^_n(1/t), finite down to t = 0 where it is the leading coefficient.

    Evaluates the X1 polynomial at x = cosh r through t = sech r for radii
    where cosh r itself is out of range.
    """
    t = np.asarray(t, dtype=float)
    return _as_output(_x1_homogeneous(n, params, np.ones_like(t), t))
