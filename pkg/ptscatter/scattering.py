"""
Continuum states and the s-wave S-matrix of the rationally extended potential.

The regular scattering solution is the bound-state formula continued to the
complex degree nu -> A + ik. Its large-r form is proportional to
S e^{ikr} - e^{-ikr}; S is available three ways:

    s_matrix_from_asymptotics  ratio of the large-r coefficients P, Q, a, b, c
    s_matrix                   the simplified gamma-function closed form
    oracle.extract_s_numeric   direct integration (separate module)

Sign convention: with psi ~ S e^{ikr} - e^{-ikr} the simplified closed form is
minus the bare gamma product. bare_gamma_product() exposes the unsigned value.
"""

from __future__ import annotations

import cmath
import functools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from .exceptions import (
    DegenerateParameterError,
    FitError,
    GammaPoleError,
    RadialDomainError,
    ThresholdError,
)
from .potential import PotentialKind, PotentialParams
from .specfun import gamma_ratio, hyp2f1, x1_combination
from .spectrum import nu_max

logger = logging.getLogger(__name__)

K_MIN = 1e-3
POLE_OFFSET = 1e-7
POLE_MAGNITUDE = 1e6
FIT_MIN_SAMPLES = 8
FIT_SAMPLES = 64
FIT_R_MIN = 15.0

_LN2 = math.log(2.0)
_LOG_MIN = math.log(np.finfo(float).tiny)


@dataclass(frozen=True)
class ScatteringPoint:
    k: float
    s_value: complex
    phase_shift: float
    energy: float


@dataclass(frozen=True)
class MatchCoefficients:
    """Large-r coefficients of the continued Jacobi functions.

    coef_b is unrelated to the X1 shift point JacobiParams.jacobi_b.
    coef_d belongs to the subleading branch and does not enter S.
    """

    coef_P: complex
    coef_Q: complex
    coef_a: complex
    coef_b: complex
    coef_c: complex
    coef_d: complex


@dataclass(frozen=True)
class PolePoint:
    nu: int
    k_pole: complex
    energy: float
    magnitude: float
    classification: str


def _check_momentum(k: float) -> float:
    k = float(k)
    if not (k > K_MIN):
        raise ThresholdError(f"scattering momentum must exceed k_min={K_MIN:g}, got k={k}")
    return k


# ============================================================================
# CONTINUED JACOBI FUNCTIONS AND THE SCATTERING WAVEFUNCTION
# ============================================================================

def complexified_jacobi(params: PotentialParams, k: float, degree_shift: int, r: float) -> complex:
    """Jacobi function of degree A + ik + degree_shift at cosh r.

    Gamma(nu+alpha+1) / (Gamma(nu+1) Gamma(alpha+1))
        * 2F1(-nu, nu+alpha+beta+1; alpha+1; (1 - cosh r)/2)

    Args:
        degree_shift: 0 or -1.
    """
    if degree_shift not in (0, -1):
        raise DegenerateParameterError(f"degree_shift must be 0 or -1, got {degree_shift}")
    if not (r > 0.0):
        raise RadialDomainError(f"radial coordinate must satisfy r > 0, got {r}")
    jp = params.jacobi()
    nu = complex(params.A + degree_shift, k)
    prefactor = gamma_ratio([nu + jp.alpha + 1.0], [nu + 1.0, jp.alpha + 1.0])
    z = -math.sinh(r / 2.0) ** 2
    return prefactor * hyp2f1(-nu, nu + jp.alpha + jp.beta + 1.0, jp.alpha + 1.0, z)


def scattering_wavefunction(params: PotentialParams, k: float, r: float) -> complex:
    """Regular continuum solution psi_k(r), normalized with N_k = C_1 = 1.

    Behaves like r^(B-A) at the origin and like a multiple of
    S e^{ikr} - e^{-ikr} at large r.

    Raises:
        ThresholdError: If k <= 0.
        RadialDomainError: If r <= 0, or r is so large that cosh r or the
            continued Jacobi terms leave the double range.
    """
    if not (k > 0.0):
        raise ThresholdError(f"scattering momentum must be positive, got k={k}")
    if not (r > 0.0):
        raise RadialDomainError(f"radial coordinate must satisfy r > 0, got {r}")
    try:
        value = _scattering_wavefunction(params, k, r)
    except OverflowError as exc:
        raise RadialDomainError(f"psi_k leaves the double range at r={r}") from exc
    if not cmath.isfinite(value):
        raise RadialDomainError(f"psi_k leaves the double range at r={r}")
    return value


def _scattering_wavefunction(params: PotentialParams, k: float, r: float) -> complex:
    a, b = params.A, params.B
    x = math.cosh(r)
    log_envelope = (b - a) * math.log(math.sinh(r / 2.0)) - (b + a) * math.log(math.cosh(r / 2.0)) - a * _LN2
    den = 2.0 * b * x - 2.0 * a - 1.0
    s = complex(-1.0, 2.0 * k)
    combo = x1_combination(
        x,
        params.jacobi().jacobi_b,
        s,
        complexified_jacobi(params, k, 0, r),
        complexified_jacobi(params, k, -1, r),
    )
    if log_envelope < _LOG_MIN:
        raise OverflowError(f"envelope underflows at r={r}")
    return math.exp(log_envelope) * combo / den


def match_coefficients(params: PotentialParams, k: float) -> MatchCoefficients:
    """P, Q, a, b, c, d with (A+ik)! read as Gamma(A+ik+1)."""
    if not (k > 0.0):
        raise ThresholdError(f"scattering momentum must be positive, got k={k}")
    a, b = params.A, params.B
    ik = 1j * k
    g = b - a + 0.5
    return MatchCoefficients(
        coef_P=gamma_ratio([b + ik + 0.5], [a + ik + 1.0, g]),
        coef_Q=gamma_ratio([b + ik - 0.5], [a + ik, g]),
        coef_a=gamma_ratio([g, -2.0 * ik], [-a - ik, b - ik + 0.5]),
        coef_b=gamma_ratio([g, 2.0 * ik], [-a + ik, b + ik + 0.5]),
        coef_c=gamma_ratio([g, -2.0 * ik + 2.0], [-a - ik + 1.0, b - ik + 1.5]),
        coef_d=gamma_ratio([g, 2.0 * ik - 2.0], [-a + ik - 1.0, b + ik - 0.5]),
    )


# ============================================================================
# S-MATRIX
# ============================================================================

def rational_factor(params: PotentialParams, k: complex) -> complex:
    """[B^2 - (ik - 1/2)^2] / [B^2 - (ik + 1/2)^2]."""
    ik = 1j * complex(k)
    b2 = params.B * params.B
    return (b2 - (ik - 0.5) ** 2) / (b2 - (ik + 0.5) ** 2)


def bare_gamma_product(params: PotentialParams, k: complex, rational: bool = True) -> complex:
    """Gamma(2ik) Gamma(-A-ik) Gamma(B-ik+1/2) 2^{-4ik} / [Gamma(-A+ik) Gamma(-2ik) Gamma(B+ik+1/2)].

    Multiplied by rational_factor() when ``rational`` is set. This is -S.
    """
    a, b = params.A, params.B
    ik = 1j * complex(k)
    value = gamma_ratio([2.0 * ik, -a - ik, b - ik + 0.5], [-a + ik, -2.0 * ik, b + ik + 0.5])
    value *= cmath.exp(-4.0 * ik * _LN2)
    if rational:
        value *= rational_factor(params, k)
    return value


def s_matrix_continued(params: PotentialParams, k: complex, rational: bool = True) -> complex:
    """Closed-form S at any complex k off the gamma poles."""
    return -bare_gamma_product(params, k, rational)


def s_matrix(params: PotentialParams, k: float) -> complex:
    """S-matrix of the extended potential at real k > k_min."""
    return s_matrix_continued(params, _check_momentum(k), rational=True)


def s_matrix_gpt(params: PotentialParams, k: float) -> complex:
    """S-matrix of the GPT potential at real k > k_min."""
    return s_matrix_continued(params, _check_momentum(k), rational=False)


def s_matrix_for(kind: PotentialKind, params: PotentialParams, k: float) -> complex:
    if kind is PotentialKind.GPT:
        return s_matrix_gpt(params, k)
    return s_matrix(params, k)


def s_matrix_from_asymptotics(params: PotentialParams, k: float) -> complex:
    """bP(1-2ik) 2^{-4ik} / [aP(2ik-1) + Qc] from the large-r coefficients."""
    k = _check_momentum(k)
    m = match_coefficients(params, k)
    ik = 1j * k
    numerator = m.coef_b * m.coef_P * (1.0 - 2.0 * ik) * cmath.exp(-4.0 * ik * _LN2)
    return numerator / (m.coef_a * m.coef_P * (2.0 * ik - 1.0) + m.coef_Q * m.coef_c)


def phase_from_s(s_value: complex) -> float:
    """delta = arg(S)/2 in (-pi/2, pi/2]."""
    delta = cmath.phase(s_value) / 2.0
    if delta <= -math.pi / 2.0:
        delta += math.pi
    return delta


def phase_shift(params: PotentialParams, k: float, kind: PotentialKind = PotentialKind.EXTENDED) -> float:
    return phase_from_s(s_matrix_for(kind, params, k))


def unwrap_phases(deltas: Sequence[float]) -> np.ndarray:
    """Continuous branch of a phase-shift sweep, continued modulo pi."""
    return np.unwrap(2.0 * np.asarray(deltas, dtype=float)) / 2.0


def scattering_point(
    params: PotentialParams,
    k: float,
    kind: PotentialKind = PotentialKind.EXTENDED,
) -> ScatteringPoint:
    s_value = s_matrix_for(kind, params, k)
    return ScatteringPoint(float(k), s_value, phase_from_s(s_value), params.A * params.A + k * k)


def sweep(
    params: PotentialParams,
    k_values: Sequence[float],
    kind: PotentialKind = PotentialKind.EXTENDED,
    workers: Optional[int] = None,
) -> List[ScatteringPoint]:
    """Evaluate scattering_point over k_values, optionally on a thread pool.

    Results come back in input order and do not depend on ``workers``.
    """
    ks = [float(k) for k in k_values]
    if not workers or workers <= 1:
        return [scattering_point(params, k, kind) for k in ks]
    logger.debug("sweep: %d points on %d workers", len(ks), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(functools.partial(scattering_point, params, kind=kind), ks))


# ============================================================================
# POLES
# ============================================================================

def probe_magnitude(params: PotentialParams, k: complex, offset: float = POLE_OFFSET) -> float:
    """|S| at k + offset along the real axis."""
    try:
        return abs(s_matrix_continued(params, complex(k) + offset))
    except (GammaPoleError, ZeroDivisionError):
        return math.inf


def classify_pole(params: PotentialParams, k: complex, offset: float = POLE_OFFSET) -> str:
    """'bound', 'lower-half-plane' or 'regular' from an |S| probe near k."""
    if probe_magnitude(params, k, offset) <= POLE_MAGNITUDE:
        return "regular"
    return "bound" if complex(k).imag > 0.0 else "lower-half-plane"


def _pole_point(params: PotentialParams, nu: int) -> PolePoint:
    a = params.A
    k_pole = complex(0.0, a - nu)
    return PolePoint(
        nu=nu,
        k_pole=k_pole,
        energy=a * a + (k_pole * k_pole).real,
        magnitude=probe_magnitude(params, k_pole),
        classification=classify_pole(params, k_pole),
    )


def pole_map(params: PotentialParams) -> List[PolePoint]:
    """Poles k = i(A - nu), nu = 0..nu_max, with |S| probes."""
    return [_pole_point(params, nu) for nu in range(nu_max(params) + 1)]


def beyond_spectrum_probe(params: PotentialParams) -> PolePoint:
    """Probe at k = i(A - nu_max - 1), which must not classify as bound."""
    return _pole_point(params, nu_max(params) + 1)


def rational_pole_probes(params: PotentialParams) -> List[tuple]:
    """Classify the zeros of the rational factor's denominator, k = +-i(B -+ 1/2) pairs."""
    points = [complex(0.0, params.B + 0.5), complex(0.0, -(params.B - 0.5))]
    return [(k, probe_magnitude(params, k), classify_pole(params, k)) for k in points]


# ============================================================================
# ASYMPTOTIC CONSISTENCY
# ============================================================================

def asymptotic_residual(
    params: PotentialParams,
    k: float,
    r_probe: float,
    samples: int = FIT_SAMPLES,
) -> float:
    """Relative residual of fitting psi_k to c [S e^{ikr} - e^{-ikr}] on [r_probe, r_probe + 2pi/k].

    Raises:
        FitError: If fewer than 8 samples are requested or r_probe < 15.
    """
    if samples < FIT_MIN_SAMPLES:
        raise FitError(f"asymptotic fit needs at least {FIT_MIN_SAMPLES} samples, got {samples}")
    if not (r_probe >= FIT_R_MIN):
        raise FitError(f"asymptotic fit needs r_probe >= {FIT_R_MIN}, got {r_probe}")
    k = _check_momentum(k)
    r = np.linspace(r_probe, r_probe + 2.0 * math.pi / k, samples)
    psi = np.array([scattering_wavefunction(params, k, x) for x in r])
    s_value = s_matrix(params, k)
    basis = s_value * np.exp(1j * k * r) - np.exp(-1j * k * r)
    coef, _, _, _ = np.linalg.lstsq(basis[:, None], psi, rcond=None)
    residual = psi - basis * coef[0]
    return float(np.linalg.norm(residual) / np.linalg.norm(psi))
