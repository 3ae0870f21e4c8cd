"""
Verification report: every analytic result checked against an independent
route (finite differences, quadrature, Numerov integration, shooting, or a
second hypergeometric transformation).

Each check yields a CheckResult with status PASS, FAIL or INFO. INFO lines
carry measured findings that have no pass criterion, such as the ratio of
the closed-form normalization constant to the quadrature norm.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Sequence

import numpy as np

from . import oracle, potential, scattering, spectrum
from .config import tolerance
from .grid import RadialGrid
from .potential import PotentialKind, PotentialParams

logger = logging.getLogger(__name__)

PASS = "PASS"
FAIL = "FAIL"
INFO = "INFO"

KINDS = (PotentialKind.GPT, PotentialKind.EXTENDED)


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    measured: float
    tolerance: float
    detail: str = ""

    @property
    def failed(self) -> bool:
        return self.status == FAIL


def _below(name: str, measured: float, limit: float, detail: str = "") -> CheckResult:
    status = PASS if measured < limit else FAIL
    return CheckResult(name, status, float(measured), float(limit), detail)


def _above(name: str, measured: float, limit: float, detail: str = "") -> CheckResult:
    status = PASS if measured > limit else FAIL
    return CheckResult(name, status, float(measured), float(limit), detail)


def _info(name: str, measured: float, detail: str = "") -> CheckResult:
    return CheckResult(name, INFO, float(measured), math.nan, detail)


def _grid(settings: Dict[str, Any], key: str, default: Dict[str, float]) -> RadialGrid:
    layout = {**default, **settings.get(key, {})}
    if "step" in layout:
        return RadialGrid.with_step(layout["r_min"], layout["r_max"], layout["step"])
    return RadialGrid(layout["r_min"], layout["r_max"], int(layout["r_steps"]))


def _oracle_settings(config: Dict[str, Any]) -> Dict[str, float]:
    """Numerov grid start, step and shooting energy sampling from the oracle section."""
    section = config.get("oracle", {})
    return {
        "r_min": float(section.get("r_min", oracle.ORACLE_R_MIN)),
        "step": float(section.get("step", oracle.ORACLE_STEP)),
        "sampling": float(section.get("energy_sampling", oracle.ENERGY_SAMPLING)),
    }


# ============================================================================
# CHECK GROUPS
# ============================================================================

def _potential_checks(params: PotentialParams, label: str, config: Dict[str, Any]) -> Iterator[CheckResult]:
    settings = config.get("verify", {})
    fd_grid = _grid(settings, "susy_grid", {"r_min": 1.0, "r_max": 10.0, "step": 1e-4})
    for kind in KINDS:
        yield _below(
            f"{label} susy finite-difference {kind.value}",
            potential.susy_residual(kind, params, fd_grid),
            tolerance(config, "susy_fd", 1e-6),
        )

    r = _grid(settings, "identity_grid", {"r_min": 0.1, "r_max": 20.0, "r_steps": 2000}).points
    limit = tolerance(config, "susy_identity", 1e-10)
    exact_gpt = np.asarray(potential.v_from_w(PotentialKind.GPT, params, r))
    exact_ext = np.asarray(potential.v_from_w(PotentialKind.EXTENDED, params, r))
    yield _below(
        f"{label} closed potential = W^2 - W' gpt",
        np.max(np.abs(np.asarray(potential.closed_v_gpt(params, r)) - exact_gpt)),
        limit,
        "csch^2 reading",
    )
    yield _below(
        f"{label} closed potential = W^2 - W' extended",
        np.max(np.abs(np.asarray(potential.closed_v_extended(params, r)) - exact_ext)),
        limit,
        "csch^2 reading plus rational correction",
    )
    yield _info(
        f"{label} single-power csch reading deviation gpt",
        np.max(np.abs(np.asarray(potential.closed_v_gpt(params, r, squared_cosech=False)) - exact_gpt)),
        "csch^1 reading does not satisfy the SUSY identity",
    )
    yield _info(
        f"{label} single-power csch reading deviation extended",
        np.max(np.abs(np.asarray(potential.closed_v_extended(params, r, squared_cosech=False)) - exact_ext)),
        "csch^1 reading plus rational correction",
    )


def _spectrum_checks(params: PotentialParams, label: str, config: Dict[str, Any]) -> Iterator[CheckResult]:
    settings = config.get("verify", {})
    top = spectrum.nu_max(params)
    expected = [spectrum.energy(params, nu) for nu in range(top + 1)]
    e_max = 0.5 * (expected[-1] + params.threshold)
    numerov = _oracle_settings(config)
    grid = oracle.bound_state_grid(params, numerov["step"], numerov["r_min"])
    limit = tolerance(config, "isospectral", 1e-6)
    shot = {}
    for kind in KINDS:
        logger.info("[verify] shooting %s spectrum for %s", kind.value, label)
        found = oracle.shoot_spectrum(kind, params, e_max, grid, sampling=numerov["sampling"])
        shot[kind] = found
        if len(found) != len(expected):
            yield CheckResult(
                f"{label} isospectral shooting {kind.value}", FAIL, math.inf, limit,
                f"found {len(found)} levels, expected {len(expected)}",
            )
            continue
        deviation = max(abs(e - x) for e, x in zip(found, expected))
        yield _below(f"{label} isospectral shooting {kind.value}", deviation, limit,
                     "levels " + " ".join(f"{e:.9f}" for e in found))
    if all(len(shot[kind]) == len(expected) for kind in KINDS):
        yield _below(
            f"{label} gpt vs extended levels",
            max(abs(a - b) for a, b in zip(shot[PotentialKind.GPT], shot[PotentialKind.EXTENDED])),
            limit,
        )

    residual_grid = _grid(settings, "residual_grid", {"r_min": 0.05, "r_max": 20.0, "step": 1e-3})
    for nu in range(top + 1):
        yield _below(
            f"{label} schrodinger residual nu={nu}",
            spectrum.schrodinger_residual(params, nu, residual_grid),
            tolerance(config, "schrodinger", 1e-5),
        )

    gram = spectrum.orthonormality_matrix(params, spectrum.default_quadrature_grid(params))
    yield _below(
        f"{label} orthonormality",
        np.max(np.abs(gram - np.eye(len(gram)))),
        tolerance(config, "orthonormality", 1e-8),
    )

    steps = settings.get("quadrature_steps", [2e-3, 1e-3])
    grids = [spectrum.default_quadrature_grid(params, float(s)) for s in steps]
    for record in spectrum.normalization_audit(params, grids):
        nu = record["nu"]
        yield _below(
            f"{label} normalization ratio stable nu={nu}",
            record["spread"],
            tolerance(config, "normalization_refinement", 1e-8),
        )
        yield _info(
            f"{label} closed/quadrature normalization nu={nu}",
            record["ratios"][-1],
            f"closed-form N = {record['norm_analytic']:.12g}",
        )


def _scattering_checks(params: PotentialParams, label: str, config: Dict[str, Any]) -> Iterator[CheckResult]:
    settings = config.get("verify", {})
    ks = [float(k) for k in settings.get("k_values", [0.1, 0.3, 1.0, 1.7, 3.0, 5.0])]
    numerov = _oracle_settings(config)

    for kind in KINDS:
        phase_err = 0.0
        flux_err = 0.0
        for k in ks:
            grid = oracle.scattering_grid(kind, params, k, numerov["step"], numerov["r_min"])
            numeric = oracle.extract_s_numeric(kind, params, k, grid)
            analytic = scattering.s_matrix_for(kind, params, k)
            phase_err = max(phase_err, abs(cmath.phase(numeric / analytic)))
            flux_err = max(flux_err, abs(abs(numeric) - 1.0))
        yield _below(f"{label} numerov vs closed-form phase {kind.value}", phase_err,
                     tolerance(config, "oracle_phase", 1e-4))
        yield _below(f"{label} numerov flux |S|-1 {kind.value}", flux_err,
                     tolerance(config, "oracle_flux", 1e-6))

    closed = [scattering.s_matrix(params, k) for k in ks]
    gpt = [scattering.s_matrix_gpt(params, k) for k in ks]
    asym = [scattering.s_matrix_from_asymptotics(params, k) for k in ks]
    yield _below(
        f"{label} asymptotic-coefficient ratio = closed form",
        max(abs(x - s) / abs(s) for x, s in zip(asym, closed)),
        tolerance(config, "closed_form", 1e-10),
    )
    signs = [s / scattering.bare_gamma_product(params, k) for s, k in zip(closed, ks)]
    yield _info(
        f"{label} closed form / bare gamma product",
        float(np.mean([z.real for z in signs])),
        f"max imaginary part {max(abs(z.imag) for z in signs):.3g}",
    )
    yield _below(
        f"{label} unitarity",
        max(abs(abs(s) - 1.0) for s in closed + gpt),
        tolerance(config, "unitarity", 1e-10),
    )
    yield _below(
        f"{label} factorization",
        max(abs(s - g * scattering.rational_factor(params, k)) for s, g, k in zip(closed, gpt, ks)),
        tolerance(config, "factorization", 1e-12),
    )

    jp = params.jacobi()
    worst = 0.0
    for r in settings.get("connection_radii", [5.0, 10.0, 15.0]):
        z = -math.sinh(float(r) / 2.0) ** 2
        for k in ks:
            a = complex(-params.A, k)
            worst = max(worst, oracle.connection_formula_check(a, a.conjugate(), jp.alpha + 1.0, z))
    yield _below(f"{label} connection formula", worst, tolerance(config, "connection", 1e-8))

    probe = float(settings.get("asymptotic_probe", 20.0))
    yield _below(
        f"{label} asymptotic form at r={probe:g}",
        scattering.asymptotic_residual(params, 1.0, probe),
        tolerance(config, "asymptotic", 1e-5),
    )

    pole_limit = tolerance(config, "pole_magnitude", 1e6)
    for point in scattering.pole_map(params):
        yield _above(
            f"{label} pole |S| at k={point.k_pole.imag:g}i",
            point.magnitude,
            pole_limit,
            point.classification,
        )
        mismatch = abs(point.energy - spectrum.energy(params, point.nu))
        status = PASS if mismatch == 0.0 else FAIL
        yield CheckResult(f"{label} pole energy nu={point.nu}", status, mismatch, 0.0, f"E={point.energy:g}")
    beyond = scattering.beyond_spectrum_probe(params)
    yield CheckResult(
        f"{label} no bound pole at k={beyond.k_pole.imag:g}i",
        PASS if beyond.classification != "bound" else FAIL,
        beyond.magnitude,
        pole_limit,
        beyond.classification,
    )
    for k, magnitude, kind in scattering.rational_pole_probes(params):
        yield _info(f"{label} rational-factor point k={k.imag:g}i", magnitude, kind)


# ============================================================================
# DRIVER
# ============================================================================

def fixture_checks(params: PotentialParams, config: Dict[str, Any]) -> List[CheckResult]:
    label = f"A={params.A:g} B={params.B:g}"
    results: List[CheckResult] = []
    for phase, group in enumerate((_potential_checks, _scattering_checks, _spectrum_checks), start=1):
        logger.info("[verify] Phase %d: %s (%s)", phase, group.__name__.strip("_").replace("_", " "), label)
        results.extend(group(params, label, config))
    return results


def run_checks(fixtures: Sequence[PotentialParams], config: Dict[str, Any]) -> List[CheckResult]:
    results: List[CheckResult] = []
    for params in fixtures:
        results.extend(fixture_checks(params, config))
    failures = sum(1 for r in results if r.failed)
    logger.info("[verify] %d checks, %d failed", len(results), failures)
    return results


def any_failed(results: Sequence[CheckResult]) -> bool:
    return any(r.failed for r in results)
