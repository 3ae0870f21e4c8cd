"""Shared fixtures: parameter sets and cached shooting results."""

import pytest

from ptscatter import oracle, spectrum
from ptscatter.potential import PotentialKind, PotentialParams

FIXTURES = [(2.5, 4.0), (0.5, 2.0), (1.2, 3.7)]
K_VALUES = [0.1, 0.3, 1.0, 1.7, 3.0, 5.0]


@pytest.fixture(params=FIXTURES, ids=lambda p: f"A{p[0]}-B{p[1]}")
def params(request):
    return PotentialParams(*request.param)


@pytest.fixture
def deep():
    """Three bound states."""
    return PotentialParams(2.5, 4.0)


@pytest.fixture(scope="session")
def shot_spectra():
    """Shooting-method levels for every fixture and both potentials, computed once."""
    results = {}
    for a, b in FIXTURES:
        p = PotentialParams(a, b)
        top = spectrum.energy(p, spectrum.nu_max(p))
        e_max = 0.5 * (top + p.threshold)
        for kind in PotentialKind:
            results[(a, b, kind)] = oracle.shoot_spectrum(kind, p, e_max)
    return results
