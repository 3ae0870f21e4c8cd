"""
ptscatter: bound states and s-wave scattering of the rationally extended
generalized Poschl-Teller potential.

    from ptscatter import PotentialParams, s_matrix
    s_matrix(PotentialParams(2.5, 4.0), 1.7)
"""

__version__ = "1.0.0"

from .exceptions import PtscatterError
from .grid import RadialGrid
from .potential import PotentialKind, PotentialParams
from .scattering import phase_shift, s_matrix, s_matrix_gpt
from .spectrum import bound_states, energy, nu_max

__all__ = [
    "PtscatterError",
    "PotentialKind",
    "PotentialParams",
    "RadialGrid",
    "bound_states",
    "energy",
    "nu_max",
    "phase_shift",
    "s_matrix",
    "s_matrix_gpt",
]
