"""
Exception hierarchy for ptscatter.

Every error raised on purpose by the library derives from PtscatterError,
so the command-line front end can turn it into exit status 1 with a
one-line message. Each class also inherits the closest builtin so callers
that only know about ValueError or IndexError keep working.
"""

from __future__ import annotations


class PtscatterError(Exception):
    """Base class for all ptscatter errors."""
    pass


# ============================================================================
# PARAMETER AND DOMAIN ERRORS
# ============================================================================

class ParameterError(PtscatterError, ValueError):
    """Raised when (A, B) violate the constraint B > A+1 > 1."""
    pass


class RadialDomainError(PtscatterError, ValueError):
    """Raised for r <= 0, or a hypergeometric argument off the ray z <= 0."""
    pass


class StateIndexError(PtscatterError, IndexError):
    """Raised when a bound-state index lies outside 0..nu_max."""
    pass


class ThresholdError(PtscatterError, ValueError):
    """Raised when a scattering momentum is at or below the threshold cut."""
    pass


class DegenerateParameterError(PtscatterError, ValueError):
    """Raised when a formula divides by a parameter combination that vanishes."""
    pass


# ============================================================================
# SPECIAL FUNCTION ERRORS
# ============================================================================

class GammaPoleError(PtscatterError, ZeroDivisionError):
    """Raised when a gamma argument sits on a pole (non-positive integer)."""
    pass


class GammaOverflowError(PtscatterError, OverflowError):
    """Raised when a result's magnitude leaves the double-precision range."""
    pass


class SeriesConvergenceError(PtscatterError, ArithmeticError):
    """Raised when a hypergeometric series exhausts its term budget."""
    pass


# ============================================================================
# NUMERICAL PROCEDURE ERRORS
# ============================================================================

class FitError(PtscatterError, ValueError):
    """Raised when an asymptotic least-squares window is too small to fit."""
    pass


class MatchingError(PtscatterError, ArithmeticError):
    """Raised when S-matrix extraction from a numerical solution is ill-posed."""
    pass


class ShootingError(PtscatterError, RuntimeError):
    """Raised when the shooting method cannot isolate an eigenvalue."""
    pass


class ConfigError(PtscatterError):
    """Raised when the YAML configuration cannot be loaded."""
    pass


class QuadratureResolutionWarning(UserWarning):
    """Emitted when step-halving shows a quadrature is under-resolved."""
    pass


class UsageError(PtscatterError, ValueError):
    """Raised for inconsistent command-line options (empty ranges, missing A/B)."""
    pass
