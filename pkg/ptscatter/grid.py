"""Uniform radial grids on the half-line."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import RadialDomainError


@dataclass(frozen=True)
class RadialGrid:
    """Uniform grid r_min, r_min + h, ..., r_max with r_min > 0.

    Attributes:
        r_min: First grid point, strictly positive.
        r_max: Last grid point, greater than r_min.
        n_points: Number of points, at least 3.
    """

    r_min: float
    r_max: float
    n_points: int

    def __post_init__(self) -> None:
        if not (self.r_min > 0.0):
            raise RadialDomainError(f"grid must start at r_min > 0, got {self.r_min}")
        if not (self.r_max > self.r_min):
            raise RadialDomainError(
                f"grid needs r_max > r_min, got [{self.r_min}, {self.r_max}]"
            )
        if self.n_points < 3:
            raise RadialDomainError(f"grid needs at least 3 points, got {self.n_points}")

    @classmethod
    def with_step(cls, r_min: float, r_max: float, step: float) -> "RadialGrid":
        """Grid starting at r_min with spacing close to step, ending at or beyond r_max."""
        if not (step > 0.0):
            raise RadialDomainError(f"grid step must be positive, got {step}")
        n_intervals = max(2, int(math.ceil((r_max - r_min) / step - 1e-9)))
        return cls(r_min, r_min + n_intervals * step, n_intervals + 1)

    @property
    def step(self) -> float:
        return (self.r_max - self.r_min) / (self.n_points - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.n_points)

    def index_at(self, r: float) -> int:
        """Index of the grid point nearest to r, clipped to the grid."""
        i = int(round((r - self.r_min) / self.step))
        return min(max(i, 0), self.n_points - 1)
