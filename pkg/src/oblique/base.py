"""Shared types: errors, tolerances, geometries and the measure record."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class QuadratureError(RuntimeError):
    """Adaptive integration did not reach the requested tolerance."""

    def __init__(self, message: str, estimate: float = math.nan, error: float = math.nan):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class RootError(RuntimeError):
    """Root finding failed (no sign change, or residual above tolerance)."""


class BranchError(ArithmeticError):
    """A conjugate-pair complex expression left a non-negligible imaginary part."""


def check_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class ToleranceConfig:
    """Accuracy targets shared by quadrature, root finding and the oracles.

    ``max_subdivisions`` caps the number of adaptive subintervals; exceeding
    it raises :class:`QuadratureError` instead of returning silently.
    """

    quad_rel: float = 1e-13
    quad_abs: float = 1e-14
    max_subdivisions: int = 1000
    root_tol: float = 1e-13
    oracle_rel: float = 1e-10
    mc_samples: int = 1_000_000
    grid_theta: int = 2048
    grid_phi: int = 4096

    def __post_init__(self):
        if not self.quad_rel >= 1e-14:
            raise DomainError("quad_rel must be >= 1e-14")
        if self.quad_abs < 0:
            raise DomainError("quad_abs must be >= 0")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be positive")


DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True)
class _Geom:
    a: float
    b: float

    def __post_init__(self):
        a = check_finite("a", self.a)
        b = check_finite("b", self.b)
        if a < 0:
            raise DomainError(f"a must be >= 0, got {a}")
        if b <= 0:
            raise DomainError(f"b must be > 0, got {b}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


class CylinderGeom(_Geom):
    """Hull of the unit disk at z=0 and its translate centred at (0, a, b)."""


class ConeGeom(_Geom):
    """Hull of the unit disk at z=0 and the apex (0, a, b)."""


@dataclass(frozen=True)
class BodyMeasures:
    volume: float
    area_lateral: float
    area_total: float
    integrated_mean_curvature: float
    edge_term: float
    mean_width: float

    def as_dict(self) -> dict:
        return asdict(self)


def assemble_mean_width(imc: float, edge_contributions) -> float:
    """Mean width from integrated mean curvature and edge-angle integrals.

    ``imc / (2 pi) + sum(edge_contributions) / (4 pi)``.
    """
    if imc < 0:
        raise DomainError(f"integrated mean curvature must be >= 0, got {imc}")
    total = 0.0
    for c in edge_contributions:
        if c < 0:
            raise DomainError(f"edge contribution must be >= 0, got {c}")
        total += c
    return imc / (2 * math.pi) + total / (4 * math.pi)
