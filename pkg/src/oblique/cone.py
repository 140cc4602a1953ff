"""Oblique circular cone: hull of the unit disk at z=0 and the apex (0, a, b).

The mean-curvature and edge integrals are evaluated through principal-branch
complex square roots and logarithms.  Their two terms are complex conjugates,
so the sum is real; the leftover imaginary part is checked, then dropped.

A note for readers of older literature: the lateral area of the right cone is
pi*sqrt(1+b^2), not 2*pi*sqrt(1+b^2); integrating the slant length against the
base circumference overcounts by a factor of two.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .base import BodyMeasures, BranchError, ConeGeom, assemble_mean_width
from .elliptic import ellip_e, ellip_k, ellip_pi

__all__ = [
    "ConeGeom", "ConeAuxiliaries", "cone_auxiliaries", "cone_volume", "cone_area",
    "cone_imc", "cone_edge_term", "cone_mean_width", "assemble_mean_width",
    "cone_measures", "complex_imc", "complex_edge_integral",
]

IMAG_LIMIT = 1e-10


@dataclass(frozen=True)
class ConeAuxiliaries:
    s0: float
    s1: float
    c0: float
    c1: float
    one_minus_c0: float


def cone_auxiliaries(g: ConeGeom) -> ConeAuxiliaries:
    """s0, s1, c0, c1 of the elliptic area formula.

    c0, c1 and 1 - c0 are computed from the identities
    ``(s0 s1)^2 - (1 - a^2 + b^2)^2 = 4 a^2 b^2`` and
    ``(s0 s1)^2 - (1 + a^2 + b^2)^2 = -4 a^2`` so that none of them suffers
    cancellation near a = 0 or b = 0.
    """
    a, b = g.a, g.b
    s0 = math.hypot(1.0 - a, b)
    s1 = math.hypot(1.0 + a, b)
    p = s0 * s1
    q = 1.0 - a * a + b * b
    r = 1.0 + a * a + b * b
    c1 = -2.0 * a * a / (p * (p + r))
    if q >= 0:
        c0 = 2.0 * a * a * b * b / (p * (p + q))
        one_minus_c0 = 0.5 * (1.0 + q / p)
    else:
        c0 = 0.5 * (1.0 - q / p)
        one_minus_c0 = 2.0 * a * a * b * b / (p * (p - q))
    return ConeAuxiliaries(s0, s1, c0, c1, one_minus_c0)


def cone_volume(g: ConeGeom) -> float:
    return math.pi * g.b / 3.0


def cone_area(g: ConeGeom) -> tuple[float, float]:
    """(lateral, total) area; total = pi + 2 sqrt(s0 s1) [E - K + (1 - c1) Pi]."""
    aux = cone_auxiliaries(g)
    m, mc = aux.c0, aux.one_minus_c0
    bracket = (ellip_e(m, complement=mc) - ellip_k(m, complement=mc)
               + (1.0 - aux.c1) * ellip_pi(aux.c1, m, complement=mc))
    lateral = 2.0 * math.sqrt(aux.s0 * aux.s1) * bracket
    return lateral, lateral + math.pi


def _real(z: complex, what: str) -> float:
    if abs(z.imag) > IMAG_LIMIT * max(1.0, abs(z.real)):
        raise BranchError(f"{what}: imaginary residue {z.imag:.3e}")
    return z.real


def complex_imc(g: ConeGeom) -> complex:
    """Integrated mean curvature before the imaginary part is discarded."""
    a, b = g.a, g.b
    return 0.5 * (cmath.sqrt(a * a + (b - 1j) ** 2) + cmath.sqrt(a * a + (b + 1j) ** 2)) * math.pi


def complex_edge_integral(g: ConeGeom) -> complex:
    """Dihedral-angle integral along one semicircular base arc, unreduced."""
    a, b = g.a, g.b
    lo = cmath.log(-1j + b + cmath.sqrt(a * a + (b - 1j) ** 2))
    hi = cmath.log(1j + b + cmath.sqrt(a * a + (b + 1j) ** 2))
    return 0.5 * (math.pi + 1j * lo - 1j * hi) * math.pi


def cone_imc(g: ConeGeom) -> float:
    return _real(complex_imc(g), "cone_imc")


def cone_edge_term(g: ConeGeom) -> float:
    """Angle integral over the whole base circle (both semicircular arcs)."""
    return 2.0 * _real(complex_edge_integral(g), "cone_edge_term")


def cone_mean_width(g: ConeGeom) -> float:
    return assemble_mean_width(cone_imc(g), [cone_edge_term(g)])


def cone_measures(g: ConeGeom) -> BodyMeasures:
    lateral, total = cone_area(g)
    imc = cone_imc(g)
    edge = cone_edge_term(g)
    return BodyMeasures(cone_volume(g), lateral, total, imc, edge,
                        assemble_mean_width(imc, [edge]))
