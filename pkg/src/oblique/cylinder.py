"""Oblique circular cylinder: hull of two parallel unit disks.

The disks sit at z=0 (centre origin) and z=b (centre (0, a, b)).  Radius 1 is
fixed; for radius r scale a and b by 1/r, then lengths by r, areas by r^2 and
volumes by r^3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .base import BodyMeasures, CylinderGeom, assemble_mean_width
from .elliptic import ellip_e

__all__ = [
    "CylinderGeom", "SectionEllipse", "cyl_volume", "cyl_area", "cyl_imc",
    "cyl_edge_term", "cyl_mean_width", "cyl_section_ellipse", "cyl_measures",
]


@dataclass(frozen=True)
class SectionEllipse:
    semi_major: float
    semi_minor: float
    ecc_sq: float
    circumference: float


def _elements(g: CylinderGeom):
    # element length, eccentricity^2 and its complement, both cancellation-free
    s2 = g.a * g.a + g.b * g.b
    return math.sqrt(s2), g.a * g.a / s2, g.b * g.b / s2


def cyl_volume(g: CylinderGeom) -> float:
    return math.pi * g.b


def cyl_area(g: CylinderGeom) -> tuple[float, float]:
    """(lateral, total) surface area."""
    length, e2, e2c = _elements(g)
    lateral = 4.0 * length * ellip_e(e2, complement=e2c)
    return lateral, lateral + 2.0 * math.pi


def cyl_imc(g: CylinderGeom) -> float:
    """Integrated mean curvature of the lateral surface, pi*sqrt(a^2+b^2)."""
    return math.pi * math.hypot(g.a, g.b)


def cyl_edge_term(g: CylinderGeom) -> float:
    """Sum of dihedral-angle integrals over the four semicircular edges.

    Each contributes pi^2/2 regardless of (a, b).
    """
    return 2.0 * math.pi ** 2


def cyl_mean_width(g: CylinderGeom) -> float:
    return 0.5 * (math.hypot(g.a, g.b) + math.pi)


def cyl_section_ellipse(g: CylinderGeom) -> SectionEllipse:
    """Section of the lateral surface by a plane normal to the axis (0, a, b)."""
    length, e2, e2c = _elements(g)
    return SectionEllipse(1.0, g.b / length, e2, 4.0 * ellip_e(e2, complement=e2c))


def cyl_measures(g: CylinderGeom) -> BodyMeasures:
    lateral, total = cyl_area(g)
    imc = cyl_imc(g)
    edge = cyl_edge_term(g)
    return BodyMeasures(cyl_volume(g), lateral, total, imc, edge,
                        assemble_mean_width(imc, [edge]))
