"""The two half-cones cut off by the plane through the apex and the x-axis.

The cut plane ``-b y + a z = 0`` contains the apex and the base diameter whose
endpoints (+-1, 0, 0) are equidistant from it, so the cross-section is an
isosceles triangle.  ``SMALLER`` is the piece over the half-disk y >= 0 (the
side the apex leans towards, curve parameter v in [0, 1]); ``LARGER`` lies
over y <= 0 (v in [-1, 0]).

Per-side lateral areas and edge integrals have no closed form and come from
quadrature.  For a > 1 and small b the integrands change abruptly near
v = 1/a; that point is handed to the integrator as a breakpoint.
"""

from __future__ import annotations

import cmath
import enum
import math
import warnings
from dataclasses import asdict, dataclass

from .base import DEFAULT_TOL, ConeGeom, DomainError, ToleranceConfig, assemble_mean_width, check_finite
from .cone import IMAG_LIMIT, cone_imc
from .base import BranchError
from .quadrature import arcsine_integral

__all__ = [
    "HalfSide", "HalfConeMeasures", "half_ar_lateral", "half_j", "half_j_display", "half_j_quadrature",
    "half_l", "half_dihedral_angles", "half_mean_width", "half_measures",
    "ratio_ar_lateral_limit", "ratio_ar_lateral_limit_arccsc", "ratio_ar_total_limit",
    "ratio_ar_addendum_limit", "ratio_mw_limit", "instantaneous_ratios",
]

TINY_B = 1e-6


class HalfSide(str, enum.Enum):
    SMALLER = "smaller"
    LARGER = "larger"

    @property
    def v_range(self) -> tuple[float, float]:
        return (0.0, 1.0) if self is HalfSide.SMALLER else (-1.0, 0.0)


@dataclass(frozen=True)
class HalfConeMeasures:
    side: str
    j: float
    l: float
    base_angle: float
    leg_angle: float
    ar_lateral: float
    ar_with_base: float
    ar_with_base_and_triangle: float
    mean_width: float

    def as_dict(self) -> dict:
        return asdict(self)


def _side(side) -> HalfSide:
    try:
        return HalfSide(side)
    except ValueError:
        raise DomainError(f"side must be 'smaller' or 'larger', got {side!r}") from None


def _breakpoints(g: ConeGeom):
    """Points near v = 1/a where the half-cone integrands turn sharply."""
    a, b = g.a, g.b
    if a <= 1:
        return ()
    c = 1.0 / a
    if b < TINY_B:
        warnings.warn(f"b={b:g} is below {TINY_B:g}; quadrature near v=1/a is unreliable, "
                      "prefer the analytic b->0 limits", RuntimeWarning, stacklevel=3)
    pts = [c]
    # geometric ladder resolves a peak of width ~ b/a around 1/a
    w = b / a
    while w < 0.1:
        pts += [c - w, c + w]
        w *= 8.0
    return tuple(p for p in pts if 0 < p < 1)


def half_ar_lateral(g: ConeGeom, side, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Curved-surface area of one half-cone."""
    a, b = g.a, g.b
    lo, hi = _side(side).v_range
    return arcsine_integral(lambda v: math.hypot(1.0 - a * v, b), lo, hi, _breakpoints(g), tol)


def _j_integrand(a, b):
    return lambda v: (1.0 + a * a + b * b - 2.0 * a * v) * b / ((1.0 - a * v) ** 2 + b * b)


def half_j_quadrature(g: ConeGeom, side, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    lo, hi = _side(side).v_range
    return arcsine_integral(_j_integrand(g.a, g.b), lo, hi, _breakpoints(g), tol)


def _j0_complex(g: ConeGeom) -> complex:
    a, b = g.a, g.b
    sm = cmath.sqrt(a * a + (-1j + b) ** 2)
    sp = cmath.sqrt(a * a + (1j + b) ** 2)
    ipi2 = 0.5j * math.pi
    return 0.5j * (sm * (ipi2 - cmath.log(1j - b) + cmath.log(a + sm))
                   + sp * (ipi2 + cmath.log(-1j - b) - cmath.log(a + sp)))


def _j1_complex(g: ConeGeom) -> complex:
    a, b = g.a, g.b
    sm = cmath.sqrt(a * a + (-1j + b) ** 2)
    sp = cmath.sqrt(a * a + (1j + b) ** 2)
    m3 = -1.5j * math.pi
    return 0.5j * (sm * (m3 + cmath.log(1j - b) - cmath.log(a + sm))
                   + sp * (m3 - cmath.log(-1j - b) + cmath.log(a + sp)))


def _real(z: complex, what: str) -> float:
    if abs(z.imag) > IMAG_LIMIT * max(1.0, abs(z.real)):
        raise BranchError(f"{what}: imaginary residue {z.imag:.3e}")
    return z.real


def half_j(g: ConeGeom, side) -> float:
    """Integrated mean curvature of one half's curved surface.

    The larger side uses the complex closed form; the smaller side is the
    whole-cone value minus it.
    """
    j0 = _real(_j0_complex(g), "J0")
    if _side(side) is HalfSide.LARGER:
        return j0
    return cone_imc(g) - j0


def half_j_display(g: ConeGeom) -> float:
    """Smaller-side integral from its own complex expression (cross-check only)."""
    return _real(_j1_complex(g), "J1")


def half_l(g: ConeGeom, side, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Dihedral-angle integral along one half's semicircular base arc (both x-halves)."""
    a, b = g.a, g.b
    lo, hi = _side(side).v_range
    # arccos((av - 1)/sqrt((1-av)^2 + b^2)) written as atan2 to keep precision
    return 2.0 * arcsine_integral(lambda v: math.atan2(b, a * v - 1.0), lo, hi,
                                  _breakpoints(g), tol)


def half_dihedral_angles(g: ConeGeom, side) -> tuple[float, float]:
    """(base, leg) exterior dihedral angles at the triangle face.

    base: along the diameter, between the half-disk and the triangle.
    leg: along each slanted triangle edge, between the curved surface and the
    triangle.
    """
    a, b = g.a, g.b
    # arccos(a/sqrt(a^2+b^2)) and arccos(a/(sqrt(1+b^2) sqrt(a^2+b^2)))
    base = math.atan2(b, a)
    leg = math.atan2(b * math.sqrt(1.0 + a * a + b * b), a)
    if _side(side) is HalfSide.SMALLER:
        return math.pi - base, leg
    return base, math.pi - leg


def half_measures(g: ConeGeom, side, tol: ToleranceConfig = DEFAULT_TOL) -> HalfConeMeasures:
    side = _side(side)
    j = half_j(g, side)
    l = half_l(g, side, tol)
    base, leg = half_dihedral_angles(g, side)
    slant = math.sqrt(g.a * g.a + g.b * g.b + 1.0)
    mw = assemble_mean_width(j, [l, 2.0 * base, 2.0 * slant * leg])
    lateral = half_ar_lateral(g, side, tol)
    with_base = lateral + 0.5 * math.pi
    triangle = math.hypot(g.a, g.b)
    return HalfConeMeasures(side.value, j, l, base, leg, lateral, with_base,
                            with_base + triangle, mw)


def half_mean_width(g: ConeGeom, side, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    return half_measures(g, side, tol).mean_width


def instantaneous_ratios(g: ConeGeom, tol: ToleranceConfig = DEFAULT_TOL) -> dict:
    """Smaller/larger ratios of the four objectives at finite b."""
    s = half_measures(g, HalfSide.SMALLER, tol)
    t = half_measures(g, HalfSide.LARGER, tol)
    return {
        "ar_lateral": s.ar_lateral / t.ar_lateral,
        "ar_total": s.ar_with_base / t.ar_with_base,
        "ar_addendum": s.ar_with_base_and_triangle / t.ar_with_base_and_triangle,
        "mw": s.mean_width / t.mean_width,
    }


# -- b -> 0+ limits, a > 1 ---------------------------------------------------

def _check_a(a: float) -> float:
    a = check_finite("a", a)
    if a <= 1:
        raise DomainError(f"ratio limits need a > 1, got {a}")
    return a


def arcsec(a: float) -> float:
    return math.acos(1.0 / a)


def arccsc(a: float) -> float:
    return math.asin(1.0 / a)


def ratio_ar_lateral_limit(a: float) -> float:
    a = _check_a(a)
    return (math.pi - 2 * a + 4 * math.sqrt(a * a - 1) - 4 * arcsec(a)) / (math.pi + 2 * a)


def ratio_ar_lateral_limit_arccsc(a: float) -> float:
    """Same limit with arcsec(a) = pi/2 - arccsc(a) substituted."""
    a = _check_a(a)
    return (4 * arccsc(a) + 4 * math.sqrt(a * a - 1) - 2 * a - math.pi) / (math.pi + 2 * a)


def ratio_ar_total_limit(a: float) -> float:
    a = _check_a(a)
    return (-a + 2 * math.sqrt(a * a - 1) + 2 * arccsc(a)) / (math.pi + a)


def ratio_ar_addendum_limit(a: float) -> float:
    a = _check_a(a)
    return (2 * math.sqrt(a * a - 1) + 2 * arccsc(a)) / (math.pi + 2 * a)


def ratio_mw_limit(a: float) -> float:
    a = _check_a(a)
    num = 0.5 * math.sqrt(a * a - 1) + 0.5 * arccsc(a) + 0.5
    return num / (0.25 * math.pi + 0.5 * math.sqrt(a * a + 1))
