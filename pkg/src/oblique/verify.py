"""Closed form versus oracle comparisons, collected into a deterministic report."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .base import DEFAULT_TOL, ConeGeom, CylinderGeom, ToleranceConfig
from .cone import cone_measures
from .cylinder import cyl_measures
from .halfcone import (HalfSide, half_ar_lateral, half_j, half_j_quadrature, half_l,
                       half_mean_width, instantaneous_ratios, ratio_ar_addendum_limit,
                       ratio_ar_lateral_limit, ratio_ar_total_limit, ratio_mw_limit)
from .oracle import (SupportBody, edge_integral, halfcylinder_symmetry_check, mw_oracle,
                     surface_integrals, volume_mc)

SUITES = ("cylinder", "cone", "halfcone")
GRID = ((0.0, 1.0), (1.0, 1.0), (3.0, 4.0), (0.5, 0.1), (4.0, 0.05))
SIGMAS = 3.0


@dataclass(frozen=True)
class Check:
    name: str
    error: float
    limit: float
    kind: str  # "rel", "abs" or "sigma"

    @property
    def passed(self) -> bool:
        return self.error <= self.limit


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, error, limit, kind="rel"):
        self.checks.append(Check(name, float(error), float(limit), kind))

    def rel(self, name, value, reference, limit):
        self.add(name, abs(value - reference) / max(abs(reference), 1e-300), limit)

    def render(self) -> str:
        lines = []
        for c in self.checks:
            lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.name:<52s} "
                         f"{c.kind}_err={c.error:.3e}  limit={c.limit:.1e}")
        ok = sum(c.passed for c in self.checks)
        failed = [c.name for c in self.checks if not c.passed]
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'} ({ok}/{len(self.checks)})")
        if failed:
            lines.append("failed: " + ", ".join(failed))
        return "\n".join(lines) + "\n"


def _tag(body, a, b):
    return f"{body}(a={a:g},b={b:g})"


def _seeds(seed: int):
    k = 0
    while True:
        yield seed * 4096 + k
        k += 1


def _sigma_check(report, name, value, err, reference):
    report.add(name, abs(value - reference) / err if err > 0 else math.inf, SIGMAS, "sigma")


def _body_suite(report, kind, tol, seeds, samples):
    geom_cls, measures = (CylinderGeom, cyl_measures) if kind == "cylinder" else (ConeGeom, cone_measures)
    for a, b in GRID:
        g = geom_cls(a, b)
        m = measures(g)
        s = surface_integrals(g)
        tag = _tag(kind, a, b)
        report.rel(f"{tag}.area_lateral", m.area_lateral, s["area_lateral"], tol.oracle_rel)
        report.rel(f"{tag}.imc", m.integrated_mean_curvature, s["imc"], tol.oracle_rel)
        report.rel(f"{tag}.edge_term", m.edge_term, edge_integral(g), tol.oracle_rel)
        v, e = mw_oracle(SupportBody(kind, a, b), "monte_carlo", samples, next(seeds))
        _sigma_check(report, f"{tag}.mean_width_mc", v, e, m.mean_width)
    for a, b in ((0.0, 3.0), (2.0, 1.0)):
        ref = measures(geom_cls(a, b)).volume
        v, e = volume_mc(SupportBody(kind, a, b), samples, next(seeds))
        _sigma_check(report, f"{_tag(kind, a, b)}.volume_mc", v, e, ref)
    if kind == "cylinder":
        rep = halfcylinder_symmetry_check(CylinderGeom(2.0, 1.0), samples, next(seeds), SIGMAS)
        for key in ("volume", "mean_width"):
            r = rep[key]
            report.add(f"halfcylinder(a=2,b=1).{key}_symmetry",
                       abs(r["first"] - r["second"]) / r["sigma"], SIGMAS, "sigma")
    else:
        for b in (0.01, 0.5, 1.0, 2.0, 10.0):
            m = cone_measures(ConeGeom(0.0, b))
            report.rel(f"{_tag('cone', 0, b)}.right_lateral", m.area_lateral,
                       math.pi * math.sqrt(1 + b * b), tol.oracle_rel)
            report.rel(f"{_tag('cone', 0, b)}.right_mean_width", m.mean_width,
                       0.5 * (b + math.pi) - 0.5 * math.atan(b), tol.oracle_rel)


def _halfcone_suite(report, tol, seeds, samples):
    for a, b in ((0.0, 1.0), (1.0, 1.0), (1.5, 0.8), (3.0, 0.3)):
        g = ConeGeom(a, b)
        cm = cone_measures(g)
        tag = _tag("halfcone", a, b)
        lat = [half_ar_lateral(g, s, tol) for s in HalfSide]
        report.rel(f"{tag}.lateral_additivity", sum(lat), cm.area_lateral, tol.oracle_rel)
        report.rel(f"{tag}.l_additivity", sum(half_l(g, s, tol) for s in HalfSide),
                   cm.edge_term, tol.oracle_rel)
        for s in HalfSide:
            report.rel(f"{tag}.j_{s.value}", half_j(g, s), half_j_quadrature(g, s, tol),
                       tol.oracle_rel)
            v, e = mw_oracle(SupportBody("halfcone", a, b, s.value), "monte_carlo",
                             samples, next(seeds))
            _sigma_check(report, f"{tag}.mean_width_mc_{s.value}", v, e, half_mean_width(g, s, tol))
    v1, e1 = volume_mc(SupportBody("halfcone", 1.5, 1.0, "smaller"), samples, next(seeds))
    v2, e2 = volume_mc(SupportBody("halfcone", 1.5, 1.0, "larger"), samples, next(seeds))
    report.add("halfcone(a=1.5,b=1).equal_volumes", abs(v1 - v2) / math.hypot(e1, e2), SIGMAS, "sigma")
    limits = {"ar_lateral": ratio_ar_lateral_limit, "ar_total": ratio_ar_total_limit,
              "ar_addendum": ratio_ar_addendum_limit, "mw": ratio_mw_limit}
    for a in (1.2, 1.5, 2.0, 3.0):
        ratios = instantaneous_ratios(ConeGeom(a, 1e-6), tol)
        for key, fn in limits.items():
            report.add(f"halfcone(a={a:g},b=1e-06).{key}_limit", abs(ratios[key] - fn(a)), 1e-3, "abs")


def run_suite(suite: str = "all", tol: ToleranceConfig = DEFAULT_TOL, seed: int = 0,
              samples: int = 200_000) -> Report:
    """Run one suite (or ``"all"``); output depends only on the arguments."""
    names = SUITES if suite == "all" else (suite,)
    report = Report()
    seeds = _seeds(seed)
    for name in names:
        if name == "halfcone":
            _halfcone_suite(report, tol, seeds, samples)
        else:
            _body_suite(report, name, tol, seeds, samples)
    return report
