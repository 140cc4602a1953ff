import math

import numpy as np
import pytest

from oblique.base import ConeGeom, DomainError
from oblique.cone import cone_area
from oblique.elliptic import eta, xi
from oblique.halfcone import (ratio_ar_addendum_limit, ratio_ar_lateral_limit, ratio_ar_total_limit,
                              ratio_mw_limit)
from oblique.optimize import (BRACKET, _lateral_equation, _mw_equation, _total_equation, PROBLEMS, ar_partial_a, fd_minimality, sanity_sweep, solve,
                              solve_ar_addendum, solve_ar_lateral, solve_ar_total, solve_mw)

A_LATERAL = 1.2437608987462040336147443
A_TOTAL = 1.4782960807222794430758369
A_MW = 1.3638337555895594010839152

LIMITS = {"ar-lateral": ratio_ar_lateral_limit, "ar-total": ratio_ar_total_limit,
          "ar-addendum": ratio_ar_addendum_limit, "mw": ratio_mw_limit}


@pytest.mark.parametrize("problem,a_star,inf4", [
    ("ar-lateral", A_LATERAL, 0.1892), ("ar-total", A_TOTAL, 0.4729),
    ("mw", A_MW, 0.8431), ("ar-addendum", A_LATERAL, 0.5946)])
def test_optima(problem, a_star, inf4):
    opt = solve(problem)
    assert abs(opt.a_star - a_star) <= 1e-12 * a_star
    assert math.floor(opt.infimum * 1e4) / 1e4 == pytest.approx(inf4, abs=1e-12)
    assert abs(opt.root.residual) <= 1e-13


@pytest.mark.parametrize("problem", sorted(PROBLEMS))
def test_optimum_is_a_minimum(problem):
    opt = solve(problem)
    f = LIMITS[problem]
    for d in (1e-4, 1e-3, 1e-2, 0.1):
        assert f(opt.a_star - d) > opt.infimum
        assert f(opt.a_star + d) > opt.infimum
    assert opt.infimum == pytest.approx(f(opt.a_star), rel=1e-15)
    grid = np.linspace(BRACKET[0], 10, 2000)
    assert min(f(float(a)) for a in grid) >= opt.infimum - 1e-12


def test_cross_identities():
    assert solve_ar_lateral().a_star == pytest.approx(1 / math.sin(xi(2 / math.pi)), rel=1e-12)
    assert solve_ar_total().a_star == pytest.approx(-1 / math.cos(eta(1 / math.pi)), rel=1e-12)
    assert abs(solve_ar_addendum().a_star - solve_ar_lateral().a_star) <= 1e-14 * A_LATERAL
    for opt in (solve_ar_lateral(), solve_ar_total()):
        assert opt.cross_check == pytest.approx(opt.a_star, rel=1e-12)


def test_mw_optimum():
    opt = solve_mw()
    assert opt.a_star == pytest.approx(A_MW, rel=1e-12)


@pytest.mark.parametrize("equation", [_lateral_equation, _total_equation, _mw_equation])
def test_bracket_has_sign_change(equation):
    assert equation(BRACKET[0]) * equation(BRACKET[1]) < 0


def test_unknown_problem():
    with pytest.raises(DomainError):
        solve("volume")


def test_as_dict_roundtrip():
    d = solve("mw").as_dict()
    assert d["problem"] == "mw" and set(d) >= {"a_star", "infimum"}


@pytest.mark.parametrize("b", [0.05, 0.3, 1.0, 2.0, 4.0])
def test_stationary_at_zero_offset(b):
    assert abs(ar_partial_a(ConeGeom(0.0, b), 1)) < 1e-10
    assert ar_partial_a(ConeGeom(0.0, b), 2) > 0


@pytest.mark.parametrize("a,b", [(0.4, 1.0), (2.0, 0.5), (3.0, 2.0)])
def test_partials_match_finite_differences(a, b):
    h = 1e-5
    f = lambda x: cone_area(ConeGeom(x, b))[0]
    d1 = (f(a + h) - f(a - h)) / (2 * h)
    assert ar_partial_a(ConeGeom(a, b), 1) == pytest.approx(d1, rel=1e-6)
    h = 1e-3
    d2 = (f(a + h) - 2 * f(a) + f(a - h)) / h ** 2
    assert ar_partial_a(ConeGeom(a, b), 2) == pytest.approx(d2, rel=1e-4)


def test_second_partial_at_right_cone():
    h = 1e-4
    f = lambda x: cone_area(ConeGeom(x, 1.0))[0]
    # f(-h) = f(h) by mirror symmetry
    d2 = 2 * (f(h) - f(0.0)) / h ** 2
    assert ar_partial_a(ConeGeom(0.0, 1.0), 2) == pytest.approx(d2, abs=1e-5)


def test_first_partial_off_axis():
    h = 1e-4
    f = lambda x: cone_area(ConeGeom(x, 1.0))[0]
    d1 = (f(0.5 + h) - f(0.5 - h)) / (2 * h)
    assert ar_partial_a(ConeGeom(0.5, 1.0), 1) == pytest.approx(d1, abs=1e-6)


def test_partials_random_central_differences():
    rng = np.random.default_rng(20240501)
    h = 1e-4
    for a, b in zip(rng.uniform(0, 0.9, 10), rng.uniform(0.5, 2, 10)):
        a, b = float(a), float(b)
        f = lambda x: cone_area(ConeGeom(abs(x), b))[0]
        d1 = (f(a + h) - f(a - h)) / (2 * h)
        assert ar_partial_a(ConeGeom(a, b), 1) == pytest.approx(d1, abs=1e-5)


def test_partial_order_validated():
    with pytest.raises(DomainError):
        ar_partial_a(ConeGeom(1, 1), 3)


@pytest.mark.parametrize("measure", ["area", "mean_width"])
@pytest.mark.parametrize("b", [0.05, 0.5, 1.0, 4.0])
def test_fd_minimality(measure, b):
    d = fd_minimality(b, measure)
    assert abs(d["forward_first"]) < 1e-3
    assert d["second"] > 0


def test_fd_measure_validated():
    with pytest.raises(DomainError):
        fd_minimality(1.0, "volume")


def test_sanity_sweep_never_undercuts_infima():
    res = sanity_sweep()
    for problem, entry in res.items():
        assert entry["min_ratio"] >= solve(problem).infimum - 1e-9
        assert entry["at"] is not None
