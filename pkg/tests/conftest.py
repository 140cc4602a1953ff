import math

import mpmath
import pytest

mpmath.mp.dps = 30


def theta_k(mu):
    return float(mpmath.quad(lambda t: 1 / mpmath.sqrt(1 - mu * mpmath.sin(t) ** 2), [0, mpmath.pi / 2]))


def theta_e(mu):
    return float(mpmath.quad(lambda t: mpmath.sqrt(1 - mu * mpmath.sin(t) ** 2), [0, mpmath.pi / 2]))


def theta_pi(nu, mu):
    return float(mpmath.quad(
        lambda t: 1 / ((1 - nu * mpmath.sin(t) ** 2) * mpmath.sqrt(1 - mu * mpmath.sin(t) ** 2)),
        [0, mpmath.pi / 2]))


def arcsine_mp(g, lo=-1, hi=1, breaks=()):
    """High-precision int_lo^hi g(v)/sqrt(1-v^2) dv, g taking an mpf."""
    pts = [mpmath.asin(lo)] + [mpmath.asin(p) for p in sorted(breaks) if lo < p < hi] + [mpmath.asin(hi)]
    return float(mpmath.quad(lambda t: g(mpmath.sin(t)), pts))


def rel(x, y):
    return abs(x - y) / abs(y)


@pytest.fixture
def pi():
    return math.pi
