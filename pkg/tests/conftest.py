"""Shared high-precision oracles (mpmath) for the test suite."""

import mpmath as mp
import pytest


def mp_jy(l, z, dps=40):
    """``(j, y, j', y')`` as mpmath numbers (no overflow) from half-integer Bessel functions."""
    with mp.workdps(dps):
        zz = mp.mpc(z)
        pre = mp.sqrt(mp.pi / (2 * zz))

        def both(n):
            return pre * mp.besselj(n + 0.5, zz), pre * mp.bessely(n + 0.5, zz)

        j, y = both(l)
        if l == 0:
            j1, y1 = both(1)
            jp, yp = -j1, -y1
        else:
            jm, ym = both(l - 1)
            jp, yp = jm - (l + 1) / zz * j, ym - (l + 1) / zz * y
        return j, y, jp, yp


def mp_log_abs_jy(l, x, dps=40):
    """``(log|j_l(x)|, log|y_l(x)|)`` for real ``x``, valid far outside the double range."""
    with mp.workdps(dps):
        xx = mp.mpf(x)
        pre = mp.sqrt(mp.pi / (2 * xx))
        j = pre * mp.besselj(l + 0.5, xx)
        y = pre * mp.bessely(l + 0.5, xx)
        return float(mp.log(abs(j))), float(mp.log(abs(y)))


def mp_root(l, eps, seed, we=1.0, dps=40):
    """Root of ``z h + Q h'`` near ``seed`` by mpmath secant iteration on ``z + Q h'/h``."""
    with mp.workdps(dps):
        q = (l + 2) * (l - 1) * mp.mpf(eps) ** 2 / mp.mpf(we)

        def h(n, z):
            return mp.sqrt(mp.pi / (2 * z)) * (mp.besselj(n + 0.5, z) + 1j * mp.bessely(n + 0.5, z))

        def g(z):
            hl = h(l, z)
            return z + q * (h(l - 1, z) - (l + 1) / z * hl) / hl

        return mp.findroot(g, mp.mpc(seed))


@pytest.fixture(scope="session")
def oracle():
    class Oracle:
        jy = staticmethod(mp_jy)
        log_abs_jy = staticmethod(mp_log_abs_jy)
        root = staticmethod(mp_root)

    return Oracle
