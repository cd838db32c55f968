"""Universal constants of the exponentially small decay-rate law.

The slowest-decaying resonance has ``|Im z| ~ eps**-2 exp(-B/eps**2) A0``,
where ``B = eta_m0`` and ``A0 = exp(-eta_m2)`` come from maximising the
scaled decay exponent ``eta`` over the continuous mode variable ``l_*``.
"""

import functools
import math
from dataclasses import asdict, dataclass

from .errors import DomainError

ZETA_BRACKET = (0.58, 0.59)

# Rounded values as published, used only for reporting alongside computed ones.
PUBLISHED_VALUES = {
    "zeta_m0": 0.58134,
    "zeta_m2": -1.1743,
    "l_m0": 0.41535,
    "l_m2": -2.4071,
    "eta_m0": 0.26924,
    "eta_m2": 2.1465,
    "a0": math.exp(-2.1465),
}


def integral_I(zeta):
    """``I(zeta) = int_zeta^1 sqrt(t**-2 - 1) dt``.

    Evaluated in closed form as ``atanh(s) - s`` with ``s = sqrt(1 - zeta**2)``,
    which equals ``log((1 + s)/zeta) - s`` but keeps full relative accuracy
    as ``zeta -> 1``.

    Raises
    ------
    DomainError
        Outside ``0 < zeta <= 1``.
    """
    if not 0 < zeta <= 1:
        raise DomainError(f"zeta must lie in (0, 1], got {zeta}")
    s = math.sqrt((1.0 - zeta) * (1.0 + zeta))
    if s < 1e-2:
        s2 = s * s
        return s * s2 * (1 / 3 + s2 * (1 / 5 + s2 * (1 / 7 + s2 * (1 / 9 + s2 / 11))))
    return math.atanh(s) - s


def _check_open_unit(zeta):
    if not 0 < zeta < 1:
        raise DomainError(f"zeta must lie in (0, 1), got {zeta}")


def g0(zeta):
    """``I(zeta) - (1 - zeta**2)**1.5 / (2 - zeta**2)``; its root is ``zeta_m0``."""
    _check_open_unit(zeta)
    c = 1.0 - zeta * zeta
    return integral_I(zeta) - c**1.5 / (2.0 - zeta * zeta)


def g0_prime(zeta):
    """Derivative of :func:`g0`."""
    _check_open_unit(zeta)
    w = 2.0 - zeta * zeta
    return 2.0 * math.sqrt(1.0 - zeta * zeta) * (2.0 - w * w) / (zeta * w * w)


def zeta_m2_of(z):
    """Second-order shift of the maximiser, simplified form."""
    w = 2.0 - z * z
    return -(2 * z**4 + 5 * z * z - 4) / (4.0 * z * (2.0 - w * w))


def zeta_m2_unsimplified(z):
    w = 2.0 - z * z
    return -math.sqrt(1 - z * z) * (2 * z**4 + 5 * z * z - 4) / (2.0 * g0_prime(z) * z * z * w * w)


@dataclass(frozen=True)
class AsymptoticConstants:
    """Expansion coefficients of the maximiser and the maximal exponent.

    ``zeta = zeta_m0 + eps**2 zeta_m2``, ``l_* = l_m0 + eps**2 l_m2`` and
    ``eta = eta_m0 + eps**2 eta_m2``; ``B = eta_m0``, ``A0 = a0 = exp(-eta_m2)``.
    """

    zeta_m0: float
    zeta_m2: float
    l_m0: float
    l_m2: float
    eta_m0: float
    eta_m2: float
    a0: float

    def as_dict(self):
        return asdict(self)


def _solve_zeta_m0():
    lo, hi = ZETA_BRACKET
    if not (g0(lo) > 0 > g0(hi)):
        raise ArithmeticError(f"g0 has no sign change on [{lo}, {hi}]")
    for _ in range(30):
        mid = 0.5 * (lo + hi)
        if g0(mid) > 0:
            lo = mid
        else:
            hi = mid
    z = 0.5 * (lo + hi)
    for _ in range(5):
        step = g0(z) / g0_prime(z)
        z -= step
        if abs(step) < 1e-16:
            break
    return z


@functools.cache
def solve_constants():
    """Compute the constants; the result is cached and immutable."""
    z0 = _solve_zeta_m0()
    z2 = zeta_m2_of(z0)
    if not math.isclose(z2, zeta_m2_unsimplified(z0), rel_tol=1e-10):
        raise ArithmeticError("simplified and unsimplified zeta_m2 disagree")
    c = 1.0 - z0 * z0
    l0 = z0 * z0 / math.sqrt(c)
    l2 = z2 * z0 * (2.0 - z0 * z0) / c**1.5 - (1.0 - 2.0 * z0 * z0) / (2.0 * c**1.5)
    big_i = integral_I(z0)
    eta0 = 2.0 * l0 * big_i
    eta2 = (
        2.0 * l2 * big_i
        - 2.0 * l0 * z2 * math.sqrt(1.0 / (z0 * z0) - 1.0)
        - math.log(l0 * z0)
        + math.log(2.0 + 1.0 / (2.0 * c) - l0 * l0 * (1.0 - 2.0 * z0 * z0) / (2.0 * z0**4))
    )
    return AsymptoticConstants(z0, z2, l0, l2, eta0, eta2, math.exp(-eta2))


def gamma_asymptotic(eps, we=1.0):
    """Leading-order ``log(-Im z)`` of the slowest resonance and its lambda-units form.

    Returns
    -------
    log_gamma_z : float
        ``-2 log eps' - eta_m0/eps'**2 - eta_m2`` with ``eps' = eps/sqrt(we)``.
    log_gamma_lambda : float
        ``log_gamma_z - log eps`` (``lambda = z / eps``).
    """
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps}")
    if not we > 0:
        raise DomainError(f"we must be positive, got {we}")
    k = solve_constants()
    e2 = eps * eps / we
    log_z = -math.log(e2) - k.eta_m0 / e2 - k.eta_m2
    return log_z, log_z - math.log(eps)
