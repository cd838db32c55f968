"""Debye expansion of spherical Bessel functions below the turning point.

Valid for real ``0 < x < nu`` with ``nu = l + 1/2`` large, and for any real
(not necessarily integer) ``l``. Four correction terms are kept, so the
relative error is roughly ``u_5(p) / nu**5`` with ``p = 1/sqrt(1-(x/nu)**2)``.
"""

import math

from ..errors import RegimeError

MIN_NU = 30.0
MAX_X_OVER_NU = 0.95

_U = (
    ((1.0, 0),),
    ((3.0, 1), (-5.0, 3)),
    ((81.0, 2), (-462.0, 4), (385.0, 6)),
    ((30375.0, 3), (-369603.0, 5), (765765.0, 7), (-425425.0, 9)),
    ((4465125.0, 4), (-94121676.0, 6), (349922430.0, 8), (-446185740.0, 10), (185910725.0, 12)),
)
_V = (
    ((1.0, 0),),
    ((-9.0, 1), (7.0, 3)),
    ((-135.0, 2), (594.0, 4), (-455.0, 6)),
    ((-42525.0, 3), (451737.0, 5), (-883575.0, 7), (475475.0, 9)),
    ((-5740875.0, 4), (111234708.0, 6), (-396578610.0, 8), (493152660.0, 10), (-202076875.0, 12)),
)
_DENOM = (1.0, 24.0, 1152.0, 414720.0, 39813120.0)


def _poly(terms, p):
    return sum(c * p**k for c, k in terms)


def _sums(table, p, nu):
    plus = minus = 0.0
    for k, (terms, d) in enumerate(zip(table, _DENOM)):
        t = _poly(terms, p) / d / nu**k
        plus += t
        minus += -t if k % 2 else t
    return plus, minus


def atanh_minus_identity(s):
    """``atanh(s) - s`` without cancellation for small ``s``."""
    if s < 1e-2:
        s2 = s * s
        return s * s2 * (1 / 3 + s2 * (1 / 5 + s2 * (1 / 7 + s2 * (1 / 9 + s2 / 11))))
    return math.atanh(s) - s


def debye_log_jy(l, x):
    """Log-magnitudes and logarithmic derivatives of ``j_l(x)`` and ``y_l(x)``.

    Returns
    -------
    log_abs_j, dlog_j, log_abs_y, dlog_y : float
        ``j_l > 0`` and ``y_l < 0`` throughout the validity region.

    Raises
    ------
    RegimeError
        If ``l + 1/2 < 30`` or ``x / (l + 1/2) > 0.95``.
    """
    nu = l + 0.5
    if nu < MIN_NU or not 0 < x <= MAX_X_OVER_NU * nu:
        raise RegimeError(f"Debye expansion needs l+1/2 >= {MIN_NU} and 0 < x/(l+1/2) <= {MAX_X_OVER_NU}")
    r = x / nu
    s = math.sqrt((1.0 - r) * (1.0 + r))
    p = 1.0 / s
    u_plus, u_minus = _sums(_U, p, nu)
    v_plus, v_minus = _sums(_V, p, nu)
    expo = nu * atanh_minus_identity(s)
    half_log = 0.5 * math.log(math.pi / (2.0 * x))
    log_j = half_log - expo - 0.5 * math.log(2.0 * math.pi * nu * s) + math.log(u_plus)
    log_y = half_log + expo - 0.5 * math.log(0.5 * math.pi * nu * s) + math.log(u_minus)
    slope = nu * s / x
    dlog_j = slope * v_plus / u_plus - 0.5 / x
    dlog_y = -slope * v_minus / u_minus - 0.5 / x
    return log_j, dlog_j, log_y, dlog_y
