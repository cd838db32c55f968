"""Public evaluators that route between recurrence and asymptotic paths."""

import math

from ..errors import DomainError
from .airy import airy
from .asymptotic import (
    UNIFORM_CUTOFF,
    AIRY_CUTOFF,
    action_integral,
    airy_distance,
    u_correction,
)
from .debye import MAX_X_OVER_NU, debye_log_jy
from .recurrence import jy_scaled
from .types import BesselEval, LogRatio, RealLogJY

# Above these orders the O(l) recurrences give way to asymptotic forms.
RATIO_RECURRENCE_MAX = 20000
REAL_RECURRENCE_MAX = 5000


def _unscale(mant, log_scale):
    if mant == 0:
        return mant
    lv = math.log(abs(mant)) + log_scale
    if lv > 709.7:
        raise OverflowError(f"|value| = exp({lv:.6g}) exceeds the double range; use log_jy_ratio")
    return mant * math.exp(log_scale)


def eval_jy(l, z):
    """Evaluate ``j_l(z)``, ``y_l(z)`` and their derivatives.

    Parameters
    ----------
    l : int
        Non-negative order.
    z : complex or float
        Argument with ``z != 0`` and ``|arg z| < pi``. A real positive
        argument gives exactly real results.

    Returns
    -------
    BesselEval

    Raises
    ------
    DomainError
        For ``z = 0`` or ``z`` on the negative real axis.
    OverflowError
        If a value exceeds the double range.
    """
    r = jy_scaled(l, z)
    return BesselEval(
        r.order,
        complex(r.arg),
        _unscale(r.j, r.log_j),
        _unscale(r.y, r.log_y),
        _unscale(r.jp, r.log_j),
        _unscale(r.yp, r.log_y),
        r.method,
    )


def _ratio_from_recurrence(l, x):
    r = jy_scaled(l, x)
    if r.j == 0 or r.j * r.y >= 0:
        raise DomainError(f"j_l/y_l >= 0 at l = {l}, x = {x}; outside the decaying regime")
    value = math.log(2.0) + math.log(abs(r.j)) - math.log(abs(r.y)) + r.log_j - r.log_y
    return LogRatio(l, x, value, r.method)


def log_jy_ratio(l, x):
    """``log(-2 j_l(x) / y_l(x))`` without forming the ratio itself.

    Orders up to 20000 use log-scaled recurrences; beyond that the
    small-argument form (``x <= sqrt(l)``), the large-order exponential
    form or the Airy form is used according to ``xi = x / sqrt(l(l+1))``.

    Raises
    ------
    DomainError
        If ``x <= 0`` or ``j_l(x) / y_l(x) >= 0``.
    """
    if int(l) != l or l < 0:
        raise DomainError(f"order must be a non-negative integer, got {l}")
    l = int(l)
    x = float(x)
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    if l <= RATIO_RECURRENCE_MAX:
        return _ratio_from_recurrence(l, x)
    xi = x / math.sqrt(l * (l + 1.0))
    if x <= math.sqrt(l):
        value = -1.0 + (2 * l + 1) * math.log(x * math.e / (2.0 * l))
        return LogRatio(l, x, value, "small-arg")
    if xi < 1 and (1.0 - xi) * l ** (2.0 / 3.0) >= UNIFORM_CUTOFF:
        nu = math.sqrt(l * (l + 1.0))
        value = -2.0 * nu * action_integral(xi) + math.log1p(2.0 * u_correction(xi) / l)
        return LogRatio(l, x, value, "uniform-asymptotic")
    if airy_distance(l, xi) <= AIRY_CUTOFF:
        ai, _, bi, _ = airy(l ** (2.0 / 3.0) * 2.0 ** (1.0 / 3.0) * (1.0 - xi))
        if ai <= 0:
            raise DomainError(f"j_l/y_l >= 0 at l = {l}, x = {x}; outside the decaying regime")
        return LogRatio(l, x, math.log(2.0 * ai / bi), "airy")
    return _ratio_from_recurrence(l, x)


def real_log_jy(l, x):
    """Log-magnitudes, signs and logarithmic derivatives at real ``x > 0``.

    Integer orders up to 5000 (or close to the turning point) use the
    recurrences; larger or non-integer orders use the Debye expansion.

    Returns
    -------
    RealLogJY
    """
    x = float(x)
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    integer = float(l).is_integer()
    if integer and (l <= REAL_RECURRENCE_MAX or x > MAX_X_OVER_NU * (l + 0.5)):
        r = jy_scaled(int(l), x)
        if r.j == 0 or r.y == 0:
            raise DomainError(f"j_l or y_l vanishes at l = {l}, x = {x}")
        return RealLogJY(
            l, x,
            math.log(abs(r.j)) + r.log_j, 1 if r.j > 0 else -1, r.jp / r.j,
            math.log(abs(r.y)) + r.log_y, 1 if r.y > 0 else -1, r.yp / r.y,
            r.method,
        )
    log_j, dlog_j, log_y, dlog_y = debye_log_jy(l, x)
    return RealLogJY(l, x, log_j, 1, dlog_j, log_y, -1, dlog_y, "debye")
