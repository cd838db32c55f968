"""Spherical Bessel functions of integer order by three-term recurrence.

``j_l`` is the minimal solution of the recurrence and is obtained by
Miller's downward algorithm, normalised against the closed forms of
``j_0`` and ``j_1``. ``y_l`` is recovered from the Hankel function
that is recessive in ``z`` (``h^(1)`` in the upper half plane, ``h^(2)``
in the lower), which is dominant in ``l`` and therefore safe to
recur upward from its closed forms.

Magnitudes are carried as ``mantissa * exp(log_scale)`` so that values
far outside the double range (``y_l`` for ``l >> |z|``, or anything with
a large imaginary argument) remain usable in ratios.
"""

import cmath
import math
from dataclasses import dataclass

from ..errors import DomainError

_BIG = 1e150
_INV_BIG = 1e-150
_LOG_BIG = math.log(_BIG)
SERIES_RADIUS = 1.0


@dataclass(frozen=True)
class ScaledJY:
    """``j = j_mant * exp(log_j)``, ``j' = jp_mant * exp(log_j)``; same for ``y``."""

    order: int
    arg: complex
    j: complex
    jp: complex
    log_j: float
    y: complex
    yp: complex
    log_y: float
    method: str

    @property
    def dlog_j(self):
        return self.jp / self.j

    @property
    def dlog_y(self):
        return self.yp / self.y


def check_argument(z):
    if z == 0:
        raise DomainError("spherical Bessel functions are singular at z = 0")
    if isinstance(z, complex) and z.imag == 0 and z.real < 0:
        raise DomainError(f"argument {z} lies on the branch cut arg z = pi")
    if not isinstance(z, complex) and z < 0:
        raise DomainError(f"argument {z} lies on the branch cut arg z = pi")
    if isinstance(z, complex) and not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {z}")


def _log_abs(v):
    a = abs(v)
    return math.log(a) if a > 0 else -math.inf


def _log_double_factorial_odd(m):
    """log((2m+1)!!)."""
    return math.lgamma(2 * m + 2) - m * math.log(2.0) - math.lgamma(m + 1)


def _series_j(m, z, real):
    """``j_m(z)`` from its Maclaurin series, as (mantissa, log_scale)."""
    w = -0.5 * z * z
    total = term = 1.0
    k = 0
    while True:
        term = term * w / ((k + 1) * (2 * m + 2 * k + 3))
        total += term
        k += 1
        if abs(term) <= 1e-17 * abs(total) and k > 1:
            break
    if real:
        log_scale = m * math.log(z) - _log_double_factorial_odd(m)
        return total, log_scale
    log_scale = m * math.log(abs(z)) - _log_double_factorial_odd(m)
    return total * cmath.exp(1j * m * cmath.phase(z)), log_scale


def _sin_cos_scaled(z, real):
    """``(sin z, cos z) * exp(-|Im z|)`` and ``|Im z|``."""
    if real:
        return math.sin(z), math.cos(z), 0.0
    s = abs(z.imag)
    ep = cmath.exp(1j * z.real + (-z.imag - s))
    em = cmath.exp(-1j * z.real + (z.imag - s))
    return (ep - em) / 2j, (ep + em) / 2, s


def _miller_j(l, z, real, wanted):
    """Downward recurrence; returns {order: (mantissa, log_scale)} for ``wanted``."""
    az = abs(z)
    start = max(l, int(math.ceil(az))) + int(math.ceil(10.0 * az ** (1.0 / 3.0))) + 20
    a_next = 0.0
    a = 1.0
    scale = 0.0
    saved = {}
    for k in range(start, 0, -1):
        a_prev = (2 * k + 1) / z * a - a_next
        a_next, a = a, a_prev
        if abs(a) > _BIG:
            a *= _INV_BIG
            a_next *= _INV_BIG
            scale += _LOG_BIG
        if k - 1 in wanted:
            saved[k - 1] = (a, scale)
    # a holds order 0, a_next order 1, both at the final scale.
    s, c, im_scale = _sin_cos_scaled(z, real)
    j0 = s / z
    j1 = s / (z * z) - c / z
    if abs(j0) >= abs(j1):
        factor = j0 / a
    else:
        factor = j1 / a_next
    return {m: (mant * factor, sc - scale + im_scale) for m, (mant, sc) in saved.items()}


def _upward_hankel(l, z, real):
    """Recessive-in-z Hankel function at orders (top-1, top), top = max(l, 1)."""
    if real:
        # Only the imaginary part (y_l) is needed and it recurs on its own.
        c, s = math.cos(z), math.sin(z)
        hm = -c / z
        h = -c / (z * z) - s / z
        scale = 0.0
    else:
        if z.imag >= 0:
            e = cmath.exp(1j * z.real)
            scale = -z.imag
            hm = -1j * e / z
            h = -e / z * (1 + 1j / z)
        else:
            e = cmath.exp(-1j * z.real)
            scale = z.imag
            hm = 1j * e / z
            h = -e / z * (1 - 1j / z)
    scale_m = scale
    for k in range(1, max(l, 1)):
        h_next = (2 * k + 1) / z * h - hm
        hm, h = h, h_next
        scale_m = scale
        if abs(h) > _BIG:
            h *= _INV_BIG
            hm *= _INV_BIG
            scale += _LOG_BIG
            scale_m = scale
    return (hm, scale_m), (h, scale)


def _to_scale(mant, log_from, log_to):
    d = log_from - log_to
    if d < -745.0:
        return 0.0
    return mant * math.exp(d)


def _y_from_hankel(h, j, z, real):
    """Recover y from the recessive Hankel function and j, in a common scale."""
    (hm, hs), (jm, js) = h, j
    if real:
        return hm, hs
    s = max(hs, js)
    diff = _to_scale(hm, hs, s) - _to_scale(jm, js, s)
    if z.imag >= 0:
        return -1j * diff, s
    return 1j * diff, s


def jy_scaled(l, z):
    """Evaluate ``j_l, j_l', y_l, y_l'`` at ``z`` in scaled form.

    Real positive ``z`` (a Python float, or a complex with zero imaginary
    part) is evaluated in real arithmetic so the results are exactly real.
    """
    if l < 0 or int(l) != l:
        raise DomainError(f"order must be a non-negative integer, got {l}")
    l = int(l)
    real = not isinstance(z, complex) or z.imag == 0
    if real:
        z = float(z.real if isinstance(z, complex) else z)
    check_argument(z)
    lo, hi = (0, 1) if l == 0 else (l - 1, l)
    if abs(z) <= SERIES_RADIUS:
        method = "series"
        jv = {m: _series_j(m, z, real) for m in (lo, hi)}
    else:
        method = "recurrence"
        jv = _miller_j(max(l, 1), z, real, {lo, hi})
    hv = _upward_hankel(hi, z, real)
    yv = {lo: _y_from_hankel(hv[0], jv[lo], z, real), hi: _y_from_hankel(hv[1], jv[hi], z, real)}

    def value_and_derivative(v):
        if l == 0:
            (m0, s0), (m1, s1) = v[0], v[1]
            return m0, -_to_scale(m1, s1, s0), s0
        (mm, sm), (ml, sl) = v[l - 1], v[l]
        return ml, _to_scale(mm, sm, sl) - (l + 1) / z * ml, sl

    j, jp, log_j = value_and_derivative(jv)
    y, yp, log_y = value_and_derivative(yv)
    return ScaledJY(l, z, j, jp, log_j, y, yp, log_y, method)


def second_derivative_ratio(l, z, dlog):
    """``u''/u`` from ``u'/u`` via the spherical Bessel equation."""
    return -2.0 / z * dlog - (1.0 - l * (l + 1) / (z * z))
