"""Airy functions Ai, Bi and their derivatives for real argument.

Maclaurin series near the origin, Poincare-type asymptotic expansions
further out. No external special-function library is used; the
Wronskian ``Ai Bi' - Ai' Bi = 1/pi`` is the built-in consistency check.
"""

import math

AI0 = 0.355028053887817239260063186004
MINUS_AIP0 = 0.258819403792806798405183560189
SQRT3 = math.sqrt(3.0)
_SQRT_PI = math.sqrt(math.pi)

# Ai loses digits to cancellation in the series for large positive t; Bi does not.
AI_SERIES_MAX = 5.0
BI_SERIES_MAX = 8.0
SERIES_MIN = -8.0


def _series(t):
    """Return (f, f', g, g') of the two Maclaurin solutions."""
    t3 = t * t * t
    f = term = 1.0
    k = 0
    while True:
        term *= t3 / ((3 * k + 2) * (3 * k + 3))
        f += term
        k += 1
        if abs(term) <= 1e-17 * abs(f) and k > 2:
            break
    g = term = t
    k = 0
    while True:
        term *= t3 / ((3 * k + 3) * (3 * k + 4))
        g += term
        k += 1
        if abs(term) <= 1e-17 * max(abs(g), 1e-300) and k > 2:
            break
    fp = term = 0.5 * t * t
    k = 1
    while True:
        term *= t3 / ((3 * k + 2) * (3 * k))
        fp += term
        k += 1
        if abs(term) <= 1e-17 * max(abs(fp), 1e-300) and k > 3:
            break
    gp = term = 1.0
    k = 0
    while True:
        term *= t3 / ((3 * k + 3) * (3 * k + 1))
        gp += term
        k += 1
        if abs(term) <= 1e-17 * abs(gp) and k > 2:
            break
    return f, fp, g, gp


def _coefficients(n):
    u = [1.0]
    for k in range(1, n):
        u.append(u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216.0 * k))
    v = [1.0] + [-(6 * k + 1) / (6 * k - 1) * u[k] for k in range(1, n)]
    return u, v


_U, _V = _coefficients(40)


def _asym_sum(coeffs, inv_zeta, alternate):
    """Sum sum_k (+-1)^k c_k zeta^-k, truncated at the smallest term."""
    total = 0.0
    power = 1.0
    last = math.inf
    for k, c in enumerate(coeffs):
        term = c * power
        if alternate and k % 2:
            term = -term
        if abs(term) > last:
            break
        total += term
        last = abs(term)
        if last < 1e-17 * abs(total):
            break
        power *= inv_zeta
    return total


def _asym_split(coeffs, inv_zeta):
    """Even and odd alternating sums used by the oscillatory expansion."""
    even = odd = 0.0
    last = math.inf
    power = 1.0
    for k, c in enumerate(coeffs):
        term = c * power
        sign = -1.0 if (k // 2) % 2 else 1.0
        if abs(term) > last:
            break
        if k % 2 == 0:
            even += sign * term
        else:
            odd += sign * term
        last = abs(term)
        if last < 1e-17:
            break
        power *= inv_zeta
    return even, odd


def _ai_positive_asym(t):
    zeta = 2.0 / 3.0 * t ** 1.5
    q = t ** 0.25
    e = math.exp(-zeta) / (2.0 * _SQRT_PI)
    ai = e / q * _asym_sum(_U, 1.0 / zeta, True)
    aip = -e * q * _asym_sum(_V, 1.0 / zeta, True)
    return ai, aip


def _bi_positive_asym(t):
    zeta = 2.0 / 3.0 * t ** 1.5
    q = t ** 0.25
    e = math.exp(zeta) / _SQRT_PI
    bi = e / q * _asym_sum(_U, 1.0 / zeta, False)
    bip = e * q * _asym_sum(_V, 1.0 / zeta, False)
    return bi, bip


def _negative_asym(s):
    zeta = 2.0 / 3.0 * s ** 1.5
    q = s ** 0.25
    p, qq = _asym_split(_U, 1.0 / zeta)
    r, ss = _asym_split(_V, 1.0 / zeta)
    c = math.cos(zeta - math.pi / 4)
    sn = math.sin(zeta - math.pi / 4)
    ai = (c * p + sn * qq) / (_SQRT_PI * q)
    bi = (-sn * p + c * qq) / (_SQRT_PI * q)
    aip = q * (sn * r - c * ss) / _SQRT_PI
    bip = q * (c * r + sn * ss) / _SQRT_PI
    return ai, aip, bi, bip


def airy(t):
    """Return ``(Ai, Ai', Bi, Bi')`` at real ``t``.

    Accuracy is about 1e-10 relative except for Ai just beyond the
    series/asymptotic switch at ``t = 5``, where it degrades to ~3e-8.
    """
    t = float(t)
    if t < SERIES_MIN:
        return _negative_asym(-t)
    if t <= BI_SERIES_MAX:
        f, fp, g, gp = _series(t)
        bi = SQRT3 * (AI0 * f + MINUS_AIP0 * g)
        bip = SQRT3 * (AI0 * fp + MINUS_AIP0 * gp)
        if t <= AI_SERIES_MAX:
            ai = AI0 * f - MINUS_AIP0 * g
            aip = AI0 * fp - MINUS_AIP0 * gp
        else:
            ai, aip = _ai_positive_asym(t)
        return ai, aip, bi, bip
    ai, aip = _ai_positive_asym(t)
    bi, bip = _bi_positive_asym(t)
    return ai, aip, bi, bip


def wronskian_defect(t):
    """``pi * (Ai Bi' - Ai' Bi) - 1``; zero for exact Airy functions."""
    ai, aip, bi, bip = airy(t)
    return math.pi * (ai * bip - aip * bi) - 1.0
