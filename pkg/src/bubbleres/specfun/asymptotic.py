"""Large-order and large-argument forms of the spherical Bessel functions.

The large-order forms are written in the variable ``xi = z / sqrt(l(l+1))``.
Below the turning point (``xi < 1``) the two-term exponential forms hold
with relative error ``O(l**-2)``; near ``xi = 1`` the Airy forms take over.
"""

import cmath
import math

from ..errors import DomainError, RegimeError
from .airy import airy
from .debye import atanh_minus_identity
from .recurrence import check_argument
from .types import BesselEval, UniformEval

MIN_ORDER = 50
# Airy forms are used at |1-xi| l^(2/3) <= AIRY_CUTOFF, the exponential forms
# at >= UNIFORM_CUTOFF; in between both are within their error orders.
UNIFORM_CUTOFF = 5.0
AIRY_CUTOFF = 10.0
LARGE_ARG_FACTOR = 10.0

_SQRT_PI = math.sqrt(math.pi)


def action_integral(xi):
    """``int_xi^1 sqrt(t**-2 - 1) dt`` for ``0 < xi <= 1``."""
    if not 0 < xi <= 1:
        raise DomainError(f"xi must lie in (0, 1], got {xi}")
    s = math.sqrt((1.0 - xi) * (1.0 + xi))
    return atanh_minus_identity(s)


def u_correction(xi):
    """First-order correction ``u(xi)`` of the large-order exponential forms."""
    s = math.sqrt((1.0 - xi) * (1.0 + xi))
    return -5.0 / (24.0 * s**3) + 1.0 / (8.0 * s) - math.atanh(s) / 8.0


def airy_distance(l, xi):
    """``|1 - xi| * l**(2/3)``, the scaled distance from the turning point."""
    return abs(1.0 - xi) * l ** (2.0 / 3.0)


def _check_order(l):
    if int(l) != l or l < MIN_ORDER:
        raise RegimeError(f"large-order forms need integer l >= {MIN_ORDER}, got {l}")


def eval_jy_uniform(l, xi):
    """Two-term large-order evaluation below the turning point.

    Parameters
    ----------
    l : int
        Order, at least 50.
    xi : float
        ``z / sqrt(l(l+1))`` in ``(0, 1)`` and outside the Airy zone.

    Returns
    -------
    UniformEval
        Log-magnitudes and logarithmic derivatives, with ``error_bound``
        an estimate of the relative error.

    Raises
    ------
    RegimeError
        If ``l < 50``, ``xi >= 1`` or ``(1 - xi) l**(2/3) < 5``.
    """
    _check_order(l)
    if not 0 < xi < 1:
        raise RegimeError(f"xi must lie in (0, 1), got {xi}")
    if (1.0 - xi) * l ** (2.0 / 3.0) < UNIFORM_CUTOFF:
        raise RegimeError(f"xi = {xi} is inside the Airy zone for l = {l}")
    nu = math.sqrt(l * (l + 1.0))
    s = math.sqrt((1.0 - xi) * (1.0 + xi))
    action = nu * action_integral(xi)
    u = u_correction(xi)
    prefactor = -math.log(nu * xi) - 0.25 * math.log(s * s / (xi * xi))
    log_j = prefactor - math.log(2.0) - action + math.log1p(u / l)
    log_y = prefactor + action + math.log1p(-u / l)
    root = s / xi
    c = (1.0 - 2.0 * xi * xi) / (2.0 * l * xi * s * s)
    bound = 2.0 * max(1.0, s**-6) / (l * l)
    return UniformEval(int(l), xi, nu * xi, log_j, log_y, root - c, -root - c, bound)


def eval_jy_airy(l, xi):
    """Airy-zone forms of ``(j_l, y_l)`` at ``z = sqrt(l(l+1)) * xi``.

    Raises
    ------
    RegimeError
        If ``l < 50`` or ``|1 - xi| l**(2/3) > 10``.
    """
    _check_order(l)
    if xi <= 0 or airy_distance(l, xi) > AIRY_CUTOFF:
        raise RegimeError(f"xi = {xi} is outside the Airy zone for l = {l}")
    z = math.sqrt(l * (l + 1.0)) * xi
    t = l ** (2.0 / 3.0) * 2.0 ** (1.0 / 3.0) * (1.0 - xi)
    ai, _, bi, _ = airy(t)
    pre = _SQRT_PI * l ** (1.0 / 6.0) / (2.0 ** (1.0 / 6.0) * z)
    return pre * ai, -pre * bi


_PHASE = (1.0, 1j, -1.0, -1j)


def _hankel_sum(l, w):
    """``sum_{k<=l} (l+k)!/(k!(l-k)!) w**k`` and a rounding-error bound."""
    total = term = 1.0 + 0j
    biggest = 1.0
    for k in range(l):
        term = term * ((l + k + 1) * (l - k) / (k + 1.0)) * w
        total += term
        biggest = max(biggest, abs(term))
    return total, 4.0 * (l + 1) * 2.2e-16 * biggest / abs(total)


def _hankels(l, z):
    s1, e1 = _hankel_sum(l, 0.5j / z)
    s2, e2 = _hankel_sum(l, -0.5j / z)
    h1 = _PHASE[(-(l + 1)) % 4] * cmath.exp(1j * z) / z * s1
    h2 = _PHASE[(l + 1) % 4] * cmath.exp(-1j * z) / z * s2
    return h1, h2, max(e1, e2)


def eval_large_arg(l, z):
    """Hankel-type expansion for ``|z| >= 10 max(l, 1)``.

    The leading term is ``h_l^(1) ~ exp(i(z - (l+1)pi/2)) / z``. The
    expansion in ``1/z`` terminates after ``l + 1`` terms and is summed in
    full, so the only error is rounding, amplified when intermediate terms
    exceed the sum; ``error_bound`` reports that amplification.

    Raises
    ------
    RegimeError
        If ``|z| < 10 max(l, 1)``.
    OverflowError
        If ``|Im z| > 700``.
    """
    if int(l) != l or l < 0:
        raise DomainError(f"order must be a non-negative integer, got {l}")
    l = int(l)
    real = not isinstance(z, complex) or z.imag == 0
    z = complex(z)
    check_argument(z)
    if abs(z) < LARGE_ARG_FACTOR * max(l, 1):
        raise RegimeError(f"|z| = {abs(z):.6g} is below {LARGE_ARG_FACTOR:g} * max(l, 1)")
    if abs(z.imag) > 700.0:
        raise OverflowError(f"|Im z| = {abs(z.imag):.6g} overflows exp(|Im z|); use jy_scaled")
    h1, h2, err = _hankels(l, z)
    if l == 0:
        g1, g2, err_d = _hankels(1, z)
        h1p, h2p = -g1, -g2
    else:
        g1, g2, err_d = _hankels(l - 1, z)
        h1p = g1 - (l + 1) / z * h1
        h2p = g2 - (l + 1) / z * h2
    if real:
        j, y, jp, yp = h1.real, h1.imag, h1p.real, h1p.imag
    else:
        j, y = (h1 + h2) / 2, (h1 - h2) / 2j
        jp, yp = (h1p + h2p) / 2, (h1p - h2p) / 2j
    bound = max(err, err_d)
    return BesselEval(l, z, j, y, jp, yp, "large-arg", bound)
