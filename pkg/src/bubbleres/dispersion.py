"""Resonance roots of ``z h_l(z) + Q h_l'(z) = 0`` by direct complex Newton.

``h_l`` is the outgoing spherical Hankel function ``j_l + i y_l`` and
``Q = (l+2)(l-1) eps**2 / We``. Roots lie in the lower half plane; the
one continued from each regime seed is the physically relevant resonance
of shape mode ``l``.

All evaluations go through log-scaled mantissas, so the residual and the
Newton step stay finite even where ``h_l`` itself overflows.
"""

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError, PrecisionError, RegimeError
from .specfun import jy_scaled

RESIDUAL_TOL = 1e-10
PRECISION_FLOOR = 1e-13
LOG_PRECISION_FLOOR = math.log(PRECISION_FLOOR)
MAX_ITER = 100
MAX_HALVINGS = 20
SMALL_L_MAX = 10
SMALL_L_Q_MAX = 0.5


@dataclass(frozen=True)
class PhysicalParams:
    """Shape-mode index ``l``, Mach number ``eps`` and Weber number ``we``."""

    l: int
    eps: float
    we: float = 1.0

    def __post_init__(self):
        if int(self.l) != self.l or self.l < 2:
            raise DomainError(f"mode index must be an integer >= 2, got {self.l}")
        if not 0 < self.eps <= 0.5:
            raise DomainError(f"eps must lie in (0, 0.5], got {self.eps}")
        if not self.we > 0:
            raise DomainError(f"we must be positive, got {self.we}")
        object.__setattr__(self, "l", int(self.l))

    @property
    def eps_eff(self):
        """``eps / sqrt(we)``; the only combination the roots depend on."""
        return self.eps / math.sqrt(self.we)

    @property
    def q(self):
        return (self.l + 2) * (self.l - 1) * self.eps**2 / self.we


def q_param(p):
    """``Q = (l+2)(l-1) eps**2 / We``."""
    return p.q


def regime_of(p):
    """Regime tag of mode ``l`` at ``eps / sqrt(We)``."""
    inv = p.eps_eff**-2
    if p.l <= SMALL_L_MAX:
        return "small-l"
    if p.l < 0.1 * inv:
        return "mid-l"
    if p.l < 10.0 * inv:
        return "transition"
    return "large-l"


@dataclass(frozen=True)
class ResonanceRoot:
    """A converged resonance.

    Attributes
    ----------
    params : PhysicalParams
    z : complex
        Root in the scaled variable ``z = eps * lambda``.
    regime : str
        ``small-l``, ``mid-l``, ``transition`` or ``large-l``.
    residual : float
        ``|z h + Q h'| / (|z h| + |Q h'|)`` at ``z``.
    iterations : int
    reflection_residual : float
        The same normalised residual at ``-conj(z)``.
    """

    params: PhysicalParams
    z: complex
    regime: str
    residual: float
    iterations: int
    reflection_residual: float

    @property
    def lam(self):
        """``lambda = z / eps``."""
        return self.z / self.params.eps

    @property
    def log_gamma_z(self):
        return math.log(-self.z.imag)


def _hankel_terms(l, z, q):
    """Scaled residual pieces at ``z``.

    Returns ``(f, norm, log_scale, g, dg)`` where ``f * exp(log_scale)`` is
    the residual, ``norm`` the matching ``|z h| + |Q h'|`` mantissa, and
    ``g = z + Q h'/h`` with its derivative. Newton runs on ``g``, which is
    free of the exponential factor carried by ``h``.
    """
    r = jy_scaled(l, z)
    s = max(r.log_j, r.log_y)
    a = math.exp(r.log_j - s) if r.log_j - s > -745 else 0.0
    b = math.exp(r.log_y - s) if r.log_y - s > -745 else 0.0
    h = r.j * a + 1j * r.y * b
    hp = r.jp * a + 1j * r.yp * b
    f = z * h + q * hp
    norm = abs(z * h) + abs(q * hp)
    w = hp / h
    w2 = -2.0 / z * w - (1.0 - l * (l + 1) / (z * z))
    g = z + q * w
    dg = 1.0 + q * (w2 - w * w)
    return f, norm, s, g, dg


def residual(p, z):
    """``z h_l(z) + Q h_l'(z)``.

    Raises
    ------
    OverflowError
        If the value exceeds the double range; use ``normalized_residual``.
    """
    f, _, s, _, _ = _hankel_terms(p.l, complex(z), p.q)
    if f == 0:
        return f
    if math.log(abs(f)) + s > 709.0:
        raise OverflowError("residual exceeds the double range")
    return f * math.exp(s)


def normalized_residual(p, z):
    """``|z h + Q h'| / (|z h| + |Q h'|)``, independent of overall scale."""
    f, norm, _, _, _ = _hankel_terms(p.l, complex(z), p.q)
    return abs(f) / norm


def series_x_squared(l, q):
    """Three-term small-``Q`` series for ``x**2`` at a root."""
    return (l + 1) * q * (1.0 - q / (2 * l - 1) + q * q * (l - 4) / ((2 * l - 3) * (2 * l - 1) ** 2))


def log_abs_y_mid(p):
    """Log of the mid-regime estimate of ``|Im z|``, free of underflow."""
    l, q = p.l, p.q
    log_root = 0.5 * math.log(q * (l + 1))
    return (
        log_root
        - math.log(2.0)
        - 1.0
        + (2 * l + 1) * (1.0 + log_root - math.log(2.0 * l))
        + (l + 0.5) * math.log1p(-q / (2 * l - 1))
    )


def seed_small_l(p):
    """Seed ``x`` from the small-``Q`` series with zero imaginary part.

    Raises
    ------
    RegimeError
        If ``l > 10`` or ``Q > 0.5``.
    """
    if p.l > SMALL_L_MAX or p.q > SMALL_L_Q_MAX:
        raise RegimeError(f"small-l seed needs l <= {SMALL_L_MAX} and Q <= {SMALL_L_Q_MAX}")
    return complex(math.sqrt(series_x_squared(p.l, p.q)), 0.0)


def seed_mid_l(p):
    """Seed with ``x`` from the series and ``y`` from the mid-regime estimate.

    Raises
    ------
    RegimeError
        Unless ``10 < l < 0.1 (eps**2/We)**-1``.
    """
    if not SMALL_L_MAX < p.l < 0.1 * p.eps_eff**-2:
        raise RegimeError(f"mid-l seed needs {SMALL_L_MAX} < l < 0.1 We/eps^2")
    x = math.sqrt(series_x_squared(p.l, p.q))
    log_y = log_abs_y_mid(p)
    return complex(x, -math.exp(log_y) if log_y > -745 else -0.0)


def seed_large_l(p):
    """Seed ``z = -iQ``.

    Raises
    ------
    RegimeError
        Unless ``l >= 10 We/eps**2``.
    """
    if p.l < 10.0 * p.eps_eff**-2:
        raise RegimeError("large-l seed needs l >= 10 We/eps^2")
    return complex(0.0, -p.q)


def log_abs_y_perturbative(p, x):
    """First-order estimate of ``log|Im z|`` for a root near real ``x``.

    Treating the ``j_l`` terms as a perturbation of the ``y_l`` equation
    gives ``|Im z| ~ |x j + Q j'| / |y + x y' + Q y''|`` at real ``x``.
    """
    r = jy_scaled(p.l, float(x))
    q = p.q
    num = x * r.j + q * r.jp
    ypp = -2.0 / x * r.yp - (1.0 - p.l * (p.l + 1) / (x * x)) * r.y
    den = r.y + x * r.yp + q * ypp
    if num == 0 or den == 0:
        return -math.inf
    return math.log(abs(num)) + r.log_j - math.log(abs(den)) - r.log_y


def _check_precision(p, z):
    x = z.real
    if x <= 0 or abs(z.imag) > 1e-3 * x:
        return
    log_ratio = log_abs_y_perturbative(p, x) - math.log(x)
    if log_ratio < LOG_PRECISION_FLOOR:
        raise PrecisionError(
            f"expected |Im z|/|Re z| ~ exp({log_ratio:.4g}) is below {PRECISION_FLOOR:g} "
            f"for l = {p.l}, eps = {p.eps}; use the scaled solver",
            log_ratio=log_ratio,
        )


def find_root(p, seed, max_iter=MAX_ITER, tol=RESIDUAL_TOL):
    """Damped complex Newton on the dispersion relation.

    Parameters
    ----------
    p : PhysicalParams
    seed : complex
        Starting point in the closed lower half plane.
    max_iter : int, optional
    tol : float, optional
        Target normalised residual.

    Returns
    -------
    ResonanceRoot

    Raises
    ------
    PrecisionError
        If the expected ``|Im z| / |Re z|`` is below ``1e-13``.
    ConvergenceError
        If the iteration stalls, leaves the lower half plane or fails the
        reflection check; carries the best iterate.
    """
    z = complex(seed)
    if z.imag > 0:
        raise DomainError(f"seed {z} lies in the upper half plane")
    _check_precision(p, z)
    l, q = p.l, p.q
    f, norm, _, g, dg = _hankel_terms(l, z, q)
    res = abs(f) / norm
    polish = 0
    it = 0
    for it in range(1, max_iter + 1):
        step = g / dg
        t = 1.0
        for _ in range(MAX_HALVINGS + 1):
            trial = z - t * step
            try:
                tf, tnorm, _, tg, tdg = _hankel_terms(l, trial, q)
                tres = abs(tf) / tnorm
            except (DomainError, OverflowError, ZeroDivisionError):
                tres = math.inf
            if tres < res or (res <= tol and tres <= 2 * tol):
                break
            t *= 0.5
        else:
            if res <= tol:
                break
            raise ConvergenceError(f"line search failed for l = {l}, eps = {p.eps}", best=z, residual=res)
        moved = abs(z - trial)
        z, g, dg, res = trial, tg, tdg, tres
        if res <= tol:
            polish += 1
            if moved <= 1e-15 * abs(z) + 1e-13 * abs(z.imag) or polish > 5:
                break
    else:
        if res > tol:
            raise ConvergenceError(
                f"no convergence after {max_iter} iterations (residual {res:.3g})", best=z, residual=res
            )
    if res > tol:
        raise ConvergenceError(f"residual {res:.3g} above {tol:g}", best=z, residual=res)
    if not z.imag < 0:
        raise ConvergenceError(f"iterate {z} left the lower half plane", best=z, residual=res)
    if abs(z.imag) < PRECISION_FLOOR * abs(z.real):
        raise PrecisionError(
            f"|Im z|/|Re z| = {abs(z.imag) / abs(z.real):.3g} is below {PRECISION_FLOOR:g}; use the scaled solver",
            log_ratio=math.log(abs(z.imag) / abs(z.real)) if z.imag else -math.inf,
        )
    mirror = normalized_residual(p, -z.conjugate())
    if mirror > 10 * tol:
        raise ConvergenceError(f"reflection -conj(z) has residual {mirror:.3g}", best=z, residual=res)
    return ResonanceRoot(p, z, regime_of(p), res, it, mirror)


def default_seed(p):
    """Regime-appropriate seed, trying small-, mid- then large-l forms."""
    for seeder in (seed_small_l, seed_mid_l, seed_large_l):
        try:
            return seeder(p)
        except RegimeError:
            continue
    raise RegimeError(f"no direct seed for l = {p.l}, eps = {p.eps}; use the scaled solver")

