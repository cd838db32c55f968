"""Logarithmically scaled form of the resonance condition.

With ``l_* = sqrt(l(l+1)) eps**2``, ``x = l_* zeta / eps**2`` and
``Im z = -eps**-2 exp(-eta / eps**2)``, the real and imaginary parts of the
dispersion relation become two real equations ``F(zeta, eta) = 0`` and
``G(zeta, eta) = 0`` whose solutions stay O(1) however small ``Im z`` is.
``eps`` here is the effective Mach number ``eps / sqrt(We)``.

The coefficients ``A_i`` (from ``y_l``) and ``B_i`` (from ``j_l``) are the
even and odd parts of the Bessel functions about the real axis::

    A1 = Re y_l(z)    A2 = Im y_l(z) / Im z
    A3 = Re y_l'(z)   A4 = Im y_l'(z) / Im z

When ``|Im z| / x`` is small they are replaced by Taylor expansions about
real ``x`` to ``O((Im z)**2)``; otherwise they are evaluated at complex ``z``.
"""

import math
from dataclasses import dataclass, field

from .constants import integral_I
from .errors import ConvergenceError, DomainError, RegimeError, SingularJacobianError, WindowError
from .specfun import jy_scaled, real_log_jy

DELTA = 0.1
TOL = 1e-12
MAX_ITER = 50
MAX_HALVINGS = 20
EPS_MAX = 0.35
EXACT_MODE_MIN_RATIO = 1e-4
LOG_DROP = -700.0


@dataclass(frozen=True)
class SolveWindow:
    """Admissible region for the scaled solve at a given ``delta``."""

    delta: float = DELTA

    def __post_init__(self):
        if not 0 < self.delta < 0.5:
            raise DomainError(f"delta must lie in (0, 0.5), got {self.delta}")

    @property
    def l_star_range(self):
        d = self.delta
        return d * d / math.sqrt(1 - d * d), (1 - d) ** 2 / math.sqrt(1 - (1 - d) ** 2)

    @property
    def zeta_range(self):
        return self.delta, 1.0 - self.delta

    def eta_floor(self, l_star):
        """``2 l_* int_{1-delta}^1 sqrt(1-t^2)/t dt``."""
        return 2.0 * l_star * integral_I(1.0 - self.delta)

    def check_l_star(self, l_star):
        lo, hi = self.l_star_range
        if not lo < l_star < hi:
            raise WindowError(f"l_* = {l_star:.6g} outside the window ({lo:.6g}, {hi:.6g})")

    def check_zeta(self, zeta):
        lo, hi = self.zeta_range
        if not lo < zeta < hi:
            raise WindowError(f"zeta = {zeta:.6g} outside ({lo:.6g}, {hi:.6g})")


@dataclass(frozen=True)
class ScaledState:
    """Scaled representation of a resonance root.

    Attributes
    ----------
    l_star, q, zeta, eta : float
        ``q = l_* - 2 eps**4 / l_*``.
    eps : float
        Effective Mach number used for the scaling.
    residual : float
        ``|F| + |G|`` at the state.
    iterations : int
    """

    l_star: float
    q: float
    zeta: float
    eta: float
    eps: float
    residual: float = math.nan
    iterations: int = 0
    dropped_log_bound: float = field(default=-math.inf, compare=False)

    @property
    def order(self):
        """Mode index ``l`` (possibly non-integer) with ``sqrt(l(l+1)) = l_*/eps**2``."""
        return order_from_l_star(self.l_star, self.eps)

    @property
    def x(self):
        return self.l_star * self.zeta / self.eps**2

    @property
    def log_abs_y(self):
        """``log|Im z| = -eta/eps**2 - 2 log eps``, free of underflow."""
        return -self.eta / self.eps**2 - 2.0 * math.log(self.eps)

    @property
    def z(self):
        """Unscaled root ``x + i y``; ``y`` underflows to ``-0.0`` when tiny."""
        ly = self.log_abs_y
        return complex(self.x, -math.exp(ly) if ly > -745 else -0.0)


def q_from_l_star(l_star, eps):
    return l_star - 2.0 * eps**4 / l_star


def l_star_of(l, eps):
    return math.sqrt(l * (l + 1.0)) * eps * eps


def order_from_l_star(l_star, eps):
    nu = l_star / eps**2
    l = 0.5 * (math.sqrt(1.0 + 4.0 * nu * nu) - 1.0)
    r = round(l)
    return float(r) if abs(l - r) <= 1e-9 * max(1.0, l) else l


def scale_root(root):
    """Map a ``ResonanceRoot`` to its scaled state (``eps`` is ``eps/sqrt(We)``)."""
    eps = root.params.eps_eff
    l_star = l_star_of(root.params.l, eps)
    zeta = eps**2 * root.z.real / l_star
    eta = -(eps**2) * (2.0 * math.log(eps) + math.log(-root.z.imag))
    return ScaledState(l_star, q_from_l_star(l_star, eps), zeta, eta, eps)


def _derivative_ratios(l, x, d1):
    """``u'/u`` to ``u''''/u`` for a solution of the spherical Bessel equation."""
    big_l = l * (l + 1.0)
    c = 1.0 - big_l / (x * x)
    d2 = -2.0 / x * d1 - c
    d3 = -2.0 / x * d2 + 2.0 / (x * x) * d1 - c * d1 - 2.0 * big_l / x**3
    d4 = (
        -2.0 / x * d3
        + 4.0 / (x * x) * d2
        - 4.0 / x**3 * d1
        - c * d2
        - 4.0 * big_l / x**3 * d1
        + 6.0 * big_l / x**4
    )
    return d1, d2, d3, d4


@dataclass(frozen=True)
class _Coefficients:
    """Ratios ``a_i = A_i/A1``, ``b_i = B_i/B1`` and ``log(-B1/A1)``."""

    a2: float
    a3: float
    a4: float
    b2: float
    b3: float
    b4: float
    log_neg_rho: float
    mode: str


def _limit_coefficients(l, x, y):
    r = real_log_jy(l, x)
    if r.sign_j * r.sign_y >= 0:
        raise DomainError(f"j_l/y_l >= 0 at l = {l}, x = {x:.6g}; outside the decaying regime")
    y2 = y * y
    out = []
    for d in (r.dlog_y, r.dlog_j):
        d1, d2, d3, d4 = _derivative_ratios(l, x, d)
        c1 = 1.0 - 0.5 * y2 * d2
        out.append((c1, (d1 - y2 / 6.0 * d3) / c1, (d1 - 0.5 * y2 * d3) / c1, (d2 - y2 / 6.0 * d4) / c1))
    (ca, a2, a3, a4), (cb, b2, b3, b4) = out
    log_neg_rho = r.log_abs_j - r.log_abs_y + math.log(cb / ca)
    return _Coefficients(a2, a3, a4, b2, b3, b4, log_neg_rho, "limit")


def _exact_coefficients(l, x, y):
    r = jy_scaled(int(l), complex(x, y))
    a1, b1 = r.y.real, r.j.real
    if a1 == 0 or b1 == 0 or a1 * b1 >= 0:
        raise DomainError(f"Re j_l / Re y_l >= 0 at l = {l}, z = {complex(x, y)}")
    return _Coefficients(
        r.y.imag / y / a1,
        r.yp.real / a1,
        r.yp.imag / y / a1,
        r.j.imag / y / b1,
        r.jp.real / b1,
        r.jp.imag / y / b1,
        math.log(-b1 / a1) + r.log_j - r.log_y,
        "exact",
    )


def _coefficients(l, x, y):
    integer = float(l).is_integer()
    if integer and l <= 5000 and abs(y) > EXACT_MODE_MIN_RATIO * x:
        return _exact_coefficients(l, x, y)
    return _limit_coefficients(l, x, y)


def _signed_exp(sign, log_mag, dropped):
    """``sign * exp(log_mag)``, or 0 with the magnitude recorded in ``dropped``."""
    if log_mag < LOG_DROP:
        dropped.append(log_mag)
        return 0.0
    return sign * math.exp(log_mag)


def _fg(l_star, zeta, eta, eps, window=None):
    """``(F, G, dropped_log_bound)`` at one state."""
    window = window or SolveWindow()
    window.check_l_star(l_star)
    window.check_zeta(zeta)
    if eps == 0:
        s = math.sqrt((1.0 - zeta) * (1.0 + zeta))
        return zeta - l_star * s / zeta, eta - 2.0 * l_star * integral_I(zeta), -math.inf
    e2 = eps * eps
    l = order_from_l_star(l_star, eps)
    q = q_from_l_star(l_star, eps)
    x = l_star * zeta / e2
    big_q = q * l_star / e2
    log_e = -eta / e2
    log_y = log_e - 2.0 * math.log(eps)
    dropped = []
    y = -_signed_exp(1.0, log_y, dropped)
    try:
        c = _coefficients(l, x, y)
    except RegimeError as exc:
        raise RegimeError(f"cannot evaluate Bessel terms at l = {l:.6g}, x = {x:.6g}: {exc}") from exc

    # F: exponentially small pieces are assembled in log form.
    bracket = e2 / l_star + zeta * c.b2 + q * c.b4
    t1 = (
        _signed_exp(math.copysign(1.0, bracket), log_e - 2.0 * math.log(eps) + c.log_neg_rho + math.log(abs(bracket)), dropped)
        if bracket
        else 0.0
    )
    t2 = (
        _signed_exp(math.copysign(1.0, c.a2), 2.0 * log_e + math.log(abs(c.a2)) - math.log(e2 * l_star), dropped)
        if c.a2
        else 0.0
    )
    f_val = zeta + q * c.a3 + t1 - t2

    # G: D/A1 with the vanishing combination added, as in the imaginary-part equation.
    s = math.sqrt(l * (l + 1.0) / (x * x) - 1.0)
    y_rho = _signed_exp(1.0, log_y + c.log_neg_rho, dropped)  # y < 0 and rho < 0
    num = x + big_q * c.b3 - y * y * c.b2
    den = 1.0 + x * c.a2 + big_q * c.a4 + s * (
        x + big_q * c.a3 + y_rho * (x * c.b2 + 1.0 + big_q * c.b4) - y * y * c.a2
    )
    if not num / den > 0:
        raise DomainError(f"log argument of G is non-positive at zeta = {zeta:.6g}, eta = {eta:.6g}")
    g_val = eta + e2 * (math.log(e2) + c.log_neg_rho + math.log(num / den))
    return f_val, g_val, max(dropped, default=-math.inf)


def F_eval(s, eps, window=None):
    """Real-part equation ``F(zeta, eta; eps)`` at state ``s``.

    At ``eps = 0`` this is ``zeta - l_* sqrt(1-zeta**2)/zeta``.

    Raises
    ------
    WindowError
        If ``l_*`` or ``zeta`` lies outside the window.
    """
    return _fg(s.l_star, s.zeta, s.eta, eps, window)[0]


def G_eval(s, eps, window=None):
    """Imaginary-part equation ``G(zeta, eta; eps)`` at state ``s``.

    At ``eps = 0`` this is ``eta - 2 l_* I(zeta)``. The ratio ``j_l/y_l``
    enters only through its logarithm, so nothing underflows.

    Raises
    ------
    WindowError
        If ``l_*`` or ``zeta`` lies outside the window.
    DomainError
        If the argument of the logarithm is not positive.
    """
    return _fg(s.l_star, s.zeta, s.eta, eps, window)[1]


def state(l_star, zeta, eta, eps):
    """Build a ``ScaledState`` from its free coordinates."""
    return ScaledState(l_star, q_from_l_star(l_star, eps), zeta, eta, eps)


def zeta_of_l_star(l_star, eps=0.0):
    """Invert ``l_* = zeta**2/sqrt(1-zeta**2) - eps**2 (1-2 zeta**2)/(2 (1-zeta**2)**1.5)``."""

    def phi(z):
        c = 1.0 - z * z
        return z * z / math.sqrt(c) - eps * eps * (1.0 - 2.0 * z * z) / (2.0 * c**1.5) - l_star

    lo, hi = 1e-12, 1.0 - 1e-15
    if phi(lo) > 0 or phi(hi) < 0:
        raise DomainError(f"no zeta in (0, 1) for l_* = {l_star}, eps = {eps}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if phi(mid) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-16:
            break
    return 0.5 * (lo + hi)


def eta_correction_log(l_star, zeta):
    """``-log(l_* zeta) + log(2 + 1/(2(1-zeta^2)) - l_*^2 (1-2zeta^2)/(2 zeta^4))``."""
    arg = 2.0 + 1.0 / (2.0 * (1.0 - zeta * zeta)) - l_star**2 * (1.0 - 2.0 * zeta * zeta) / (2.0 * zeta**4)
    if arg <= 0:
        raise DomainError(f"eta correction undefined at l_* = {l_star}, zeta = {zeta}")
    return -math.log(l_star * zeta) + math.log(arg)


def eta_expansion(l_star, eps, window=None):
    """Two-term small-``eps`` approximation ``(zeta, eta)`` of the scaled root.

    Raises
    ------
    WindowError
        If ``l_*`` lies outside the window.
    """
    (window or SolveWindow()).check_l_star(l_star)
    zeta = zeta_of_l_star(l_star, eps)
    eta = 2.0 * l_star * integral_I(zeta) + eps * eps * eta_correction_log(l_star, zeta)
    return zeta, eta


def _fallback_seed(l_star, eps):
    """Seed from the small-``Q`` series and the first-order ``|Im z|`` estimate."""
    from .dispersion import PhysicalParams, log_abs_y_perturbative, series_x_squared

    l = order_from_l_star(l_star, eps)
    if not float(l).is_integer() or l < 2:
        return None
    big_q = q_from_l_star(l_star, eps) * l_star / eps**2
    x2 = series_x_squared(int(l), big_q)
    if x2 <= 0:
        return None
    x = math.sqrt(x2)
    try:
        log_y = log_abs_y_perturbative(PhysicalParams(int(l), min(eps, 0.5)), x)
    except (DomainError, RegimeError):
        return None
    return eps**2 * x / l_star, -(eps**2) * (2.0 * math.log(eps) + log_y)


def _newton(l_star, eps, zeta, eta, window):
    def resid(zt, et):
        f, g, dropped = _fg(l_star, zt, et, eps, window)
        return f, g, abs(f) + abs(g), dropped

    f, g, res, dropped = resid(zeta, eta)
    for it in range(1, MAX_ITER + 1):
        if res <= TOL:
            return zeta, eta, res, it - 1, dropped
        hz = 1e-7 * max(1.0, abs(zeta))
        he = 1e-7 * max(1.0, abs(eta))
        fz, gz, _ = _fg(l_star, zeta + hz, eta, eps, window)
        fe, ge, _ = _fg(l_star, zeta, eta + he, eps, window)
        j11, j21 = (fz - f) / hz, (gz - g) / hz
        j12, j22 = (fe - f) / he, (ge - g) / he
        det = j11 * j22 - j12 * j21
        scale = max(abs(j11 * j22), abs(j12 * j21), 1e-300)
        if abs(det) <= 1e-12 * scale:
            raise SingularJacobianError(
                f"singular Jacobian at zeta = {zeta:.6g}, eta = {eta:.6g}", best=(zeta, eta), residual=res
            )
        dz = (j22 * f - j12 * g) / det
        de = (j11 * g - j21 * f) / det
        t = 1.0
        for _ in range(MAX_HALVINGS + 1):
            zt, et = zeta - t * dz, eta - t * de
            try:
                tf, tg, tres, tdropped = resid(zt, et)
            except (WindowError, DomainError):
                tres = math.inf
            if tres < res:
                break
            t *= 0.5
        else:
            raise ConvergenceError(
                f"line search failed at l_* = {l_star:.6g}, eps = {eps}", best=(zeta, eta), residual=res
            )
        zeta, eta, f, g, res, dropped = zt, et, tf, tg, tres, tdropped
    if res <= TOL:
        return zeta, eta, res, MAX_ITER, dropped
    raise ConvergenceError(f"no convergence in {MAX_ITER} iterations", best=(zeta, eta), residual=res)


def solve_FG(l_star, eps, window=None, seed=None):
    """Solve ``F = G = 0`` for ``(zeta, eta)`` at fixed ``l_*``.

    Parameters
    ----------
    l_star : float
        ``sqrt(l(l+1)) eps**2``; need not correspond to an integer ``l``
        when ``l >= 29.5`` (non-integer orders use the Debye expansion).
    eps : float
        Effective Mach number in ``[0, 0.35]``.
    window : SolveWindow, optional
    seed : (float, float), optional
        Starting ``(zeta, eta)``; defaults to ``eta_expansion``.

    Returns
    -------
    ScaledState

    Raises
    ------
    WindowError
        If ``l_*`` is outside the window or the solution leaves it.
    RegimeError
        If ``l_*`` maps to a non-integer order below 29.5.
    SingularJacobianError, ConvergenceError
    """
    window = window or SolveWindow()
    window.check_l_star(l_star)
    if not 0 <= eps <= EPS_MAX:
        raise DomainError(f"eps must lie in [0, {EPS_MAX}], got {eps}")
    seeds = [seed] if seed is not None else []
    try:
        seeds.append(eta_expansion(l_star, eps, window))
    except DomainError:
        pass
    if eps > 0:
        seeds.append(_fallback_seed(l_star, eps))
    last = None
    for sd in seeds:
        if sd is None:
            continue
        zeta0, eta0 = sd
        lo, hi = window.zeta_range
        zeta0 = min(max(zeta0, lo + 1e-6), hi - 1e-6)
        try:
            zeta, eta, res, it, dropped = _newton(l_star, eps, zeta0, eta0, window)
        except (ConvergenceError, WindowError, DomainError) as exc:
            last = exc
            continue
        if eta <= window.eta_floor(l_star):
            raise WindowError(f"eta = {eta:.6g} below the window floor {window.eta_floor(l_star):.6g}")
        return ScaledState(l_star, q_from_l_star(l_star, eps), zeta, eta, eps, res, it, dropped)
    if isinstance(last, SingularJacobianError):
        raise last
    raise ConvergenceError(f"scaled solve failed at l_* = {l_star:.6g}, eps = {eps}: {last}") from last


def solve_mode(l, eps, window=None):
    """``solve_FG`` at the ``l_*`` of integer mode ``l``."""
    return solve_FG(l_star_of(l, eps), eps, window)


def expansion_seed(l, eps, window=None):
    """Complex ``z`` of mode ``l`` from the two-term expansion, as a Newton seed.

    Independent of :func:`solve_FG`, so a complex Newton solve started
    here is a separate route to the same root.
    """
    ls = l_star_of(l, eps)
    zeta, eta = eta_expansion(ls, eps, window)
    e2 = eps * eps
    log_y = -eta / e2 - math.log(e2)
    return complex(zeta * ls / e2, -math.exp(log_y) if log_y > -745 else -0.0)


def unscale(s):
    """Complex root ``z`` of a scaled state (imaginary part may underflow)."""
    return s.z
