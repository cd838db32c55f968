"""Decay rate of the slowest resonance, minimised over shape modes.

``Gamma(eps) = min_{l >= 2} (-Im z_l)`` in ``z`` units (``lambda = z/eps``).
The minimiser sits in the transition band ``l ~ eps**-2`` for small ``eps``;
a guard scan over small and mid ``l`` and a large-``l`` bound back up the
claim that no other mode decays more slowly.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import dispersion as disp
from .constants import solve_constants
from .errors import (
    ConvergenceError,
    DomainError,
    InsufficientPointsError,
    PrecisionError,
    RegimeError,
    WindowError,
)
from .scaled import SolveWindow, expansion_seed, l_star_of, solve_mode

EPS_MAX = 0.35
GUARD_SMALL = range(2, 11)
MID_GRID_POINTS = 24


@dataclass(frozen=True)
class Candidate:
    """One examined mode: ``log|Im z|`` and how it was obtained."""

    l: int
    log_abs_y: float
    source: str
    zeta: float = math.nan


@dataclass(frozen=True)
class GammaResult:
    """Minimal decay rate at one ``(eps, we)``.

    Attributes
    ----------
    l_opt : int
    log_gamma_z : float
        ``log(-Im z)`` at the minimiser.
    log_gamma_lambda : float
        ``log_gamma_z - log eps``.
    eta_opt : float
        ``-eps'**2 log(eps'**2 |Im z|)`` with ``eps' = eps/sqrt(we)``.
    method : str
        ``direct`` or ``scaled``.
    candidates : tuple of Candidate
        Every mode examined, sorted by ``l``.
    certified : bool
        False if some estimate-only candidate fell below the minimiser.
    """

    eps: float
    we: float
    l_opt: int
    log_gamma_z: float
    log_gamma_lambda: float
    eta_opt: float
    zeta: float
    method: str
    candidates: tuple = field(default=(), repr=False)
    certified: bool = True


def effective_eps(eps, we):
    if not eps > 0 or not we > 0:
        raise DomainError(f"eps and we must be positive, got eps = {eps}, we = {we}")
    e = eps / math.sqrt(we)
    if e > EPS_MAX:
        raise RegimeError(
            f"eps/sqrt(We) = {e:.4g} exceeds {EPS_MAX}: the ordering of the small-l, "
            "transition and large-l regimes is not established there"
        )
    return e


def continuous_optimum(eps_eff):
    """``(l_*, l)`` of the continuous maximiser ``l_* = l_m0 + eps**2 l_m2``."""
    k = solve_constants()
    ls = k.l_m0 + eps_eff**2 * k.l_m2
    nu = ls / eps_eff**2
    return ls, 0.5 * (math.sqrt(1.0 + 4.0 * nu * nu) - 1.0)


def _eta(l, eps_eff, cache):
    if l not in cache:
        try:
            cache[l] = solve_mode(l, eps_eff).eta
        except (WindowError, ConvergenceError, DomainError, RegimeError):
            cache[l] = -math.inf
    return cache[l]


def _transition_optimum(eps_eff):
    """Integer ``l`` maximising ``eta`` near the continuous optimum, and all ``eta`` seen."""
    cache = {}
    window = SolveWindow()
    ls, lc = continuous_optimum(eps_eff)
    lo, hi = window.l_star_range
    if lo < ls < hi:
        f = math.floor(lc)
        pool = [l for l in range(f - 1, f + 3) if l >= 2] or [2]
    else:
        pool = range(2, max(3, int(3.0 / eps_eff**2)) + 1)
    best = max(pool, key=lambda l: _eta(l, eps_eff, cache))
    if not math.isfinite(_eta(best, eps_eff, cache)):
        raise ConvergenceError(f"no scaled solution near l = {lc:.4g} at eps = {eps_eff}")
    return best, cache


def optimal_l(eps, we=1.0):
    """Integer mode maximising the scaled exponent ``eta`` near the continuous optimum.

    ``eta`` is evaluated at the floor and ceiling of the continuous
    estimate and at one further neighbour on each side. If the estimate
    leaves the solve window, all ``l`` in ``[2, 3 We/eps**2]`` are scanned
    instead.
    """
    return _transition_optimum(effective_eps(eps, we))[0]


def _direct_seed(p, eps_eff):
    try:
        return disp.seed_small_l(p)
    except RegimeError:
        pass
    try:
        return expansion_seed(p.l, eps_eff)
    except (WindowError, ConvergenceError, DomainError, RegimeError):
        pass
    return disp.default_seed(p)


def _solve_direct(l, eps_eff):
    p = disp.PhysicalParams(l, eps_eff)
    root = disp.find_root(p, _direct_seed(p, eps_eff))
    s = eps_eff**2 * root.z.real / l_star_of(l, eps_eff)
    return Candidate(l, math.log(-root.z.imag), "direct", s)


def _solve_scaled(l, eps_eff):
    s = solve_mode(l, eps_eff)
    return Candidate(l, s.log_abs_y, "scaled", s.zeta)


def solve_candidate(l, eps_eff, prefer="auto"):
    """Root of mode ``l`` by the preferred solver, falling back to the other.

    ``auto`` and ``direct`` try complex Newton first and defer to the
    scaled solver when Newton cannot resolve ``Im z``; ``scaled`` tries
    the scaled solver first and falls back to Newton outside its window.
    """
    order = (_solve_scaled, _solve_direct) if prefer == "scaled" else (_solve_direct, _solve_scaled)
    if prefer == "direct":
        order = (_solve_direct,)
    errors = []
    for solver in order:
        try:
            return solver(l, eps_eff)
        except (PrecisionError, WindowError, ConvergenceError, DomainError, RegimeError) as exc:
            errors.append(exc)
    raise errors[-1]


def _estimate(l, eps_eff):
    """Cheap ``log|Im z|`` estimate for modes not solved outright."""
    p = disp.PhysicalParams(l, eps_eff)
    if disp.SMALL_L_MAX < l < 0.1 * eps_eff**-2:
        return Candidate(l, disp.log_abs_y_mid(p), "mid-estimate")
    x2 = disp.series_x_squared(l, p.q)
    if x2 > 0:
        return Candidate(l, disp.log_abs_y_perturbative(p, math.sqrt(x2)), "perturbative-estimate")
    return None


def _mid_grid(eps_eff, l_lo):
    top = int(3.0 / eps_eff**2)
    if top <= l_lo:
        return []
    pts = np.unique(np.round(np.geomspace(l_lo, top, MID_GRID_POINTS)).astype(int))
    return [int(v) for v in pts if v >= l_lo]


def guard_candidates(eps_eff, prefer="auto", skip=()):
    """Candidates outside the transition neighbourhood.

    Small modes ``l = 2..10`` are solved (with an estimate as last
    resort); mid modes use the mid-regime estimate below ``0.1/eps**2``
    and the scaled solver above; large modes are bounded by ``log Q``.
    """
    out = []
    for l in GUARD_SMALL:
        if l in skip:
            continue
        try:
            out.append(solve_candidate(l, eps_eff, prefer))
        except (PrecisionError, WindowError, ConvergenceError, DomainError, RegimeError):
            est = _estimate(l, eps_eff)
            if est is not None:
                out.append(est)
    for l in _mid_grid(eps_eff, GUARD_SMALL.stop):
        if l in skip:
            continue
        if l < 0.1 * eps_eff**-2:
            out.append(Candidate(l, disp.log_abs_y_mid(disp.PhysicalParams(l, eps_eff)), "mid-estimate"))
            continue
        try:
            out.append(_solve_scaled(l, eps_eff))
        except (WindowError, ConvergenceError, DomainError, RegimeError):
            continue
    l_big = max(math.ceil(10.0 / eps_eff**2), 2)
    q_big = (l_big + 2) * (l_big - 1) * eps_eff**2
    out.append(Candidate(l_big, math.log(q_big), "large-l-estimate"))
    return out


def gamma(eps, we=1.0, method="auto"):
    """Minimal ``-Im z`` over modes ``l >= 2`` at Mach ``eps`` and Weber ``we``.

    Parameters
    ----------
    eps, we : float
    method : {"auto", "direct", "scaled"}
        Preferred solver for each examined mode. ``auto`` uses complex
        Newton whenever it can resolve ``Im z`` and the scaled solver
        otherwise.

    Returns
    -------
    GammaResult

    Raises
    ------
    RegimeError
        If ``eps/sqrt(we) > 0.35``.
    """
    if method not in ("auto", "direct", "scaled"):
        raise DomainError(f"unknown method {method!r}")
    eps_eff = effective_eps(eps, we)
    l_t, _ = _transition_optimum(eps_eff)
    found = {}
    for l in {l_t - 1, l_t, l_t + 1}:
        if l < 2:
            continue
        try:
            found[l] = solve_candidate(l, eps_eff, method)
        except (PrecisionError, WindowError, ConvergenceError, DomainError, RegimeError):
            continue
    if l_t not in found:
        raise ConvergenceError(f"could not solve the transition mode l = {l_t} at eps = {eps}")
    for c in guard_candidates(eps_eff, method, skip=set(found)):
        found.setdefault(c.l, c)
    cands = sorted(found.values(), key=lambda c: c.l)
    solved = [c for c in cands if c.source in ("direct", "scaled")]
    win = min(solved, key=lambda c: c.log_abs_y)
    certified = all(c.log_abs_y >= win.log_abs_y for c in cands if c not in solved)
    eta = -(eps_eff**2) * (2.0 * math.log(eps_eff) + win.log_abs_y)
    return GammaResult(
        eps, we, win.l, win.log_abs_y, win.log_abs_y - math.log(eps), eta, win.zeta, win.source,
        tuple(cands), certified,
    )


@dataclass(frozen=True)
class FitResult:
    """Least-squares fit of ``log(eps**2 Gamma_z) = log_a - b / eps**2``."""

    b_fit: float
    log_a_fit: float
    residual_rms: float
    eps_range: tuple

    def predict_log_gamma_z(self, eps):
        """Model value inside the fitted range only."""
        lo, hi = self.eps_range
        if not lo <= eps <= hi:
            raise DomainError(f"eps = {eps} outside the fitted range [{lo}, {hi}]")
        return self.log_a_fit - self.b_fit / eps**2 - 2.0 * math.log(eps)


def fit_ab(sweep):
    """Fit ``b`` and ``log a`` from ``(eps, log_gamma_z)`` pairs.

    Raises
    ------
    InsufficientPointsError
        With fewer than four points.
    """
    pts = [(float(e), float(g)) for e, g in sweep]
    if len(pts) < 4:
        raise InsufficientPointsError(f"need at least 4 sweep points, got {len(pts)}")
    eps = np.array([e for e, _ in pts])
    yv = np.array([g for _, g in pts]) + 2.0 * np.log(eps)
    design = np.column_stack([np.ones_like(eps), eps**-2])
    coef, *_ = np.linalg.lstsq(design, yv, rcond=None)
    rms = float(np.sqrt(np.mean((design @ coef - yv) ** 2)))
    return FitResult(float(-coef[1]), float(coef[0]), rms, (float(eps.min()), float(eps.max())))
