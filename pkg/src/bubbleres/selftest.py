"""Fast invariant checks runnable without a test framework."""

import cmath
import math
import random

from . import dispersion as disp
from .constants import g0, g0_prime, integral_I, solve_constants
from .gamma import gamma, optimal_l
from .scaled import expansion_seed, solve_mode
from .specfun import (
    eval_jy_uniform,
    jy_scaled,
    recurrence_relative_defect,
    wronskian_relative_defect,
)

SEED = 20240611


def _check(name, ok, detail):
    return name, bool(ok), detail


def check_specfun(samples=1000):
    rng = random.Random(SEED)
    worst_w = worst_r = 0.0
    for _ in range(samples):
        l = rng.randint(1, 400)
        z = cmath.rect(10 ** rng.uniform(-2, 3), rng.uniform(-3.1, 3.1))
        worst_w = max(worst_w, wronskian_relative_defect(l, z))
        worst_r = max(worst_r, recurrence_relative_defect(l, z))
    out = [
        _check("wronskian", worst_w <= 1e-9, f"max defect {worst_w:.3g}"),
        _check("recurrence", worst_r <= 1e-9, f"max defect {worst_r:.3g}"),
    ]
    worst_u = 0.0
    for l in (100, 200, 400):
        for xi in (0.3, 0.5, 0.7):
            u = eval_jy_uniform(l, xi)
            r = jy_scaled(l, u.arg)
            err = max(abs(u.log_abs_y - r.log_y - math.log(abs(r.y))), abs(u.dlog_y / r.dlog_y - 1.0))
            worst_u = max(worst_u, err * l * l)
    out.append(_check("uniform-vs-recurrence", worst_u <= 5.0, f"max l^2 * rel err {worst_u:.3g}"))
    return out


def check_constants():
    k = solve_constants()
    return [
        _check("g0-root", abs(g0(k.zeta_m0)) <= 1e-12, f"g0(zeta_m0) = {g0(k.zeta_m0):.3g}"),
        _check("g0-slope", g0_prime(k.zeta_m0) < 0, f"g0'(zeta_m0) = {g0_prime(k.zeta_m0):.4g}"),
        _check("sign-bracket", g0(0.58) > 0 > g0(0.59), "g0(0.58) > 0 > g0(0.59)"),
        _check(
            "eta-consistency",
            abs(k.eta_m0 - 2 * k.l_m0 * integral_I(k.zeta_m0)) <= 1e-10,
            f"eta_m0 = {k.eta_m0:.12g}",
        ),
    ]


def check_dispersion():
    p = disp.PhysicalParams(2, 0.1)
    root = disp.find_root(p, disp.seed_small_l(p))
    big = disp.PhysicalParams(1000, 0.1)
    big_root = disp.find_root(big, disp.seed_large_l(big))
    return [
        _check("small-l-root", root.residual <= 1e-10 and root.z.imag < 0, f"z = {root.z:.12g}"),
        _check("reflection", root.reflection_residual <= 1e-9, f"mirror residual {root.reflection_residual:.3g}"),
        _check("large-l-root", abs(big_root.z + 1j * big.q) / big.q <= 0.1, f"z = {big_root.z:.8g}"),
    ]


def check_scaled():
    out = []
    for eps in (0.15, 0.2, 0.25, 0.3):
        l = optimal_l(eps)
        s = solve_mode(l, eps)
        root = disp.find_root(disp.PhysicalParams(l, eps), expansion_seed(l, eps))
        dx = abs(root.z.real / s.x - 1.0)
        dy = abs(math.log(-root.z.imag) - s.log_abs_y)
        out.append(_check(f"dual-solver eps={eps}", dx <= 1e-6 and dy <= 1e-4, f"dx {dx:.2g}, dlog {dy:.2g}"))
    return out


def check_gamma():
    g = gamma(0.05)
    worst = min(c.log_abs_y for c in g.candidates if c.l != g.l_opt)
    return [
        _check("minimiser", g.log_gamma_z <= worst, f"l_opt = {g.l_opt}, log gamma_z = {g.log_gamma_z:.10g}"),
        _check("certified", g.certified, "no estimate below the minimiser"),
    ]


CHECKS = {
    "specfun": check_specfun,
    "constants": check_constants,
    "dispersion": check_dispersion,
    "scaled": check_scaled,
    "gamma": check_gamma,
}


def run(modules=None):
    """Run the named groups (all by default); returns ``[(group, name, ok, detail)]``."""
    results = []
    for mod in modules or CHECKS:
        try:
            results.extend((mod, *r) for r in CHECKS[mod]())
        except Exception as exc:  # a crashing check is a failed check
            results.append((mod, "error", False, f"{type(exc).__name__}: {exc}"))
    return results
