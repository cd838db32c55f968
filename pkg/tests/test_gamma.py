import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bubbleres import dispersion as disp
from bubbleres.constants import gamma_asymptotic, solve_constants
from bubbleres.errors import DomainError, InsufficientPointsError, RegimeError
from bubbleres.gamma import (
    EPS_MAX,
    continuous_optimum,
    effective_eps,
    fit_ab,
    gamma,
    guard_candidates,
    optimal_l,
    solve_candidate,
)
from bubbleres.scaled import SolveWindow, solve_FG, solve_mode

K = solve_constants()


def test_continuous_optimum_arithmetic():
    ls, lc = continuous_optimum(0.2)
    assert ls == pytest.approx(0.41535 - 2.4071 * 0.04, abs=1e-4)
    assert math.sqrt(lc * (lc + 1)) == pytest.approx(ls / 0.04, rel=1e-12)
    assert math.sqrt(lc * (lc + 1)) == pytest.approx(7.977, abs=5e-3)
    ls, lc = continuous_optimum(0.05)
    assert math.sqrt(lc * (lc + 1)) == pytest.approx(163.7, abs=0.1)


def test_optimal_l_eps_02_wins_eta_comparison():
    l = optimal_l(0.2)
    _, lc = continuous_optimum(0.2)
    pool = range(math.floor(lc) - 1, math.floor(lc) + 3)
    assert l in pool
    etas = {k: solve_mode(k, 0.2).eta for k in pool}
    assert l == max(etas, key=etas.get)
    assert l == 6


def test_optimal_l_eps_005():
    assert optimal_l(0.05) == 163


@pytest.mark.parametrize("eps, expected", [(0.35, 2), (0.3, 2), (0.25, 2), (0.15, 15), (0.1, 38)])
def test_optimal_l_values(eps, expected):
    assert optimal_l(eps) == expected


@pytest.mark.parametrize("eps", [0.1, 0.07, 0.05])
def test_discreteness_gap_is_fourth_order(eps):
    l = optimal_l(eps)
    ls, _ = continuous_optimum(eps)
    # continuous maximum of eta over l_* by a dense scan around the estimate
    grid = np.linspace(ls - 0.01, ls + 0.01, 41)
    cont = max(solve_FG(float(v), eps).eta for v in grid)
    assert abs(solve_mode(l, eps).eta - cont) <= 10 * eps**4
    assert abs(solve_FG(ls, eps).eta - cont) <= 10 * eps**4


def test_unimodal_eta_near_optimum():
    eps = 0.05
    l0 = optimal_l(eps)
    etas = [solve_mode(l, eps).eta for l in range(l0 - 3, l0 + 4)]
    k = int(np.argmax(etas))
    assert k == 3
    assert all(a < b for a, b in zip(etas[:k], etas[1 : k + 1]))
    assert all(a > b for a, b in zip(etas[k:], etas[k + 1 :]))


def test_eps_025_direct_and_scaled_agree():
    a = gamma(0.25, method="direct")
    b = gamma(0.25, method="scaled")
    assert a.l_opt == b.l_opt
    assert a.log_gamma_z == pytest.approx(b.log_gamma_z, abs=1e-4)


@pytest.mark.parametrize("eps", [0.15, 0.2, 0.25, 0.3])
def test_solvers_agree_at_optimal_l(eps):
    l = optimal_l(eps)
    d = solve_candidate(l, eps, "direct")
    s = solve_candidate(l, eps, "scaled")
    assert d.log_abs_y == pytest.approx(s.log_abs_y, abs=1e-4)


def test_eps_03_ratio_frozen():
    g = gamma(0.3)
    ratio = math.exp(g.log_gamma_z - gamma_asymptotic(0.3)[0])
    assert ratio == pytest.approx(0.17034688145183266, rel=1e-9)
    assert g.l_opt == 2


def test_eps_005_result():
    g = gamma(0.05)
    assert g.l_opt == 163
    assert g.method == "scaled"
    assert g.log_gamma_z == pytest.approx(-103.8744229281087, abs=1e-9)
    assert g.certified
    assert g.log_gamma_lambda == pytest.approx(g.log_gamma_z - math.log(0.05), abs=1e-12)
    assert g.eta_opt == pytest.approx(-(0.05**2) * (2 * math.log(0.05) + g.log_gamma_z), rel=1e-14)


def test_eps_005_matches_mpmath_root():
    # frozen from a 60-digit mpmath Newton solve of z h(z) + Q h'(z) = 0 at l = 163
    assert gamma(0.05).log_gamma_z == pytest.approx(-103.874422928109, abs=1e-8)


def test_guard_scan_mid_estimates_far_above_minimum():
    g = gamma(0.05)
    floor = -g.eta_opt / 0.05**2
    for l in range(5, 51):
        est = disp.log_abs_y_mid(disp.PhysicalParams(l, 0.05))
        assert est - floor >= 10 * math.log(10)


@pytest.mark.parametrize("eps", [0.3, 0.2, 0.1, 0.05])
def test_minimiser_invariant(eps):
    g = gamma(eps)
    assert all(g.log_gamma_z <= c.log_abs_y for c in g.candidates)
    assert [c.l for c in g.candidates] == sorted({c.l for c in g.candidates})
    assert g.method in ("direct", "scaled")
    assert g.l_opt >= 2


def test_scaled_winner_lies_in_window():
    g = gamma(0.05)
    ls = math.sqrt(g.l_opt * (g.l_opt + 1)) * 0.05**2
    lo, hi = SolveWindow().l_star_range
    assert lo < ls < hi


def test_regime_dominance_small_l():
    eps = 0.05
    g = gamma(eps)
    small = [c for c in g.candidates if 2 <= c.l <= 10]
    assert len(small) == 9
    assert min(c.log_abs_y for c in small) > g.log_gamma_z
    assert all((2 * c.l + 2) * math.log(eps) > -g.eta_opt / eps**2 for c in small)


def test_guard_candidates_cover_all_regimes():
    sources = {c.source for c in guard_candidates(0.05)}
    assert {"direct", "mid-estimate", "scaled", "large-l-estimate"} <= sources


@given(st.floats(0.08, 0.3), st.sampled_from([0.5, 2.0, 4.0]))
@settings(max_examples=8, deadline=None)
def test_weber_scaling(eps, we):
    if eps / math.sqrt(we) > EPS_MAX:
        return
    a = gamma(eps, we)
    b = gamma(eps / math.sqrt(we), 1.0)
    assert a.l_opt == b.l_opt
    assert a.log_gamma_z == b.log_gamma_z
    assert a.log_gamma_lambda - b.log_gamma_lambda == pytest.approx(-0.5 * math.log(we), abs=1e-12)


def test_refuses_beyond_regime_ordering():
    with pytest.raises(RegimeError, match="0.35"):
        gamma(0.4)
    with pytest.raises(RegimeError):
        optimal_l(0.2, we=0.25)
    assert effective_eps(0.7, 4.0) == pytest.approx(0.35)


@pytest.mark.parametrize("eps, we", [(0.0, 1.0), (-0.1, 1.0), (0.1, 0.0)])
def test_domain_errors(eps, we):
    with pytest.raises(DomainError):
        gamma(eps, we)


def test_unknown_method():
    with pytest.raises(DomainError):
        gamma(0.1, method="bogus")


def test_fit_recovers_generating_model():
    pts = [(e, gamma_asymptotic(e)[0]) for e in (0.1, 0.15, 0.2, 0.25)]
    f = fit_ab(pts)
    assert f.b_fit == pytest.approx(K.eta_m0, abs=1e-10)
    assert f.log_a_fit == pytest.approx(-K.eta_m2, abs=1e-10)
    assert f.residual_rms <= 1e-10
    assert f.eps_range == (0.1, 0.25)


def test_fit_needs_four_points():
    with pytest.raises(InsufficientPointsError):
        fit_ab([(0.1, -1.0), (0.2, -2.0), (0.3, -3.0)])


def test_fit_refuses_extrapolation():
    pts = [(e, gamma_asymptotic(e)[0]) for e in (0.1, 0.15, 0.2, 0.25)]
    f = fit_ab(pts)
    assert f.predict_log_gamma_z(0.15) == pytest.approx(gamma_asymptotic(0.15)[0], abs=1e-9)
    with pytest.raises(DomainError):
        f.predict_log_gamma_z(0.3)


def test_fit_over_gamma_sweep_frozen():
    eps = np.linspace(0.12, 0.3, 7)
    f = fit_ab([(e, gamma(float(e)).log_gamma_z) for e in eps])
    # finite-eps contamination biases b low by about 12 percent on this range
    assert f.b_fit == pytest.approx(0.23826345948416175, rel=1e-6)
    assert f.residual_rms > 0


def test_fit_over_scaled_sweep_frozen():
    eps = np.linspace(0.05, 0.25, 12)
    f = fit_ab([(e, gamma(float(e), method="scaled").log_gamma_z) for e in eps])
    assert f.b_fit == pytest.approx(0.26629403325158907, rel=1e-6)
    assert f.log_a_fit == pytest.approx(-2.961684470578645, abs=1e-5)
