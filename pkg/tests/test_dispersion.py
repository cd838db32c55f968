import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bubbleres import dispersion as disp
from bubbleres.constants import gamma_asymptotic
from bubbleres.errors import ConvergenceError, DomainError, PrecisionError, RegimeError
from bubbleres.gamma import optimal_l
from bubbleres.scaled import solve_mode

from conftest import mp_root

# (l, eps) -> (x, log(-Im z)) from mpmath findroot at 40-90 digits, frozen.
ORACLE_ROOTS = {
    (2, 0.1): (0.34404119919520294, -10.4315794780032),
    (2, 0.05): (0.17291431940717536, -14.5287857319901),
    (2, 0.25): (0.82757830382397342, -5.37629806240393),
    (2, 0.3): (0.97356569309359888, -4.50001790522268),
    (2, 0.35): (1.1106316285198807, -3.81261750478612),
    (5, 0.2): (2.4270180325277263, -6.25896221919064),
    (6, 0.2): (3.1000202949321723, -6.24756151353353),
    (8, 0.2): (4.5539862117879497, -6.15484291898135),
    (15, 0.15): (8.4287986650338284, -10.5786906858966),
    (38, 0.1): (21.765550950659979, -24.5684456858567),
}
LARGE_L_ROOT = -10058.387790579996j  # l = 1000, eps = 0.1


def P(l, eps, we=1.0):
    return disp.PhysicalParams(l, eps, we)


def _seed(p):
    try:
        return disp.default_seed(p)
    except RegimeError:
        return solve_mode(p.l, p.eps_eff).z


def test_q_param_examples():
    assert disp.q_param(P(2, 0.1)) == pytest.approx(0.04, rel=1e-15)
    assert disp.q_param(P(2, 0.1, 2.0)) == pytest.approx(0.02, rel=1e-15)
    assert disp.q_param(P(2, 0.1, 2.0)) == pytest.approx(disp.q_param(P(2, 0.1 / math.sqrt(2))), rel=1e-15)
    assert disp.q_param(P(1000, 0.1)) == pytest.approx(10009.98, rel=1e-14)


@pytest.mark.parametrize("l,eps,we", [(1, 0.1, 1.0), (2.5, 0.1, 1.0), (2, 0.0, 1.0), (2, 0.6, 1.0), (2, 0.1, 0.0)])
def test_params_validation(l, eps, we):
    with pytest.raises(DomainError):
        P(l, eps, we)


def test_regime_tags():
    assert disp.regime_of(P(2, 0.05)) == "small-l"
    assert disp.regime_of(P(30, 0.05)) == "mid-l"
    assert disp.regime_of(P(163, 0.05)) == "transition"
    assert disp.regime_of(P(1000, 0.1)) == "large-l"


@pytest.mark.parametrize("key", sorted(ORACLE_ROOTS))
def test_roots_match_oracle(key):
    l, eps = key
    x_ref, log_y_ref = ORACLE_ROOTS[key]
    root = disp.find_root(P(l, eps), _seed(P(l, eps)))
    assert root.z.real == pytest.approx(x_ref, rel=1e-12)
    assert math.log(-root.z.imag) == pytest.approx(log_y_ref, abs=1e-9)
    assert root.residual <= disp.RESIDUAL_TOL
    assert root.reflection_residual <= 10 * disp.RESIDUAL_TOL


def test_live_oracle_small_l():
    root = disp.find_root(P(3, 0.12), _seed(P(3, 0.12)))
    ref = mp_root(3, 0.12, root.z.real)
    assert abs(root.z - complex(ref)) <= 1e-12 * abs(root.z)


def test_residual_at_root_and_off_axis():
    p = P(2, 0.1)
    root = disp.find_root(p, disp.seed_small_l(p))
    assert disp.normalized_residual(p, root.z) <= 1e-10
    r = disp.residual(p, 0.344031)
    assert r != 0 and r.imag != 0
    assert disp.normalized_residual(p, root.z) == pytest.approx(
        disp.normalized_residual(p, -root.z.conjugate()), abs=1e-12
    )


def test_residual_domain_error():
    with pytest.raises(DomainError):
        disp.residual(P(2, 0.1), 0.0)


def test_small_l_seed_example():
    p = P(2, 0.1)
    z = disp.seed_small_l(p)
    assert z.imag == 0
    assert z.real**2 == pytest.approx(0.12 * (1 - 0.04 / 3 - 0.04**2 * 2 / (1 * 9)), rel=1e-14)
    assert z.real**2 == pytest.approx(0.1183573, abs=5e-8)
    assert z.real == pytest.approx(0.3440310, abs=5e-8)
    root = disp.find_root(p, z)
    assert abs(root.z.real - z.real) <= p.q**2


def test_small_l_seed_limit():
    for eps in (1e-2, 1e-3):
        p = P(2, eps)
        assert disp.seed_small_l(p).real ** 2 / (3 * p.q) == pytest.approx(1.0, abs=2 * p.q)


def test_small_l_seed_regime_error():
    with pytest.raises(RegimeError):
        disp.seed_small_l(P(2, 0.4))
    with pytest.raises(RegimeError):
        disp.seed_small_l(P(11, 0.01))


@pytest.mark.parametrize("eps", [0.1, 0.05])
def test_small_l_imaginary_part_order(eps):
    p = P(2, eps)
    root = disp.find_root(p, disp.seed_small_l(p))
    assert 1e-3 < -root.z.imag / eps**6 < 1e3


@pytest.mark.parametrize("l", [2, 3, 4, 5])
@pytest.mark.parametrize("eps", [0.1, 0.07, 0.05])
def test_small_l_series_accuracy(l, eps):
    # Beyond the stated Q^(l+1/2) l^(-l-1/2) the three-term series also truncates at O(Q^3).
    p = P(l, eps)
    x2 = disp.find_root(p, disp.seed_small_l(p)).z.real ** 2
    bound = max(p.q ** (l + 0.5) * l ** (-l - 0.5), p.q**3)
    assert abs(x2 - disp.series_x_squared(l, p.q)) / x2 <= bound


def test_mid_l_seed_example():
    p = P(20, 0.05)
    assert p.q == pytest.approx(1.045, rel=1e-14)
    z = disp.seed_mid_l(p)
    assert z.real == pytest.approx(4.62, abs=0.005)
    # Converged log|Im z| (mpmath, 60 digits) within a factor 2 of the estimate.
    assert abs(disp.log_abs_y_mid(p) - (-48.2385096003723)) <= math.log(2.0)
    assert solve_mode(20, 0.05).log_abs_y == pytest.approx(-48.2385096003723, abs=1e-9)


def test_mid_l_estimates_decrease():
    vals = [disp.log_abs_y_mid(P(l, 0.05)) for l in range(5, 51)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_mid_l_seed_regime_error():
    with pytest.raises(RegimeError):
        disp.seed_mid_l(P(5, 0.05))
    with pytest.raises(RegimeError):
        disp.seed_mid_l(P(50, 0.05))


def test_large_l_root_near_minus_iq():
    p = P(1000, 0.1)
    seed = disp.seed_large_l(p)
    assert seed == pytest.approx(-10009.98j, rel=1e-14)
    root = disp.find_root(p, seed)
    assert abs(root.z + 1j * p.q) / p.q <= 0.1
    assert root.z == pytest.approx(LARGE_L_ROOT, rel=1e-12)
    assert -root.z.imag >= 0.1**-2
    assert root.regime == "large-l"


def test_large_l_seed_regime_error():
    with pytest.raises(RegimeError):
        disp.seed_large_l(P(50, 0.1))


def test_precision_error_below_floor():
    with pytest.raises(PrecisionError) as info:
        disp.find_root(P(20, 0.05), disp.seed_mid_l(P(20, 0.05)))
    assert info.value.log_ratio < math.log(1e-13)
    l = optimal_l(0.02)
    with pytest.raises(PrecisionError):
        disp.find_root(P(l, 0.02), complex(solve_mode(l, 0.02).x, 0.0))


def test_upper_half_plane_seed_rejected():
    with pytest.raises(DomainError):
        disp.find_root(P(2, 0.1), 0.3 + 0.1j)


def test_convergence_error_carries_best_iterate():
    p = P(2, 0.1)
    with pytest.raises(ConvergenceError) as info:
        disp.find_root(p, 0.5 - 0.01j, max_iter=1)
    assert info.value.best is not None and info.value.residual > 0


def test_root_at_optimal_l_eps025_vs_leading_law():
    # The leading-order law overestimates |Im z| by a factor ~5.4 at eps = 0.25.
    l = optimal_l(0.25)
    root = disp.find_root(P(l, 0.25), _seed(P(l, 0.25)))
    ratio = math.exp(math.log(-root.z.imag) - gamma_asymptotic(0.25)[0])
    assert ratio == pytest.approx(0.18367753820290839, rel=1e-8)


def test_lambda_units():
    root = disp.find_root(P(2, 0.1), disp.seed_small_l(P(2, 0.1)))
    assert root.lam == pytest.approx(root.z / 0.1, rel=1e-15)


@pytest.mark.parametrize("key", [(2, 0.1), (8, 0.2), (15, 0.15), (2, 0.35)])
def test_newton_basin(key):
    p = P(*key)
    root = disp.find_root(p, _seed(p))
    again = disp.find_root(p, root.z + 0.01 * abs(root.z) * (0.6 - 0.8j))
    assert abs(again.z - root.z) <= 1e-8 * abs(root.z)


@settings(max_examples=25, deadline=None)
@given(l=st.integers(2, 6), eps=st.floats(0.08, 0.3), we=st.floats(0.5, 4.0))
def test_weber_scaling(l, eps, we):
    eff = eps / math.sqrt(we)
    if eps > 0.5 or disp.PhysicalParams(l, eff).q > 0.5:
        return
    a = disp.find_root(P(l, eps, we), disp.default_seed(P(l, eps, we)))
    b = disp.find_root(P(l, eff), disp.default_seed(P(l, eff)))
    assert abs(a.z - b.z) <= 1e-12 * abs(a.z)


@settings(max_examples=25, deadline=None)
@given(l=st.integers(2, 8), eps=st.floats(0.1, 0.35))
def test_root_invariants(l, eps):
    p = P(l, eps)
    try:
        root = disp.find_root(p, _seed(p))
    except PrecisionError:
        return
    assert root.z.imag < 0
    assert root.residual <= disp.RESIDUAL_TOL
    assert disp.normalized_residual(p, -root.z.conjugate()) <= 10 * disp.RESIDUAL_TOL
