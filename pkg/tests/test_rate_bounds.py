import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from threshold_codes.code_matrix import union_weight_distribution
from threshold_codes.exceptions import DomainError, InvalidTau, OutOfRange
from threshold_codes.ks_construction import derive_params, family_rate_bound
from threshold_codes.rate_bounds import (
    LOG2E,
    ExponentInput,
    asymptotic_objective,
    binary_entropy,
    bonis_upper,
    exponent_A,
    exponent_A_prime,
    lower_rate_thr,
    lower_rate_tau,
    root_residual,
    solve_y,
    weight_interval,
)

# max over a 10**6-point Q grid, tests/oracles.maxmin_on_grid(2, 0.5, 10**6)
GRID_LOWER_TAU_S2_HALF = 0.04877308681371462
# 2000 x 2000 (tau, Q) scan refined to 401 x 20000 around the peak
GRID_LOWER_THR_S2 = 0.06899971959165085


# --- roots -------------------------------------------------------------------


def test_solve_y_s2_closed_form():
    y = solve_y(2, 0.25, 0.375)
    assert y == pytest.approx(0.375 / 0.25 - 1, abs=1e-15)


def test_solve_y_s3_quadratic():
    assert solve_y(3, 0.2, 0.5) == pytest.approx((-1 + math.sqrt(7)) / 2, abs=1e-15)


def test_solve_y_limits():
    Q = 0.1
    assert solve_y(4, Q, Q * (1 + 1e-9)) < 1e-8
    assert solve_y(4, Q, 4 * Q * (1 - 1e-9)) > 1 - 1e-8


@pytest.mark.parametrize("q_arg", [0.1, 0.05, 0.4, 0.41])
def test_solve_y_out_of_range(q_arg):
    with pytest.raises(OutOfRange):
        solve_y(4, 0.1, q_arg)


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 60), st.floats(1e-4, 0.999), st.floats(1e-6, 1 - 1e-6))
def test_root_certificate(s, Q, frac):
    q_arg = Q + frac * (s - 1) * Q
    if not Q < q_arg < s * Q:
        return
    y = solve_y(s, Q, q_arg)
    assert 0 < y < 1
    assert root_residual(s, Q, q_arg, y) < 1e-12


def test_exponent_input_validation():
    ExponentInput(2, 0.3, 0.4, 0.5)
    with pytest.raises(OutOfRange):
        ExponentInput(1, 0.3, 0.4)
    with pytest.raises(OutOfRange):
        ExponentInput(2, 1.3, 0.4)


# --- exponent ------------------------------------------------------------------


def test_entropy():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(0.11) == pytest.approx(0.4999, abs=1e-3)


@pytest.mark.parametrize("s", [2, 3, 5, 10])
@pytest.mark.parametrize("Q", [0.05, 0.1, 0.3])
def test_exponent_zero_point(s, Q):
    assert abs(exponent_A(s, Q, 1 - (1 - Q) ** s)) < 1e-9


def test_exponent_example_zero():
    assert abs(exponent_A(2, 0.25, 0.4375)) < 1e-9


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 12), st.floats(0.01, 0.9), st.floats(0.01, 0.99))
def test_exponent_matches_textbook_form(s, Q, frac):
    q_arg = Q + frac * (min(1.0, s * Q) - Q)
    if not Q < q_arg < min(1.0, s * Q):
        return
    ours = exponent_A(s, Q, q_arg)
    ref = float(oracles.exponent(s, Q, q_arg))
    assert ours == pytest.approx(ref, rel=1e-8, abs=1e-11)


def test_exponent_prime_cases():
    assert exponent_A_prime(3, 0.1, 0.35) == math.inf
    assert exponent_A_prime(3, 0.1, 0.05) == math.inf
    assert exponent_A_prime(3, 0.1, 0.2) == exponent_A(3, 0.1, 0.2)


@pytest.mark.parametrize("s,Q", [(2, 0.3), (3, 0.1), (5, 0.15), (4, 0.3)])
def test_exponent_prime_boundary_limits(s, Q):
    # q_arg = Q is (s-1) h(Q); q_arg = sQ (when <= 1) is the disjoint-union limit
    assert exponent_A_prime(s, Q, Q) == pytest.approx((s - 1) * binary_entropy(Q), rel=1e-12)
    assert exponent_A_prime(s, Q, Q) == pytest.approx(exponent_A(s, Q, Q * (1 + 1e-10)), abs=2e-8)
    if s * Q < 1:
        upper = exponent_A_prime(s, Q, s * Q)
        assert upper == pytest.approx(exponent_A(s, Q, s * Q * (1 - 1e-12)), abs=1e-6)


@pytest.mark.parametrize("s", [2, 3, 5])
@pytest.mark.parametrize("Q", [0.1, 0.3])
def test_exponent_shape(s, Q):
    top = min(1.0, s * Q)
    qs = np.linspace(Q, top, 4002)[1:-1]
    A = np.array([exponent_A(s, Q, q) for q in qs])
    z = 1 - (1 - Q) ** s
    assert (A > -1e-12).all()
    before, after = A[qs < z], A[qs > z]
    assert (np.diff(before) < 0).all()
    assert (np.diff(after) > 0).all()
    assert A.min() < 1e-5


@pytest.mark.parametrize("s,Q,q_arg", [(2, 0.3, 0.45), (3, 0.2, 0.4), (2, 0.25, 0.375)])
@pytest.mark.parametrize("N", [100, 200])
def test_exponent_vs_finite_dp(s, Q, q_arg, N):
    p = union_weight_distribution(N, math.floor(Q * N), s)
    finite = -math.log2(p[math.floor(q_arg * N)]) / N
    assert abs(finite - exponent_A(s, Q, q_arg)) <= 6 * math.log2(N) / N


def test_exponent_vs_finite_dp_converges():
    s, Q, q_arg = 2, 0.25, 0.375
    gaps = []
    for N in (40, 80, 160, 320):
        p = union_weight_distribution(N, math.floor(Q * N), s)
        gaps.append(abs(-math.log2(p[math.floor(q_arg * N)]) / N - exponent_A(s, Q, q_arg)))
    assert all(a > b for a, b in zip(gaps, gaps[1:]))


# --- lower bounds ---------------------------------------------------------------


def test_lower_tau_regression():
    r = lower_rate_tau(2, 0.5)
    assert r.value > 0
    # the grid can only undershoot the supremum
    assert r.value >= GRID_LOWER_TAU_S2_HALF - 1e-12
    assert r.value == pytest.approx(GRID_LOWER_TAU_S2_HALF, abs=1e-6)
    assert r.tolerance_met
    assert r.residual_y2 < 1e-12 and r.residual_y1 < 1e-12


def test_lower_tau_live_grid():
    for s, tau in [(3, 0.3), (4, 0.2), (2, 0.8)]:
        grid, _ = oracles.maxmin_on_grid(s, tau, 200_000)
        r = lower_rate_tau(s, tau)
        assert grid - 1e-12 <= r.value <= grid + 2e-5


def test_lower_tau_boundary_terms():
    s, tau = 3, 0.4
    lo, hi = weight_interval(s, tau)
    near_hi = hi - 1e-9 * (hi - lo)
    near_lo = lo + 1e-9 * (hi - lo)
    assert exponent_A_prime(s, near_hi, tau) / (s - 1) < 1e-6
    assert exponent_A(s + 1, near_lo, tau) / s < 1e-6


@pytest.mark.parametrize("tau", [0.0, 1.0, -0.1, 1.5])
def test_lower_tau_invalid(tau):
    with pytest.raises(InvalidTau):
        lower_rate_tau(2, tau)
    with pytest.raises(InvalidTau):
        bonis_upper(2, tau)


def test_lower_tau_deterministic():
    a = lower_rate_tau(5, 0.17)
    b = lower_rate_tau(5, 0.17)
    assert a == b
    assert a.to_dict() == b.to_dict()


def test_lower_thr_regression():
    r = lower_rate_thr(2)
    assert r.value >= GRID_LOWER_THR_S2 - 1e-12
    assert r.value == pytest.approx(GRID_LOWER_THR_S2, abs=2e-6)


@pytest.mark.parametrize("s", [2, 3, 6, 15])
def test_lower_thr_dominates_single_tau(s):
    r = lower_rate_thr(s)
    assert r.value >= lower_rate_tau(s, 1 / s).value
    if s > 2:
        assert r.value >= lower_rate_tau(s, 2 / s).value
    assert r == lower_rate_thr(s)


def _large_s_limit():
    # at the optimum the weight sits at Q = tau/s, where the s-term drops out and
    # the (s+1)-term expands to d(d - 2 + 2 ln(2/d)) / (2 s^3) in nats
    d = np.linspace(1e-6, 2 - 1e-6, 2_000_001)
    return float(2 * np.max(d * (d - 2 + 2 * np.log(2 / d))))


def test_lower_thr_large_s_limit():
    limit = _large_s_limit()
    assert limit == pytest.approx(1.29522, abs=1e-5)
    ratios = [lower_rate_thr(s).value * 4 * s**3 / LOG2E for s in (100, 400, 1600)]
    assert ratios[0] > ratios[1] > ratios[2] > limit
    assert ratios[-1] == pytest.approx(limit, abs=1e-3)


def test_lower_thr_optimum_on_s_term_boundary():
    r = lower_rate_thr(20)
    assert r.argmax_Q == pytest.approx(r.argmax_tau / 20, rel=1e-8)


def test_construction_vs_random_bound():
    # the published constructions beat the random bound at their own strengths
    for q, lam in [(11, 1), (17, 1), (23, 2), (32, 2), (31, 3)]:
        p = derive_params(q, lam)
        assert p.R > lower_rate_thr(p.s).value
    # the random bound decays like s^-3 and overtakes the family's s^-4 bound
    assert lower_rate_thr(160).value < family_rate_bound(160)
    assert lower_rate_thr(320).value > family_rate_bound(320)


# --- asymptotic objective and upper bound ---------------------------------------


def test_asymptotic_objective_examples():
    v = asymptotic_objective(1, 2)
    assert v == pytest.approx(min(2 * (1 - math.log(2)), 2 * (-1 + 3 * math.log(1.5))), rel=1e-14)
    assert v == pytest.approx(0.4328, abs=1e-4)
    assert abs(asymptotic_objective(1000, 1001) - 0.5) < 1e-2


@pytest.mark.parametrize("c,d", [(0, 1), (1, 1), (1, 3), (-1, 0.5)])
def test_asymptotic_objective_domain(c, d):
    with pytest.raises(DomainError):
        asymptotic_objective(c, d)


def test_asymptotic_objective_along_d_equals_c_plus_1():
    vals = [asymptotic_objective(c, c + 1) for c in (1, 10, 100, 1000, 10**5)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert vals[-1] == pytest.approx(0.5, abs=1e-5)


def test_asymptotic_objective_small_c_corner():
    # as c -> 0 the objective tends to min(d^2, d(d - 2 + 2 ln(2/d))); the two
    # cross at d = 2/e with value 4/e^2, above the c -> infinity value of 1/2
    d = 2 / math.e
    assert asymptotic_objective(1e-9, d) == pytest.approx(4 / math.e**2, abs=1e-6)
    assert asymptotic_objective(1e-3, d) > 0.5


def test_asymptotic_objective_array_input():
    c = np.array([1.0, 10.0])
    out = asymptotic_objective(c, c + 1)
    assert out.shape == (2,)
    assert out[0] == pytest.approx(asymptotic_objective(1, 2))


def test_bonis_examples():
    assert bonis_upper(2, 0.5) == pytest.approx(0.25 * math.log2(4 * math.e), rel=1e-14)
    assert bonis_upper(2, 0.5) == pytest.approx(0.86067, abs=1e-5)
    for tau in (0.1, 0.5, 0.9):
        ratio = bonis_upper(3, tau) / bonis_upper(2, tau)
        assert ratio == pytest.approx(math.log2(math.e * 15 / (4 * tau)) / math.log2(math.e * 8 / (4 * tau)))


def test_bonis_tau_c_over_s_scaling():
    # with tau = c/s the bound is ~ 12 c log2(s) / s^3: the log factor is
    # log2(e s^2 (s+2) / (4c)) ~ 3 log2 s
    c = 2.0
    ratios = [bonis_upper(s, c / s) * s**3 / (4 * c * math.log2(s)) for s in (10**2, 10**4, 10**6, 10**8)]
    assert all(a < b < 3 for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] == pytest.approx(3, abs=0.07)


def test_sandwich_small():
    for s in (2, 3, 4):
        for tau in (0.1, 0.5, 0.9):
            assert lower_rate_tau(s, tau).value <= bonis_upper(s, tau)
