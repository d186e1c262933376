import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import minimize_scalar

from bohrkit import functionals as fn
from bohrkit.functionals import FunctionalKind, Mode
from bohrkit.radii import TABLE1_PARAMS, ClosedForm, RapEquation, RNEquation, YEquation, solve_radius
from bohrkit.schwarz import monomial_schwarz, negated_monomial
from bohrkit.series import EPS_FLOAT, ExtremalFa, ExtremalFaStar
from bohrkit.sharpness import (
    NoWitness,
    a_grid,
    aux_F,
    aux_F_argmax,
    aux_F_max,
    aux_G,
    aux_G_limit,
    aux_H,
    aux_M,
    aux_Phi,
    aux_Phi_prime,
    aux_Psi,
    aux_Q,
    aux_Q_limit,
    default_problem,
    witness_search,
)


# ------------------------------------------------------------- auxiliaries

def test_aux_M_examples():
    for k in (1, 2, 5):
        r = 3 ** (-1 / k)
        assert aux_M(1.0, r, k) == pytest.approx(0.0, abs=1e-15)
    assert aux_M(1.0, 0.8, 1) == pytest.approx(1.4)
    for r in (0.1, 0.5, 0.9):
        assert aux_M(0.0, r, 2) == pytest.approx(r**2 - 1)


@given(st.floats(0.01, 2.0), st.integers(1, 8), st.integers(1, 8), st.integers(1, 8), st.floats(0, 0.99))
def test_aux_Phi_at_one_vanishes(p, m0, k, N, r):
    assert aux_Phi(p, m0, k, N, 1.0, r) == pytest.approx(0.0, abs=1e-12)


@given(st.floats(0.01, 2.0), st.floats(0, 1))
def test_aux_Phi_r_zero(p, a):
    assert aux_Phi(p, 2, 3, 1, a, 0.0) == pytest.approx(1 - a**p, abs=1e-12)


@pytest.mark.parametrize("row", TABLE1_PARAMS)
def test_aux_Phi_nonnegative_below_root(row):
    k, m0, N, p = row
    r = solve_radius(YEquation(p, k, N, m0)).root - 1e-4
    vals = [aux_Phi(p, m0, k, N, a, r) for a in np.linspace(0, 1, 1001)]
    assert min(vals) >= -1e-12


def test_aux_Phi_prime_matches_difference():
    p, m0, k, N, r = 1.3, 2, 2, 3, 0.6
    for a in (0.1, 0.5, 0.9):
        h = 1e-6
        num = (aux_Phi(p, m0, k, N, a + h, r) - aux_Phi(p, m0, k, N, a - h, r)) / (2 * h)
        assert aux_Phi_prime(p, m0, k, N, a, r) == pytest.approx(num, rel=1e-6, abs=1e-9)


def test_aux_Psi_H_are_finite():
    assert math.isfinite(aux_Psi(1.5, 2, 0.5, 0.4))
    assert aux_H(1.0, 1, 1.0, 0.5) == 0.0


def test_aux_F_examples():
    assert aux_F(1 / 3, 3 / 5, 1) == pytest.approx(0.0, abs=1e-12)
    for a in np.linspace(0, 1, 11):
        assert aux_F(a, 0.0, 3) == -1.0
    with pytest.raises(ValueError):
        aux_F(0.5, 1.0, 1)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_aux_F_max_against_optimizer(k):
    for r in np.linspace(0.55, 0.95, 9) ** (1 / k):
        a_star = aux_F_argmax(r, k)
        res = minimize_scalar(lambda a: -aux_F(a, r, k), bounds=(0, 1), method="bounded",
                              options={"xatol": 1e-12})
        if 0 < a_star < 1:
            assert res.x == pytest.approx(a_star, abs=1e-5)
            assert aux_F(a_star, r, k) == pytest.approx(aux_F_max(r, k), abs=1e-9)
            assert -res.fun == pytest.approx(aux_F_max(r, k), abs=1e-9)


def _I_fa(N, p, k, m0, a, r):
    return fn.bohr_rogosinski_I(ExtremalFa(a), negated_monomial(m0), monomial_schwarz(k), r, p, N, T=400).value


def _J_fa(N, p, k, m0, a, r):
    return fn.refined_J(ExtremalFa(a), negated_monomial(m0), monomial_schwarz(k), r, p, N, T=400).value


@given(st.integers(1, 5), st.floats(0.1, 2.0), st.integers(1, 4), st.integers(1, 4),
       st.floats(0.05, 0.95), st.floats(0.05, 0.85))
def test_aux_Q_identity(N, p, k, m0, a, r):
    den = (1 - a * r**k) * (1 + a * r**m0) ** p
    assert _I_fa(N, p, k, m0, a, r) == pytest.approx(1 + (1 - a) * aux_Q(N, p, k, m0, a, r) / den, abs=1e-10)


@given(st.integers(1, 6), st.floats(0.1, 2.0), st.integers(1, 4), st.integers(1, 4),
       st.floats(0.05, 0.95), st.floats(0.05, 0.85))
def test_aux_G_identity(N, p, k, m0, a, r):
    den = (1 - a * r**k) * (1 + a * r**m0) ** p
    assert _J_fa(N, p, k, m0, a, r) == pytest.approx(1 + (1 - a) * aux_G(N, k, p, m0, a, r) / den, abs=1e-10)


def test_aux_Q_limit_sign_matches_Y():
    rng = np.random.default_rng(77)
    for _ in range(100):
        p = float(rng.uniform(0.01, 2.0))
        k, N, m0 = (int(x) for x in rng.integers(1, 9, size=3))
        r = float(rng.uniform(0.01, 0.99))
        y = float(YEquation(p, k, N, m0)(r))
        if abs(y) < 1e-6:
            continue
        q = aux_Q(N, p, k, m0, 1 - 1e-6, r)
        assert np.sign(q) == np.sign(y)
        assert np.sign(aux_Q_limit(N, p, k, m0, r)) == np.sign(y)


@given(st.integers(1, 6), st.floats(0.1, 2.0), st.integers(1, 4), st.integers(1, 4), st.floats(0.05, 0.95))
def test_aux_limits(N, p, k, m0, r):
    assert aux_Q(N, p, k, m0, 1 - 1e-7, r) == pytest.approx(aux_Q_limit(N, p, k, m0, r), abs=1e-5)
    assert aux_G(N, k, p, m0, 1 - 1e-7, r) == pytest.approx(aux_G_limit(N, k, p, m0, r), abs=1e-5)


# ------------------------------------------------------------- witnesses

def test_witness_majorant_example():
    kind = FunctionalKind("majorant")
    v = fn.evaluate(kind, ExtremalFa(0.9), 0.4, w_k=monomial_schwarz(1))
    assert v.value == pytest.approx(1.01875, abs=1e-9)
    rep = witness_search(kind, ClosedForm("bohr_third"), 0.4 - 1 / 3, 1e-4)
    assert rep.exceeded and rep.functional_value > 1 + EPS_FLOAT and rep.probe_r == pytest.approx(0.4)


def test_witness_refined_L_example():
    v = fn.refined_L(ExtremalFaStar(1 / 3), monomial_schwarz(1), 0.62)
    assert v.value == pytest.approx(0.62 / 3 + (8 / 9) * 0.3844 / 0.38, abs=1e-9)
    rep = witness_search(FunctionalKind("refined_l"), ClosedForm("three_fifths"), 0.02, 1e-4)
    assert rep.exceeded


def test_no_witness_below_majorant():
    with pytest.raises(NoWitness):
        witness_search(FunctionalKind("majorant"), ClosedForm("bohr_third"), -0.01, 1e-4)
    rep = witness_search(FunctionalKind("majorant"), None, -0.01, 1e-3, raise_on_miss=False)
    assert not rep.exceeded and rep.functional_value <= 1 + EPS_FLOAT


@pytest.mark.parametrize("row", TABLE1_PARAMS)
def test_table1_refined_J_witness(row):
    k, m0, N, p = row
    prob = YEquation(p, k, N, m0)
    kind = FunctionalKind("refined_j", p, N)
    rep = witness_search(kind, prob, 0.01, 1e-4)
    assert rep.exceeded and rep.probe_r > rep.radius and 0 < rep.witness_a < 1
    with pytest.raises(NoWitness):
        witness_search(kind, prob, -0.01, 1e-4)


def test_refined_L_equality_at_sharp_radius():
    for k in (1, 2, 3):
        r = 0.6 ** (1 / k)
        a = (1 - r**k) / (2 * r**k)
        v = fn.refined_L(ExtremalFaStar(a), monomial_schwarz(k), r, T=400)
        assert v.value == pytest.approx(1.0, abs=1e-9)


def test_witness_validation():
    kind = FunctionalKind("majorant")
    with pytest.raises(ValueError):
        witness_search(kind, None, 0.01, 0.02)
    with pytest.raises(ValueError):
        witness_search(kind, RapEquation(0.3, 1.0), 0.01)
    with pytest.raises(ValueError):
        witness_search(FunctionalKind("refined_j", 1.0, 2), YEquation(2.0, 1, 2, 1), 0.01)
    with pytest.raises(ValueError):
        witness_search(kind, None, 0.9)


def test_default_problems():
    assert default_problem(FunctionalKind("majorant"), 2) == ClosedForm("bohr_third", 2)
    assert default_problem(FunctionalKind("rogosinski_sum", N=3)) == RNEquation(3)
    assert default_problem(FunctionalKind("refined_a", 2.0, 4)) == YEquation(2.0, 1, 4, 1)


def test_a_grid_descending():
    g = a_grid(1e-2)
    assert g[0] == pytest.approx(0.99) and np.all(np.diff(g) < 0) and g[-1] > 0


def test_report_dict():
    rep = witness_search(FunctionalKind("majorant"), None, 0.01, 1e-3)
    d = rep.to_dict()
    assert set(d) == {"functional", "problem", "radius", "probe_r", "witness_a", "functional_value", "exceeded"}
    assert d["exceeded"] == (d["functional_value"] > 1 + EPS_FLOAT)


def test_envelope_mode_at_witness():
    # at z = r the pointwise evaluation with w_m0 = -z^m0 equals the envelope
    f = ExtremalFa(0.97)
    pw = fn.bohr_rogosinski_I(f, negated_monomial(2), monomial_schwarz(2), 0.6, 1.0, 2)
    env = fn.bohr_rogosinski_I(f, monomial_schwarz(2), monomial_schwarz(2), 0.6, 1.0, 2, mode=Mode.ENVELOPE)
    assert pw.value == pytest.approx(env.value, abs=1e-12)
