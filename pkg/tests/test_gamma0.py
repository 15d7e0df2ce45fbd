# standard library
from fractions import Fraction
# test framework
from pytest import raises, mark
from hypothesis import given, settings
import hypothesis.strategies as st
# local package
from sptlab.forms import eta_pow
from sptlab.gamma0 import (
    GPoly,
    LEVELS,
    TC,
    atkin_gamma_constant,
    atkin_solve_k,
    beta_stream,
    check_lemma_congruences,
    decompose_gamma0,
    e2t,
    e46d_decompose,
    epsilon_ladder_reports,
    gpoly_fricke,
    hauptmodul,
    phi_t,
    psi_form,
    s_form,
    s_t,
    solve_in_e2t_basis,
    verify_beta_vanish,
)
from sptlab.series import GridError, Series

parametrize = mark.parametrize


# -- hauptmodul and Eisenstein data ---------------------------------------------

def test_levels_and_pole_orders():
    assert LEVELS == (5, 7, 13)
    assert [s_t(t) for t in LEVELS] == [1, 2, 7]


def test_hauptmodul_pinned():
    g5 = hauptmodul(5, 4)
    assert g5.coeff_range(-1, 4) == [1, -6, 9, 10, -30, 6]
    g7 = hauptmodul(7, 4)
    assert g7.coeff_range(-1, 4) == [1, -4, 2, 8, -5, -4]
    assert hauptmodul(13, 2).coeff(-1) == 1


def test_hauptmodul_level_guard():
    with raises(ValueError):
        hauptmodul(11, 5)


def sigma_prime_to(t, n):
    return sum(d for d in range(1, n + 1) if n % d == 0 and d % t)


@parametrize('t', LEVELS)
def test_e2t_divisor_oracle(t):
    e = e2t(t, 30)
    scale = 24 // (t - 1)
    assert e.coeff(0) == 1
    for n in range(1, 31):
        assert e.coeff(n) == scale * sigma_prime_to(t, n)


@parametrize('t', LEVELS)
def test_phi_eta_quotient(t):
    n = 20
    s = s_t(t)
    phi = phi_t(t, n)
    assert phi.lo == -s and phi.coeff(-s) == 1
    eta_sq = eta_pow(1, (n + s + 2) * t * t).dilate(t * t)
    assert phi.mul(eta_sq).agrees(eta_pow(1, n), hi=n - s)


# -- Laurent polynomials in the hauptmodul ---------------------------------------

def test_gpoly_roundtrip_and_coeff():
    k = GPoly.from_dict(5, {2: 3, -1: Fraction(1, 5), 0: 0})
    assert k.as_dict() == {2: 3, -1: Fraction(1, 5)}
    assert k.support == (-1, 2)
    assert k.coeff(0) == 0
    assert not k.is_integral()
    assert GPoly.from_dict(5, {1: 1}).is_integral()


def test_gpoly_fricke_involution():
    k = GPoly.from_dict(5, {1: 1})
    assert k.fricke().as_dict() == {-1: 125}
    assert gpoly_fricke(gpoly_fricke(k)).as_dict() == k.as_dict()
    k7 = GPoly.from_dict(7, {2: 3, 0: -1})
    assert k7.fricke().as_dict() == {-2: 3 * 7**4, 0: -1}


def test_gpoly_eval_matches_powers():
    g = hauptmodul(5, 12)
    k = GPoly.from_dict(5, {2: 1, 1: 5})
    val = k.eval(g)
    expect = g.mul(g) + g.scale(5)
    assert val.agrees(expect, hi=10)


# -- beta streams and the Atkin solve ---------------------------------------------

BETA5 = {-2: 1, -1: 0, 0: 1, 1: 0, 2: 0, 3: -379, 4: 625, 5: 869,
         8: -20125, 9: 23125, 10: 25636, 13: -329236}
BETA7 = {-1: 1, 0: 1, 1: 0, 2: -15, 3: 0, 4: 0, 5: 49, 6: -24, 7: 88,
         9: -311, 12: 392, 13: -182, 14: 811, 16: -1886}


def test_atkin_solve_pinned():
    assert atkin_solve_k(5, -2).as_dict() == {1: 5, 2: 1}
    assert atkin_solve_k(7, -1).as_dict() == {1: 1}
    assert atkin_solve_k(13, -1).as_dict() == {1: 1}


def test_atkin_solve_guards():
    with raises(ValueError):
        atkin_solve_k(5, 0)
    with raises(ValueError):
        atkin_solve_k(5, -1)  # 1 - 24m == 25 == 0 mod 5 is excluded


def test_beta_values_match_tables():
    b5 = beta_stream(5, atkin_solve_k(5, -2), 14)
    for n, v in BETA5.items():
        assert b5.at(n) == v, (n, b5.at(n), v)
    b7 = beta_stream(7, atkin_solve_k(7, -1), 17)
    for n, v in BETA7.items():
        assert b7.at(n) == v, (n, b7.at(n), v)


def test_beta_stream_window_and_grid():
    b = beta_stream(5, GPoly.from_dict(5, {2: 1, 1: 5}), 10)
    assert b.lo == -2 and b.hi == 10
    assert b.series.frac24 == 23
    assert b.series.exponent(1) == Fraction(23, 24)


def test_beta_stream_modular():
    k = atkin_solve_k(5, -2)
    exact = beta_stream(5, k, 30)
    modular = beta_stream(5, k, 30, modulus=5**6)
    assert exact.series.reduce_mod(5**6).agrees(modular.series)
    with raises(ValueError):
        beta_stream(5, GPoly.from_dict(5, {1: Fraction(1, 5)}), 5, modulus=25)


@parametrize('t,m,n', [(5, -2, 80), (7, -1, 60), (13, -1, 40)])
def test_beta_vanishing_classes(t, m, n):
    r = verify_beta_vanish(t, m, n)
    assert r.ok, r.summary_line()
    assert r.n_verified > 10


# -- decompositions ----------------------------------------------------------------

def test_e46d_pinned_level5():
    basis = e46d_decompose(5)
    expect = {
        1: 1,
        0: 0,
        -1: -(3**2) * 5**5 * 7,
        -2: -(2**3) * 5**8 * 13,
        -3: -(3**3) * 5**10 * 7,
        -4: -3 * 2**3 * 5**13,
        -5: -(5**16),
    }
    for a, v in expect.items():
        assert basis.coeff(a) == v, (a, basis.coeff(a), v)
    assert basis.coeff(2) == 0 and basis.coeff(-6) == 0


@parametrize('t', [7, 13])
def test_e46d_other_levels_unitriangular(t):
    basis = e46d_decompose(t)
    assert basis.coeff(1) == 1
    assert all(basis.coeff(a) == 0 for a in range(2, basis.s + 1))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-10**4, 10**4), min_size=7, max_size=7),
       st.sampled_from([5, 7]))
def test_e2t_basis_roundtrip(d, t):
    s = 1
    prec = t * s + s + 6
    g = hauptmodul(t, prec)
    e2 = e2t(t, prec)
    ginv = g.invert()
    h = None
    for i, da in enumerate(d):  # powers a = -ts .. s with ts + s + 1 = 7
        a = i - t * s
        if da == 0:
            continue
        if a == 0:
            pw = Series.one(prec)
        elif a > 0:
            pw = g**a
        else:
            pw = ginv ** (-a)
        term = e2.mul(pw).scale(da)
        h = term if h is None else h + term
    if h is None:
        h = Series.zero(prec, lo=-s)
    recovered = solve_in_e2t_basis(h.truncate(t * s + 2), t, s)
    assert [recovered.coeff(i - t * s) for i in range(len(d))] == d


def test_e2t_basis_guards():
    h = Series([1] * 10, lo=-3)
    with raises(ValueError):
        solve_in_e2t_basis(h, 5, 2)  # pole order 3 > s = 2
    with raises(ValueError):
        solve_in_e2t_basis(Series([1] * 4, lo=0), 5, 1)  # too short
    with raises(ValueError):
        solve_in_e2t_basis(Series([1] * 10, lo=0, frac24=3), 5, 1)


def test_decompose_gamma0_from_fractional_grid():
    # F = E2,5 * G_5 / eta lives on the q^(n-1/24) grid; decomposing
    # F * eta must recover exactly the G^1 coordinate
    prec = 14
    f = e2t(5, prec).mul(hauptmodul(5, prec)).mul(eta_pow(1, prec).invert())
    assert f.frac24 == 23
    basis = decompose_gamma0(f.truncate(8), 5, 1)
    assert basis.coeff(1) == 1
    assert all(basis.coeff(a) == 0 for a in range(-5, 1))


# -- S and Psi constructions --------------------------------------------------------

def test_s_form_rejects_negative_support():
    with raises(ValueError):
        s_form(5, GPoly.from_dict(5, {-1: 1}), 5)


def test_psi_form_rejects_negative_support():
    with raises(ValueError):
        psi_form(5, GPoly.from_dict(5, {-1: 1}), 5)


def test_s_and_psi_grids():
    one = GPoly.from_dict(5, {0: 1})
    s = s_form(5, one, 6)
    assert s.frac24 == 0  # eta * (beta twist) lands back on the integer grid
    assert s.lo <= 0
    psi = psi_form(5, one, 6)
    assert psi.frac24 == 23  # 1/eta(t^2 z) keeps the -1/24 tail


# -- congruence lemma sweeps ---------------------------------------------------------

def test_lemma_congruences_all_pass():
    reports = check_lemma_congruences(n=40)
    assert len(reports) >= 4
    for r in reports:
        assert r.ok, r.summary_line()


def test_epsilon_ladder_all_pass():
    reports = epsilon_ladder_reports(3, 5)
    assert [r.params["a"] for r in reports] == [3, 4, 5]
    for r in reports:
        assert r.ok, r.summary_line()


# -- gamma constants -----------------------------------------------------------------

@parametrize('t,ell,gamma', [(5, 7, 9379), (7, 5, 2399), (13, 5, 165)])
def test_gamma_constant_pinned(t, ell, gamma):
    got, report = atkin_gamma_constant(t, ell, 16)
    assert report.ok, report.summary_line()
    assert got == gamma
    assert got % t ** TC[t] == got


def test_gamma_constant_guard():
    with raises(ValueError):
        atkin_gamma_constant(5, 5, 10)
    with raises(ValueError):
        atkin_gamma_constant(5, 3, 10)
