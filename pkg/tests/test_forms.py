# test framework
from pytest import raises, mark
# local package
from sptlab.forms import (
    classical_congruence_reports,
    check_classical_congruences,
    delta_series,
    e14_over_delta,
    eisenstein,
    eta_pow,
    euler_product,
    form,
    j_series,
    pentagonal_terms,
)
from sptlab.partitions import partition_stream

parametrize = mark.parametrize


# -- reference oracles, written against the definitions -----------------------

def poly_mul(a, b, n):
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


def euler_oracle(n):
    out = [1] + [0] * n
    for k in range(1, n + 1):
        factor = [0] * (n + 1)
        factor[0] = 1
        factor[k] = -1
        out = poly_mul(out, factor, n)
    return out


def sigma(weight, m):
    return sum(d**weight for d in range(1, m + 1) if m % d == 0)


def test_euler_product_matches_expansion():
    n = 60
    assert euler_product(n).coeff_range(0, n) == euler_oracle(n)


def test_pentagonal_terms():
    assert pentagonal_terms(12) == [(1, -1), (2, -1), (5, 1), (7, 1), (12, -1)]


@parametrize('weight,scale', [(2, -24), (4, 240), (6, -504)])
def test_eisenstein_against_divisor_sums(weight, scale):
    e = eisenstein(weight, 40)
    assert e.coeff(0) == 1
    for m in range(1, 41):
        assert e.coeff(m) == scale * sigma(weight - 1, m)


def test_eisenstein_modular_agrees_with_exact():
    e = eisenstein(4, 100)
    em = eisenstein(4, 100, modulus=65520)
    assert e.reduce_mod(65520).agrees(em)


def test_eisenstein_rejects_other_weights():
    with raises(ValueError):
        eisenstein(8, 10)


def test_delta_tau_values():
    tau = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643]
    d = delta_series(9)
    assert d.lo == 1 or d.coeff(0) == 0
    assert d.coeff_range(1, 9) == tau


def test_j_expansion():
    j = j_series(3)
    assert j.coeff(-1) == 1
    assert j.coeff(0) == 744
    assert j.coeff(1) == 196884
    assert j.coeff(2) == 21493760


def test_e14_over_delta_identity():
    n = 40
    lhs = e14_over_delta(n) * delta_series(n + 2)
    e4 = eisenstein(4, n)
    rhs = e4 * e4 * eisenstein(6, n)
    assert lhs.agrees(rhs, lo=0, hi=n - 2)
    assert e14_over_delta(5).coeff(-1) == 1
    assert e14_over_delta(5).coeff(1) == -196884


def test_eta_pow_grid_and_partitions():
    p = partition_stream(30)
    inv = eta_pow(-1, 30)
    assert inv.frac24 == 23
    assert all(inv.coeff(n) == p.at(n) for n in range(31))
    assert eta_pow(24, 20).agrees(delta_series(20))
    e = eta_pow(1, 20)
    assert e.frac24 == 1
    assert e.coeff_range(0, 3) == [1, -1, -1, 0]


def test_eta_pow_negative_grid():
    # eta^-6 sits at q^(-6/24) = q^(-1/4): frac 18, starting index 0
    s = eta_pow(-6, 10)
    assert s.frac24 == 18
    assert s.lo == 0
    assert s.coeff(0) == 1
    assert s.coeff(1) == 6


def test_form_bank_grows_and_truncates():
    a = form("E6", 50)
    b = form("E6", 20)
    assert b.valid_to == 20
    assert a.agrees(b, hi=20)
    c = form("E6", 80)
    assert c.valid_to >= 80
    with raises(KeyError):
        form("nonsense", 10)


def test_classical_reports_all_pass():
    reports = classical_congruence_reports(n=120)
    assert len(reports) == 10
    for r in reports:
        assert r.ok, r.summary_line()


def test_classical_merge():
    merged = check_classical_congruences(n=60)
    assert merged.ok
    assert merged.n_verified > 0
