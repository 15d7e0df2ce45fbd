# test framework
from pytest import raises, mark
# local package
from sptlab.verifier import (
    ATKIN_PAIRS,
    CheckOptions,
    DESK_ELLS,
    MASTER_MODULUS,
    REGISTRY,
    a_atkin_beta_crosscheck,
    a_atkin_worked_instance,
    beta_display_reports,
    check_a_atkin,
    check_level1_b,
    check_spt_ell_square,
    check_spt_hecke,
    check_spt_prime_powers,
    e46d_reports,
    gamma_constant_reports,
    inv24,
    run_checks,
    s_psi_display_reports,
)

parametrize = mark.parametrize


# -- small arithmetic helpers -----------------------------------------------------

@parametrize('m,inv', [(5, 4), (125, 99), (7**4, 2301), (13**2, 162), (77, 61)])
def test_inv24(m, inv):
    assert inv24(m) == inv
    assert (24 * inv) % m == 1


def test_inv24_needs_coprime():
    for bad in (2, 3, 12, 24, 360360):
        with raises(ValueError):
            inv24(bad)


def test_master_modulus_serves_every_sweep():
    assert MASTER_MODULUS == 2**3 * 3**2 * 5 * 7 * 11 * 13
    for m in (72, 5, 7, 13, 32760):
        assert MASTER_MODULUS % m == 0


# -- argument guards ----------------------------------------------------------------

@parametrize('fn,args', [
    (check_spt_hecke, (4, 72)),
    (check_spt_hecke, (5, 5)),
    (check_spt_hecke, (7, 32760)),
    (check_spt_hecke, (13, 32760)),
    (check_spt_hecke, (5, 1)),
    (check_spt_prime_powers, (5, 2)),
    (check_spt_prime_powers, (11, 3)),
    (check_a_atkin, (5, 5)),
    (check_a_atkin, (11, 7)),
    (check_spt_ell_square, (9,)),
])
def test_check_guards(fn, args):
    with raises(ValueError):
        fn(*args, n=5)


# -- individual checks at desk scale --------------------------------------------------

def test_spt_hecke_mod72_with_companion():
    r = check_spt_hecke(5, 72, n=30)
    assert r.ok, r.summary_line()
    assert r.params["modulus"] == 72
    assert r.n_verified == 30


def test_spt_hecke_exact_small():
    r = check_spt_hecke(5, 72, n=12, exact=True)
    assert r.ok, r.summary_line()


@parametrize('t,ell', [(5, 7), (7, 5), (13, 5)])
def test_spt_hecke_mod_t(t, ell):
    r = check_spt_hecke(ell, t, n=20)
    assert r.ok, r.summary_line()


def test_spt_hecke_mod_32760():
    r = check_spt_hecke(11, 32760, n=20)
    assert r.ok, r.summary_line()


@parametrize('ell', [5, 7])
def test_spt_ell_square(ell):
    r = check_spt_ell_square(ell, n=60)
    assert r.ok, r.summary_line()
    assert r.n_verified > 0


@parametrize('t,a,mod', [(5, 3, 5**3), (7, 3, 7**3), (13, 3, 13**2), (5, 4, 5**5)])
def test_spt_prime_powers(t, a, mod):
    r = check_spt_prime_powers(t, a, n=4)
    assert r.ok, r.summary_line()
    assert r.params["modulus"] == mod


@parametrize('t,ell', ATKIN_PAIRS)
def test_a_atkin_sweeps(t, ell):
    r = check_a_atkin(t, ell, n=8)
    assert r.ok, r.summary_line()


def test_a_atkin_worked_instance():
    r = a_atkin_worked_instance()
    assert r.ok, r.summary_line()
    assert "149077845" in r.params["statement"]


def test_a_atkin_beta_crosscheck():
    r = a_atkin_beta_crosscheck(13, 5)
    assert r.ok, r.summary_line()


@parametrize('ell,b', [
    (7, [5215, -7]),
    (11, [-544243553590, 8939544152, -30060745, 32747, -11]),
])
def test_level1_b_vectors(ell, b):
    r = check_level1_b(ell)
    assert r.ok, r.summary_line()
    assert r.params["b"] == b
    assert r.params["b"][-1] == -ell
    assert r.params["b"][0] % 5 == 0


def test_level1_b_at_five():
    r = check_level1_b(5)
    assert r.ok, r.summary_line()
    assert r.params["b"] == [-5]


def test_gamma_constants_small():
    reports = gamma_constant_reports(n=12)
    assert len(reports) == len(ATKIN_PAIRS)
    gammas = {(r.params["t"], r.params["ell"]): r.params["gamma"] for r in reports}
    assert gammas == {(5, 7): 9379, (7, 5): 2399, (13, 5): 165}


def test_display_reports_small():
    for r in s_psi_display_reports(n=30):
        assert r.ok, r.summary_line()
    for r in beta_display_reports(n=40):
        assert r.ok, r.summary_line()
    for r in e46d_reports():
        assert r.ok, r.summary_line()


# -- the registry -----------------------------------------------------------------------

def test_registry_names():
    assert list(REGISTRY) == [
        "classical",
        "zell",
        "xi",
        "mell",
        "spt-hecke",
        "spt-ell-square",
        "spt-prime-powers",
        "a-atkin",
        "a-atkin-beta",
        "level1",
        "atkin-gamma",
        "s-forms",
        "beta-vanish",
        "lemma-congruences",
        "e46d",
    ]


def test_desk_constants():
    assert DESK_ELLS == (5, 7, 11, 13)
    assert ATKIN_PAIRS == ((5, 7), (7, 5), (13, 5))


def test_run_checks_unknown_name():
    with raises(ValueError):
        run_checks(["no-such-check"])


def test_run_checks_classical():
    reports = run_checks(["classical"], CheckOptions(nmax=80))
    assert len(reports) == 10
    for r in reports:
        assert r.ok
        assert "statement" in r.params


def test_run_checks_parallel_matches_serial():
    opts = CheckOptions(nmax=12)
    serial = run_checks(["level1", "e46d"], opts)
    parallel = run_checks(["level1", "e46d"], opts, jobs=2)
    key = lambda r: (r.check, sorted(
        (k, str(v)) for k, v in r.params.items()), r.status, r.n_verified)
    assert sorted(map(key, serial)) == sorted(map(key, parallel))


def test_options_defaults():
    opts = CheckOptions()
    assert opts.ells is None and opts.t is None and opts.nmax is None
    assert opts.modulus is None and opts.exact is False and opts.cache_dir is None
