"""Classical level-one q-expansions: Euler product, Eisenstein series,
discriminant, j-function, and the weight-14-over-discriminant combination,
plus the small-modulus Eisenstein congruences used by the verifier."""

from __future__ import annotations

import threading

import numpy as np

from .reports import CongruenceReport, identity_report
from .series import Series, sgn24


def euler_product(n, modulus=0):
    """prod_{k>=1} (1 - q^k) truncated at q^n, via pentagonal numbers."""
    if modulus:
        out = np.zeros(n + 1, dtype=np.int64)
    else:
        out = [0] * (n + 1)
    k = 0
    while True:
        g = k * (3 * k - 1) // 2
        if g > n:
            break
        sign = 1 if k % 2 == 0 else -1
        out[g] = sign
        g2 = k * (3 * k + 1) // 2
        if g2 <= n:
            out[g2] = sign
        k += 1
    return Series(out, 0, 0, modulus, copy=False)

def pentagonal_terms(n):
    """Nonzero terms (g, +-1) of the Euler product with 1 <= g <= n."""
    out = []
    k = 1
    while k * (3 * k - 1) // 2 <= n:
        sign = 1 if k % 2 == 0 else -1
        out.append((k * (3 * k - 1) // 2, sign))
        if k * (3 * k + 1) // 2 <= n:
            out.append((k * (3 * k + 1) // 2, sign))
        k += 1
    out.sort()
    return out


def _divisor_power_sums(weight, n, modulus=0):
    """sigma_{weight}(m) for 1 <= m <= n (index 0 unused)."""
    if modulus:
        sig = np.zeros(n + 1, dtype=np.int64)
        for d in range(1, n + 1):
            sig[d::d] += pow(d, weight, modulus)
        return sig % modulus
    sig = [0] * (n + 1)
    for d in range(1, n + 1):
        dk = d**weight
        for m in range(d, n + 1, d):
            sig[m] += dk
    return sig


_EIS_SCALE = {2: -24, 4: 240, 6: -504}


def eisenstein(weight, n, modulus=0):
    """Normalized Eisenstein series E_weight for weight in {2, 4, 6}."""
    if weight not in _EIS_SCALE:
        raise ValueError("weight must be one of 2, 4, 6")
    c = _EIS_SCALE[weight]
    sig = _divisor_power_sums(weight - 1, n, modulus)
    if modulus:
        out = (sig * (c % modulus)) % modulus
        out[0] = 1 % modulus
        return Series(out, 0, 0, modulus, copy=False)
    out = [c * s for s in sig]
    out[0] = 1
    return Series(out, 0, 0, 0, copy=False)


def eta_pow(k, n, modulus=0):
    """eta(z)^k = q^(k/24) prod (1-q^m)^k as a Series on the k mod 24 grid."""
    frac = k % 24
    lo = (k - sgn24(frac)) // 24
    body = euler_product(n - min(lo, 0) + abs(lo) + 1, modulus) ** k
    return Series(body.coeffs, lo, frac, modulus, copy=False).truncate(n)


def delta_series(n, modulus=0):
    """Discriminant q-expansion q prod (1-q^m)^24."""
    return (euler_product(n, modulus) ** 24).shift(1).truncate(n)


def j_series(n, modulus=0):
    """Klein j-function expansion q^-1 + 744 + 196884 q + ..."""
    e4 = eisenstein(4, n + 2, modulus)
    return (e4 ** 3 * delta_series(n + 2, modulus).invert()).truncate(n)


def delta_j(n, modulus=0):
    """(discriminant, j) pair at matching precision."""
    return delta_series(n, modulus), j_series(n, modulus)


def e14_over_delta(n, modulus=0):
    """E4^2 E6 / Delta = q^-1 - 196884 q - 42987520 q^2 - ..."""
    e4 = eisenstein(4, n + 2, modulus)
    e6 = eisenstein(6, n + 2, modulus)
    return (e4 * e4 * e6 * delta_series(n + 2, modulus).invert()).truncate(n)


# -- grow-cache for the expensive builders ------------------------------------

_bank: dict = {}
_bank_lock = threading.Lock()

_BUILDERS = {
    "euler": euler_product,
    "E2": lambda n, m=0: eisenstein(2, n, m),
    "E4": lambda n, m=0: eisenstein(4, n, m),
    "E6": lambda n, m=0: eisenstein(6, n, m),
    "delta": delta_series,
    "j": j_series,
    "e14_over_delta": e14_over_delta,
}


def form(tag, n, modulus=0):
    """Cached access to a named classical expansion, valid to q^n."""
    key = (tag, modulus)
    with _bank_lock:
        got = _bank.get(key)
        if got is not None and got.valid_to >= n:
            return got.truncate(n)
        built = _BUILDERS[tag](n, modulus)
        _bank[key] = built
        return built


# -- classical congruence checks -----------------------------------------------


def classical_congruence_reports(n=500):
    """All displayed Eisenstein/discriminant/j identities and congruences."""
    e2 = form("E2", n)
    e4 = form("E4", n)
    e6 = form("E6", n)
    delta = form("delta", n)
    j = form("j", n)
    reports = []

    def identity(name, lhs, rhs, statement):
        reports.append(
            identity_report(name, lhs, rhs, {"n": n, "statement": statement})
        )

    identity(
        "j-times-delta",
        j * delta,
        e4 ** 3,
        "j(z) * Delta(z) == E4(z)^3",
    )
    identity(
        "qderiv-delta",
        delta.qderiv(),
        delta * e2,
        "q d/dq Delta == Delta * E2",
    )
    identity(
        "qderiv-j",
        j.qderiv() * delta,
        -(e4 * e4) * e6,
        "(q d/dq j) * Delta == -E4^2 * E6",
    )
    identity(
        "e4cube-e6square",
        e4 ** 3 - e6 ** 2,
        delta.scale(1728),
        "E4^3 - E6^2 == 1728 * Delta",
    )

    def congruence(name, lhs, rhs, mod, statement):
        identity(name, lhs.reduce_mod(mod), rhs.reduce_mod(mod), statement)

    one = Series.one(n)
    congruence(
        "e4cube-mod-65520",
        e4 ** 3 - delta.scale(720),
        one,
        65520,
        "E4^3 - 720 Delta == 1 (mod 65520)",
    )
    congruence(
        "e2-mod-65520",
        e2,
        e4 * e4 * e6,
        65520,
        "E2 == E4^2 E6 (mod 65520)",
    )
    congruence(
        "e2-mod-32", e2, e4 * e6 + delta.scale(16), 32, "E2 == E4 E6 + 16 Delta (mod 32)"
    )
    congruence("e4sq-mod-32", e4 * e4, one, 32, "E4^2 == 1 (mod 32)")
    congruence(
        "e2-mod-27", e2, e4 ** 5 + delta.scale(18), 27, "E2 == E4^5 + 18 Delta (mod 27)"
    )
    congruence("e6-mod-27", e6, e4 ** 6, 27, "E6 == E4^6 (mod 27)")
    return reports


def check_classical_congruences(n=500):
    """Aggregate report over classical_congruence_reports."""
    subs = classical_congruence_reports(n)
    return CongruenceReport.merge("classical", {"n": n}, subs)
