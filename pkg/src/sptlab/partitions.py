"""Coefficient streams for the partition function p(n), the smallest-parts
count spt(n), and the weighted combinations built from them.

spt(n) counts parts equal to the smallest part, summed over partitions of n:
its generating function is sum_m q^m (1-q^m)^{-2} prod_{r>m} (1-q^r)^{-1},
which is evaluated with a backward tail-product recurrence so each m costs
one O(N) pass.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from .forms import euler_product, form, pentagonal_terms
from .series import Series, ValidityError

EXACT_CAP = 5000
MODULAR_CAP = 200000


@dataclass(eq=False)
class CoeffStream:
    """Arithmetic-function values f(lo), ..., f(hi) with a fractional tag.

    Reads below lo return 0 (the function vanishes there); reads above hi
    raise, so truncation errors can never masquerade as zeros.
    """

    values: object
    kind: str
    frac24: int = 0
    modulus: int = 0
    lo: int = 0

    @property
    def hi(self):
        return self.lo + len(self.values) - 1

    def at(self, n):
        if n > self.hi:
            raise ValidityError("%s(%d) beyond computed range %d" % (self.kind, n, self.hi))
        if n < self.lo:
            return 0
        v = self.values[n - self.lo]
        return int(v)

    def to_series(self):
        return Series(self.values, self.lo, self.frac24, self.modulus)

    def reduce_to(self, m):
        """View this stream modulo m (m must divide the stored modulus)."""
        if self.modulus == m:
            return self
        if self.modulus == 0:
            vals = np.array([int(v) % m for v in self.values], dtype=np.int64)
        elif self.modulus % m == 0:
            vals = np.asarray(self.values, dtype=np.int64) % m
        else:
            raise ValueError("cannot reduce mod %d from mod %d" % (m, self.modulus))
        return CoeffStream(vals, self.kind, self.frac24, m, self.lo)


def _check_cap(n, modulus, cap):
    default = MODULAR_CAP if modulus else EXACT_CAP
    limit = cap if cap is not None else default
    if n > limit:
        raise ValueError(
            "n=%d beyond the %s cap %d (pass cap= to override)"
            % (n, "modular" if modulus else "exact", limit)
        )


def partition_stream(n, modulus=0, cap=None):
    """p(0..n) by inverting the Euler product."""
    _check_cap(n, modulus, cap)
    inv = euler_product(n, modulus).invert()
    return CoeffStream(inv.coeffs, "p", 0, modulus)


def spt_stream(n, modulus=0, cap=None):
    """spt(0..n) via the backward recurrence over smallest parts.

    T_m = q^m/(1-q^m) + (1-q^m) T_{m+1} accumulates the tail products;
    T_1 equals spt_gf * prod(1-q^r), so one division by the Euler product
    finishes the job.
    """
    _check_cap(n, modulus, cap)
    if modulus:
        t = np.zeros(n + 1, dtype=np.int64)
        for m in range(n, 0, -1):
            nt = t.copy()
            nt[m:] -= t[:-m]
            nt[m::m] += 1
            t = nt % modulus
        p = partition_stream(n, modulus, cap).values
        vals = np.convolve(t, p)[: n + 1] % modulus
        return CoeffStream(vals, "spt", 0, modulus)
    t = [0] * (n + 1)
    for m in range(n, 0, -1):
        for i in range(n, m - 1, -1):
            t[i] -= t[i - m]
        for j in range(m, n + 1, m):
            t[j] += 1
    # divide by the Euler product: spt[i] = t[i] - sum_g e_g spt[i-g]
    pents = pentagonal_terms(n)
    vals = [0] * (n + 1)
    for i in range(1, n + 1):
        s = t[i]
        for g, e in pents:
            if g > i:
                break
            s -= e * vals[i - g]
        vals[i] = s
    return CoeffStream(vals, "spt", 0, 0)


def spt_bruteforce(n):
    """spt(n) by enumerating partitions; guarded to n <= 45."""
    if not 0 <= n <= 45:
        raise ValueError("brute-force spt is guarded to 0 <= n <= 45")
    if n == 0:
        return 0
    total = 0
    # ascending-composition enumeration: a[0] is the smallest part
    a = [0] * (n + 1)
    k = 1
    a[0] = 0
    a[1] = n
    while k != 0:
        x = a[k - 1] + 1
        y = a[k] - 1
        k -= 1
        while x <= y:
            a[k] = x
            y -= x
            k += 1
        a[k] = x + y
        part = a[: k + 1]
        smallest = part[0]
        total += part.count(smallest)
    return total


def weighted_streams(n, modulus=0, cap=None, p=None, spt=None):
    """The pair d(n) = (24n-1) p(n) and a(n) = 12 spt(n) + d(n), tagged on
    the q^(n - 1/24) grid."""
    if p is None:
        p = partition_stream(n, modulus, cap)
    if spt is None:
        spt = spt_stream(n, modulus, cap)
    if modulus:
        idx = (24 * np.arange(n + 1, dtype=np.int64) - 1) % modulus
        dvals = (idx * np.asarray(p.values[: n + 1])) % modulus
        avals = (12 * np.asarray(spt.values[: n + 1]) + dvals) % modulus
    else:
        dvals = [(24 * i - 1) * p.values[i] for i in range(n + 1)]
        avals = [12 * spt.values[i] + dvals[i] for i in range(n + 1)]
    d = CoeffStream(dvals, "d", 23, modulus)
    a = CoeffStream(avals, "a", 23, modulus)
    return d, a


# -- shared stream bank --------------------------------------------------------

_lock = threading.RLock()
_tables: dict = {}


def _build(kind, n, modulus):
    if kind == "p":
        return partition_stream(n, modulus, cap=n)
    if kind == "spt":
        return spt_stream(n, modulus, cap=n)
    if kind in ("d", "a"):
        p = stream("p", n, modulus)
        s = stream("spt", n, modulus)
        d, a = weighted_streams(n, modulus, cap=n, p=p, spt=s)
        _tables[("d", modulus)] = d
        _tables[("a", modulus)] = a
        return d if kind == "d" else a
    raise KeyError(kind)


def stream(kind, n, modulus=0):
    """Cached access to p/spt/d/a tables; reuses larger or refining moduli.

    A stored table with modulus M' serves a request for modulus M whenever
    M divides M' (or M' is exact), so one master table can answer many
    congruence sweeps.
    """
    with _lock:
        got = _tables.get((kind, modulus))
        if got is not None and got.hi >= n:
            return got
        if modulus:
            for (k, m2), tab in _tables.items():
                if k == kind and tab.hi >= n and (m2 == 0 or (m2 != modulus and m2 % modulus == 0)):
                    red = tab.reduce_to(modulus)
                    _tables[(kind, modulus)] = red
                    return red
        built = _build(kind, n, modulus)
        _tables[(kind, modulus)] = built
        return built


def prewarm(n, modulus):
    """Force one master build of p/spt/d/a at (n, modulus)."""
    stream("p", n, modulus)
    stream("spt", n, modulus)
    stream("a", n, modulus)


_STREAM_FRAC = {"p": 0, "spt": 0, "d": 23, "a": 23}


def seed(kind, values, modulus=0, lo=0, frac24=None):
    """Install a precomputed table into the bank, e.g. from an on-disk cache.

    Kept only if it extends further than what is already stored."""
    if frac24 is None:
        frac24 = _STREAM_FRAC.get(kind, 0)
    if modulus:
        vals = np.asarray(list(values), dtype=np.int64) % modulus
    else:
        vals = [int(v) for v in values]
    tab = CoeffStream(vals, kind, frac24, modulus, lo)
    with _lock:
        got = _tables.get((kind, modulus))
        if got is None or got.hi < tab.hi:
            _tables[(kind, modulus)] = tab
        return _tables[(kind, modulus)]


def bank_tables():
    """Snapshot of the stream bank, keyed by (kind, modulus)."""
    with _lock:
        return dict(_tables)
