"""Truncated Laurent q-expansions on the 1/24 exponent grid.

A Series holds coefficients for q^(n + s/24) where n runs over a window of
integers [lo, valid_to] and s is the signed representative of a fixed
fractional tag frac24 in [0, 24) (s = frac24 for frac24 <= 12, else
frac24 - 24).  Coefficients below lo are known to vanish; coefficients
above valid_to are unknown and reading them is a hard error.

Two coefficient domains are supported: exact (python ints, with Fractions
tolerated where linear algebra produces them) and residues modulo M >= 2
stored in numpy int64 arrays.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


class GridError(ValueError):
    """Fractional-exponent tags or moduli do not match."""


class ValidityError(ValueError):
    """A coefficient beyond the trusted truncation window was requested."""


class UnitError(ValueError):
    """Leading coefficient is not invertible in the coefficient domain."""


def sgn24(frac24):
    """Signed representative of a fractional tag: in (-12, 12]."""
    return frac24 if frac24 <= 12 else frac24 - 24


def split_e24(e24):
    """Decompose a total exponent in 24ths into (integer index, frac24)."""
    f = e24 % 24
    return (e24 - sgn24(f)) // 24, f


def _is_exact_value(c):
    return isinstance(c, (int, np.integer, Fraction))


class Series:
    __slots__ = ("frac24", "lo", "coeffs", "modulus")

    def __init__(self, coeffs, lo=0, frac24=0, modulus=0, copy=True):
        if not 0 <= frac24 < 24:
            raise GridError("frac24 must lie in [0, 24)")
        if modulus == 1 or modulus < 0:
            raise ValueError("modulus must be 0 (exact) or >= 2")
        if modulus >= 1 << 31:
            raise ValueError("modulus too large for the int64 backend")
        self.frac24 = int(frac24)
        self.lo = int(lo)
        self.modulus = int(modulus)
        if modulus:
            arr = np.asarray(coeffs, dtype=np.int64)
            arr = arr % modulus
            self.coeffs = arr
        else:
            if copy or not isinstance(coeffs, list):
                coeffs = [int(c) if isinstance(c, np.integer) else c for c in coeffs]
            self.coeffs = coeffs

    # -- construction helpers ------------------------------------------------

    @classmethod
    def _wrap(cls, coeffs, lo, frac24, modulus):
        s = object.__new__(cls)
        s.frac24 = frac24
        s.lo = lo
        s.modulus = modulus
        s.coeffs = coeffs
        return s

    @classmethod
    def zero(cls, valid_to, frac24=0, modulus=0, lo=0):
        n = max(0, valid_to - lo + 1)
        if modulus:
            return cls._wrap(np.zeros(n, dtype=np.int64), lo, frac24, modulus)
        return cls._wrap([0] * n, lo, frac24, modulus)

    @classmethod
    def one(cls, valid_to, modulus=0):
        s = cls.zero(valid_to, 0, modulus, 0)
        if valid_to >= 0:
            s.coeffs[0] = 1 % modulus if modulus else 1
        return s

    @classmethod
    def monomial(cls, index, valid_to, frac24=0, modulus=0, coeff=1):
        s = cls.zero(valid_to, frac24, modulus, lo=min(index, valid_to + 1))
        if index <= valid_to:
            s.coeffs[index - s.lo] = coeff % modulus if modulus else coeff
        return s

    # -- basic accessors -----------------------------------------------------

    @property
    def valid_to(self):
        return self.lo + len(self.coeffs) - 1

    def exponent(self, n):
        """True exponent of index n, as a Fraction."""
        return Fraction(24 * n + sgn24(self.frac24), 24)

    def coeff(self, n):
        if n > self.valid_to:
            raise ValidityError(
                "coefficient q^[%d] beyond validity (valid_to=%d)" % (n, self.valid_to)
            )
        if n < self.lo:
            return 0
        c = self.coeffs[n - self.lo]
        return int(c) if isinstance(c, np.integer) else c

    def coeff_range(self, lo, hi):
        """Coefficients for indices lo..hi inclusive as a plain list."""
        return [self.coeff(n) for n in range(lo, hi + 1)]

    def is_zero(self):
        if self.modulus:
            return not self.coeffs.any()
        return all(c == 0 for c in self.coeffs)

    def terms(self):
        """Iterate (index, coefficient) over nonzero stored terms."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.lo + i, int(c) if isinstance(c, np.integer) else c

    def __repr__(self):
        dom = "mod %d" % self.modulus if self.modulus else "exact"
        return "Series(frac24=%d, q^[%d..%d], %s)" % (
            self.frac24,
            self.lo,
            self.valid_to,
            dom,
        )

    # -- window handling -----------------------------------------------------

    def truncate(self, new_valid_to):
        """Shrink the validity window; never extends it."""
        if new_valid_to >= self.valid_to:
            return self
        n = max(0, new_valid_to - self.lo + 1)
        return Series._wrap(self.coeffs[:n], self.lo, self.frac24, self.modulus)

    def shift(self, d):
        """Multiply by q^d for integer d (index shift)."""
        return Series._wrap(self.coeffs, self.lo + d, self.frac24, self.modulus)

    def strip(self):
        """Drop leading zero coefficients, raising lo accordingly."""
        n = len(self.coeffs)
        if self.modulus:
            nz = np.nonzero(self.coeffs)[0]
            i = int(nz[0]) if len(nz) else n
        else:
            i = 0
            while i < n and self.coeffs[i] == 0:
                i += 1
        if i == 0 or i == n:
            return self
        return Series._wrap(self.coeffs[i:], self.lo + i, self.frac24, self.modulus)

    # -- linear combinations ---------------------------------------------

    def lincomb(self, other, c1=1, c2=1):
        """c1*self + c2*other; grids and moduli must agree."""
        if self.frac24 != other.frac24:
            raise GridError("frac24 mismatch in add")
        if self.modulus != other.modulus:
            raise GridError("modulus mismatch in add")
        lo = min(self.lo, other.lo)
        hi = min(self.valid_to, other.valid_to)
        m = self.modulus
        if m:
            out = np.zeros(max(0, hi - lo + 1), dtype=np.int64)
            for s, c in ((self, c1 % m), (other, c2 % m)):
                if len(s.coeffs) == 0 or hi < s.lo:
                    continue
                seg = s.coeffs[: hi - s.lo + 1]
                out[s.lo - lo : s.lo - lo + len(seg)] += (seg * c) % m
            return Series._wrap(out % m, lo, self.frac24, m)
        out = [0] * max(0, hi - lo + 1)
        for s, c in ((self, c1), (other, c2)):
            if hi < s.lo:
                continue
            for i in range(min(len(s.coeffs), hi - s.lo + 1)):
                v = s.coeffs[i]
                if v:
                    out[s.lo - lo + i] += c * v
        return Series._wrap(out, lo, self.frac24, 0)

    def __add__(self, other):
        return self.lincomb(other, 1, 1)

    def __sub__(self, other):
        return self.lincomb(other, 1, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        if self.modulus:
            if isinstance(c, Fraction):
                raise ValueError("Fraction scalar on a modular series")
            return Series._wrap(
                (self.coeffs * (c % self.modulus)) % self.modulus,
                self.lo,
                self.frac24,
                self.modulus,
            )
        return Series._wrap([c * v for v in self.coeffs], self.lo, self.frac24, 0)

    # -- multiplication --------------------------------------------------

    def __mul__(self, other):
        if _is_exact_value(other):
            return self.scale(other)
        return self.mul(other)

    def __rmul__(self, other):
        if _is_exact_value(other):
            return self.scale(other)
        return NotImplemented

    def mul(self, other):
        if self.modulus != other.modulus:
            raise GridError("modulus mismatch in mul")
        e24 = sgn24(self.frac24) + sgn24(other.frac24)
        carry, frac = split_e24(e24)
        lo = self.lo + other.lo + carry
        hi = min(self.valid_to + other.lo, other.valid_to + self.lo) + carry
        n_out = max(0, hi - lo + 1)
        m = self.modulus
        if n_out == 0 or len(self.coeffs) == 0 or len(other.coeffs) == 0:
            return Series.zero(hi, frac, m, lo=lo)
        if m:
            conv = _conv_mod(self.coeffs, other.coeffs, m, n_out)
            return Series._wrap(conv, lo, frac, m)
        out = _conv_exact(self.coeffs, other.coeffs, n_out)
        return Series._wrap(out, lo, frac, 0)

    def __pow__(self, k):
        if k == 0:
            return Series.one(self.valid_to - self.lo, self.modulus)
        base = self.invert() if k < 0 else self
        k = abs(k)
        result = None
        while k:
            if k & 1:
                result = base if result is None else result.mul(base)
            k >>= 1
            if k:
                base = base.mul(base)
        return result

    # -- inversion ---------------------------------------------------------

    def invert(self):
        """Laurent inverse; leading retained coefficient must be a unit."""
        a = self.strip()
        if len(a.coeffs) == 0:
            raise UnitError("cannot invert a series with no retained terms")
        frac = (-sgn24(a.frac24)) % 24
        lo = -a.lo - (sgn24(a.frac24) + sgn24(frac)) // 24
        m = a.modulus
        if m:
            c0 = int(a.coeffs[0])
            try:
                c0_inv = pow(c0, -1, m)
            except ValueError:
                raise UnitError("leading coefficient %d is not a unit mod %d" % (c0, m))
            inv = _invert_mod(a.coeffs, m, c0_inv)
            return Series._wrap(inv, lo, frac, m)
        c0 = a.coeffs[0]
        if isinstance(c0, Fraction) or any(isinstance(c, Fraction) for c in a.coeffs):
            c0_inv = Fraction(1, 1) / c0
        elif c0 == 1 or c0 == -1:
            c0_inv = c0
        else:
            raise UnitError("exact inversion needs leading coefficient +-1, got %r" % (c0,))
        inv = _invert_exact(a.coeffs, c0_inv)
        return Series._wrap(inv, lo, frac, 0)

    # -- reindexing operations ---------------------------------------------

    def dilate(self, t):
        """Substitute z -> t z, i.e. q -> q^t, preserving exactness of grid."""
        if t < 1:
            raise ValueError("dilation factor must be >= 1")
        if t == 1:
            return self
        s = sgn24(self.frac24)
        carry, frac = split_e24(t * s)
        new_lo = t * self.lo + carry
        n = len(self.coeffs)
        if n == 0:
            # highest known exponent in 24ths maps to t * (24*valid_to + s)
            hi, _ = split_e24(t * (24 * self.valid_to + s))
            return Series.zero(hi, frac, self.modulus, lo=new_lo)
        if self.modulus:
            out = np.zeros(t * (n - 1) + 1, dtype=np.int64)
            out[::t] = self.coeffs
        else:
            out = [0] * (t * (n - 1) + 1)
            out[::t] = self.coeffs
        return Series._wrap(out, new_lo, frac, self.modulus)

    def qderiv(self):
        """Apply q d/dq; requires the integer grid (frac24 == 0)."""
        if self.frac24 != 0:
            raise GridError("qderiv needs frac24 == 0; dilate by 24 first")
        m = self.modulus
        if m:
            idx = np.arange(self.lo, self.lo + len(self.coeffs), dtype=np.int64) % m
            return Series._wrap((self.coeffs * idx) % m, self.lo, 0, m)
        return Series._wrap(
            [(self.lo + i) * c for i, c in enumerate(self.coeffs)], self.lo, 0, 0
        )

    def sift(self, stride, offset=0):
        """Keep coefficients at indices stride*m + offset: new[m] = old[stride*m + offset].

        The exponent of the new index m is the old exponent divided by the
        stride, so 24*offset + sgn24(frac24) must be a multiple of the stride
        for the result to stay on the 1/24 grid."""
        if stride < 1:
            raise ValueError("stride must be >= 1")
        e24 = 24 * offset + sgn24(self.frac24)
        if e24 % stride:
            raise GridError(
                "sift by %d at offset %d leaves the 1/24 grid" % (stride, offset)
            )
        carry, frac = split_e24(e24 // stride)
        new_lo = -((-(self.lo - offset)) // stride) + carry  # ceil div
        new_hi = (self.valid_to - offset) // stride + carry  # floor div
        n = max(0, new_hi - new_lo + 1)
        if n == 0:
            return Series.zero(new_hi, frac, self.modulus, lo=new_lo)
        start = stride * (new_lo - carry) + offset - self.lo
        if self.modulus:
            out = self.coeffs[start : start + stride * (n - 1) + 1 : stride].copy()
        else:
            out = self.coeffs[start : start + stride * (n - 1) + 1 : stride]
        return Series._wrap(out, new_lo, frac, self.modulus)

    def reduce_mod(self, m):
        """Map into the mod-m domain; exact input, or a modulus m divides."""
        if m < 2:
            raise ValueError("modulus must be >= 2")
        if self.modulus:
            if self.modulus % m:
                raise GridError(
                    "cannot reduce mod %d from mod %d" % (m, self.modulus)
                )
            return Series._wrap(self.coeffs % m, self.lo, self.frac24, m)
        if any(isinstance(c, Fraction) for c in self.coeffs):
            raise ValueError("cannot reduce a series with Fraction coefficients")
        arr = np.array([c % m for c in self.coeffs], dtype=np.int64)
        return Series._wrap(arr, self.lo, self.frac24, m)

    # -- geometric-factor helpers -------------------------------------------

    def mul_one_minus_q_pow(self, m):
        """Multiply by (1 - q^m) in O(N)."""
        if m < 1:
            raise ValueError("power must be >= 1")
        if self.modulus:
            out = self.coeffs.copy()
            if len(out) > m:
                out[m:] -= self.coeffs[:-m]
            return Series._wrap(out % self.modulus, self.lo, self.frac24, self.modulus)
        out = list(self.coeffs)
        for i in range(m, len(out)):
            out[i] -= self.coeffs[i - m]
        return Series._wrap(out, self.lo, self.frac24, self.modulus)

    def div_one_minus_q_pow(self, m):
        """Divide by (1 - q^m) in O(N) via the prefix recurrence."""
        if m < 1:
            raise ValueError("power must be >= 1")
        if self.modulus:
            out = self.coeffs.copy()
            for r in range(min(m, len(out))):
                np.cumsum(out[r::m], out=out[r::m])
                out[r::m] %= self.modulus
            return Series._wrap(out, self.lo, self.frac24, self.modulus)
        out = list(self.coeffs)
        for i in range(m, len(out)):
            out[i] += out[i - m]
        return Series._wrap(out, self.lo, self.frac24, self.modulus)

    # -- comparisons ---------------------------------------------------------

    def first_difference(self, other, lo=None, hi=None):
        """First (n, self[n], other[n]) disagreement over the shared window, or None."""
        if self.frac24 != other.frac24:
            raise GridError("frac24 mismatch in comparison")
        if self.modulus != other.modulus:
            raise GridError("modulus mismatch in comparison")
        if lo is None:
            lo = min(self.lo, other.lo)
        if hi is None:
            hi = min(self.valid_to, other.valid_to)
        if hi > min(self.valid_to, other.valid_to):
            raise ValidityError("comparison window exceeds validity")
        for n in range(lo, hi + 1):
            a, b = self.coeff(n), other.coeff(n)
            if a != b:
                return n, a, b
        return None

    def agrees(self, other, lo=None, hi=None):
        return self.first_difference(other, lo, hi) is None


# -- low-level coefficient kernels -------------------------------------------

_SCHOOLBOOK_CUTOFF = 64 * 64


def _conv_exact(a, b, n_out):
    """Exact truncated convolution of coefficient lists."""
    if len(a) * len(b) > _SCHOOLBOOK_CUTOFF:
        ints_ok = all(type(c) is int for c in a) and all(type(c) is int for c in b)
        if ints_ok:
            return _conv_kronecker(a, b, n_out)
    return _conv_schoolbook(a, b, n_out)


def _conv_schoolbook(a, b, n_out):
    if len(a) > len(b):
        a, b = b, a
    out = [0] * n_out
    for i, ai in enumerate(a):
        if not ai or i >= n_out:
            continue
        jmax = min(len(b), n_out - i)
        for j in range(jmax):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def _conv_kronecker(a, b, n_out):
    """Single-multiplication convolution via packing into one big integer.

    Coefficients are packed as signed base-2^w digits; the product's digits
    are recovered after adding an offset that makes every digit nonnegative,
    which is carry-free because the digit bound is below 2^(w-1).
    """
    max_a = max(max(a), -min(a))
    max_b = max(max(b), -min(b))
    if max_a == 0 or max_b == 0:
        return [0] * n_out
    bound = max_a * max_b * min(len(a), len(b))
    w = bound.bit_length() + 2
    w += (-w) % 8
    wb = w // 8
    va = _pack_signed(a, wb)
    vb = _pack_signed(b, wb)
    prod = va * vb
    n_full = len(a) + len(b) - 1
    half = 1 << (w - 1)
    base = 1 << w
    offset = ((base ** n_full - 1) // (base - 1)) * half
    shifted = prod + offset
    raw = shifted.to_bytes(n_full * wb + 1, "little")
    out = []
    take = min(n_out, n_full)
    for i in range(take):
        out.append(int.from_bytes(raw[i * wb : (i + 1) * wb], "little") - half)
    out.extend([0] * (n_out - take))
    return out


def _pack_signed(coeffs, wb):
    """Evaluate sum(c_i * 256^(wb*i)) exactly for signed ints c_i."""
    pos = bytearray(len(coeffs) * wb)
    neg = bytearray(len(coeffs) * wb)
    for i, c in enumerate(coeffs):
        if c > 0:
            pos[i * wb : i * wb + wb] = c.to_bytes(wb, "little")
        elif c < 0:
            neg[i * wb : i * wb + wb] = (-c).to_bytes(wb, "little")
    return int.from_bytes(bytes(pos), "little") - int.from_bytes(bytes(neg), "little")


def _check_conv_bound(m, n):
    if (m - 1) * (m - 1) * n >= 2**63:
        raise ValueError(
            "modulus %d too large for int64 convolution at length %d" % (m, n)
        )


def _conv_mod(a, b, m, n_out):
    _check_conv_bound(m, min(len(a), len(b)))
    conv = np.convolve(a, b)[:n_out] % m
    if len(conv) < n_out:
        conv = np.concatenate([conv, np.zeros(n_out - len(conv), dtype=np.int64)])
    return conv


def _invert_exact(a, c0_inv):
    """Power-series inverse of an exact coefficient list (a[0] a unit)."""
    n = len(a)
    nz = [(k, a[k]) for k in range(1, n) if a[k]]
    out = [0] * n
    out[0] = c0_inv
    neg = c0_inv == -1
    for i in range(1, n):
        s = 0
        for k, ak in nz:
            if k > i:
                break
            s += ak * out[i - k]
        if isinstance(c0_inv, Fraction):
            out[i] = -s * c0_inv
        else:
            out[i] = s if neg else -s
    return out


def _invert_mod(a, m, c0_inv):
    """Newton iteration x <- x(2 - ax) mod (m, q^n)."""
    n = len(a)
    x = np.array([c0_inv], dtype=np.int64)
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        _check_conv_bound(m, prec)
        ax = np.convolve(a[:prec], x)[:prec] % m
        t = (-ax) % m
        t[0] = (t[0] + 2) % m
        x = np.convolve(x, t)[:prec] % m
    return x
