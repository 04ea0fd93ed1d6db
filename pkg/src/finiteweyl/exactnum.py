"""Exact arithmetic over roots of unity with radical scale factors.

Values are elements of Q(zeta_M) scaled by a square root of a positive
rational, i.e. r * sqrt(s) * (cyclotomic element).  This covers every
constant the algebraic layers produce: q^(k/2) phases, 1/sqrt(N) basis
normalisations, quadratic Gauss sums and the constant e^{-i pi/4}.
A float backend carries the same API for large-scale numerics.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath

from .errors import ExactnessLost

Rat = Fraction


# ---------------------------------------------------------------------------
# integer helpers
# ---------------------------------------------------------------------------

def _factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; inputs here stay small (lattice sizes)."""
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=4096)
def split_square(n: int) -> tuple[int, int]:
    """Return (s, r) with n = s^2 * r and r squarefree, for n >= 1."""
    s, r = 1, 1
    for p, e in _factorize(n).items():
        s *= p ** (e // 2)
        if e % 2:
            r *= p
    return s, r


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


# ---------------------------------------------------------------------------
# cyclotomic polynomials
# ---------------------------------------------------------------------------

def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (den monic, divides num)."""
    num = list(num)
    dn, dd = len(num) - 1, len(den) - 1
    out = [0] * (dn - dd + 1)
    for i in range(dn - dd, -1, -1):
        c = num[i + dd]
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(M: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the M-th cyclotomic polynomial.

    Computed by dividing x^M - 1 by the cyclotomic polynomials of the
    proper divisors of M.
    """
    if M == 1:
        return (-1, 1)
    poly = [-1] + [0] * (M - 1) + [1]
    for d in range(1, M):
        if M % d == 0:
            poly = _poly_div_exact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _monomial_rows(M: int) -> tuple[tuple[int, ...], ...]:
    """Rows of x^e mod Phi_M (integer coefficients) for e = deg..M-1."""
    phi = cyclotomic_poly(M)
    deg = len(phi) - 1
    rows = []
    cur = [-c for c in phi[:deg]]  # x^deg mod Phi (monic)
    rows.append(tuple(cur))
    for _ in range(deg + 1, M):
        nxt = [0] + cur[:-1]
        lead = cur[-1]
        if lead:
            for j in range(deg):
                nxt[j] -= lead * phi[j]
        cur = nxt
        rows.append(tuple(cur))
    return tuple(rows)


def _reduce_mod_cyclotomic(coeffs: dict[int, Fraction], M: int) -> dict[int, Fraction]:
    """Reduce a sparse exponent->coefficient map modulo Phi_M."""
    deg = len(cyclotomic_poly(M)) - 1
    if all(k < deg for k in coeffs):
        return {k: c for k, c in coeffs.items() if c}
    rows = _monomial_rows(M)
    acc: dict[int, Fraction] = {}
    for k, c in coeffs.items():
        k %= M
        if k < deg:
            s = acc.get(k, 0) + c
            if s:
                acc[k] = s
            else:
                acc.pop(k, None)
        else:
            for j, r in enumerate(rows[k - deg]):
                if r:
                    s = acc.get(j, 0) + c * r
                    if s:
                        acc[j] = s
                    else:
                        acc.pop(j, None)
    return acc


def _poly_xgcd(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Return (g, s) with s*a = g mod b and g a constant gcd (a invertible mod b)."""

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    def divmod_(num, den):
        num = list(num)
        q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
        inv = 1 / den[-1]
        for i in range(len(num) - len(den), -1, -1):
            c = num[i + len(den) - 1] * inv
            q[i] = c
            if c:
                for j, dj in enumerate(den):
                    num[i + j] -= c * dj
        return q, trim(num)

    r0, r1 = list(a), list(b)
    s0, s1 = [Fraction(1)], [Fraction(0)]
    trim(r0), trim(r1)
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        qs = [Fraction(0)] * (len(q) + len(s1) - 1)
        for i, qi in enumerate(q):
            if qi:
                for j, sj in enumerate(s1):
                    qs[i + j] += qi * sj
        s0, s1 = s1, [x - y for x, y in zip(s0 + [Fraction(0)] * len(qs), qs + [Fraction(0)] * len(s0))]
        trim(s1)
    return r0, s0


# ---------------------------------------------------------------------------
# Cyc: elements of Q(zeta_M)
# ---------------------------------------------------------------------------

class Cyc:
    """Element of Q(zeta_M), stored sparsely as exponent -> rational coefficient.

    The representation is reduced modulo Phi_M only when a canonical form is
    required (equality, zero tests), keeping products of monomials cheap.
    """

    __slots__ = ("order", "coeffs", "_canon")

    def __init__(self, order: int, coeffs: dict[int, Fraction], _trusted: bool = False):
        self.order = order
        if _trusted:
            self.coeffs = coeffs
        else:
            self.coeffs = {k % order: Fraction(c) for k, c in coeffs.items() if c}
        self._canon = None

    # -- constructors -------------------------------------------------------
    @staticmethod
    def zero(order: int = 1) -> "Cyc":
        return Cyc(order, {})

    @staticmethod
    def rational(r) -> "Cyc":
        return Cyc(1, {0: Fraction(r)})

    @staticmethod
    def zeta(M: int, k: int = 1) -> "Cyc":
        return Cyc(M, {k % M: Fraction(1)})

    # -- conversions ---------------------------------------------------------
    def lift(self, order: int) -> "Cyc":
        if order == self.order:
            return self
        step = order // self.order
        return Cyc(order, {k * step: c for k, c in self.coeffs.items()}, _trusted=True)

    def _shrink(self) -> "Cyc":
        """Reduce the order when every exponent shares a factor with it."""
        if not self.coeffs:
            return Cyc(1, {}) if self.order != 1 else self
        g = self.order
        for k in self.coeffs:
            g = gcd(g, k)
            if g == 1:
                return self
        return Cyc(self.order // g, {k // g: c for k, c in self.coeffs.items()})

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "Cyc") -> "Cyc":
        L = lcm(self.order, other.order)
        a, b = self.lift(L), other.lift(L)
        out = dict(a.coeffs)
        for k, c in b.coeffs.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Cyc(L, out, _trusted=True)

    def __neg__(self) -> "Cyc":
        return Cyc(self.order, {k: -c for k, c in self.coeffs.items()}, _trusted=True)

    def __sub__(self, other: "Cyc") -> "Cyc":
        return self + (-other)

    def __mul__(self, other: "Cyc") -> "Cyc":
        L = lcm(self.order, other.order)
        a, b = self.lift(L), other.lift(L)
        if len(a.coeffs) == 1 and len(b.coeffs) == 1:
            (k1, c1), = a.coeffs.items()
            (k2, c2), = b.coeffs.items()
            return Cyc(L, {(k1 + k2) % L: c1 * c2}, _trusted=True)
        out: dict[int, Fraction] = {}
        for k1, c1 in a.coeffs.items():
            for k2, c2 in b.coeffs.items():
                k = (k1 + k2) % L
                s = out.get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return Cyc(L, out, _trusted=True)

    def scale(self, r) -> "Cyc":
        r = Fraction(r)
        if not r:
            return Cyc(self.order, {}, _trusted=True)
        return Cyc(self.order, {k: c * r for k, c in self.coeffs.items()}, _trusted=True)

    def conj(self) -> "Cyc":
        return Cyc(
            self.order,
            {(self.order - k) % self.order: c for k, c in self.coeffs.items()},
            _trusted=True,
        )

    def inverse(self) -> "Cyc":
        a = self.canonical()
        if not a.coeffs:
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        M = a.order
        deg = len(cyclotomic_poly(M)) - 1
        dense = [Fraction(0)] * deg
        for k, c in a.coeffs.items():
            dense[k] = c
        phi = [Fraction(c) for c in cyclotomic_poly(M)]
        g, s = _poly_xgcd(dense, phi)
        if len(g) != 1:
            raise ZeroDivisionError("element not invertible (unexpected)")
        inv = [c / g[0] for c in s]
        return Cyc(M, {k: c for k, c in enumerate(inv) if c})

    # -- canonical form ------------------------------------------------------
    def canonical(self) -> "Cyc":
        """Representative reduced modulo Phi_M with minimal order."""
        if self._canon is not None:
            return self._canon
        red = Cyc(self.order, _reduce_mod_cyclotomic(self.coeffs, self.order), _trusted=True)
        red = red._shrink()
        if red.order != self.order:
            red = red.canonical()
        red._canon = red
        self._canon = red
        return red

    def is_zero(self) -> bool:
        if not self.coeffs:
            return True
        if len(self.coeffs) == 1:
            return False  # a single monomial is never zero
        return not self.canonical().coeffs

    def is_rational(self) -> bool:
        c = self.canonical()
        return all(k == 0 for k in c.coeffs)

    def rational_value(self) -> Fraction:
        c = self.canonical()
        if not c.coeffs:
            return Fraction(0)
        if not c.is_rational():
            raise ExactnessLost("cyclotomic element is not rational")
        return c.coeffs[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cyc):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self) -> str:
        c = self.canonical()
        if not c.coeffs:
            return "0"
        terms = [f"{v}*z{c.order}^{k}" if k else f"{v}" for k, v in sorted(c.coeffs.items())]
        return " + ".join(terms)

    def eval(self, prec: int = 53) -> complex:
        with mpmath.workprec(prec + 10):
            tot = mpmath.mpc(0)
            for k, c in self.coeffs.items():
                tot += mpmath.mpc(c.numerator) / c.denominator * mpmath.e ** (
                    2j * mpmath.pi * k / self.order
                )
            return complex(tot)


# ---------------------------------------------------------------------------
# square roots of squarefree integers as cyclotomic elements
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def sqrt_as_cyc(n: int) -> Cyc:
    """sqrt(n) for squarefree n >= 1 as an element of Q(zeta_{4n})."""
    if n == 1:
        return Cyc.rational(1)
    out = Cyc.rational(1)
    for p in _factorize(n):
        if p == 2:
            root = Cyc(8, {1: Fraction(1), 7: Fraction(1)})
        else:
            g = Cyc(p, {})
            for k in range(p):
                g = g + Cyc.zeta(p, (k * k) % p)
            if p % 4 == 1:
                root = g
            else:
                root = Cyc.zeta(4, 3) * g  # sqrt(p) = -i * (i sqrt(p))
        out = out * root
    return out


# ---------------------------------------------------------------------------
# Scalar: exact r*sqrt(s)*cyc or float backend
# ---------------------------------------------------------------------------

class Scalar:
    """Amplitude value: exact sqrt(rad) * cyc, or a complex float."""

    __slots__ = ("rad", "cyc", "z")

    def __init__(self, rad: int | None, cyc: Cyc | None, z: complex | None = None):
        # exact when z is None; rad is a positive squarefree integer
        self.rad = rad
        self.cyc = cyc
        self.z = z

    # -- constructors --------------------------------------------------------
    @staticmethod
    def exact(cyc: Cyc, rad_num: int = 1, rad_den: int = 1) -> "Scalar":
        """sqrt(rad_num/rad_den) * cyc, normalised to an integer radicand."""
        if rad_num <= 0 or rad_den <= 0:
            raise ValueError("radicand must be positive")
        # sqrt(p/q) = sqrt(p*q)/q
        n = rad_num * rad_den
        s, r = split_square(n)
        return Scalar(r, cyc.scale(Fraction(s, rad_den)))

    @staticmethod
    def rational(x) -> "Scalar":
        return Scalar(1, Cyc.rational(x))

    @staticmethod
    def zero() -> "Scalar":
        return Scalar(1, Cyc.zero())

    @staticmethod
    def one() -> "Scalar":
        return Scalar.rational(1)

    @staticmethod
    def from_float(z: complex) -> "Scalar":
        z = complex(z)
        if not (cmath.isfinite(z.real) and cmath.isfinite(z.imag)):
            raise ValueError("float scalar must be finite")
        return Scalar(None, None, z)

    @staticmethod
    def phase(turns: Fraction) -> "Scalar":
        """e^{2 pi i turns} for rational turns."""
        t = Fraction(turns)
        return _phase_cached(t.numerator % t.denominator, t.denominator)

    @property
    def is_exact(self) -> bool:
        return self.z is None

    # -- radical handling ----------------------------------------------------
    def lift_radical(self) -> "Scalar":
        """Fold sqrt(rad) into the cyclotomic part (rad becomes 1)."""
        if not self.is_exact or self.rad == 1:
            return self
        return Scalar(1, self.cyc * sqrt_as_cyc(self.rad))

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.rational(other)
        if isinstance(other, (float, complex)):
            return Scalar.from_float(other)
        raise TypeError(f"cannot coerce {other!r} to Scalar")

    def __mul__(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            other = self._coerce(other)
        if self.z is None and other.z is None:
            if self.rad == 1 and other.rad == 1:
                return Scalar(1, self.cyc * other.cyc)
            n = self.rad * other.rad
            s, r = split_square(n)
            cyc = self.cyc * other.cyc
            return Scalar(r, cyc if s == 1 else cyc.scale(s))
        return Scalar.from_float(self.to_complex() * other.to_complex())

    __rmul__ = __mul__

    def __add__(self, other) -> "Scalar":
        other = self._coerce(other)
        if self.is_exact and other.is_exact:
            if self.rad == other.rad:
                return Scalar(self.rad, self.cyc + other.cyc)
            a, b = self.lift_radical(), other.lift_radical()
            return Scalar(1, a.cyc + b.cyc)
        return Scalar.from_float(self.to_complex() + other.to_complex())

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        if self.is_exact:
            return Scalar(self.rad, -self.cyc)
        return Scalar.from_float(-self.z)

    def __sub__(self, other) -> "Scalar":
        other = self._coerce(other)
        if (
            self.is_exact
            and other.is_exact
            and self.rad == other.rad
            and self.cyc.order == other.cyc.order
            and self.cyc.coeffs == other.cyc.coeffs
        ):
            return Scalar(1, Cyc.zero())
        return self + (-other)

    def inv(self) -> "Scalar":
        if self.is_exact:
            # 1/(sqrt(r) c) = sqrt(r) c^{-1} / r
            return Scalar(self.rad, self.cyc.inverse().scale(Fraction(1, self.rad)))
        return Scalar.from_float(1 / self.z)

    def __truediv__(self, other) -> "Scalar":
        return self * self._coerce(other).inv()

    def conj(self) -> "Scalar":
        if self.is_exact:
            return Scalar(self.rad, self.cyc.conj())
        return Scalar.from_float(self.z.conjugate())

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_exact and other.is_exact:
            return (self - other).is_zero()
        return self.to_complex() == other.to_complex()

    def is_zero(self) -> bool:
        if self.is_exact:
            return self.cyc.is_zero()
        return self.z == 0

    def is_rational(self) -> bool:
        return self.is_exact and self.rad == 1 and self.cyc.is_rational()

    def rational_value(self) -> Fraction:
        if not self.is_exact:
            raise ExactnessLost("float scalar has no rational value")
        if self.rad != 1:
            if self.cyc.is_zero():
                return Fraction(0)
            raise ExactnessLost("scalar carries a radical factor")
        return self.cyc.rational_value()

    def sqrt_of_rational(self) -> "Scalar":
        """sqrt of a nonnegative rational scalar (norms)."""
        if not self.is_exact:
            return Scalar.from_float(cmath.sqrt(self.z))
        v = self.rational_value()
        if v < 0:
            raise ExactnessLost("negative radicand")
        return Scalar.exact(Cyc.rational(1), v.numerator, v.denominator)

    # -- numerics ------------------------------------------------------------
    def to_complex(self, prec: int = 53) -> complex:
        if not self.is_exact:
            return self.z
        import math

        val = self.cyc.eval(prec)
        return val * math.sqrt(self.rad)

    def __repr__(self) -> str:
        if not self.is_exact:
            return f"Scalar(float {self.z})"
        if self.rad == 1:
            return f"Scalar({self.cyc!r})"
        return f"Scalar(sqrt({self.rad})*({self.cyc!r}))"


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

@lru_cache(maxsize=20000)
def _phase_cached(num: int, den: int) -> Scalar:
    return Scalar(1, Cyc.zeta(den, num))


def root_of_unity(M: int, k: int) -> Scalar:
    """Exact zeta_M^k."""
    if M < 1:
        raise ValueError("order must be positive")
    return Scalar(1, Cyc.zeta(M, k % M))


def conjugate(s: Scalar) -> Scalar:
    """Formal complex conjugation: roots of unity inverted, radicals fixed."""
    return s.conj()


def gauss_sum(N: int) -> Scalar:
    """Exact quadratic Gauss sum G(N) = sum_m e^{i pi m^2 / N}."""
    if N < 1:
        raise ValueError("N must be positive")
    acc: dict[int, Fraction] = {}
    M = 2 * N
    for m in range(N):
        k = (m * m) % M
        acc[k] = acc.get(k, Fraction(0)) + 1
    return Scalar(1, Cyc(M, acc))


def gauss_sum_float(N: int) -> complex:
    """G(N) by direct summation in floats (vectorised for large N)."""
    import numpy as np

    m = np.arange(N, dtype=np.int64)
    r = (m * m) % (2 * N)
    return complex(np.exp(1j * np.pi * r / N).sum())


def eval_complex(s: Scalar, precision_bits: int = 53) -> tuple[float, float]:
    """Numerical embedding zeta_M -> e^{2 pi i / M}, returned as (re, im)."""
    z = s.to_complex(max(precision_bits, 53))
    return (z.real, z.imag)


def sum_scalars(values) -> Scalar:
    """Sum a sequence of scalars, batching the exact accumulation.

    Exact terms are merged radicand-by-radicand into a single coefficient
    dict, so summing t monomials costs O(t) instead of O(t^2).
    """
    by_rad: dict[int, list] = {}
    float_acc = 0j
    have_float = False
    for v in values:
        if v.z is not None:
            float_acc += v.z
            have_float = True
        elif v.cyc.coeffs:
            by_rad.setdefault(v.rad, []).append(v.cyc)
    if have_float:
        total = float_acc
        for rad, cycs in by_rad.items():
            for c in cycs:
                total += Scalar(rad, c).to_complex()
        return Scalar.from_float(total)
    total = None
    for rad, cycs in by_rad.items():
        L = 1
        for c in cycs:
            L = lcm(L, c.order)
        acc: dict[int, Fraction] = {}
        for c in cycs:
            step = L // c.order
            for k, co in c.coeffs.items():
                kk = k * step
                s = acc.get(kk, 0) + co
                if s:
                    acc[kk] = s
                else:
                    acc.pop(kk, None)
        part = Scalar(rad, Cyc(L, acc, _trusted=True))
        total = part if total is None else total + part
    return Scalar.zero() if total is None else total
