"""Dirac rescaling and finite-N physics: propagators, traces, CCR, sweeps.

The finite stand-in for the limit model is the principal module of
A(1/mu, h/mu) with N = mu^2/h.  Inner products are rescaled by
Delta k = b*cc/(aR*aS*sqrt(N)) so kernels acquire finite continuum limits;
closed continuum formulas are evaluated alongside for comparison.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .errors import (
    DivisibilityViolation,
    ModuleMismatch,
    NotPythagorean,
    OutOfRange,
)
from .lattice import GenWord, WeylDesc
from .repmod import StateVec, inner


# ---------------------------------------------------------------------------
# scale parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScaleParams:
    """Planck fraction h and lattice scale mu; N = mu^2/h must be even."""

    h: Fraction
    mu: int

    def __post_init__(self):
        object.__setattr__(self, "h", Fraction(self.h))
        if self.h <= 0:
            raise DivisibilityViolation("h must be a positive rational")
        if self.mu <= 0:
            raise DivisibilityViolation("mu must be a positive integer")
        if self.mu % self.h.numerator or self.mu % self.h.denominator:
            raise DivisibilityViolation(
                f"numerator and denominator of h = {self.h} must divide mu = {self.mu}"
            )
        if self.N % 2:
            raise DivisibilityViolation(f"N = {self.N} must be even (choose even mu)")

    @property
    def N(self) -> int:
        n = Fraction(self.mu * self.mu) / self.h
        return int(n)

    @property
    def hbar(self) -> float:
        return 2 * math.pi * float(self.h)

    @property
    def cc(self) -> float:
        """Dirac normalisation constant sqrt(2 pi hbar)."""
        return math.sqrt(2 * math.pi * self.hbar)

    @property
    def algebra(self) -> WeylDesc:
        return WeylDesc(Fraction(1, self.mu), self.h / self.mu)

    def word(self, rho: int, tau: int, phase: Fraction = Fraction(0)) -> GenWord:
        """U^{rho/mu} V^{h tau/mu} with an optional phase."""
        return GenWord(Fraction(rho, self.mu), self.h * tau / self.mu, phase)


def auto_mu(h: Fraction, divisors: list[int], min_mu: int = 2) -> int:
    """Smallest even mu divisible by h's parts and all required indices."""
    h = Fraction(h)
    base = 2
    for d in [h.numerator, h.denominator] + [abs(d) for d in divisors if d]:
        base = base * d // gcd(base, d)
    k = (min_mu + base - 1) // base
    return base * max(1, k)


# ---------------------------------------------------------------------------
# rescaling
# ---------------------------------------------------------------------------

@dataclass
class RescaleCtx:
    r_word: GenWord
    s_word: GenWord
    b: int
    aR: int
    aS: int
    delta: float


@dataclass
class KernelSample:
    x1: float
    x2: float
    value: complex
    closed_form: complex
    phase_free: bool = True

    @property
    def abs_err(self) -> float:
        return abs(self.value - self.closed_form)


@dataclass
class TraceResult:
    value: complex
    closed_form: complex
    terms: int

    @property
    def abs_err(self) -> float:
        return abs(self.value - self.closed_form)


@dataclass
class ConvergenceReport:
    mus: list[int]
    residuals: list[float]
    fitted_order: float


def _word_coords(w: GenWord, params: ScaleParams) -> tuple[int, int]:
    """(rho, tau) with w = phase * U^{rho/mu} V^{h tau/mu}."""
    rho = w.u_exp * params.mu
    tau = w.v_exp * params.mu / params.h
    if rho.denominator != 1 or tau.denominator != 1:
        raise DivisibilityViolation("word does not lie in the ambient algebra")
    return int(rho), int(tau)


def delta_k(r_word: GenWord, s_word: GenWord, params: ScaleParams, d: int = 1) -> RescaleCtx:
    """Dirac rescaling step: Delta k = b cc/(aR aS sqrt N), or cc sqrt(d/N).

    b is the minimal positive commutation exponent of the two words; aR, aS
    are the maximal root divisibilities R^{1/aR}, S^{1/aS} in the ambient
    algebra.
    """
    rR, tR = _word_coords(r_word, params)
    rS, tS = _word_coords(s_word, params)
    b = abs(rR * tS - rS * tR)
    N = params.N
    if b == 0:
        delta = params.cc * math.sqrt(d / N)
        return RescaleCtx(r_word, s_word, 0, 1, 1, delta)
    aR = gcd(abs(rR), abs(tR))
    aS = gcd(abs(rS), abs(tS))
    delta = b * params.cc / (aR * aS * math.sqrt(N))
    return RescaleCtx(r_word, s_word, b, aR, aS, delta)


def dirac_inner(e: StateVec, f: StateVec, ctx: RescaleCtx) -> complex:
    """<e|f>/Delta k in floats."""
    if not e.module.compatible(f.module):
        raise ModuleMismatch("vectors live in different modules")
    return inner(e, f).to_complex() / ctx.delta


def xp_kernel(x: float, p: float, params: ScaleParams) -> KernelSample:
    """<x|p>_Dir on the nearest lattice points: modulus 1/sqrt(2 pi hbar).

    The lattice phase is e^{i x p / hbar} (the exact value of q^{km}); the
    closed form is recorded with the same convention.
    """
    hbar, mu, N = params.hbar, params.mu, params.N
    k = round(x * mu / hbar)
    m = round(p * mu / hbar)
    if abs(k) > N // 2 or abs(m) > N // 2:
        raise OutOfRange("point outside the finite lattice window")
    xs, ps = k * hbar / mu, m * hbar / mu
    phase = 2 * math.pi * ((k * m) % N) / N
    value = cmath.exp(1j * phase) / params.cc
    closed = cmath.exp(1j * xs * ps / hbar) / math.sqrt(2 * math.pi * hbar)
    return KernelSample(xs, ps, value, closed)


# ---------------------------------------------------------------------------
# propagators
# ---------------------------------------------------------------------------

@lru_cache(maxsize=32)
def _gauss_constant(Nb: int, sign: int) -> complex:
    """sqrt(Nb)/G(Nb) for the clock e^{2 pi i sign/Nb}, by direct summation."""
    m = np.arange(Nb, dtype=np.int64)
    r = (m * m) % (2 * Nb)
    g = np.exp(1j * math.pi * sign * r / Nb).sum()
    return math.sqrt(Nb) / complex(g)


def free_propagator(x1: float, x2: float, t: Fraction, params: ScaleParams) -> KernelSample:
    """Finite-N free-particle kernel vs (2 pi i hbar t)^{-1/2} e^{i(x1-x2)^2/(2 t hbar)}.

    The finite value is the Dirac-rescaled Gaussian matrix element on the
    <U^d, V^b>-submodule with qb = q^{bd}, with the constant computed from
    the actual quadratic Gauss sum (not the closed form).
    """
    t = Fraction(t)
    if t == 0:
        raise DivisibilityViolation("t must be nonzero")
    b, d = t.numerator, t.denominator
    N = params.N
    bd = abs(b * d)
    if N % bd:
        raise DivisibilityViolation(f"bd = {bd} must divide N = {N}")
    Nb = N // bd
    if Nb % 2:
        raise DivisibilityViolation(f"submodule dimension {Nb} must be even")
    hbar, mu = params.hbar, params.mu
    dx = abs(b) * hbar / mu
    l = round(x1 / dx)
    m = round(x2 / dx)
    if abs(l) > Nb // 2 or abs(m) > Nb // 2:
        raise OutOfRange("grid point outside the submodule window")
    xs1, xs2 = l * dx, m * dx
    sign = 1 if b * d > 0 else -1
    cc_hat = _gauss_constant(Nb, sign)
    r = ((l - m) * (l - m)) % (2 * Nb)
    value = cc_hat / math.sqrt(Nb) * cmath.exp(1j * math.pi * sign * r / Nb) / dx
    closed = cmath.exp(1j * (xs1 - xs2) ** 2 / (2 * float(t) * hbar)) / cmath.sqrt(
        2j * math.pi * hbar * float(t)
    )
    return KernelSample(xs1, xs2, value, closed)


def qho_propagator(x1: float, x2: float, triple: tuple[int, int, int],
                   params: ScaleParams) -> KernelSample:
    """Finite-N harmonic-oscillator kernel vs the continuum closed form.

    sin t = e/c, cos t = f/c for the Pythagorean triple (e,f,c).  The finite
    value is the Dirac-rescaled inner product <u^{c,ce}(n)|K u^{c,ce}(m)>,
    evaluated by summing the c lattice contributions directly.
    """
    e, f, c = triple
    if e * e + f * f != c * c or e <= 0 or f <= 0:
        raise NotPythagorean(f"({e},{f},{c}) is not a positive Pythagorean triple")
    if gcd(e, f) != 1:
        raise NotPythagorean("triple must be primitive for the x-rescaling")
    N = params.N
    if N % (c * c * e) or N % (c * e):
        raise DivisibilityViolation(f"need c^2 e = {c * c * e} | N = {N}")
    hbar, mu = params.hbar, params.mu
    dx = e * hbar / mu
    step = c * e * hbar / mu  # index spacing of the domain basis
    n = round(x1 / step)
    m = round(x2 / step)
    dim = N // (c * c * e)
    if abs(n) > dim // 2 or abs(m) > dim // 2:
        raise OutOfRange("grid point outside the submodule window")
    xs1, xs2 = n * step, m * step

    # sum over the c overlapping lattice sites: l_k = cn - mf + k N/(ce)
    total = 0.0 + 0.0j
    M2 = 2 * N
    for k in range(c):
        lk = c * n - m * f + k * N // (c * e)
        e2 = (e * f * (lk * lk - e * e * m * m) - 2 * e ** 3 * m * lk) % M2
        total += cmath.exp(1j * math.pi * e2 / N)
    C0 = cmath.exp(-1j * math.pi / 4)
    value = C0 * math.sqrt(e / N) / math.sqrt(c) * total / dx

    sin_t, cos_t = e / c, f / c
    closed = C0 / math.sqrt(2 * math.pi * hbar * sin_t) * cmath.exp(
        1j * ((xs1 * xs1 + xs2 * xs2) * cos_t - 2 * xs1 * xs2) / (2 * hbar * sin_t)
    )
    return KernelSample(xs1, xs2, value, closed)


def qho_trace(triple: tuple[int, int, int], params: ScaleParams) -> TraceResult:
    """Brute-force diagonal sum of the raw kernels vs 1/(i |sin(t/2)|)."""
    e, f, c = triple
    if e * e + f * f != c * c or e <= 0 or f <= 0 or c <= f:
        raise NotPythagorean(f"({e},{f},{c}) is not a usable Pythagorean triple")
    N = params.N
    M = e * c * c * (c - f)
    if N % M:
        raise DivisibilityViolation(f"need e c^2 (c-f) = {M} | N = {N}")
    L = N // M
    if L % 4:
        raise DivisibilityViolation(f"need 4 | L = {L} (pick mu with more factors of 2)")
    terms = N // (e * c * (c - f))
    n = np.arange(terms, dtype=np.int64)
    expo = (e * c * c * (c - f) * ((n * n) % N)) % N
    total = np.exp(-2j * np.pi * expo / N).sum()
    value = cmath.exp(-1j * math.pi / 4) * math.sqrt(e * c / N) * complex(total)
    sin_half = math.sqrt((1 - f / c) / 2)
    closed = 1 / (1j * sin_half)
    return TraceResult(value, closed, terms)


# ---------------------------------------------------------------------------
# coordinatization and CCR
# ---------------------------------------------------------------------------

def st_mu(m: int, params: ScaleParams, window: float = math.inf) -> float:
    """Standard-part coordinate m/mu on the window [-N/2, N/2)."""
    N = params.N
    m = (m + N // 2) % N - N // 2
    x = m / params.mu
    if x > window:
        return math.inf
    if x < -window:
        return -math.inf
    return x


def weakring_samples(params: ScaleParams, count: int, seed: int = 0,
                     window: float = 8.0):
    """Quadruples (m1,n1,m2,n2) with m1 n1 = m2 n2 (mod mu^2) on the window.

    Patterns: swapped factors, mu-divisor shifts, and (a mu + c)-block pairs;
    the congruence holds by construction.
    """
    import random as _random

    rng = _random.Random(seed)
    mu = params.mu
    Wm = int(window * mu)
    out = []
    while len(out) < count:
        pat = rng.randrange(3)
        if pat == 0:
            m1 = rng.randrange(-Wm, Wm)
            n1 = rng.randrange(-Wm, Wm)
            out.append((m1, n1, n1, m1))
        elif pat == 1:
            j = rng.randrange(1, int(window))
            s = rng.randrange(1, int(window))
            m1 = rng.randrange(-Wm // 2, Wm // 2)
            # n = j mu fixed; shifting m by s mu changes the product by s j mu^2
            out.append((m1, j * mu, m1 + s * mu, j * mu))
        else:
            a, bb = rng.randrange(1, 4), rng.randrange(1, 4)
            cval = rng.randrange(mu)
            # (a mu + c) * (b mu) = (b mu + c') * (a mu) requires a c' = b c... use
            # symmetric blocks: (a mu + c)(b mu) vs (b mu)(a mu + c)
            out.append((a * mu + cval, bb * mu, bb * mu, a * mu + cval))
    return out[:count]


def weakring_max_phase_error(params: ScaleParams, count: int = 1000, seed: int = 0,
                             window: float = 8.0) -> float:
    """max |e^{2 pi i x1 y1} - e^{2 pi i x2 y2}| over congruent quadruples."""
    worst = 0.0
    for m1, n1, m2, n2 in weakring_samples(params, count, seed, window):
        x1, y1 = st_mu(m1, params), st_mu(n1, params)
        x2, y2 = st_mu(m2, params), st_mu(n2, params)
        p1 = cmath.exp(2j * math.pi * x1 * y1)
        p2 = cmath.exp(2j * math.pi * x2 * y2)
        worst = max(worst, abs(p1 - p2))
    return worst


def _position_window(params: ScaleParams, width_scale: float = 1.0):
    """Discrete-Gaussian regularization of the x=0 state, lattice width sqrt(mu/h).

    A basis eigenstate has a Theta(1) CCR residual (the commutator has zero
    diagonal in any Q-eigenbasis), and a fixed-width packet gives O(1/mu^2):
    the geometric-mean width is the scaling at which the residual decays at
    the advertised O(1/mu) rate.
    """
    sigma = math.sqrt(params.mu / float(params.h)) * width_scale
    W = max(8, int(10 * sigma))
    k = np.arange(-W, W + 1, dtype=np.int64)
    psi = np.exp(-(k.astype(float) ** 2) / (4 * sigma * sigma)).astype(complex)
    psi /= np.linalg.norm(psi)
    return k, psi


def ccr_residual(kind: str, params: ScaleParams, width_scale: float = 1.0) -> float:
    """||(QP - PQ) e - i hbar e|| / hbar for the regularized eigenstate e.

    Q = mu (U - U^{-1})/2i acts diagonally with eigenvalues mu sin(hbar k/mu^2);
    P = mu (V - V^{-1})/2i is the symmetric difference. 'position' uses the
    x=0 regularization in the U-basis, 'momentum' the p=0 one in the V-basis,
    'sstate' a chirped packet along the U V diagonal.
    """
    hbar, mu = params.hbar, params.mu
    k, psi = _position_window(params, width_scale)
    if kind == "sstate":
        half_q = math.pi * float(params.h) / mu ** 2
        psi = psi * np.exp(1j * half_q * k.astype(float) ** 2)
        psi /= np.linalg.norm(psi)
    elif kind not in ("position", "momentum"):
        raise ValueError("kind must be position, momentum or sstate")

    diag = mu * np.sin(hbar * k.astype(float) / mu ** 2)

    def apply_diag(v):
        return diag * v

    def apply_shift(v):
        # mu (T_down - T_up)/2i with T_down v|_j = v_{j+1} (V-action)
        vp = np.empty_like(v)
        vm = np.empty_like(v)
        vp[:-1] = v[1:]
        vp[-1] = 0
        vm[1:] = v[:-1]
        vm[0] = 0
        return mu * (vp - vm) / 2j

    if kind == "momentum":
        # in the momentum representation P is diagonal and Q is the
        # symmetric difference with the opposite shift orientation
        Q, P = (lambda v: -apply_shift(v)), apply_diag
    else:
        Q, P = apply_diag, apply_shift

    r = Q(P(psi)) - P(Q(psi)) - 1j * hbar * psi
    return float(np.linalg.norm(r) / hbar)


def q_operator_eigenvalue(k: int, params: ScaleParams) -> float:
    """Exact eigenvalue of Q = mu(U - U^{-1})/2i on the lattice state u(q^k)."""
    return params.mu * math.sin(params.hbar * k / params.mu ** 2)


# ---------------------------------------------------------------------------
# convergence studies
# ---------------------------------------------------------------------------

def converge_study(quantity: str, mus: list[int], h: Fraction = Fraction(1),
                   seed: int = 0) -> ConvergenceReport:
    """Residual of a finite-N quantity against its continuum target per mu."""
    if not mus:
        raise ValueError("mu list must be nonempty")
    if any(m2 <= m1 for m1, m2 in zip(mus, mus[1:])):
        raise ValueError("mu list must be strictly increasing")
    residuals = []
    for mu in mus:
        params = ScaleParams(Fraction(h), mu)
        if quantity == "ccr":
            residuals.append(ccr_residual("position", params))
        elif quantity == "free":
            worst = 0.0
            for t in (Fraction(1, 2), Fraction(1, 1)):
                for x1 in (-1.0, 0.0, 1.0):
                    for x2 in (-1.0, 0.5, 1.0):
                        s = free_propagator(x1, x2, t, params)
                        worst = max(worst, s.abs_err)
            residuals.append(worst)
        elif quantity == "qho":
            worst = 0.0
            for x1 in (-1.0, 0.0, 1.0):
                for x2 in (-1.0, 0.5, 1.0):
                    s = qho_propagator(x1, x2, (3, 4, 5), params)
                    worst = max(worst, s.abs_err)
            residuals.append(worst)
        elif quantity == "weakring":
            residuals.append(weakring_max_phase_error(params, count=500, seed=seed))
        else:
            raise ValueError(f"unknown quantity {quantity!r}")
    logs = np.log(np.maximum(residuals, 1e-16))
    order = float(np.polyfit(np.log(mus), logs, 1)[0]) if len(mus) > 1 else 0.0
    return ConvergenceReport(list(mus), residuals, order)
