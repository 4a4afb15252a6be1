"""Reciprocal gamma, Mittag-Leffler and Rabotnov functions on the real axis.

The two-parameter Mittag-Leffler function is evaluated by one of three
schemes, chosen from ``w = |z|**(1/alpha)``:

* the Taylor series in double precision, summed exactly with ``math.fsum``;
  rounding loss grows like ``eps * exp(w)`` on the negative axis;
* the large-argument expansion, i.e. the residues of the poles of
  ``s**(alpha-beta) / (s**alpha - z)`` that sit on the principal sheet plus
  the algebraic series ``-sum z**-k / Gamma(beta - alpha*k)``, truncated at
  its smallest term; its error shrinks roughly like ``exp(-w)``;
* the Taylor series in MPFR arithmetic with the working precision sized from
  the largest term, used in the band where neither of the above certifies.

Every evaluation returns an :class:`EvalResult` whose ``abs_err`` accounts for
truncation and cancellation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import gmpy2
from scipy.special import rgamma as _sc_rgamma

from .errors import DomainError, NonConvergent

EPS = 2.220446049250313e-16
POLE_TOL = 1e-12
DEFAULT_TOL = 1e-10

# regime switches, in units of w = |z|**(1/alpha)
_W_FLOAT_FIRST = 12.0
_W_FLOAT_MAX = 30.0
_W_ASYM_MIN = 6.0
_W_POSITIVE_SERIES = 40.0
_MAX_TERMS = 50_000


@dataclass(frozen=True)
class EvalResult:
    """A numerical value together with an estimated absolute error bound."""

    value: float
    abs_err: float

    def __float__(self) -> float:
        return self.value

    def scaled(self, c: float) -> EvalResult:
        return EvalResult(c * self.value, abs(c) * self.abs_err)

    def __add__(self, other: EvalResult) -> EvalResult:
        return EvalResult(self.value + other.value, self.abs_err + other.abs_err)


@dataclass(frozen=True)
class MLParams:
    """Arguments of ``E_{alpha,beta}(z)``; ``beta`` may be zero or negative."""

    alpha: float
    beta: float
    z: float

    def __post_init__(self):
        if not self.alpha > 0 or not math.isfinite(self.alpha):
            raise DomainError(f"alpha must be finite and > 0, got {self.alpha!r}")
        if not math.isfinite(self.beta) or not math.isfinite(self.z):
            raise DomainError("beta and z must be finite")


def is_gamma_pole(x: float) -> bool:
    """True when ``x`` is within ``POLE_TOL`` of a non-positive integer."""
    if x > 0.5:
        return False
    return abs(x - round(x)) <= POLE_TOL


def rgamma(x: float) -> float:
    """Return ``1/Gamma(x)``; exactly ``0.0`` at (and within 1e-12 of) the poles."""
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"rgamma needs a finite argument, got {x!r}")
    if is_gamma_pole(x):
        return 0.0
    return float(_sc_rgamma(x))


def _gamma_sign(x: float) -> float:
    if x > 0:
        return 1.0
    return -1.0 if math.floor(x) % 2 else 1.0


def _log_abs_rgamma(x: float) -> float:
    if is_gamma_pole(x):
        return -math.inf
    return -math.lgamma(x)


def _series_term(alpha: float, beta: float, z: float, j: int) -> float:
    x = alpha * j + beta
    r = rgamma(x)
    if r == 0.0:
        return 0.0
    if j == 0:
        return r
    try:
        t = z**j * r
    except OverflowError:
        t = math.inf
    if math.isfinite(t) and t != 0.0:
        return t
    # z**j overflowed or r underflowed: go through logarithms
    log_mag = j * math.log(abs(z)) - math.lgamma(x)
    sign = math.copysign(1.0, r) * (1.0 if z > 0 or j % 2 == 0 else -1.0)
    if log_mag > 709.0:
        return sign * math.inf
    return sign * math.exp(log_mag)


def _tail_start(alpha: float, beta: float, w: float) -> float:
    # beyond this argument consecutive term ratios are < 1 and decreasing
    return max(2.0, w + 2.0, beta + 2.0)


def _series_float(alpha: float, beta: float, z: float) -> EvalResult:
    w = abs(z) ** (1.0 / alpha)
    x_tail = _tail_start(alpha, beta, w)
    terms = []
    abs_sum = 0.0
    prev = None
    for j in range(_MAX_TERMS):
        t = _series_term(alpha, beta, z, j)
        if not math.isfinite(t):
            raise NonConvergent("series term overflowed", best=EvalResult(math.inf, math.inf))
        terms.append(t)
        x = alpha * j + beta
        # rounding of x itself perturbs 1/Gamma(x) by about |x*digamma(x)|*eps
        abs_sum += abs(t) * (1.0 + abs(x) * (abs(math.log(abs(x) + 1.0)) + 1.0) / 8.0)
        if x > x_tail and t == 0.0:
            # past the peak a zero term means underflow; the tail is below it
            value = math.fsum(terms)
            return EvalResult(value, 8.0 * EPS * abs_sum + EPS * abs(value) + 1e-300)
        if x > x_tail and prev is not None and prev != 0.0:
            ratio = abs(t) / abs(prev)
            if ratio < 1.0:
                tail = abs(t) * ratio / (1.0 - ratio)
                if tail <= 0.1 * EPS * max(abs_sum, 1e-300) or tail < 1e-300:
                    value = math.fsum(terms)
                    err = 8.0 * EPS * abs_sum + tail + EPS * abs(value)
                    return EvalResult(value, err)
        prev = t
    value = math.fsum(terms)
    raise NonConvergent("series did not settle", best=EvalResult(value, math.inf))


@lru_cache(maxsize=1 << 16)
def _rgamma_mpfr(alpha: float, beta: float, j: int, prec: int):
    with gmpy2.context(gmpy2.get_context(), precision=prec):
        x = gmpy2.mpfr(alpha) * j + gmpy2.mpfr(beta)
        if is_gamma_pole(float(x)):
            return gmpy2.mpfr(0)
        return 1 / gmpy2.gamma(x)


def _peak_log_term(alpha: float, beta: float, z: float) -> tuple[float, int]:
    """Largest log|term| of the series and a generous term-count estimate."""
    logz = math.log(abs(z))
    w = abs(z) ** (1.0 / alpha)
    x_tail = _tail_start(alpha, beta, w)
    peak = -math.inf
    j = 0
    while True:
        x = alpha * j + beta
        lt = j * logz + _log_abs_rgamma(x)
        peak = max(peak, lt)
        if x > x_tail and lt < peak - 120.0:
            return peak, j
        j += 1
        if j > _MAX_TERMS:
            return peak, j


def _series_mpfr(alpha: float, beta: float, z: float, tol: float) -> EvalResult:
    peak, n_est = _peak_log_term(alpha, beta, z)
    target = tol * 1e-2
    bits = (peak + math.log(n_est + 1) - math.log(target)) / math.log(2.0) + 16
    prec = max(128, 64 * math.ceil(bits / 64))
    w = abs(z) ** (1.0 / alpha)
    x_tail = _tail_start(alpha, beta, w)
    with gmpy2.context(gmpy2.get_context(), precision=prec):
        zm = gmpy2.mpfr(z)
        total = gmpy2.mpfr(0)
        abs_sum = gmpy2.mpfr(0)
        zpow = gmpy2.mpfr(1)
        prev = None
        for j in range(_MAX_TERMS):
            t = zpow * _rgamma_mpfr(alpha, beta, j, prec)
            total += t
            abs_sum += abs(t)
            zpow *= zm
            x = alpha * j + beta
            if x > x_tail and prev is not None and prev != 0:
                ratio = abs(t) / abs(prev)
                if ratio < 1:
                    tail = float(abs(t) * ratio / (1 - ratio))
                    if tail <= target * 1e-2:
                        value = float(total)
                        rounding = float(abs_sum * 4 / gmpy2.mpfr(2) ** prec)
                        return EvalResult(value, tail + rounding + EPS * abs(value))
            prev = t
    raise NonConvergent("extended-precision series did not settle",
                        best=EvalResult(float(total), math.inf))


def _asymptotic(alpha: float, beta: float, z: float, shift: float = 0.0) -> EvalResult:
    """Large-|z| expansion of ``exp(-shift) * E_{alpha,beta}(z)``."""
    az = abs(z)
    w = az ** (1.0 / alpha)
    theta = 0.0 if z > 0 else math.pi
    pole = 0j
    pole_mag = 0.0
    m_max = int(math.ceil(alpha / 2.0)) + 1
    for m in range(-m_max, m_max + 1):
        ang = theta + 2.0 * math.pi * m
        edge = alpha * math.pi
        if abs(ang) <= edge * (1.0 + 1e-14):
            # a pole on the sector edge (odd integer alpha) counts half
            weight = 0.5 if abs(ang) >= edge * (1.0 - 1e-14) else 1.0
            zeta = w * cmath.exp(1j * ang / alpha)
            contrib = weight * zeta ** (1.0 - beta) * cmath.exp(zeta - shift) / alpha
            pole += contrib
            pole_mag += abs(contrib)

    logz = math.log(az)

    def envelope(k: int) -> float:
        # log of an upper bound on |z**-k / Gamma(beta - alpha*k)|
        y = 1.0 - beta + alpha * k
        if y >= 1.0:
            return -k * logz + math.lgamma(y) - math.log(math.pi)
        return -k * logz + _log_abs_rgamma(beta - alpha * k)

    alg = []
    alg_err = 0.0
    # largest magnitude seen so far, in log units before scaling
    log_big = math.log(pole_mag) + shift if pole_mag > 0 else -math.inf
    k = 1
    while True:
        x = beta - alpha * k
        if not is_gamma_pole(x):
            lt = -k * logz - math.lgamma(x)
            if lt - shift > 700.0:
                return EvalResult(math.nan, math.inf)
            sign = -_gamma_sign(x) * (1.0 if (z > 0 or k % 2 == 0) else -1.0)
            term = math.exp(lt - shift)
            log_big = max(log_big, lt)
            alg.append(sign * term)
            y = abs(x) + 1.0
            alg_err += term * (8.0 + y * (math.log(y) + 1.0) + k * logz)
        nxt = envelope(k + 1)
        if 1.0 - beta + alpha * k >= 1.0:
            if nxt >= envelope(k) or nxt < log_big + math.log(1e-3 * EPS):
                break
        k += 1
        if k >= _MAX_TERMS:
            break
    k_stop = k
    alg_sum = math.fsum(alg)
    remainder = 10.0 * math.exp(envelope(k_stop + 1) - shift)
    value = pole.real + alg_sum
    err = 2.0 * (remainder + EPS * (8.0 * pole_mag * (1.0 + w) + alg_err)) + EPS * abs(value)
    return EvalResult(value, err)


def _accept(res: EvalResult, tol: float) -> bool:
    return math.isfinite(res.value) and res.abs_err <= tol * max(1.0, abs(res.value))


def ml_eval_scaled(alpha: float, beta: float, z: float, shift: float = 0.0,
                   tol: float = DEFAULT_TOL) -> EvalResult:
    """Evaluate ``exp(-shift) * E_{alpha,beta}(z)`` without intermediate overflow.

    ``shift`` only matters for large positive ``z``, where the function grows
    like ``exp(z**(1/alpha))``; the forward Laplace integrand uses it to fold
    the ``exp(-s t)`` weight into the exponent.
    """
    MLParams(alpha, beta, z)
    if z == 0.0:
        return EvalResult(rgamma(beta) * math.exp(-shift), 0.0)
    w = abs(z) ** (1.0 / alpha)
    scale = math.exp(-shift)

    if z > 0:
        if w <= _W_POSITIVE_SERIES:
            res = _series_float(alpha, beta, z).scaled(scale)
            if _accept(res, tol):
                return res
            return _series_mpfr(alpha, beta, z, tol).scaled(scale)
        res = _asymptotic(alpha, beta, z, shift)
        if not math.isfinite(res.value):
            raise NonConvergent("E_{alpha,beta}(z) overflows double precision", best=res)
        return res

    candidates = []
    if w <= _W_FLOAT_FIRST:
        res = _series_float(alpha, beta, z)
        if _accept(res, tol):
            return res.scaled(scale)
        candidates.append(res)
    if w >= _W_ASYM_MIN:
        res = _asymptotic(alpha, beta, z)
        if _accept(res, tol):
            return res.scaled(scale)
        candidates.append(res)
    if _W_FLOAT_FIRST < w <= _W_FLOAT_MAX:
        res = _series_float(alpha, beta, z)
        if _accept(res, tol):
            return res.scaled(scale)
        candidates.append(res)
    try:
        res = _series_mpfr(alpha, beta, z, tol)
    except NonConvergent as exc:
        best = min(candidates, key=lambda r: r.abs_err, default=exc.best)
        raise NonConvergent(
            f"cannot certify E_{{{alpha},{beta}}}({z}) to {tol:g}", best=best) from exc
    if not _accept(res, tol):
        raise NonConvergent(f"cannot certify E_{{{alpha},{beta}}}({z}) to {tol:g}", best=res)
    return res.scaled(scale)


def ml_eval(p: MLParams, tol: float = DEFAULT_TOL) -> EvalResult:
    """Two-parameter Mittag-Leffler function ``E_{alpha,beta}(z)``.

    Defined by the power series with ``rgamma`` coefficients, so ``beta <= 0``
    is allowed. Raises :class:`NonConvergent` when no scheme reaches
    ``abs_err <= tol * max(1, |value|)``.
    """
    return ml_eval_scaled(p.alpha, p.beta, p.z, 0.0, tol)


def ml_one_param(alpha: float, z: float, tol: float = DEFAULT_TOL) -> EvalResult:
    """One-parameter Mittag-Leffler function ``E_alpha(z) = E_{alpha,1}(z)``."""
    return ml_eval(MLParams(alpha, 1.0, z), tol)


def rabotnov_eval(alpha: float, sign: int, lam: float, t: float,
                  tol: float = DEFAULT_TOL) -> EvalResult:
    """Rabotnov function ``t**(alpha-1) * E_{alpha,alpha}(sign*lam*t**alpha)``."""
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign!r}")
    if not t > 0:
        raise DomainError(f"t must be > 0, got {t!r}")
    if not lam > 0:
        raise DomainError(f"lambda must be > 0, got {lam!r}")
    res = ml_eval(MLParams(alpha, alpha, sign * lam * t**alpha), tol)
    return res.scaled(t ** (alpha - 1.0))
