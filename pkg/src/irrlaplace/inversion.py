"""Inverse Laplace transforms of ``s**q``, ``s**q/(s -+ lam)**alpha`` and ``s**q/(s**alpha -+ lam)``.

Sign convention: ``LaplaceExpr.sign`` is the sign of ``lam`` in the time
domain, so the Laplace-side denominator is ``s**alpha - sign*lam`` (or
``(s - sign*lam)**alpha``). ``sign=-1`` gives decaying responses.

Singularity extraction for the binomial family repeatedly applies
``s**q/(s**a - c) = s**(q-a) + c * s**(q-a)/(s**a - c)`` until the
remaining numerator exponent is below ``a``. Each peeled ``s**mu`` with
``mu >= 0`` is a delta derivative of order ``mu``; the remainder inverts
to ``t**(beta-1) E_{a,beta}(c t**a)`` with ``beta in (0, a]``.

The shifted family expands ``(s - c)**-a`` binomially in ``c/s``; powers
``s**(q-a-k)`` with a non-negative exponent become delta derivatives, the
rest is kept as one :class:`ShiftedPowerTerm`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from scipy import integrate

from .errors import DivergentTransform, DomainError, QuadratureFailure, UnsupportedExpr
from .generalized_functions import (
    ExpPowerTerm,
    GeneralizedFunction,
    MLTerm,
    PowerTerm,
    RegularTerm,
    ShiftedPowerTerm,
    SingularTerm,
    simplify,
)
from .special_functions import EPS, EvalResult, rgamma

NEAR_MULTIPLE = 1e-9


class Family(str, Enum):
    MONO = "mono"
    SHIFTED = "shifted"
    BINOMIAL = "binomial"


@dataclass(frozen=True)
class LaplaceExpr:
    """``mu * s**q`` (mono), ``mu * s**q/(s - sign*lam)**alpha`` (shifted) or
    ``mu * s**q/(s**alpha - sign*lam)`` (binomial)."""

    family: Family
    q: float
    mu: float = 1.0
    alpha: float = 1.0
    sign: int = -1
    lam: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        for name in ("q", "mu", "alpha", "lam"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if not self.q >= 0:
            raise DomainError(f"q must be >= 0, got {self.q!r}")
        if self.family is not Family.MONO:
            if not self.alpha > 0:
                raise DomainError(f"alpha must be > 0, got {self.alpha!r}")
            if self.sign not in (1, -1):
                raise DomainError(f"sign must be +1 or -1, got {self.sign!r}")
            if not self.lam >= 0:
                raise DomainError(f"lambda must be >= 0, got {self.lam!r}")

    def scaled(self, c: float) -> LaplaceExpr:
        return LaplaceExpr(self.family, self.q, c * self.mu, self.alpha, self.sign, self.lam)

    def abscissa(self) -> float:
        """Largest real part among the singularities of the transform."""
        if self.family is Family.MONO or self.lam == 0:
            return 0.0
        if self.family is Family.SHIFTED:
            return self.lam if self.sign > 0 else 0.0
        root = self.lam ** (1.0 / self.alpha)
        if self.sign > 0:
            return root
        return root * math.cos(math.pi / self.alpha) if self.alpha > 2 else 0.0

    def value(self, s: float) -> float:
        """The Laplace-side function at real ``s`` above the abscissa."""
        if not s > 0:
            raise DomainError(f"s must be > 0, got {s!r}")
        if self.family is Family.MONO:
            return self.mu * s**self.q
        c = self.sign * self.lam
        if self.family is Family.SHIFTED:
            if s - c <= 0:
                raise DomainError(f"s={s} lies left of the pole at {c}")
            return self.mu * s**self.q / (s - c) ** self.alpha
        den = s**self.alpha - c
        if den <= 0:
            raise DomainError(f"s={s} lies left of the real pole")
        return self.mu * s**self.q / den


def _snap_order(x: float) -> float:
    return 0.0 if abs(x) < NEAR_MULTIPLE else x


def _power_inverse(mu: float, e: float) -> GeneralizedFunction:
    # inverse of mu * s**e for real e
    if e >= -NEAR_MULTIPLE:
        return GeneralizedFunction((SingularTerm(mu, max(0.0, _snap_order(e))),))
    return GeneralizedFunction(regular=(PowerTerm(mu * rgamma(-e), -e - 1.0),))


def _invert_binomial(e: LaplaceExpr) -> GeneralizedFunction:
    a, q, c = e.alpha, e.q, e.sign * e.lam
    ratio = q / a
    n = math.floor(ratio)
    notes = []
    if abs(q - round(ratio) * a) < NEAR_MULTIPLE:
        n = round(ratio)
        if n >= 1:
            q = n * a
            notes.append(f"exact multiple q = {n}*alpha: order-0 delta term kept, beta = alpha")
    singular = []
    for j in range(1, n + 1):
        order = 0.0 if j == n and q == n * a else _snap_order(q - j * a)
        singular.append(SingularTerm(e.mu * c ** (j - 1), order))
    beta = a if q == n * a else (n + 1) * a - q
    reg = MLTerm(e.mu * c**n, a, beta, e.sign, e.lam, beta - 1.0)
    return GeneralizedFunction(tuple(singular), (reg,), tuple(notes))


def _invert_shifted(e: LaplaceExpr) -> GeneralizedFunction:
    a, q, c = e.alpha, e.q, e.sign * e.lam
    if a == 1.0:
        # s**q/(s - c) is the binomial family with alpha = 1
        return _invert_binomial(e)
    if q == 0.0:
        return GeneralizedFunction(regular=(ExpPowerTerm(e.mu * rgamma(a), a - 1.0, e.sign, e.lam),))
    top = q - a
    K = math.floor(top + NEAR_MULTIPLE) + 1 if top >= -NEAR_MULTIPLE else 0
    singular = []
    coef = 1.0  # (a)_k c**k / k!
    for k in range(K):
        singular.append(SingularTerm(e.mu * coef, max(0.0, _snap_order(top - k))))
        coef *= (a + k) * c / (k + 1.0)
    notes = ()
    if K and abs(top - (K - 1)) < NEAR_MULTIPLE:
        # keep the retained series strictly integrable
        q = a + K - 1
        notes = (f"exact multiple q = alpha + {K - 1}: order-0 delta term kept",)
    reg = ShiftedPowerTerm(e.mu, a, q, e.sign, e.lam, K)
    return GeneralizedFunction(tuple(singular), (reg,), notes)


def invert(e: LaplaceExpr) -> GeneralizedFunction:
    """Inverse Laplace transform as a simplified generalized function."""
    if e.family is Family.MONO:
        out = GeneralizedFunction((SingularTerm(e.mu, _snap_order(e.q)),))
    elif e.lam == 0.0:
        # no pole shift: s**q/s**alpha is a monomial (or power law)
        out = _power_inverse(e.mu, e.q - e.alpha)
    elif e.family is Family.BINOMIAL:
        out = _invert_binomial(e)
    elif e.family is Family.SHIFTED:
        out = _invert_shifted(e)
    else:  # pragma: no cover
        raise UnsupportedExpr(f"unknown family {e.family!r}")
    return simplify(out)


def frac_derivative_power_law(alpha: float, q: float) -> PowerTerm | SingularTerm:
    """Riemann-Liouville ``d^q t**(alpha-1) / dt^q``.

    Below ``q = alpha`` this is ``Gamma(alpha)/Gamma(alpha-q) t**(alpha-1-q)``;
    from ``q = alpha`` on the transform ``Gamma(alpha) s**(q-alpha)`` is a
    delta derivative of order ``q - alpha`` (``delta`` itself at ``q = alpha``).
    """
    if not alpha > 0:
        raise DomainError(f"alpha must be > 0, got {alpha!r}")
    if not q >= 0:
        raise DomainError(f"q must be >= 0, got {q!r}")
    if q - alpha > -NEAR_MULTIPLE:
        return SingularTerm(math.gamma(alpha), max(0.0, _snap_order(q - alpha)))
    return PowerTerm(math.gamma(alpha) * rgamma(alpha - q), alpha - 1.0 - q)


# ---------------------------------------------------------------- forward transform

_QUAD_REL = 1e-11
_MAX_CHUNKS = 400


def abscissa_of(f: GeneralizedFunction) -> float:
    return max((r.growth_rate() for r in f.regular), default=0.0)


def _quad(fun, a: float, b: float) -> tuple[float, float]:
    val, err, *_ = integrate.quad(fun, a, b, epsabs=0.0, epsrel=_QUAD_REL, limit=200,
                                  full_output=1)
    if not (math.isfinite(val) and math.isfinite(err)):
        raise QuadratureFailure(f"non-finite integral on [{a}, {b}]")
    return val, err


def _laplace_regular(term: RegularTerm, s: float) -> EvalResult:
    p = term.small_t_exponent()
    if not p > -1.0:
        raise DivergentTransform(f"t**{p} is not integrable at the origin")
    nu = p + 1.0
    t1 = 1.0 / s

    def head(u):
        t = u ** (1.0 / nu)
        return term.eval_scaled(t, s * t).value / t**p / nu

    total, err = _quad(head, 0.0, t1**nu)
    mags = abs(total)
    excess = s - term.growth_rate()
    a = t1
    for _ in range(_MAX_CHUNKS):
        b = 2.0 * a
        val, e = _quad(lambda t: term.eval_scaled(t, s * t).value, a, b)
        total += val
        err += e
        mags += abs(val)
        a = b
        if a * excess > 40.0 and abs(val) <= 1e-14 * mags:
            break
    else:
        raise QuadratureFailure(f"tail of {term!r} did not settle at s={s}")
    if not math.isfinite(total):
        raise QuadratureFailure(f"non-finite Laplace integral for {term!r} at s={s}")
    return EvalResult(total, err + 1e-12 * mags)


def forward_laplace(f: GeneralizedFunction, s: float) -> EvalResult:
    """``sum coeff * s**order`` over delta derivatives plus quadrature of the regular part."""
    if not s > 0 or not math.isfinite(s):
        raise DomainError(f"s must be finite and > 0, got {s!r}")
    absc = abscissa_of(f)
    if s <= absc:
        raise DivergentTransform(f"s={s} is not above the abscissa of convergence {absc}")
    sing = [t.coeff * s**t.order for t in f.singular]
    total = EvalResult(math.fsum(sing), 4.0 * EPS * math.fsum(abs(x) for x in sing))
    for term in f.regular:
        total = total + _laplace_regular(term, s)
    return total


__all__ = [
    "Family", "LaplaceExpr", "invert", "frac_derivative_power_law", "forward_laplace",
    "abscissa_of", "NEAR_MULTIPLE",
]
