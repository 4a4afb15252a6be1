"""Generalized functions on ``t >= 0``: weighted delta derivatives plus regular terms.

A :class:`GeneralizedFunction` is a sum of

* singular terms ``c * d^mu delta(t-0) / dt^mu`` (``mu >= 0``), and
* regular terms of four kinds:

  - :class:`MLTerm`        ``c * t**t_power * E_{alpha,beta}(sign*lam*t**alpha)``
  - :class:`PowerTerm`     ``c * t**p``
  - :class:`ExpPowerTerm`  ``c * t**p * exp(sign*lam*t)``
  - :class:`ShiftedPowerTerm`  the regular remainder of
    ``c/Gamma(alpha) * d^q/dt^q [t**(alpha-1) * exp(sign*lam*t)]`` once its
    delta-derivative part has been split off.

For ``t > 0`` a singular term of non-integer order has the pointwise form
``c / (Gamma(-mu) * t**(mu+1))``; for integer order that form is zero.

Text rendering
--------------
:func:`format_gf` writes terms in order (singular by decreasing order, then
regular in insertion order), joined by `` + `` / `` − ``. Numbers use the
shortest round-trip repr, integral values without a decimal point, U+2212
for negative signs::

    δ(t)                              order-0 singular term
    d^{mu}δ(t)/dt^{mu}                singular term
    c·d^{mu}δ(t)/dt^{mu}              singular term, |c| != 1
    c·t^{p}·E_{a,b}(±lam·t^{a})       MLTerm
    c·t^{p}                           PowerTerm
    c·t^{p}·e^{±lam·t}                ExpPowerTerm
    c·D^{q}[t^{a−1}·e^{±lam·t}]/Γ(a)|_{k≥K}   ShiftedPowerTerm

:func:`parse_gf` inverts :func:`format_gf` exactly.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from typing import Union

from .errors import DomainError
from .special_functions import (
    DEFAULT_TOL,
    EPS,
    EvalResult,
    is_gamma_pole,
    ml_eval_scaled,
    rgamma,
)


def _check_sign(sign: int) -> None:
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign!r}")


@dataclass(frozen=True)
class SingularTerm:
    """``coeff * d^order delta(t-0) / dt^order``."""

    coeff: float
    order: float

    def __post_init__(self):
        if not self.order >= 0 or not math.isfinite(self.order):
            raise DomainError(f"delta-derivative order must be >= 0, got {self.order!r}")

    def key(self) -> tuple:
        return ("delta", self.order)

    def with_coeff(self, c: float) -> SingularTerm:
        return replace(self, coeff=c)

    @property
    def is_integer_order(self) -> bool:
        return self.order == math.floor(self.order)


@dataclass(frozen=True)
class MLTerm:
    """``coeff * t**t_power * E_{alpha,beta}(sign*lam*t**alpha)``."""

    coeff: float
    alpha: float
    beta: float
    sign: int
    lam: float
    t_power: float

    def __post_init__(self):
        _check_sign(self.sign)
        if not self.alpha > 0:
            raise DomainError(f"alpha must be > 0, got {self.alpha!r}")
        if not self.lam >= 0:
            raise DomainError(f"lambda must be >= 0, got {self.lam!r}")

    def key(self) -> tuple:
        return ("ml", self.alpha, self.beta, self.sign, self.lam, self.t_power)

    def with_coeff(self, c: float) -> MLTerm:
        return replace(self, coeff=c)

    def small_t_exponent(self) -> float:
        return self.t_power

    def growth_rate(self) -> float:
        # real part of the rightmost pole of s**(alpha-beta)/(s**alpha - sign*lam)
        w = self.lam ** (1.0 / self.alpha)
        if self.sign > 0:
            return w
        return max(0.0, w * math.cos(math.pi / self.alpha)) if self.alpha > 2 else 0.0

    def eval_scaled(self, t: float, shift: float = 0.0, tol: float = DEFAULT_TOL) -> EvalResult:
        z = self.sign * self.lam * t**self.alpha
        inner = ml_eval_scaled(self.alpha, self.beta, z, shift, tol)
        return inner.scaled(self.coeff * t**self.t_power)


@dataclass(frozen=True)
class PowerTerm:
    """``coeff * t**p``."""

    coeff: float
    p: float

    def key(self) -> tuple:
        return ("power", self.p)

    def with_coeff(self, c: float) -> PowerTerm:
        return replace(self, coeff=c)

    def small_t_exponent(self) -> float:
        return self.p

    def growth_rate(self) -> float:
        return 0.0

    def eval_scaled(self, t: float, shift: float = 0.0, tol: float = DEFAULT_TOL) -> EvalResult:
        v = self.coeff * t**self.p * math.exp(-shift)
        return EvalResult(v, 4.0 * EPS * abs(v))


@dataclass(frozen=True)
class ExpPowerTerm:
    """``coeff * t**p * exp(sign*lam*t)``."""

    coeff: float
    p: float
    sign: int
    lam: float

    def __post_init__(self):
        _check_sign(self.sign)
        if not self.lam >= 0:
            raise DomainError(f"lambda must be >= 0, got {self.lam!r}")

    def key(self) -> tuple:
        return ("exppower", self.p, self.sign, self.lam)

    def with_coeff(self, c: float) -> ExpPowerTerm:
        return replace(self, coeff=c)

    def small_t_exponent(self) -> float:
        return self.p

    def growth_rate(self) -> float:
        return self.lam if self.sign > 0 else 0.0

    def eval_scaled(self, t: float, shift: float = 0.0, tol: float = DEFAULT_TOL) -> EvalResult:
        expo = self.sign * self.lam * t - shift
        v = self.coeff * t**self.p * math.exp(expo)
        return EvalResult(v, (4.0 + abs(expo)) * EPS * abs(v))


@dataclass(frozen=True)
class ShiftedPowerTerm:
    """Regular part of ``coeff/Gamma(alpha) * d^q/dt^q [t**(alpha-1) exp(sign*lam*t)]``.

    The full derivative expands as ``sum_k a_k t**(alpha-q+k-1)`` with
    ``a_k = (alpha)_k (sign*lam)**k / (k! Gamma(alpha-q+k))``; the first
    ``skip`` terms are delta derivatives and are carried separately as
    singular terms. This term is the sum over ``k >= skip``.
    """

    coeff: float
    alpha: float
    q: float
    sign: int
    lam: float
    skip: int

    def __post_init__(self):
        _check_sign(self.sign)
        if not self.alpha > 0:
            raise DomainError(f"alpha must be > 0, got {self.alpha!r}")
        if not self.lam >= 0:
            raise DomainError(f"lambda must be >= 0, got {self.lam!r}")
        if self.skip < 0:
            raise DomainError("skip must be >= 0")
        if not self.alpha - self.q + self.skip > 0:
            raise DomainError("the retained series must start with an integrable power")

    def key(self) -> tuple:
        return ("shifted", self.alpha, self.q, self.sign, self.lam, self.skip)

    def with_coeff(self, c: float) -> ShiftedPowerTerm:
        return replace(self, coeff=c)

    def small_t_exponent(self) -> float:
        return self.alpha - self.q + self.skip - 1.0

    def growth_rate(self) -> float:
        return self.lam if self.sign > 0 else 0.0

    def _direct(self, t: float, shift: float) -> EvalResult:
        # sum_{k>=skip} (alpha)_k/k! (sign*u)^k / Gamma(b+k) * t**(b-1), u = lam*t
        a, b, K = self.alpha, self.alpha - self.q, self.skip
        u = self.lam * t
        if u == 0.0:
            if K == 0:
                v = rgamma(b) * t ** (b - 1.0) * math.exp(-shift)
                return EvalResult(v, 4 * EPS * abs(v))
            return EvalResult(0.0, 0.0)
        log_r = (math.lgamma(a + K) - math.lgamma(a) - math.lgamma(K + 1.0)
                 + K * math.log(u) - math.lgamma(b + K) - shift)
        r = math.exp(log_r)
        terms = []
        mags = 0.0
        k = K
        while True:
            term = r if (self.sign > 0 or k % 2 == 0) else -r
            terms.append(term)
            mags += abs(term) * (k + 1)
            ratio = u * (a + k) / ((k + 1.0) * (b + k))
            if k > u and ratio < 1.0:
                tail = r * ratio / (1.0 - ratio)
                if tail <= 1e-3 * EPS * max(mags, 1e-300) or tail < 1e-300:
                    break
            r *= ratio
            k += 1
            if k > K + 100_000:
                tail = math.inf
                break
        pw = t ** (b - 1.0)
        v = math.fsum(terms) * pw
        return EvalResult(v, (8.0 * EPS * mags + tail) * pw + EPS * abs(v))

    def _kummer(self, t: float, shift: float) -> EvalResult:
        # decaying case: full series = t**(b-1) e^{-u} sum (-q)_k/k! u^k / Gamma(b+k)
        # (Kummer's transformation); subtract the delta-derivative values.
        a, b, K, q = self.alpha, self.alpha - self.q, self.skip, self.q
        u = self.lam * t
        terms = []
        mags = 0.0
        poch = 1.0  # (-q)_k / k!
        k = 0
        tail = 0.0
        while True:
            term = poch * u**k * rgamma(b + k) if k < K + 2 else None
            if term is None:
                break
            terms.append(term)
            mags += abs(term)
            poch *= (-q + k) / (k + 1.0)
            k += 1
        # k = K + 2 onwards: b + k > 0, continue by recurrence
        r = terms[-1] if terms else 0.0
        k0 = k - 1
        kk = k0
        while True:
            ratio = u * (-q + kk) / ((kk + 1.0) * (b + kk))
            r *= ratio
            kk += 1
            if r == 0.0 and kk > u:
                break
            terms.append(r)
            mags += abs(r) * (kk - k0 + 1)
            if kk > u + 1 and abs(ratio) < 1.0:
                tail = abs(r) * abs(ratio) / (1.0 - abs(ratio))
                if tail <= 1e-3 * EPS * max(mags, 1e-300):
                    break
            if kk > k0 + 100_000:
                tail = math.inf
                break
        scale = math.exp(-u - shift)
        full = math.fsum(terms) * scale
        full_err = (8.0 * EPS * mags + tail) * scale
        sing = []
        c = 1.0  # (alpha)_k (-1)^k / k!
        for k in range(K):
            sing.append(c * u**k * rgamma(b + k) * math.exp(-shift))
            c *= -(a + k) / (k + 1.0)
        sing_sum = math.fsum(sing)
        pw = t ** (b - 1.0)
        v = (full - sing_sum) * pw
        err = (full_err + 8.0 * EPS * math.fsum(abs(x) for x in sing)) * pw + EPS * abs(v)
        return EvalResult(v, err)

    def eval_scaled(self, t: float, shift: float = 0.0, tol: float = DEFAULT_TOL) -> EvalResult:
        if self.sign < 0 and self.lam * t > 2.0:
            res = self._kummer(t, shift)
        else:
            res = self._direct(t, shift)
        return res.scaled(self.coeff)


RegularTerm = Union[MLTerm, PowerTerm, ExpPowerTerm, ShiftedPowerTerm]
Term = Union[SingularTerm, RegularTerm]


@dataclass(frozen=True)
class GeneralizedFunction:
    """Singular part plus regular part; both are tuples of immutable terms."""

    singular: tuple[SingularTerm, ...] = ()
    regular: tuple[RegularTerm, ...] = ()
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "singular", tuple(self.singular))
        object.__setattr__(self, "regular", tuple(self.regular))
        object.__setattr__(self, "notes", tuple(self.notes))

    def scale(self, c: float) -> GeneralizedFunction:
        return GeneralizedFunction(
            tuple(s.with_coeff(c * s.coeff) for s in self.singular),
            tuple(r.with_coeff(c * r.coeff) for r in self.regular),
            self.notes,
        )

    def __add__(self, other: GeneralizedFunction) -> GeneralizedFunction:
        return GeneralizedFunction(self.singular + other.singular,
                                   self.regular + other.regular,
                                   self.notes + other.notes)

    def is_zero(self) -> bool:
        return not self.singular and not self.regular


def _check_t(t: float) -> None:
    if not t > 0 or not math.isfinite(t):
        raise DomainError(f"pointwise evaluation needs finite t > 0, got {t!r}")


def eval_regular_part(f: GeneralizedFunction, t: float, tol: float = DEFAULT_TOL) -> EvalResult:
    """Sum of the regular terms at ``t > 0``; singular terms are excluded."""
    _check_t(t)
    total = EvalResult(0.0, 0.0)
    for term in f.regular:
        total = total + term.eval_scaled(t, 0.0, tol)
    return total


def eval_singular_as_function(term: SingularTerm, t: float) -> float:
    """Pointwise value ``coeff / (Gamma(-order) t**(order+1))`` for ``t > 0``.

    Zero for integer orders: ``delta`` and its integer derivatives vanish
    away from the origin.
    """
    _check_t(t)
    r = rgamma(-term.order)
    if r == 0.0:
        return 0.0
    return term.coeff * r / t ** (term.order + 1.0)


def eval_pointwise(f: GeneralizedFunction, t: float, tol: float = DEFAULT_TOL) -> EvalResult:
    """Regular part plus the pointwise form of every singular term, at ``t > 0``."""
    reg = eval_regular_part(f, t, tol)
    sing = [eval_singular_as_function(s, t) for s in f.singular]
    s_sum = math.fsum(sing)
    return EvalResult(reg.value + s_sum,
                      reg.abs_err + 8.0 * EPS * math.fsum(abs(x) for x in sing))


def simplify(f: GeneralizedFunction) -> GeneralizedFunction:
    """Merge terms with bit-identical parameters, drop zeros, order the singular part."""
    sing: dict[tuple, float] = {}
    for s in f.singular:
        sing[s.key()] = sing.get(s.key(), 0.0) + s.coeff
    singular = [SingularTerm(c, k[1]) for k, c in sing.items() if c != 0.0]
    singular.sort(key=lambda s: -s.order)

    merged: dict[tuple, RegularTerm] = {}
    for r in f.regular:
        k = r.key()
        if k in merged:
            merged[k] = merged[k].with_coeff(merged[k].coeff + r.coeff)
        else:
            merged[k] = r
    regular = [r for r in merged.values() if r.coeff != 0.0]
    return GeneralizedFunction(tuple(singular), tuple(regular), f.notes)


# ---------------------------------------------------------------- rendering

_MINUS = "−"


def _num(x: float) -> str:
    if x == math.floor(x) and abs(x) < 1e15:
        s = str(int(x))
    else:
        s = repr(float(x))
    return s.replace("-", _MINUS)


def _signed_lam(sign: int, lam: float) -> str:
    return (_MINUS if sign < 0 else "") + _num(lam)


def _render_body(term: Term) -> str:
    if isinstance(term, SingularTerm):
        if term.order == 0:
            return "δ(t)"
        o = _num(term.order)
        return f"d^{{{o}}}δ(t)/dt^{{{o}}}"
    if isinstance(term, MLTerm):
        return (f"t^{{{_num(term.t_power)}}}·E_{{{_num(term.alpha)},{_num(term.beta)}}}"
                f"({_signed_lam(term.sign, term.lam)}·t^{{{_num(term.alpha)}}})")
    if isinstance(term, PowerTerm):
        return f"t^{{{_num(term.p)}}}"
    if isinstance(term, ExpPowerTerm):
        return f"t^{{{_num(term.p)}}}·e^{{{_signed_lam(term.sign, term.lam)}·t}}"
    if isinstance(term, ShiftedPowerTerm):
        a = _num(term.alpha)
        return (f"D^{{{_num(term.q)}}}[t^{{{a}{_MINUS}1}}·e^{{{_signed_lam(term.sign, term.lam)}·t}}]"
                f"/Γ({a})|_{{k≥{term.skip}}}")
    raise TypeError(f"unknown term {term!r}")


def format_gf(f: GeneralizedFunction) -> str:
    """Deterministic text form; see the module docstring for the grammar."""
    parts = []
    for term in (*f.singular, *f.regular):
        mag = abs(term.coeff)
        body = _render_body(term)
        if isinstance(term, SingularTerm) and mag == 1.0:
            text = body
        else:
            text = f"{_num(mag)}·{body}"
        neg = math.copysign(1.0, term.coeff) < 0
        if not parts:
            parts.append((_MINUS if neg else "") + text)
        else:
            parts.append((f" {_MINUS} " if neg else " + ") + text)
    return "".join(parts) if parts else "0"


_NUM = r"−?(?:[0-9.]+(?:e[−+]?[0-9]+)?|inf|nan)"
_TERM_PATTERNS = [
    ("delta0", re.compile(r"δ\(t\)")),
    ("delta", re.compile(rf"d\^\{{(?P<o>{_NUM})\}}δ\(t\)/dt\^\{{(?P=o)\}}")),
    ("ml", re.compile(rf"t\^\{{(?P<tp>{_NUM})\}}·E_\{{(?P<a>{_NUM}),(?P<b>{_NUM})\}}"
                      rf"\((?P<sl>{_NUM})·t\^\{{(?P=a)\}}\)")),
    ("exppower", re.compile(rf"t\^\{{(?P<p>{_NUM})\}}·e\^\{{(?P<sl>{_NUM})·t\}}")),
    ("shifted", re.compile(rf"D\^\{{(?P<q>{_NUM})\}}\[t\^\{{(?P<a>{_NUM})−1\}}"
                           rf"·e\^\{{(?P<sl>{_NUM})·t\}}\]/Γ\((?P=a)\)\|_\{{k≥(?P<k>[0-9]+)\}}")),
    ("power", re.compile(rf"t\^\{{(?P<p>{_NUM})\}}")),
]


def _parse_num(s: str) -> float:
    return float(s.replace(_MINUS, "-"))


def _split_signed_lam(s: str) -> tuple[int, float]:
    v = _parse_num(s)
    return (-1 if s.startswith(_MINUS) else 1), abs(v)


def parse_gf(text: str) -> GeneralizedFunction:
    """Inverse of :func:`format_gf`."""
    text = text.strip()
    if text == "0":
        return GeneralizedFunction()
    singular: list[SingularTerm] = []
    regular: list[RegularTerm] = []
    pos = 0
    first = True
    while pos < len(text):
        sign = 1.0
        if first:
            if text.startswith(_MINUS, pos):
                sign = -1.0
                pos += 1
        else:
            if text.startswith(f" {_MINUS} ", pos):
                sign = -1.0
            elif not text.startswith(" + ", pos):
                raise ValueError(f"expected term separator at {pos}: {text[pos:pos + 20]!r}")
            pos += 3
        first = False
        coeff = 1.0
        m = re.compile(rf"({_NUM})·").match(text, pos)
        if m and not text.startswith("t^", pos):
            coeff = _parse_num(m.group(1))
            pos = m.end()
        for kind, pat in _TERM_PATTERNS:
            m = pat.match(text, pos)
            if m is None:
                continue
            end = m.end()
            if end < len(text) and not text.startswith((" + ", f" {_MINUS} "), end):
                continue
            c = sign * coeff
            if kind == "delta0":
                singular.append(SingularTerm(c, 0.0))
            elif kind == "delta":
                singular.append(SingularTerm(c, _parse_num(m["o"])))
            elif kind == "ml":
                sg, lam = _split_signed_lam(m["sl"])
                regular.append(MLTerm(c, _parse_num(m["a"]), _parse_num(m["b"]), sg, lam,
                                      _parse_num(m["tp"])))
            elif kind == "exppower":
                sg, lam = _split_signed_lam(m["sl"])
                regular.append(ExpPowerTerm(c, _parse_num(m["p"]), sg, lam))
            elif kind == "shifted":
                sg, lam = _split_signed_lam(m["sl"])
                regular.append(ShiftedPowerTerm(c, _parse_num(m["a"]), _parse_num(m["q"]),
                                                sg, lam, int(m["k"])))
            else:
                regular.append(PowerTerm(c, _parse_num(m["p"])))
            pos = end
            break
        else:
            raise ValueError(f"cannot parse term at {pos}: {text[pos:pos + 30]!r}")
    return GeneralizedFunction(tuple(singular), tuple(regular))


def term_to_dict(term: Term) -> dict:
    """JSON-ready mapping with a fixed key order."""
    if isinstance(term, SingularTerm):
        return {"kind": "delta", "coeff": term.coeff, "order": term.order}
    if isinstance(term, MLTerm):
        return {"kind": "ml", "coeff": term.coeff, "alpha": term.alpha, "beta": term.beta,
                "sign": term.sign, "lambda": term.lam, "t_power": term.t_power}
    if isinstance(term, PowerTerm):
        return {"kind": "power", "coeff": term.coeff, "p": term.p}
    if isinstance(term, ExpPowerTerm):
        return {"kind": "exppower", "coeff": term.coeff, "p": term.p,
                "sign": term.sign, "lambda": term.lam}
    if isinstance(term, ShiftedPowerTerm):
        return {"kind": "shifted", "coeff": term.coeff, "alpha": term.alpha, "q": term.q,
                "sign": term.sign, "lambda": term.lam, "skip": term.skip}
    raise TypeError(f"unknown term {term!r}")


def to_dict(f: GeneralizedFunction) -> dict:
    return {
        "text": format_gf(f),
        "singular": [term_to_dict(s) for s in f.singular],
        "regular": [term_to_dict(r) for r in f.regular],
        "notes": list(f.notes),
    }


__all__ = [
    "SingularTerm", "MLTerm", "PowerTerm", "ExpPowerTerm", "ShiftedPowerTerm",
    "RegularTerm", "GeneralizedFunction", "eval_regular_part", "eval_singular_as_function",
    "eval_pointwise", "simplify", "format_gf", "parse_gf", "to_dict", "term_to_dict",
    "is_gamma_pole",
]
