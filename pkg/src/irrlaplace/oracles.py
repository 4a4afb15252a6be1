"""Independent numerical references used to check the closed forms.

Two generators live here and share no code with the production paths:

``gl_differintegral``
    Grünwald–Letnikov sum for the Riemann–Liouville differintegral, with one
    Richardson step (h, h/2).
``ml_series_hp``
    the Mittag-Leffler power series in mpmath arithmetic with a term-ratio
    tail bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import mpmath
import numpy as np

from .errors import DomainError, NonConvergent, StepTooCoarse
from .special_functions import EvalResult, MLParams

DEFAULT_STEPS = 2**14


@dataclass(frozen=True)
class GLConfig:
    """Grid for one Grünwald–Letnikov evaluation at ``t``.

    ``q > 0`` differentiates, ``q < 0`` integrates. ``h`` defaults to
    ``t / 2**14``; ``t / h`` must be an integer number of steps, at least 32.
    """

    t: float
    q: float
    h: float | None = None
    richardson: bool = True
    tol: float | None = None

    def __post_init__(self):
        if not self.t > 0:
            raise DomainError(f"t must be > 0, got {self.t!r}")
        if self.h is not None and not self.h > 0:
            raise DomainError(f"h must be > 0, got {self.h!r}")
        n = self.steps
        if n < 32:
            raise DomainError(f"t/h must be at least 32 steps, got {n}")

    @property
    def steps(self) -> int:
        if self.h is None:
            return DEFAULT_STEPS
        ratio = self.t / self.h
        n = round(ratio)
        if abs(ratio - n) > 1e-9 * max(1.0, ratio):
            raise DomainError(f"t/h = {ratio!r} is not an integer")
        return n


def gl_weights(q: float, n: int, dtype=np.longdouble) -> np.ndarray:
    """Coefficients ``(-1)**k * binom(q, k)`` for ``k = 0..n``."""
    k = np.arange(1, n + 1, dtype=dtype)
    w = np.empty(n + 1, dtype=dtype)
    w[0] = 1
    w[1:] = np.cumprod((k - 1 - dtype(q)) / k)
    return w


def _gl_sum(f: Callable[[np.ndarray], np.ndarray], t: float, q: float, n: int) -> tuple[float, float]:
    # extended precision: for q > 2 the sum cancels down to ~h**q of its terms
    ld = np.longdouble
    h = ld(t) / n
    nodes = ld(t) - h * np.arange(n + 1, dtype=ld)
    nodes[-1] = 0
    vals = np.asarray(f(nodes))
    w = gl_weights(q, n)
    scale = h ** ld(-q)
    terms = w * vals
    value = scale * np.sum(terms)
    eps = np.finfo(vals.dtype if vals.dtype.kind == "f" else np.float64).eps
    roundoff = float(scale * np.sum(np.abs(terms))) * float(eps) * 4.0
    return float(value), roundoff


def gl_differintegral(
    f: Callable[[np.ndarray], np.ndarray],
    cfg: GLConfig,
    leading_terms: Sequence[tuple[float, float]] = (),
) -> EvalResult:
    """Approximate ``d^q f / dt^q`` at ``cfg.t`` (lower terminal 0).

    ``f`` must accept a numpy array. ``leading_terms`` is a start correction:
    pairs ``(c, p)`` with ``p > -1`` describing the behaviour
    ``sum c * t**p`` of ``f`` at the origin. Those powers are differintegrated
    exactly and only the remainder goes through the Grünwald–Letnikov sum,
    which restores the scheme's order for singular or non-smooth ``f``.
    """
    t, q, n = cfg.t, cfg.q, cfg.steps
    exact_part = 0.0
    g = f
    terms = [(float(c), float(p)) for c, p in leading_terms]
    if terms:
        for c, p in terms:
            if not p > -1.0:
                raise DomainError(f"leading power {p} is not integrable at 0")
            exact_part += c * math.gamma(p + 1.0) * float(mpmath.rgamma(p + 1.0 - q)) * t ** (p - q)
        eps_t = 1e-12 * t

        def g(x):
            xs = np.where(x > 0, x, eps_t)
            out = np.asarray(f(xs))
            for c, p in terms:
                out = out - c * xs**p
            return out

    coarse, _ = _gl_sum(g, t, q, n)
    fine, roundoff = _gl_sum(g, t, q, 2 * n)
    err = abs(fine - coarse) + 3.0 * roundoff
    # first-order scheme: the h/2 result halves the error, one Richardson step cancels it
    value = 2.0 * fine - coarse if cfg.richardson else coarse
    res = EvalResult(exact_part + value, err)
    if cfg.tol is not None and err > cfg.tol:
        raise StepTooCoarse(f"extrapolation difference {err:.3g} exceeds {cfg.tol:.3g}", best=res)
    return res


def ml_series_hp(p: MLParams, target_tol: float = 1e-14, max_terms: int = 200_000) -> EvalResult:
    """Reference ``E_{alpha,beta}(z)`` from the power series in mpmath.

    The working precision is chosen from the largest term so that rounding
    stays below ``target_tol``; the tail is bounded by a geometric series once
    consecutive term ratios fall below one.
    """
    alpha, beta, z = p.alpha, p.beta, p.z
    if z == 0.0:
        with mpmath.workdps(30):
            return EvalResult(float(mpmath.rgamma(beta)), 0.0)
    az = abs(z)
    w = az ** (1.0 / alpha)
    # log of the largest term: j*log|z| - lgamma(alpha*j + beta), maximised
    j_peak = max(0, int(w / alpha) + 2)
    logs = [j * math.log(az) - math.lgamma(alpha * j + beta)
            for j in range(max(1, j_peak - 50), j_peak + 50) if alpha * j + beta > 0]
    peak = max(logs + [0.0])
    dps = int((peak - math.log(target_tol)) / math.log(10.0)) + 25
    with mpmath.workdps(dps):
        a = mpmath.mpf(alpha)
        b = mpmath.mpf(beta)
        zz = mpmath.mpf(z)
        total = mpmath.mpf(0)
        mags = mpmath.mpf(0)
        prev = None
        zpow = mpmath.mpf(1)
        for j in range(max_terms):
            x = a * j + b
            if x <= 0 and abs(x - mpmath.nint(x)) < mpmath.mpf("1e-12"):
                term = mpmath.mpf(0)
            else:
                term = zpow * mpmath.rgamma(x)
            total += term
            mags += abs(term)
            zpow *= zz
            if x > w + 2 and x > 2 and prev:
                ratio = abs(term / prev)
                if ratio < 1:
                    tail = abs(term) * ratio / (1 - ratio)
                    if tail < mpmath.mpf(target_tol) / 100:
                        rounding = mags * mpmath.mpf(10) ** (-dps) * (j + 1)
                        err = float(tail + rounding) + 2.3e-16 * abs(float(total))
                        res = EvalResult(float(total), err)
                        if err > target_tol * max(1.0, abs(res.value)):
                            raise NonConvergent("reference series could not certify", best=res)
                        return res
            prev = term
    raise NonConvergent("reference series did not converge",
                        best=EvalResult(float(total), math.inf))
