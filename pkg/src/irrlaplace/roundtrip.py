"""Round-trip check: ``forward_laplace(invert(e), s)`` against the analytic ``e(s)``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import IrrLaplaceError
from .inversion import Family, LaplaceExpr, forward_laplace, invert

ALPHA_RANGE = (0.3, 2.0)
LAMBDA_RANGE = (0.25, 4.0)
Q_RANGE = (0.0, 3.5)
BAND = 0.05
REL_TOL = 1e-4


@dataclass(frozen=True)
class CaseResult:
    expr: LaplaceExpr
    s: float
    expected: float
    got: float
    abs_err: float
    error: str = ""

    @property
    def rel_err(self) -> float:
        if self.error:
            return math.inf
        return abs(self.got - self.expected) / abs(self.expected)

    def passed(self, tol: float = REL_TOL) -> bool:
        return self.rel_err <= tol


def _near_band(e: LaplaceExpr) -> bool:
    if e.family is Family.BINOMIAL:
        j = round(e.q / e.alpha)
        return j >= 1 and abs(e.q - j * e.alpha) < BAND
    if e.family is Family.SHIFTED:
        k = round(e.q - e.alpha)
        return k >= 0 and abs(e.q - e.alpha - k) < BAND
    return False


def sample_cases(seed: int, n: int) -> list[LaplaceExpr]:
    """``n`` expressions cycling through the three families; bands near poles are resampled."""
    rng = np.random.default_rng(seed)
    families = [Family.BINOMIAL, Family.SHIFTED, Family.MONO]
    out = []
    i = 0
    while len(out) < n:
        fam = families[i % 3]
        q = float(rng.uniform(*Q_RANGE))
        alpha = float(rng.uniform(*ALPHA_RANGE))
        lam = float(rng.uniform(*LAMBDA_RANGE))
        sign = int(rng.choice([-1, 1]))
        e = LaplaceExpr(fam, q, 1.0, alpha, sign, lam)
        if _near_band(e):
            continue
        out.append(e)
        i += 1
    return out


def s_points(e: LaplaceExpr) -> tuple[float, float, float]:
    # shifted by the abscissa so growing responses stay transformable
    c = max(e.lam, e.abscissa())
    return (c + 1.0, 2.0 * c + 1.0, 5.0 * c + 3.0)


def check_expr(e: LaplaceExpr) -> list[CaseResult]:
    f = invert(e)
    results = []
    for s in s_points(e):
        expected = e.value(s)
        try:
            r = forward_laplace(f, s)
            results.append(CaseResult(e, s, expected, r.value, r.abs_err))
        except IrrLaplaceError as exc:
            results.append(CaseResult(e, s, expected, math.nan, math.inf,
                                      f"{type(exc).__name__}: {exc}"))
    return results


def run(seed: int, cases: int, tol: float = REL_TOL) -> tuple[list[CaseResult], str]:
    """Check ``cases`` sampled expressions; returns results and a deterministic report."""
    results = []
    for e in sample_cases(seed, cases):
        results.extend(check_expr(e))
    failures = [r for r in results if not r.passed(tol)]
    worst = max((r.rel_err for r in results), default=0.0)
    lines = [
        f"round-trip verification: seed={seed} cases={cases} points={len(results)}",
        f"tolerance: {tol:.3g}",
        f"max relative error: {worst:.6e}",
        f"failures: {len(failures)}",
    ]
    for r in failures:
        e = r.expr
        detail = r.error or f"rel_err={r.rel_err:.6e}"
        lines.append(f"FAIL family={e.family.value} q={e.q!r} alpha={e.alpha!r} "
                     f"sign={e.sign:+d} lambda={e.lam!r} s={r.s!r} {detail}")
    lines.append("PASS" if not failures else "FAIL")
    return results, "\n".join(lines) + "\n"
