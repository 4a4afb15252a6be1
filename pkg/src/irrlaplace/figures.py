"""Tabulated data behind the three figures; each builder returns a header and rows."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .generalized_functions import SingularTerm, eval_pointwise, eval_singular_as_function
from .inversion import Family, LaplaceExpr, invert
from .special_functions import DEFAULT_TOL, ml_one_param, rabotnov_eval

FIG1_Q = (0.1, 0.3, 0.5, 0.7, 0.9, 1.5)
FIG2_ALPHA = (0.25, 0.5, 0.75, 1.0, 1.5, 2.0)
FIG3_Q = (1.3, 1.7, 1.9, 1.99, 2.01, 2.1, 2.3, 2.7)
DEFAULT_POINTS = 400
DEFAULT_T_MAX = 10.0


@dataclass(frozen=True)
class SweepSpec:
    t_min: float = DEFAULT_T_MAX / DEFAULT_POINTS
    t_max: float = DEFAULT_T_MAX
    points: int = DEFAULT_POINTS
    spacing: str = "linear"

    def __post_init__(self):
        if self.points < 2:
            raise ValueError(f"points must be >= 2, got {self.points}")
        if not self.t_min > 0:
            raise ValueError(f"t_min must be > 0, got {self.t_min}")
        if not self.t_min < self.t_max:
            raise ValueError(f"t_min must be < t_max, got {self.t_min} >= {self.t_max}")
        if self.spacing not in ("linear", "log"):
            raise ValueError(f"spacing must be 'linear' or 'log', got {self.spacing!r}")

    def grid(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.t_min, self.t_max, self.points)
        return np.linspace(self.t_min, self.t_max, self.points)


Table = tuple[list[str], list[list[float]]]


def _label(name: str, x: float) -> str:
    return f"{name}={x:g}"


def fig1(sweep: SweepSpec, qs=FIG1_Q) -> Table:
    """Pointwise ``d^q delta(t)/dt^q`` for each ``q``."""
    header = ["t"] + [_label("q", q) for q in qs]
    rows = []
    for t in sweep.grid():
        t = float(t)
        rows.append([t] + [eval_singular_as_function(SingularTerm(1.0, q), t) for q in qs])
    return header, rows


def fig2(sweep: SweepSpec, alphas=FIG2_ALPHA, lam: float = 1.0, tol: float = DEFAULT_TOL) -> Table:
    """``E_alpha(-lam t**alpha)`` and the Rabotnov function per ``alpha``, plus ``exp(-lam t)``."""
    header = ["t"]
    header += [_label("E_alpha", a) for a in alphas]
    header += [_label("rabotnov_alpha", a) for a in alphas]
    header.append("exp")
    rows = []
    for t in sweep.grid():
        t = float(t)
        ml = [ml_one_param(a, -lam * t**a, tol).value for a in alphas]
        rb = [rabotnov_eval(a, -1, lam, t, tol).value for a in alphas]
        rows.append([t] + ml + rb + [math.exp(-lam * t)])
    return header, rows


def fig3(sweep: SweepSpec, qs=FIG3_Q, lam: float = 1.0, tol: float = DEFAULT_TOL) -> Table:
    """``lam**-q`` times the pointwise inverse of ``s**q/(s+lam)`` over ``lam*t``."""
    funcs = [invert(LaplaceExpr(Family.BINOMIAL, q, 1.0, 1.0, -1, lam)) for q in qs]
    header = ["lambda_t"] + [_label("q", q) for q in qs] + ["exp"]
    rows = []
    for x in sweep.grid():
        x = float(x)
        t = x / lam
        vals = [eval_pointwise(f, t, tol).value / lam**q for f, q in zip(funcs, qs)]
        rows.append([x] + vals + [math.exp(-x)])
    return header, rows


BUILDERS = {1: fig1, 2: fig2, 3: fig3}
