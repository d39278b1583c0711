"""Independent numerical verifiers.

The closed forms in :mod:`vesprod.substitution` are checked here against
the defining identities evaluated with finite differences,

    R(k)     = y/y' - k,
    sigma(k) = y'(k y' - y) / (k y y''),

and the variable-elasticity solution is checked against a fourth-order
integration of its defining separable equation

    d(ln y)/dk = 1 / ((1+lam) k + mu k^theta).

Finite-difference steps follow the standard truncation/rounding balance:
h = k * eps^(1/3) for first derivatives and h = k * eps^(1/4) for second
derivatives.  The integrator works in ln y, where the equation is exact
quadrature; this removes positivity drift.

Every verifier returns a :class:`VerificationReport`; reports are
deterministic for identical inputs.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import DomainError, ParamError, SingularError
from .families import (
    FamilySpec,
    LogLinearParams,
    SatoHoffmanParams,
    VESParams,
    eval_intensive,
    lf_from_lh,
    lh_from_loglinear,
)
from .substitution import (
    mrs_closed,
    mrs_derivative_closed,
    sigma_closed,
    sigma_derivative_closed,
    violated_constraints,
)

__all__ = [
    "VerificationReport",
    "ode_integrate_theorem",
    "verify_family",
    "verify_equivalence_lh_lf",
    "verify_reduction",
    "verify_sato_hoffman",
]

_EPS = sys.float_info.epsilon
_H1 = _EPS ** (1.0 / 3.0)
_H2 = _EPS ** 0.25

#: default tolerances: derivative cross-checks carry finite-difference
#: noise; algebraic identities should hold to near machine precision
DERIVATIVE_TOL = 1e-6
IDENTITY_TOL = 1e-10


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one verification pass.

    ``passed`` is exactly ``max_rel_error <= tolerance``; ``worst_k`` and
    ``worst_quantity`` locate the largest relative deviation.
    """

    check_name: str
    max_abs_error: float
    max_rel_error: float
    points_checked: int
    tolerance: float
    passed: bool
    worst_k: float | None = None
    worst_quantity: str | None = None


class _Worst:
    """Accumulates worst-case absolute and relative errors over a grid."""

    def __init__(self) -> None:
        self.max_abs = 0.0
        self.max_rel = 0.0
        self.count = 0
        self.worst_k: float | None = None
        self.worst_quantity: str | None = None

    def add(self, quantity: str, k: float, closed: float, reference: float,
            scale_floor: float = 0.0) -> None:
        abs_err = abs(closed - reference)
        scale = max(abs(closed), abs(reference), scale_floor)
        rel_err = 0.0 if abs_err == 0.0 else abs_err / scale
        self.max_abs = max(self.max_abs, abs_err)
        if rel_err >= self.max_rel:
            self.max_rel = rel_err
            self.worst_k = k
            self.worst_quantity = quantity

    def report(self, name: str, points: int, tolerance: float) -> VerificationReport:
        return VerificationReport(
            check_name=name,
            max_abs_error=self.max_abs,
            max_rel_error=self.max_rel,
            points_checked=points,
            tolerance=tolerance,
            passed=self.max_rel <= tolerance,
            worst_k=self.worst_k,
            worst_quantity=self.worst_quantity,
        )


def _central(f: Callable[[float], float], k: float) -> float:
    h = k * _H1
    t = k + h
    h = t - k  # make the step exactly representable
    return (f(k + h) - f(k - h)) / (2.0 * h)


def _second(f: Callable[[float], float], k: float) -> float:
    h = k * _H2
    t = k + h
    h = t - k
    return (f(k + h) - 2.0 * f(k) + f(k - h)) / (h * h)


def _check_grid(k_grid: Sequence[float]) -> list[float]:
    grid = [float(k) for k in k_grid]
    if len(grid) < 1:
        raise ParamError("k_grid must contain at least one point")
    for k in grid:
        if not (math.isfinite(k) and k > 0.0):
            raise DomainError(f"grid point {k!r} is not a positive finite number")
    for lo, hi in zip(grid, grid[1:]):
        if not lo < hi:
            raise ParamError("k_grid must be strictly increasing")
    return grid


# --------------------------------------------------------------------------
# ODE oracle for the variable-elasticity solution
# --------------------------------------------------------------------------

def ode_integrate_theorem(v: VESParams, k_start: float, y_start: float,
                          k_end: float, steps: int) -> float:
    """Propagate y from ``k_start`` to ``k_end`` by integrating the
    defining equation of R(k) = lam*k + mu*k^theta with the classical
    fourth-order Runge-Kutta scheme in ln y.

    For ``y_start`` consistent with the closed form the result matches
    the closed form at ``k_end`` with relative error O(steps^-4).
    Raises SingularError if the denominator (1+lam) k + mu k^theta
    vanishes or changes sign along the path.
    """
    for name, value in (("k_start", k_start), ("k_end", k_end), ("y_start", y_start)):
        if not (math.isfinite(value) and value > 0.0):
            raise DomainError(f"{name} must be positive and finite, got {value!r}")
    if not isinstance(steps, int) or steps < 2:
        raise DomainError(f"steps must be an integer >= 2, got {steps!r}")
    if k_end == k_start:
        return y_start

    lam, mu, th = v.lam, v.mu, v.theta
    sign0 = 0.0

    def slope(k: float) -> float:
        nonlocal sign0
        den = (1.0 + lam) * k + mu * k ** th
        if den == 0.0:
            raise SingularError(f"(1+lam) k + mu k^theta vanishes at k = {k:.12g}")
        if sign0 == 0.0:
            sign0 = math.copysign(1.0, den)
        elif math.copysign(1.0, den) != sign0:
            raise SingularError(f"(1+lam) k + mu k^theta changes sign at k = {k:.12g}")
        return 1.0 / den

    h = (k_end - k_start) / steps
    ln_y = math.log(y_start)
    for i in range(steps):
        k = k_start + i * h
        s1 = slope(k)
        s_mid = slope(k + 0.5 * h)  # middle stages coincide: the slope is state-free
        s4 = slope(k + h)
        ln_y += h / 6.0 * (s1 + 4.0 * s_mid + s4)
    return math.exp(ln_y)


# --------------------------------------------------------------------------
# Closed form vs finite differences of the defining identities
# --------------------------------------------------------------------------

def verify_family(spec: FamilySpec, k_grid: Sequence[float],
                  tolerance: float = DERIVATIVE_TOL) -> VerificationReport:
    """Compare closed-form R, R', sigma, sigma' against finite-difference
    evaluations of their defining identities at every grid point.

    All grid points must satisfy the validity constraints (positive
    bracket, R > 0, R' > 0, sigma > 0); the first offending point raises
    DomainError naming it.
    """
    grid = _check_grid(k_grid)
    for k in grid:
        violated = violated_constraints(spec, k)
        if violated:
            raise DomainError(
                f"k = {k:.12g} is outside the validity range "
                f"(violated: {', '.join(violated)})")

    y = lambda k: eval_intensive(spec, k)
    worst = _Worst()
    for k in grid:
        yv = y(k)
        yp = _central(y, k)
        ypp = _second(y, k)

        R_cl = mrs_closed(spec, k)
        worst.add("R", k, R_cl, yv / yp - k)

        Rp_cl = mrs_derivative_closed(spec, k)
        worst.add("R_prime", k, Rp_cl, _central(lambda t: mrs_closed(spec, t), k),
                  scale_floor=abs(R_cl) / k)

        sig_cl = sigma_closed(spec, k)
        worst.add("sigma", k, sig_cl, yp * (k * yp - yv) / (k * yv * ypp))

        sigp_cl = sigma_derivative_closed(spec, k)
        worst.add("sigma_prime", k, sigp_cl,
                  _central(lambda t: sigma_closed(spec, t), k),
                  scale_floor=abs(sig_cl) / k)
    return worst.report("family", len(grid), tolerance)


def verify_equivalence_lh_lf(p: LogLinearParams, k_grid: Sequence[float],
                             tolerance: float = IDENTITY_TOL) -> VerificationReport:
    """Evaluate the wage-relation closed form in both parameterizations
    (xi and zeta = xi (b-1) a^(-1/b) / b) and report the worst relative
    difference; the two are algebraically identical."""
    lh = lh_from_loglinear(p)
    lf = lf_from_lh(p)
    grid = _check_grid(k_grid)
    worst = _Worst()
    for k in grid:
        worst.add("y", k, eval_intensive(lh, k), eval_intensive(lf, k))
    return worst.report("lh-lf-equivalence", len(grid), tolerance)


def verify_reduction(spec: FamilySpec, target: FamilySpec, k_grid: Sequence[float],
                     tolerance: float = IDENTITY_TOL) -> VerificationReport:
    """Pointwise comparison of y, R, and sigma between a spec and the
    special case it is claimed to reduce to."""
    grid = _check_grid(k_grid)
    worst = _Worst()
    for k in grid:
        worst.add("y", k, eval_intensive(spec, k), eval_intensive(target, k))
        worst.add("R", k, mrs_closed(spec, k), mrs_closed(target, k))
        worst.add("sigma", k, sigma_closed(spec, k), sigma_closed(target, k))
    return worst.report("reduction", len(grid), tolerance)


def verify_sato_hoffman(s: SatoHoffmanParams, k_grid: Sequence[float],
                        tolerance: float = DERIVATIVE_TOL) -> VerificationReport:
    """Check that the elasticity of the Sato-Hoffman closed form, computed
    by finite differences of the defining identity, is the affine function
    1 + (rho-1)/(1 - delta*rho) * k inside the admissible range."""
    if s.alpha != 1.0:
        raise ParamError("the affine-elasticity identity assumes degree one "
                         f"(alpha = 1), got alpha = {s.alpha!r}")
    grid = _check_grid(k_grid)
    bound = s.k_upper_bound()
    for k in grid:
        if k >= bound:
            raise DomainError(
                f"k = {k:.12g} is outside the admissible range k < {bound:.12g}")
    slope = (s.rho - 1.0) / (1.0 - s.delta * s.rho)
    y = lambda k: eval_intensive(s, k)
    worst = _Worst()
    for k in grid:
        yv = y(k)
        yp = _central(y, k)
        ypp = _second(y, k)
        sigma_fd = yp * (k * yp - yv) / (k * yv * ypp)
        worst.add("sigma", k, 1.0 + slope * k, sigma_fd)
    return worst.report("sato-hoffman", len(grid), tolerance)
