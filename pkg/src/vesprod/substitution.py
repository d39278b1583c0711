"""Marginal rate of substitution, elasticity of factor substitution, their
derivatives, asymptotic regimes, and validity ranges for every family.

For a degree-one production function with intensive form y(k),

    R(k)     = y/y' - k                      (marginal rate of substitution)
    sigma(k) = y'(k y' - y) / (k y y'')      (elasticity of substitution)

Everything in this module evaluates closed forms; the finite-difference
cross-checks of those same definitions live in :mod:`vesprod.oracles`.

Closed forms are taken per family: power-law forms for Cobb-Douglas and
CES, rational forms in k^((b+c-1)/b) for the wage-relation family, affine
sigma for Sato-Hoffman, and for the variable-elasticity family with
R = lam*k + mu*k^theta the exact identities

    sigma  = R / (k R')
    sigma' = -lam*mu*(theta-1)^2 * k^(theta-2) / (lam + theta*mu*k^(theta-1))^2.

A pole of sigma (R' = 0, or a vanishing rational denominator) raises
SingularError rather than returning an infinity.

Pointwise operations enforce evaluability (positive bracketed base,
family domain restrictions); the economic validity conditions R > 0,
R' > 0, sigma > 0 are intersected by :func:`validity_range`, which is
what trajectory emission and regime classification build on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import singledispatch

from .errors import DomainError, ParamError, ShareError, SingularError
from .families import (
    CESParams,
    CobbDouglasParams,
    FamilySpec,
    LiuHildebrandParams,
    LogLinearParams,
    LuFletcherParams,
    SatoHoffmanParams,
    VESParams,
    _check_ves_branch,
    bracket_base,
    loglinear_from_ves,
    ves_from_loglinear,
)

__all__ = [
    "RegimeCase",
    "Monotonicity",
    "RegimeReport",
    "ValidityInterval",
    "RegressionClosedForm",
    "mrs_closed",
    "mrs_derivative_closed",
    "sigma_closed",
    "sigma_derivative_closed",
    "sigma_from_shares",
    "sigma_from_mrs",
    "regression_closed_form",
    "classify_regime",
    "validity_range",
    "violated_constraints",
]

#: Parameters closer than this to a structural boundary (b = c, c = 1,
#: b + c = 1) are rejected by classify_regime; collapse them first with
#: families.reduce_special_case.
BOUNDARY_TOL = 1e-9


class RegimeCase(str, Enum):
    LH_CES_LIMIT = "LH_CES_limit"
    LH_CD_LIMIT = "LH_CD_limit"
    VES_CASE_I = "VES_case_i"
    VES_CASE_II = "VES_case_ii"
    VES_CASE_III = "VES_case_iii"
    CONSTANT_SIGMA = "constant_sigma"
    UNIT_SIGMA = "unit_sigma"


class Monotonicity(str, Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    CONSTANT = "constant"


@dataclass(frozen=True)
class RegimeReport:
    """Asymptotic behaviour of sigma(k): case label, finite limit as
    k -> inf, and monotonicity on the validity range."""

    case_label: RegimeCase
    sigma_limit: float
    monotonicity: Monotonicity


@dataclass(frozen=True)
class ValidityInterval:
    """Maximal subinterval of a probe window on which R > 0, R' > 0,
    sigma > 0, and the closed form's bracketed base is positive.

    ``constraints_active`` lists which of those conditions bind at the
    refined endpoints.  An empty result carries NaN endpoints and is
    detected with :attr:`is_empty`.
    """

    k_low: float
    k_high: float
    constraints_active: tuple[str, ...]

    @classmethod
    def empty(cls) -> "ValidityInterval":
        return cls(k_low=math.nan, k_high=math.nan, constraints_active=())

    @property
    def is_empty(self) -> bool:
        return math.isnan(self.k_low) or math.isnan(self.k_high)

    def clip(self, lo: float, hi: float) -> tuple[float, float]:
        """Intersect with [lo, hi]; raises DomainError when empty."""
        if self.is_empty:
            raise DomainError("validity interval is empty")
        a, b = max(lo, self.k_low), min(hi, self.k_high)
        if not a < b:
            raise DomainError(
                f"[{lo:.6g}, {hi:.6g}] does not intersect the validity range "
                f"[{self.k_low:.6g}, {self.k_high:.6g}]")
        return a, b


def _finite_or_singular(value: float, what: str, k: float) -> float:
    if not math.isfinite(value):
        raise SingularError(f"{what} is not finite at k = {k:.12g}")
    return value


def _lh_regression(spec: LiuHildebrandParams | LuFletcherParams
                   ) -> tuple[float, float, float]:
    """(b, c, xi) of the wage-relation function; Lu-Fletcher parameters are
    converted through zeta = xi (b-1) a^(-1/b) / b."""
    if isinstance(spec, LiuHildebrandParams):
        return spec.b, spec.c, spec.xi
    xi = spec.zeta * spec.b * spec.a ** (1.0 / spec.b) / (spec.b - 1.0)
    return spec.b, spec.c, xi


def _require_k(k: float) -> None:
    if not (math.isfinite(k) and k > 0.0):
        raise DomainError(f"capital-labor ratio must be positive and finite, got {k!r}")


def _require_sh_degree_one(spec: SatoHoffmanParams) -> None:
    if spec.alpha != 1.0:
        raise ParamError("substitution formulas assume degree one; "
                         f"alpha = {spec.alpha!r} is not supported here")


def _check_sh_point(spec: SatoHoffmanParams, k: float) -> None:
    _require_k(k)
    _require_sh_degree_one(spec)
    if k >= spec.k_upper_bound():
        raise DomainError(
            f"SatoHoffmanParams: k = {k:.12g} is outside the admissible range "
            f"k < {spec.k_upper_bound():.12g}")


# --------------------------------------------------------------------------
# Marginal rate of substitution R(k) and its derivative
# --------------------------------------------------------------------------

@singledispatch
def mrs_closed(spec: FamilySpec, k: float) -> float:
    """R(k) = y/y' - k from the family's closed form."""
    raise TypeError(f"unsupported family spec: {type(spec).__name__}")


@mrs_closed.register
def _(spec: CobbDouglasParams, k: float) -> float:
    _require_k(k)
    return (1.0 - spec.beta) / spec.beta * k


@mrs_closed.register
def _(spec: CESParams, k: float) -> float:
    _require_k(k)
    return (1.0 - spec.delta) / spec.delta * k ** (1.0 / spec.sigma)


@mrs_closed.register
def _(spec: VESParams, k: float) -> float:
    _require_k(k)
    return spec.lam * k + spec.mu * k ** spec.theta


def _lh_mrs(spec: LiuHildebrandParams | LuFletcherParams, k: float) -> float:
    _require_k(k)
    b, c, xi = _lh_regression(spec)
    den = xi * (1.0 - b) * (b + c - 1.0) * k ** ((b + c - 1.0) / b) + b * c
    if den == 0.0:
        raise SingularError(f"marginal rate of substitution has a pole at k = {k:.12g}")
    return _finite_or_singular(-b * (b + c - 1.0) * k / den,
                               "marginal rate of substitution", k)


@mrs_closed.register
def _(spec: LiuHildebrandParams, k: float) -> float:
    return _lh_mrs(spec, k)


@mrs_closed.register
def _(spec: LuFletcherParams, k: float) -> float:
    return _lh_mrs(spec, k)


@mrs_closed.register
def _(spec: SatoHoffmanParams, k: float) -> float:
    _check_sh_point(spec, k)
    dr = spec.delta * spec.rho
    return dr * k / ((1.0 - dr) + (spec.rho - 1.0) * k)


@singledispatch
def mrs_derivative_closed(spec: FamilySpec, k: float) -> float:
    """dR/dk from the family's closed form."""
    raise TypeError(f"unsupported family spec: {type(spec).__name__}")


@mrs_derivative_closed.register
def _(spec: CobbDouglasParams, k: float) -> float:
    _require_k(k)
    return (1.0 - spec.beta) / spec.beta


@mrs_derivative_closed.register
def _(spec: CESParams, k: float) -> float:
    _require_k(k)
    return (1.0 - spec.delta) / (spec.delta * spec.sigma) * k ** (1.0 / spec.sigma - 1.0)


@mrs_derivative_closed.register
def _(spec: VESParams, k: float) -> float:
    _require_k(k)
    return spec.lam + spec.theta * spec.mu * k ** (spec.theta - 1.0)


def _lh_mrs_derivative(spec: LiuHildebrandParams | LuFletcherParams, k: float) -> float:
    _require_k(k)
    b, c, xi = _lh_regression(spec)
    x = k ** ((b + c - 1.0) / b)
    den = xi * (1.0 - b) * (b + c - 1.0) * x + b * c
    if den == 0.0:
        raise SingularError(f"marginal rate of substitution has a pole at k = {k:.12g}")
    num = xi * (1.0 - b) * (1.0 - c) * (b + c - 1.0) * x + b * b * c
    return _finite_or_singular(-(b + c - 1.0) * num / den ** 2,
                               "derivative of the marginal rate of substitution", k)


@mrs_derivative_closed.register
def _(spec: LiuHildebrandParams, k: float) -> float:
    return _lh_mrs_derivative(spec, k)


@mrs_derivative_closed.register
def _(spec: LuFletcherParams, k: float) -> float:
    return _lh_mrs_derivative(spec, k)


@mrs_derivative_closed.register
def _(spec: SatoHoffmanParams, k: float) -> float:
    _check_sh_point(spec, k)
    dr = spec.delta * spec.rho
    D = (1.0 - dr) + (spec.rho - 1.0) * k
    return dr * (1.0 - dr) / (D * D)


# --------------------------------------------------------------------------
# Elasticity of substitution sigma(k) and its derivative
# --------------------------------------------------------------------------

@singledispatch
def sigma_closed(spec: FamilySpec, k: float) -> float:
    """sigma(k) from the family's closed form."""
    raise TypeError(f"unsupported family spec: {type(spec).__name__}")


@sigma_closed.register
def _(spec: CobbDouglasParams, k: float) -> float:
    _require_k(k)
    return 1.0


@sigma_closed.register
def _(spec: CESParams, k: float) -> float:
    _require_k(k)
    return spec.sigma


@sigma_closed.register
def _(spec: VESParams, k: float) -> float:
    _require_k(k)
    lam, mu, th = spec.lam, spec.mu, spec.theta
    x = k ** (th - 1.0)
    den = lam + th * mu * x
    if den == 0.0:
        raise SingularError(f"sigma has a pole (R' = 0) at k = {k:.12g}")
    return _finite_or_singular((lam + mu * x) / den, "sigma", k)


@sigma_closed.register
def _(spec: LiuHildebrandParams, k: float) -> float:
    _require_k(k)
    b, c, xi = _lh_regression(spec)
    x = k ** ((b + c - 1.0) / b)
    den = xi * (1.0 - b) * (b + c - 1.0) * (1.0 - c) * x + b * b * c
    if den == 0.0:
        raise SingularError(f"sigma has a pole at k = {k:.12g}")
    num = xi * (1.0 - b) * (b + c - 1.0) * x + b * c
    return _finite_or_singular(b * num / den, "sigma", k)


@sigma_closed.register
def _(spec: LuFletcherParams, k: float) -> float:
    # stated directly in the zeta parameterization
    _require_k(k)
    a, b, c, zeta = spec.a, spec.b, spec.c, spec.zeta
    u = k ** ((b - 1.0) / b)
    v = b * c * a ** (-1.0 / b) * k ** (-c / b)
    den = zeta * (1.0 - c) * (1.0 - b - c) * u + v
    if den == 0.0:
        raise SingularError(f"sigma has a pole at k = {k:.12g}")
    num = zeta * b * (1.0 - b - c) * u + v
    return _finite_or_singular(num / den, "sigma", k)


@sigma_closed.register
def _(spec: SatoHoffmanParams, k: float) -> float:
    _check_sh_point(spec, k)
    dr = spec.delta * spec.rho
    return 1.0 + (spec.rho - 1.0) / (1.0 - dr) * k


@singledispatch
def sigma_derivative_closed(spec: FamilySpec, k: float) -> float:
    """d sigma / dk from the family's closed form."""
    raise TypeError(f"unsupported family spec: {type(spec).__name__}")


@sigma_derivative_closed.register
def _(spec: CobbDouglasParams, k: float) -> float:
    _require_k(k)
    return 0.0


@sigma_derivative_closed.register
def _(spec: CESParams, k: float) -> float:
    _require_k(k)
    return 0.0


@sigma_derivative_closed.register
def _(spec: VESParams, k: float) -> float:
    _require_k(k)
    lam, mu, th = spec.lam, spec.mu, spec.theta
    den = lam + th * mu * k ** (th - 1.0)
    if den == 0.0:
        raise SingularError(f"sigma has a pole (R' = 0) at k = {k:.12g}")
    value = -lam * mu * (th - 1.0) ** 2 * k ** (th - 2.0) / (den * den)
    return _finite_or_singular(value, "derivative of sigma", k)


def _lh_sigma_derivative(spec: LiuHildebrandParams | LuFletcherParams, k: float) -> float:
    _require_k(k)
    b, c, xi = _lh_regression(spec)
    s = b + c - 1.0
    den = xi * (1.0 - b) * s * (1.0 - c) * k ** ((b - 1.0) / b) \
        + b * b * c * k ** (-c / b)
    if den == 0.0:
        raise SingularError(f"sigma has a pole at k = {k:.12g}")
    num = xi * (1.0 - b) * s * b * c * s ** 2 * k ** (-(c + 1.0) / b)
    return _finite_or_singular(num / den ** 2, "derivative of sigma", k)


@sigma_derivative_closed.register
def _(spec: LiuHildebrandParams, k: float) -> float:
    return _lh_sigma_derivative(spec, k)


@sigma_derivative_closed.register
def _(spec: LuFletcherParams, k: float) -> float:
    return _lh_sigma_derivative(spec, k)


@sigma_derivative_closed.register
def _(spec: SatoHoffmanParams, k: float) -> float:
    _check_sh_point(spec, k)
    return (spec.rho - 1.0) / (1.0 - spec.delta * spec.rho)


# --------------------------------------------------------------------------
# Regression-space forms of sigma
# --------------------------------------------------------------------------

def sigma_from_shares(p: LogLinearParams, k: float, y: float, y_prime: float) -> float:
    """Share form of the elasticity under the rental-rate relation:

        sigma = b (y - k y') / (c y - k y').

    Requires the wage share y - k y' and the quantity c y - k y' to be
    positive; the latter failing means the implied capital share
    beta = k y' / y is at least c, which the relation rules out.
    """
    _require_k(k)
    wage = y - k * y_prime
    if wage <= 0.0:
        raise ShareError(f"wage share y - k*y' = {wage:.6g} <= 0: inputs are not "
                         "consistent with a degree-one production function")
    d = p.c * y - k * y_prime
    if d <= 0.0:
        beta = k * y_prime / y
        raise ShareError(
            f"c*y - k*y' = {d:.6g} <= 0: implied capital share beta = {beta:.6g} "
            f">= c = {p.c:.6g}, but the share form requires c > beta")
    return p.b * wage / d


def sigma_from_mrs(p: LogLinearParams, k: float) -> float:
    """sigma = b R / (c R + (c-1) k) with R from the rental-rate closed form.

    The factor R / (c R + (c-1) k) acts as a correction applied to the
    constant b; as k grows it tends to 1/c when c > b and to 1/b when
    c <= b, so sigma tends to b/c or to 1.
    """
    _require_k(k)
    v = ves_from_loglinear(p)  # validates the branch and xi
    R = v.lam * k + v.mu * k ** v.theta
    den = p.c * R + (p.c - 1.0) * k
    if den == 0.0:
        raise SingularError(f"c*R + (c-1)*k vanishes at k = {k:.12g}")
    return _finite_or_singular(p.b * R / den, "sigma", k)


@dataclass(frozen=True)
class RegressionClosedForm:
    """Coefficients of the rental-rate family's closed forms, grouped the
    way the functions are usually displayed:

        R(k)      = mrs_k_coef * k + mrs_pow_coef_per_xi * xi * k**exponent
        R'(k)     = mrs_k_coef + mrs_prime_pow_coef_per_xi * xi * k**(exponent-1)
        sigma(k)  = b * (sigma_num_k_coef * k + sigma_num_pow_coef_per_xi * xi * k**exponent)
                      / (sigma_den_k_coef * k + sigma_den_pow_coef_per_xi * xi * k**exponent)
        sigma'(k) = sigma_prime_num_coef_per_xi * xi * k**exponent
                      / (sigma_den_k_coef * k + sigma_den_pow_coef_per_xi * xi * k**exponent)**2

    All coefficients are per unit xi, so one set serves any choice of the
    integration constant.
    """

    exponent: float
    mrs_k_coef: float
    mrs_pow_coef_per_xi: float
    mrs_prime_pow_coef_per_xi: float
    sigma_num_k_coef: float
    sigma_num_pow_coef_per_xi: float
    sigma_den_k_coef: float
    sigma_den_pow_coef_per_xi: float
    sigma_prime_num_coef_per_xi: float


def regression_closed_form(p: LogLinearParams) -> RegressionClosedForm:
    """Closed-form display coefficients of R, R', sigma, sigma' for the
    rental-rate family in regression space (xi not needed)."""
    _check_ves_branch(p)
    a, b, c = p.a, p.b, p.c
    a1b = a ** (1.0 / b)
    return RegressionClosedForm(
        exponent=c / b,
        mrs_k_coef=(1.0 - c) / (c - b),
        mrs_pow_coef_per_xi=-(1.0 - b) * a1b / b,
        mrs_prime_pow_coef_per_xi=-c * (1.0 - b) * a1b / (b * b),
        sigma_num_k_coef=b * (c - 1.0),
        sigma_num_pow_coef_per_xi=(1.0 - b) * (c - b) * a1b,
        sigma_den_k_coef=b * b * (c - 1.0),
        sigma_den_pow_coef_per_xi=c * (1.0 - b) * (c - b) * a1b,
        sigma_prime_num_coef_per_xi=-b * (1.0 - b) * (c - 1.0) * (c - b) ** 3 * a1b,
    )


# --------------------------------------------------------------------------
# Validity range
# --------------------------------------------------------------------------

_CONSTRAINT_LABELS = ("bracket>0", "R>0", "R_prime>0", "sigma>0")


def violated_constraints(spec: FamilySpec, k: float) -> tuple[str, ...]:
    """Which of the four validity conditions fail at k (empty when valid)."""
    try:
        if not bracket_base(spec, k) > 0.0:
            return ("bracket>0",)
    except (DomainError, SingularError):
        return ("bracket>0",)
    bad = []
    for label, fn in (("R>0", mrs_closed),
                      ("R_prime>0", mrs_derivative_closed),
                      ("sigma>0", sigma_closed)):
        try:
            if not fn(spec, k) > 0.0:
                bad.append(label)
        except (DomainError, SingularError):
            bad.append(label)
    return tuple(bad)


def _point_valid(spec: FamilySpec, k: float) -> bool:
    return not violated_constraints(spec, k)


def _bisect_boundary(spec: FamilySpec, k_bad: float, k_good: float,
                     rel_tol: float = 1e-10) -> tuple[float, float]:
    """Refine the validity boundary between an invalid and a valid point.

    Returns (boundary_estimate, last_invalid_point)."""
    lo, hi = k_bad, k_good
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if abs(hi - lo) <= rel_tol * abs(mid):
            break
        if _point_valid(spec, mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi), lo


def validity_range(spec: FamilySpec, k_probe_low: float, k_probe_high: float,
                   *, samples: int = 512) -> ValidityInterval:
    """Maximal subinterval of [k_probe_low, k_probe_high] on which R > 0,
    R' > 0, sigma > 0, and the bracketed base is positive.

    The probe window is scanned on a log-spaced grid; the longest
    contiguous valid run is kept and its endpoints are refined by
    bisection to relative 1e-10.  An empty interval is returned (never an
    exception) when no probe point is valid.
    """
    if not (math.isfinite(k_probe_low) and math.isfinite(k_probe_high)
            and 0.0 < k_probe_low < k_probe_high):
        raise ParamError(f"probe bounds must satisfy 0 < low < high, got "
                         f"({k_probe_low!r}, {k_probe_high!r})")
    if samples < 2:
        raise ParamError("need at least 2 probe samples")

    ratio = k_probe_high / k_probe_low
    grid = [k_probe_low * ratio ** (i / (samples - 1)) for i in range(samples)]
    ok = [_point_valid(spec, k) for k in grid]

    best_len, best = 0, None
    i = 0
    while i < samples:
        if ok[i]:
            j = i
            while j + 1 < samples and ok[j + 1]:
                j += 1
            if j - i + 1 > best_len:
                best_len, best = j - i + 1, (i, j)
            i = j + 1
        else:
            i += 1
    if best is None:
        return ValidityInterval.empty()

    i, j = best
    active: list[str] = []
    if i == 0:
        k_low = k_probe_low
    else:
        k_low, bad_point = _bisect_boundary(spec, grid[i - 1], grid[i])
        active.extend(violated_constraints(spec, bad_point))
    if j == samples - 1:
        k_high = k_probe_high
    else:
        k_high, bad_point = _bisect_boundary(spec, grid[j + 1], grid[j])
        for label in violated_constraints(spec, bad_point):
            if label not in active:
                active.append(label)
    # keep a stable label order
    ordered = tuple(lbl for lbl in _CONSTRAINT_LABELS if lbl in active)
    return ValidityInterval(k_low=k_low, k_high=k_high, constraints_active=ordered)


# --------------------------------------------------------------------------
# Regime classification
# --------------------------------------------------------------------------

def _regime_of_rental_regression(b: float, c: float, xi: float) -> RegimeReport:
    if xi >= 0.0:
        raise ParamError("regime analysis assumes xi < 0 (required for R to be "
                         f"positive and increasing on some range); got xi = {xi!r}")
    if b >= 1.0:
        raise ParamError(f"the regime taxonomy assumes b < 1, got b = {b!r}")
    if abs(c - 1.0) <= BOUNDARY_TOL:
        raise ParamError("c = 1 is a case boundary (constant elasticity sigma = b); "
                         "use reduce_special_case first")
    if abs(b - c) <= BOUNDARY_TOL:
        raise ParamError("b = c is a case boundary; use reduce_special_case first")
    if b < c < 1.0:
        return RegimeReport(RegimeCase.VES_CASE_I, b / c, Monotonicity.DECREASING)
    if c < b:
        return RegimeReport(RegimeCase.VES_CASE_II, 1.0, Monotonicity.INCREASING)
    return RegimeReport(RegimeCase.VES_CASE_III, b / c, Monotonicity.INCREASING)


def _regime_of_wage_regression(b: float, c: float, xi: float) -> RegimeReport:
    if xi >= 0.0:
        raise ParamError("regime analysis assumes xi < 0; got "
                         f"xi = {xi!r}")
    if not 0.0 < b < 1.0:
        raise ParamError(f"wage-relation regimes are stated for b in (0, 1), got {b!r}")
    if c == 0.0:
        # CES boundary: sigma identically equal to b
        return RegimeReport(RegimeCase.CONSTANT_SIGMA, b, Monotonicity.CONSTANT)
    if c >= 1.0:
        raise ParamError(f"wage-relation regimes are stated for c in (0, 1), got {c!r}")
    if abs(b + c - 1.0) <= BOUNDARY_TOL:
        raise ParamError("b + c = 1 is a case boundary (the marginal rate of "
                         "substitution degenerates); use reduce_special_case first")
    if b + c > 1.0:
        return RegimeReport(RegimeCase.LH_CES_LIMIT, b / (1.0 - c), Monotonicity.DECREASING)
    return RegimeReport(RegimeCase.LH_CD_LIMIT, 1.0, Monotonicity.INCREASING)


def _crosscheck_monotonicity(spec: FamilySpec, report: RegimeReport,
                             probe: tuple[float, float] = (1e-3, 1e3),
                             points: int = 32) -> None:
    """Sample the closed-form sigma' on the validity range and require its
    sign to agree with the theoretical monotonicity."""
    interval = validity_range(spec, probe[0], probe[1], samples=256)
    if interval.is_empty:
        return
    lo = interval.k_low * (1.0 + 1e-9)
    hi = interval.k_high * (1.0 - 1e-9)
    if not lo < hi:
        return
    ratio = hi / lo
    for i in range(points):
        k = lo * ratio ** (i / (points - 1))
        try:
            sp = sigma_derivative_closed(spec, k)
        except SingularError:
            continue
        if report.monotonicity is Monotonicity.INCREASING and not sp > 0.0:
            raise ParamError(f"regime cross-check failed: sigma'({k:.6g}) = {sp:.6g} "
                             "is not positive for an increasing regime")
        if report.monotonicity is Monotonicity.DECREASING and not sp < 0.0:
            raise ParamError(f"regime cross-check failed: sigma'({k:.6g}) = {sp:.6g} "
                             "is not negative for a decreasing regime")
        if report.monotonicity is Monotonicity.CONSTANT and sp != 0.0:
            raise ParamError(f"regime cross-check failed: sigma'({k:.6g}) = {sp:.6g} "
                             "is nonzero for a constant regime")


@singledispatch
def classify_regime(spec: FamilySpec) -> RegimeReport:
    """Classify sigma(k)'s monotonicity and its finite limit as k -> inf.

    Case boundaries (b = c, c = 1, b + c = 1 within BOUNDARY_TOL) raise
    ParamError with a pointer to ``reduce_special_case``.  The reported
    monotonicity is cross-checked by sampling the closed-form sigma' at
    32 log-spaced points of the validity range.
    """
    raise TypeError(f"unsupported family spec: {type(spec).__name__}")


@classify_regime.register
def _(spec: CobbDouglasParams) -> RegimeReport:
    return RegimeReport(RegimeCase.UNIT_SIGMA, 1.0, Monotonicity.CONSTANT)


@classify_regime.register
def _(spec: CESParams) -> RegimeReport:
    return RegimeReport(RegimeCase.CONSTANT_SIGMA, spec.sigma, Monotonicity.CONSTANT)


@classify_regime.register
def _(spec: SatoHoffmanParams) -> RegimeReport:
    if spec.rho == 1.0:
        return RegimeReport(RegimeCase.UNIT_SIGMA, 1.0, Monotonicity.CONSTANT)
    raise ParamError(
        "an affine elasticity has no finite large-k limit: the domain is bounded "
        "for rho < 1 and sigma is unbounded for rho > 1; only rho = 1 has a regime")


@classify_regime.register
def _(spec: VESParams) -> RegimeReport:
    p = loglinear_from_ves(spec)
    report = _regime_of_rental_regression(p.b, p.c, p.xi)
    _crosscheck_monotonicity(spec, report)
    return report


@classify_regime.register
def _(spec: LiuHildebrandParams) -> RegimeReport:
    report = _regime_of_wage_regression(spec.b, spec.c, spec.xi)
    _crosscheck_monotonicity(spec, report)
    return report


@classify_regime.register
def _(spec: LuFletcherParams) -> RegimeReport:
    b, c, xi = _lh_regression(spec)
    report = _regime_of_wage_regression(b, c, xi)
    _crosscheck_monotonicity(spec, report)
    return report
