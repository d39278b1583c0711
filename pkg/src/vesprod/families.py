"""Parameter types and closed-form evaluation for six production-function
families with constant or variable elasticity of factor substitution.

Every family is homogeneous of degree one (Sato-Hoffman optionally of
degree ``alpha``), so each has an intensive form ``y(k)`` giving output
per worker at capital-labor ratio ``k = K/L`` and an extensive form
``F(K, L) = L * y(K/L)``.  Both are implemented from their closed forms,
never by numerical integration.

Families
--------
CobbDouglasParams   y = A k^beta                          (sigma = 1)
CESParams           y = gamma [delta k^((s-1)/s) + (1-delta)]^(s/(s-1))
LiuHildebrandParams closed-form solution of the wage log-linear relation
                    ln y = ln a + b ln(y - k y') + c ln k
LuFletcherParams    the same function in its alternative parameterization
                    with integration constant zeta
SatoHoffmanParams   F = gamma K^(alpha(1-delta rho)) [L + (rho-1)K]^(alpha delta rho),
                    elasticity affine in k
VESParams           marginal rate of substitution R(k) = lam*k + mu*k^theta,
                    y = psi [(1+lam) k^(1-theta) + mu]^(1/((1+lam)(1-theta)))

``LogLinearParams`` is not a family by itself: it is the regression-space
parameter set (a, b, c) of a log-linear relation between output, a factor
price, and k, plus the integration constant ``xi`` that pins down one
member of the solution family.  Under the rental-rate reading
(ln y = ln a + b ln y' + c ln k) it maps to ``VESParams`` via
:func:`ves_from_loglinear`; under the wage reading it parameterizes the
Liu-Hildebrand / Lu-Fletcher function.

All types are frozen dataclasses and all operations are pure functions;
they are safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import singledispatch
from typing import Union

from .errors import DomainError, ParamError, SingularError

__all__ = [
    "LogLinearParams",
    "VESParams",
    "CobbDouglasParams",
    "CESParams",
    "LiuHildebrandParams",
    "LuFletcherParams",
    "SatoHoffmanParams",
    "FamilySpec",
    "eval_intensive",
    "eval_extensive",
    "intensive_derivative",
    "intensive_second_derivative",
    "bracket_base",
    "ves_from_loglinear",
    "loglinear_from_ves",
    "lf_from_lh",
    "lh_from_loglinear",
    "symmetric_form",
    "reduce_special_case",
]


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ParamError(f"{name} must be finite, got {value!r}")


def _require_positive(name: str, value: float) -> None:
    _require_finite(name, value)
    if value <= 0.0:
        raise ParamError(f"{name} must be positive, got {value!r}")


@dataclass(frozen=True)
class LogLinearParams:
    """Regression-space parameters of a log-linear factor-price relation.

    ``a`` is the positive scale constant, ``b`` the slope on the log price
    term, ``c`` the slope on ``ln k``, and ``xi`` the constant of
    integration of the implied differential equation.  ``xi`` may be left
    unset (``None``) when only the regression coefficients are known; it
    can then be filled in by calibration (see ``estimation.calibrate_xi``)
    via :meth:`with_xi`.

    ``b = 0`` is admitted at construction so that the explicit
    Cobb-Douglas reduction (:func:`reduce_special_case`) stays reachable;
    operations that evaluate a closed form requiring ``b`` in a
    denominator reject it with :class:`ParamError`.
    """

    a: float
    b: float
    c: float
    xi: float | None = None

    def __post_init__(self) -> None:
        _require_positive("a", self.a)
        _require_finite("b", self.b)
        if self.b < 0.0:
            raise ParamError(f"b must be non-negative, got {self.b!r}")
        _require_positive("c", self.c)
        if self.xi is not None:
            _require_finite("xi", self.xi)

    def with_xi(self, xi: float) -> "LogLinearParams":
        """Return a copy with the integration constant set to ``xi``."""
        return replace(self, xi=xi)

    def require_xi(self) -> float:
        if self.xi is None:
            raise ParamError("this operation needs the integration constant xi; "
                             "set it explicitly or calibrate it first")
        return self.xi


def _check_ves_branch(p: LogLinearParams) -> None:
    """Branch restrictions of the rental-rate closed form: b not in {0, 1}, b != c."""
    if p.b == 0.0:
        raise ParamError("b = 0 is the Cobb-Douglas branch; use reduce_special_case")
    if p.b == 1.0:
        raise ParamError("b = 1 is a singular branch of the closed form")
    if p.b == p.c:
        raise ParamError("b = c makes the closed form singular (exponent b-c vanishes)")


def _check_lh_branch(p: LogLinearParams) -> None:
    """Branch restrictions of the wage closed form: b not in {0, 1}, b + c != 1."""
    if p.b == 0.0 or p.b == 1.0:
        raise ParamError(f"the wage-relation closed form needs b outside {{0, 1}}, got b = {p.b!r}")
    if p.b + p.c == 1.0:
        raise ParamError("b + c = 1 is excluded: the integration step divides by b + c - 1")


@dataclass(frozen=True)
class VESParams:
    """Structural parameters of the variable-elasticity family whose
    marginal rate of substitution is ``R(k) = lam*k + mu*k**theta``.

    Hypotheses: ``lam != -1``, ``mu != 0``, ``theta != 1``, ``psi > 0``.
    """

    lam: float
    mu: float
    theta: float
    psi: float

    def __post_init__(self) -> None:
        _require_finite("lam", self.lam)
        _require_finite("mu", self.mu)
        _require_finite("theta", self.theta)
        _require_positive("psi", self.psi)
        if self.lam == -1.0:
            raise ParamError("lam = -1 is excluded (exponent 1/((1+lam)(1-theta)) undefined)")
        if self.mu == 0.0:
            raise ParamError("mu = 0 degenerates R(k) to lam*k; use a Cobb-Douglas spec instead")
        if self.theta == 1.0:
            raise ParamError("theta = 1 degenerates R(k) to a linear function; "
                             "use a Cobb-Douglas spec instead")


@dataclass(frozen=True)
class CobbDouglasParams:
    """y = A k^beta with capital share beta in (0, 1)."""

    A: float
    beta: float

    def __post_init__(self) -> None:
        _require_positive("A", self.A)
        _require_finite("beta", self.beta)
        if not 0.0 < self.beta < 1.0:
            raise ParamError(f"beta must lie in (0, 1), got {self.beta!r}")


@dataclass(frozen=True)
class CESParams:
    """Constant elasticity of substitution ``sigma`` (sigma = 1 excluded:
    that limit is Cobb-Douglas and has its own spec)."""

    gamma: float
    delta: float
    sigma: float

    def __post_init__(self) -> None:
        _require_positive("gamma", self.gamma)
        _require_finite("delta", self.delta)
        if not 0.0 < self.delta < 1.0:
            raise ParamError(f"delta must lie in (0, 1), got {self.delta!r}")
        _require_positive("sigma", self.sigma)
        if self.sigma == 1.0:
            raise ParamError("sigma = 1 is the Cobb-Douglas limit; use CobbDouglasParams")


@dataclass(frozen=True)
class LiuHildebrandParams:
    """Closed-form solution of the wage log-linear relation
    ``ln y = ln a + b ln(y - k y') + c ln k``.

    ``c = 0`` is admitted: it is the CES boundary of this family.
    ``b + c = 1`` is excluded (the closed form divides by b + c - 1).
    """

    a: float
    b: float
    c: float
    xi: float

    def __post_init__(self) -> None:
        _require_positive("a", self.a)
        _require_positive("b", self.b)
        if self.b == 1.0:
            raise ParamError("b = 1 is a singular branch of the wage closed form")
        _require_finite("c", self.c)
        if self.c < 0.0:
            raise ParamError(f"c must be non-negative, got {self.c!r}")
        if self.b + self.c == 1.0:
            raise ParamError("b + c = 1 is excluded: the integration step divides by b + c - 1")
        _require_finite("xi", self.xi)


@dataclass(frozen=True)
class LuFletcherParams:
    """Alternative parameterization of the wage-relation function with
    integration constant ``zeta``; with ``zeta = xi (b-1) a^(-1/b) / b``
    it coincides pointwise with :class:`LiuHildebrandParams`."""

    a: float
    b: float
    c: float
    zeta: float

    def __post_init__(self) -> None:
        _require_positive("a", self.a)
        _require_positive("b", self.b)
        if self.b == 1.0:
            raise ParamError("b = 1 is a singular branch of the wage closed form")
        _require_finite("c", self.c)
        if self.c < 0.0:
            raise ParamError(f"c must be non-negative, got {self.c!r}")
        if self.b + self.c == 1.0:
            raise ParamError("b + c = 1 is excluded: the integration step divides by b + c - 1")
        _require_finite("zeta", self.zeta)


@dataclass(frozen=True)
class SatoHoffmanParams:
    """F = gamma K^(alpha(1-delta*rho)) [L + (rho-1) K]^(alpha*delta*rho).

    Requires delta in (0, 1) and delta*rho in [0, 1].  For rho < 1 the
    function is only defined for k < (1 - delta*rho) / (1 - rho); for
    rho >= 1 the domain is unbounded.  Degree-one identities (marginal
    rate of substitution, elasticity) additionally require alpha = 1.
    """

    gamma: float
    delta: float
    rho: float
    alpha: float = 1.0

    def __post_init__(self) -> None:
        _require_positive("gamma", self.gamma)
        _require_finite("delta", self.delta)
        if not 0.0 < self.delta < 1.0:
            raise ParamError(f"delta must lie in (0, 1), got {self.delta!r}")
        _require_finite("rho", self.rho)
        dr = self.delta * self.rho
        if not 0.0 <= dr <= 1.0:
            raise ParamError(f"delta*rho must lie in [0, 1], got {dr!r}")
        _require_positive("alpha", self.alpha)

    def k_upper_bound(self) -> float:
        """Upper end of the admissible k range (inf when rho >= 1)."""
        if self.rho >= 1.0:
            return math.inf
        return (1.0 - self.delta * self.rho) / (1.0 - self.rho)


FamilySpec = Union[
    CobbDouglasParams,
    CESParams,
    LiuHildebrandParams,
    LuFletcherParams,
    SatoHoffmanParams,
    VESParams,
]


def _require_ratio(k: float) -> None:
    if not (math.isfinite(k) and k > 0.0):
        raise DomainError(f"capital-labor ratio must be positive and finite, got {k!r}")


def _lh_coeffs(spec: LiuHildebrandParams | LuFletcherParams) -> tuple[float, float, float]:
    """Coefficients (m, n, A) of the wage-relation closed form
    y = A [m k^((b-1)/b) + n k^(-c/b)]^(b/(b-1))."""
    b, c = spec.b, spec.c
    if isinstance(spec, LiuHildebrandParams):
        m = spec.xi * (b - 1.0) / b
    else:
        m = spec.zeta * spec.a ** (1.0 / b)
    n = (b - 1.0) / (b + c - 1.0)
    A = spec.a ** (1.0 / (1.0 - b))
    return m, n, A


# --------------------------------------------------------------------------
# Bracketed base of each closed form.  Positivity of this quantity is the
# evaluability condition; validity analysis intersects it with R > 0,
# R' > 0 and sigma > 0.
# --------------------------------------------------------------------------

@singledispatch
def bracket_base(spec: FamilySpec, k: float) -> float:
    raise TypeError(f"unsupported family spec: {type(spec).__name__}")


@bracket_base.register
def _(spec: CobbDouglasParams, k: float) -> float:
    _require_ratio(k)
    return math.inf  # no bracketed base; never binds


@bracket_base.register
def _(spec: CESParams, k: float) -> float:
    _require_ratio(k)
    s = spec.sigma
    return spec.delta * k ** ((s - 1.0) / s) + (1.0 - spec.delta)


@bracket_base.register
def _(spec: VESParams, k: float) -> float:
    _require_ratio(k)
    return (1.0 + spec.lam) * k ** (1.0 - spec.theta) + spec.mu


@bracket_base.register
def _(spec: LiuHildebrandParams, k: float) -> float:
    _require_ratio(k)
    m, n, _ = _lh_coeffs(spec)
    b, c = spec.b, spec.c
    return m * k ** ((b - 1.0) / b) + n * k ** (-c / b)


@bracket_base.register
def _(spec: LuFletcherParams, k: float) -> float:
    _require_ratio(k)
    m, n, _ = _lh_coeffs(spec)
    b, c = spec.b, spec.c
    return m * k ** ((b - 1.0) / b) + n * k ** (-c / b)


@bracket_base.register
def _(spec: SatoHoffmanParams, k: float) -> float:
    # (1 - delta*rho) + (rho - 1) k: positive exactly on the admissible
    # k range for rho < 1, and everywhere for rho >= 1.
    _require_ratio(k)
    return (1.0 - spec.delta * spec.rho) + (spec.rho - 1.0) * k


def _positive_bracket(spec: FamilySpec, k: float) -> float:
    base = bracket_base(spec, k)
    if not base > 0.0:
        raise DomainError(
            f"{type(spec).__name__}: bracketed base is non-positive at k = {k:.12g} "
            f"(base = {base:.6g}); the closed form is not defined there")
    return base


def _check_sh_domain(spec: SatoHoffmanParams, k: float) -> None:
    bound = spec.k_upper_bound()
    if k >= bound:
        raise DomainError(
            f"SatoHoffmanParams: k = {k:.12g} is outside the admissible range "
            f"k < {bound:.12g} for rho = {spec.rho:.12g}")


# --------------------------------------------------------------------------
# Intensive form y(k)
# --------------------------------------------------------------------------

@singledispatch
def eval_intensive(spec: FamilySpec, k: float) -> float:
    """Output per worker y(k) at capital-labor ratio k."""
    raise TypeError(f"unsupported family spec: {type(spec).__name__}")


@eval_intensive.register
def _(spec: CobbDouglasParams, k: float) -> float:
    _require_ratio(k)
    return spec.A * k ** spec.beta


@eval_intensive.register
def _(spec: CESParams, k: float) -> float:
    s = spec.sigma
    base = _positive_bracket(spec, k)
    return spec.gamma * base ** (s / (s - 1.0))


@eval_intensive.register
def _(spec: VESParams, k: float) -> float:
    base = _positive_bracket(spec, k)
    expo = 1.0 / ((1.0 + spec.lam) * (1.0 - spec.theta))
    return spec.psi * base ** expo


@eval_intensive.register
def _(spec: LiuHildebrandParams, k: float) -> float:
    base = _positive_bracket(spec, k)
    _, _, A = _lh_coeffs(spec)
    return A * base ** (spec.b / (spec.b - 1.0))


@eval_intensive.register
def _(spec: LuFletcherParams, k: float) -> float:
    base = _positive_bracket(spec, k)
    _, _, A = _lh_coeffs(spec)
    return A * base ** (spec.b / (spec.b - 1.0))


@eval_intensive.register
def _(spec: SatoHoffmanParams, k: float) -> float:
    _require_ratio(k)
    _check_sh_domain(spec, k)
    dr = spec.delta * spec.rho
    G = 1.0 + (spec.rho - 1.0) * k
    return spec.gamma * k ** (spec.alpha * (1.0 - dr)) * G ** (spec.alpha * dr)


# --------------------------------------------------------------------------
# Extensive form F(K, L), written out per family rather than delegated to
# L * y(K/L) so that homogeneity of degree one is a checkable property.
# --------------------------------------------------------------------------

def _require_factors(K: float, L: float) -> None:
    if not (math.isfinite(K) and K > 0.0):
        raise DomainError(f"capital input must be positive and finite, got {K!r}")
    if not (math.isfinite(L) and L > 0.0):
        raise DomainError(f"labor input must be positive and finite, got {L!r}")


@singledispatch
def eval_extensive(spec: FamilySpec, K: float, L: float) -> float:
    """Total output F(K, L)."""
    raise TypeError(f"unsupported family spec: {type(spec).__name__}")


@eval_extensive.register
def _(spec: CobbDouglasParams, K: float, L: float) -> float:
    _require_factors(K, L)
    return spec.A * K ** spec.beta * L ** (1.0 - spec.beta)


@eval_extensive.register
def _(spec: CESParams, K: float, L: float) -> float:
    _require_factors(K, L)
    s = spec.sigma
    e = (s - 1.0) / s
    base = spec.delta * K ** e + (1.0 - spec.delta) * L ** e
    return spec.gamma * base ** (s / (s - 1.0))


@eval_extensive.register
def _(spec: VESParams, K: float, L: float) -> float:
    _require_factors(K, L)
    lam, th = spec.lam, spec.theta
    base = (1.0 + lam) * K ** (1.0 - th) * L ** (lam * (1.0 - th)) \
        + spec.mu * L ** ((1.0 + lam) * (1.0 - th))
    if not base > 0.0:
        raise DomainError(
            f"VESParams: bracketed base is non-positive at K/L = {K / L:.12g}")
    return spec.psi * base ** (1.0 / ((1.0 + lam) * (1.0 - th)))


@eval_extensive.register
def _(spec: LiuHildebrandParams, K: float, L: float) -> float:
    _require_factors(K, L)
    m, n, A = _lh_coeffs(spec)
    b, c = spec.b, spec.c
    base = m * K ** ((b - 1.0) / b) + n * K ** (-c / b) * L ** ((b + c - 1.0) / b)
    if not base > 0.0:
        raise DomainError(
            f"LiuHildebrandParams: bracketed base is non-positive at K/L = {K / L:.12g}")
    return A * base ** (b / (b - 1.0))


@eval_extensive.register
def _(spec: LuFletcherParams, K: float, L: float) -> float:
    _require_factors(K, L)
    m, n, A = _lh_coeffs(spec)
    b, c = spec.b, spec.c
    base = m * K ** ((b - 1.0) / b) + n * K ** (-c / b) * L ** ((b + c - 1.0) / b)
    if not base > 0.0:
        raise DomainError(
            f"LuFletcherParams: bracketed base is non-positive at K/L = {K / L:.12g}")
    return A * base ** (b / (b - 1.0))


@eval_extensive.register
def _(spec: SatoHoffmanParams, K: float, L: float) -> float:
    _require_factors(K, L)
    _check_sh_domain(spec, K / L)
    dr = spec.delta * spec.rho
    inner = L + (spec.rho - 1.0) * K
    return spec.gamma * K ** (spec.alpha * (1.0 - dr)) * inner ** (spec.alpha * dr)


# --------------------------------------------------------------------------
# Closed-form derivatives of the intensive form.  y'(k) is the marginal
# product of capital (the rental rate) for degree-one families.
# --------------------------------------------------------------------------

@singledispatch
def intensive_derivative(spec: FamilySpec, k: float) -> float:
    """dy/dk from the closed form."""
    raise TypeError(f"unsupported family spec: {type(spec).__name__}")


@intensive_derivative.register
def _(spec: CobbDouglasParams, k: float) -> float:
    _require_ratio(k)
    return spec.A * spec.beta * k ** (spec.beta - 1.0)


@intensive_derivative.register
def _(spec: CESParams, k: float) -> float:
    s = spec.sigma
    base = _positive_bracket(spec, k)
    return spec.gamma * spec.delta * k ** (-1.0 / s) * base ** (1.0 / (s - 1.0))


@intensive_derivative.register
def _(spec: VESParams, k: float) -> float:
    base = _positive_bracket(spec, k)
    expo = 1.0 / ((1.0 + spec.lam) * (1.0 - spec.theta))
    return spec.psi * k ** (-spec.theta) * base ** (expo - 1.0)


def _lh_like_derivative(spec: LiuHildebrandParams | LuFletcherParams, k: float) -> float:
    base = _positive_bracket(spec, k)
    m, n, A = _lh_coeffs(spec)
    b, c = spec.b, spec.c
    Sp = m * (b - 1.0) / b * k ** (-1.0 / b) - n * c / b * k ** (-(b + c) / b)
    return A * b / (b - 1.0) * base ** (1.0 / (b - 1.0)) * Sp


@intensive_derivative.register
def _(spec: LiuHildebrandParams, k: float) -> float:
    return _lh_like_derivative(spec, k)


@intensive_derivative.register
def _(spec: LuFletcherParams, k: float) -> float:
    return _lh_like_derivative(spec, k)


@intensive_derivative.register
def _(spec: SatoHoffmanParams, k: float) -> float:
    y = eval_intensive(spec, k)
    dr = spec.delta * spec.rho
    G = 1.0 + (spec.rho - 1.0) * k
    g = spec.alpha * ((1.0 - dr) / k + dr * (spec.rho - 1.0) / G)
    return y * g


@singledispatch
def intensive_second_derivative(spec: FamilySpec, k: float) -> float:
    """d^2 y / dk^2 from the closed form."""
    raise TypeError(f"unsupported family spec: {type(spec).__name__}")


@intensive_second_derivative.register
def _(spec: CobbDouglasParams, k: float) -> float:
    _require_ratio(k)
    return spec.A * spec.beta * (spec.beta - 1.0) * k ** (spec.beta - 2.0)


@intensive_second_derivative.register
def _(spec: CESParams, k: float) -> float:
    s = spec.sigma
    base = _positive_bracket(spec, k)
    return (-spec.gamma * spec.delta * (1.0 - spec.delta) / s
            * k ** (-1.0 / s - 1.0) * base ** ((2.0 - s) / (s - 1.0)))


@intensive_second_derivative.register
def _(spec: VESParams, k: float) -> float:
    base = _positive_bracket(spec, k)
    lam, th = spec.lam, spec.theta
    expo = 1.0 / ((1.0 + lam) * (1.0 - th))
    return (-spec.psi * k ** (-th - 1.0) * base ** (expo - 2.0)
            * (lam * k ** (1.0 - th) + th * spec.mu))


def _lh_like_second_derivative(spec: LiuHildebrandParams | LuFletcherParams,
                               k: float) -> float:
    base = _positive_bracket(spec, k)
    m, n, A = _lh_coeffs(spec)
    b, c = spec.b, spec.c
    Sp = m * (b - 1.0) / b * k ** (-1.0 / b) - n * c / b * k ** (-(b + c) / b)
    Spp = (-m * (b - 1.0) / b ** 2 * k ** (-(1.0 + b) / b)
           + n * c * (b + c) / b ** 2 * k ** (-(2.0 * b + c) / b))
    return A * b / (b - 1.0) * (base ** ((2.0 - b) / (b - 1.0)) * Sp ** 2 / (b - 1.0)
                                + base ** (1.0 / (b - 1.0)) * Spp)


@intensive_second_derivative.register
def _(spec: LiuHildebrandParams, k: float) -> float:
    return _lh_like_second_derivative(spec, k)


@intensive_second_derivative.register
def _(spec: LuFletcherParams, k: float) -> float:
    return _lh_like_second_derivative(spec, k)


@intensive_second_derivative.register
def _(spec: SatoHoffmanParams, k: float) -> float:
    y = eval_intensive(spec, k)
    dr = spec.delta * spec.rho
    G = 1.0 + (spec.rho - 1.0) * k
    g = spec.alpha * ((1.0 - dr) / k + dr * (spec.rho - 1.0) / G)
    gp = spec.alpha * (-(1.0 - dr) / k ** 2 - dr * (spec.rho - 1.0) ** 2 / G ** 2)
    return y * (g * g + gp)


# --------------------------------------------------------------------------
# Parameter-space conversions
# --------------------------------------------------------------------------

def ves_from_loglinear(p: LogLinearParams) -> VESParams:
    """Map regression-space parameters (a, b, c, xi) of the rental-rate
    relation to the structural parameters (lam, mu, theta, psi):

        theta = c/b,  lam = (c-1)/(b-c),  psi = a^(1/(1-b)),
        mu = xi (b-1) a^(1/b) / b.
    """
    _check_ves_branch(p)
    xi = p.require_xi()
    if xi == 0.0:
        raise SingularError("xi = 0 gives mu = 0: the variable-elasticity closed form "
                            "degenerates to a constant-returns power function")
    b, c = p.b, p.c
    return VESParams(
        lam=(c - 1.0) / (b - c),
        mu=xi * (b - 1.0) * p.a ** (1.0 / b) / b,
        theta=c / b,
        psi=p.a ** (1.0 / (1.0 - b)),
    )


def loglinear_from_ves(v: VESParams) -> LogLinearParams:
    """Invert :func:`ves_from_loglinear`.  Requires lam*(theta-1) + theta != 0,
    and the image must satisfy the regression-space sign restrictions
    (a > 0, b > 0, c > 0); structural parameters outside that image raise
    :class:`ParamError`."""
    den = v.lam * (v.theta - 1.0) + v.theta
    if den == 0.0:
        raise SingularError("lam*(theta-1) + theta = 0: no log-linear representation")
    b = 1.0 / den
    c = b * v.theta
    if b <= 0.0:
        raise ParamError(f"structural parameters map to b = {b:.12g} <= 0; "
                         "no admissible log-linear representation")
    a = v.psi ** (1.0 - b)
    xi = v.mu * b * a ** (-1.0 / b) / (b - 1.0)
    return LogLinearParams(a=a, b=b, c=c, xi=xi)


def lh_from_loglinear(p: LogLinearParams) -> LiuHildebrandParams:
    """Read (a, b, c, xi) as the wage-relation (Liu-Hildebrand) family."""
    _check_lh_branch(p)
    return LiuHildebrandParams(a=p.a, b=p.b, c=p.c, xi=p.require_xi())


def lf_from_lh(p: LogLinearParams) -> LuFletcherParams:
    """Convert wage-relation parameters to the Lu-Fletcher parameterization,
    zeta = xi (b-1) a^(-1/b) / b, under which the two closed forms coincide."""
    _check_lh_branch(p)
    xi = p.require_xi()
    zeta = xi * (p.b - 1.0) * p.a ** (-1.0 / p.b) / p.b
    return LuFletcherParams(a=p.a, b=p.b, c=p.c, zeta=zeta)


def symmetric_form(p: LogLinearParams) -> tuple[float, float]:
    """Rewrite the rental-rate closed form in CES-like shape
    ``y = gamma [delta k^((b-1)/b) k^((1-c)/b) + (1-delta)]^(b/(b-1))``
    and return ``(gamma, delta)``.

    The defining base ``(1-b) a^(-1/b) / (c-b) + xi (b-1) / b`` must be
    positive (it is gamma^((b-1)/b)); otherwise no real gamma exists and
    :class:`DomainError` is raised.
    """
    _check_ves_branch(p)
    xi = p.require_xi()
    b, c = p.b, p.c
    q = (1.0 - b) * p.a ** (-1.0 / b) / (c - b)
    m = xi * (b - 1.0) / b
    base = q + m
    if not base > 0.0:
        raise DomainError(
            f"symmetric form undefined: the defining base is {base:.6g} <= 0")
    gamma = base ** (b / (b - 1.0))
    delta = q / base
    return gamma, delta


def reduce_special_case(p: LogLinearParams, tol: float = 1e-9
                        ) -> Union[CobbDouglasParams, CESParams, LogLinearParams]:
    """Collapse regression-space parameters onto a structural special case.

    |b| <= tol      -> Cobb-Douglas y = a k^c
    |c - 1| <= tol  -> CES with sigma = b (distribution parameter and scale
                       identified from the closed form at c = 1)
    otherwise       -> p returned unchanged (general variable-elasticity case)

    Total function: when a threshold is met but the target family's own
    invariants cannot be satisfied (e.g. b ~ 0 with c >= 1, or a CES
    identification with non-positive base or xi unset), the input is
    returned unchanged rather than raising.
    """
    if not (math.isfinite(tol) and tol >= 0.0):
        raise ParamError(f"tol must be a non-negative float, got {tol!r}")
    if abs(p.b) <= tol:
        if 0.0 < p.c < 1.0:
            return CobbDouglasParams(A=p.a, beta=p.c)
        return p
    if abs(p.c - 1.0) <= tol:
        b = p.b
        if b == 1.0 or b <= 0.0 or p.xi is None:
            return p
        q = p.a ** (-1.0 / b)
        m = p.xi * (b - 1.0) / b
        base = q + m
        if not base > 0.0:
            return p
        delta = q / base
        if not 0.0 < delta < 1.0:
            return p
        return CESParams(gamma=base ** (b / (b - 1.0)), delta=delta, sigma=b)
    return p
