import numpy as np
import pytest

from conftest import draw_ves_structural, relerr
from vesprod import (
    CESParams,
    CobbDouglasParams,
    DomainError,
    LiuHildebrandParams,
    LogLinearParams,
    ParamError,
    SatoHoffmanParams,
    SingularError,
    VESParams,
    eval_intensive,
    ode_integrate_theorem,
    reduce_special_case,
    verify_equivalence_lh_lf,
    verify_family,
    verify_reduction,
    verify_sato_hoffman,
    ves_from_loglinear,
)
import vesprod.oracles as oracles_module


# ---------------------------------------------------------------------------
# ODE integration
# ---------------------------------------------------------------------------

def test_ode_hand_case():
    # lam=0, mu=1, theta=2: y = k/(1+k); y(1) = 1/2, y(2) = 2/3
    v = VESParams(lam=0.0, mu=1.0, theta=2.0, psi=1.0)
    y_end = ode_integrate_theorem(v, 1.0, 0.5, 2.0, 10000)
    assert relerr(y_end, 2.0 / 3.0) < 1e-10


def test_ode_zero_length_path_is_exact():
    v = VESParams(lam=0.0, mu=1.0, theta=2.0, psi=1.0)
    assert ode_integrate_theorem(v, 1.3, 0.77, 1.3, 100) == 0.77


def test_ode_matches_closed_form_on_reference_fit(reference_fit_ves):
    y_start = eval_intensive(reference_fit_ves, 2.2)
    y_end = ode_integrate_theorem(reference_fit_ves, 2.2, y_start, 5.0, 10000)
    assert relerr(y_end, eval_intensive(reference_fit_ves, 5.0)) < 1e-6


def test_ode_backward_path():
    v = VESParams(lam=0.3, mu=0.8, theta=1.7, psi=1.2)
    y2 = eval_intensive(v, 2.0)
    y1 = ode_integrate_theorem(v, 2.0, y2, 0.7, 20000)
    assert relerr(y1, eval_intensive(v, 0.7)) < 1e-10


def _convergence_errors(v, k0, k1):
    """(n, err(n), err(2n)) with err(n) inside the truncation-dominated band."""
    y0 = eval_intensive(v, k0)
    y_ref = eval_intensive(v, k1)
    n = 8
    err = relerr(ode_integrate_theorem(v, k0, y0, k1, n), y_ref)
    while err > 1e-4 and n < 2 ** 14:
        n *= 2
        err = relerr(ode_integrate_theorem(v, k0, y0, k1, n), y_ref)
    err2 = relerr(ode_integrate_theorem(v, k0, y0, k1, 2 * n), y_ref)
    return n, err, err2


def test_ode_fourth_order_convergence(rng):
    shrunk = 0
    for _ in range(10):
        v = draw_ves_structural(rng)
        n, err, err2 = _convergence_errors(v, 0.4, 2.8)
        if err < 1e-11:
            continue  # already at the floating-point floor
        assert err / err2 >= 15.0, (v, n, err, err2)
        shrunk += 1
    assert shrunk >= 8


def test_ode_singular_denominator():
    # (1+lam) k + mu k^theta = -k + k^2 crosses zero at k = 1
    v = VESParams(lam=-2.0, mu=1.0, theta=2.0, psi=1.0)
    with pytest.raises(SingularError):
        ode_integrate_theorem(v, 0.5, 1.0, 2.0, 100)


def test_ode_input_validation():
    v = VESParams(lam=0.0, mu=1.0, theta=2.0, psi=1.0)
    with pytest.raises(DomainError):
        ode_integrate_theorem(v, -1.0, 0.5, 2.0, 100)
    with pytest.raises(DomainError):
        ode_integrate_theorem(v, 1.0, 0.0, 2.0, 100)
    with pytest.raises(DomainError):
        ode_integrate_theorem(v, 1.0, 0.5, 2.0, 1)


# ---------------------------------------------------------------------------
# verify_family
# ---------------------------------------------------------------------------

def test_verify_family_reference_fit(reference_fit_ves):
    grid = list(np.geomspace(2.4, 80.0, 64))
    report = verify_family(reference_fit_ves, grid)
    assert report.passed
    assert report.max_rel_error < 1e-6
    assert report.points_checked == 64
    assert report.check_name == "family"


def test_verify_family_smooth_ces():
    report = verify_family(CESParams(gamma=1.3, delta=0.35, sigma=0.6),
                           list(np.geomspace(0.2, 10.0, 40)))
    assert report.passed
    assert report.max_rel_error < 1e-6


def test_verify_family_point_outside_validity(reference_fit_ves):
    # k = 1.0 lies below the R > 0 boundary near 2.0776
    with pytest.raises(DomainError, match="1"):
        verify_family(reference_fit_ves, [1.0, 3.0, 5.0])


def test_verify_family_detects_corruption(reference_fit_ves, monkeypatch):
    from vesprod.substitution import sigma_closed as true_sigma
    monkeypatch.setattr(oracles_module, "sigma_closed",
                        lambda spec, k: 1.01 * true_sigma(spec, k))
    report = verify_family(reference_fit_ves, list(np.geomspace(2.4, 20.0, 16)))
    assert not report.passed
    assert report.worst_quantity == "sigma"


def test_verify_family_grid_validation(reference_fit_ves):
    with pytest.raises(ParamError):
        verify_family(reference_fit_ves, [3.0, 2.5])
    with pytest.raises(DomainError):
        verify_family(reference_fit_ves, [-1.0, 2.5])
    with pytest.raises(ParamError):
        verify_family(reference_fit_ves, [])


def test_verify_family_deterministic(reference_fit_ves):
    grid = list(np.geomspace(2.4, 40.0, 24))
    assert verify_family(reference_fit_ves, grid) == verify_family(reference_fit_ves, grid)


# ---------------------------------------------------------------------------
# verify_equivalence_lh_lf
# ---------------------------------------------------------------------------

def test_equivalence_reference_params():
    p = LogLinearParams(a=1.0, b=0.5, c=0.2, xi=-1.0)
    report = verify_equivalence_lh_lf(p, list(np.geomspace(0.1, 10.0, 50)))
    assert report.passed
    assert report.max_rel_error < 1e-12


def test_equivalence_zero_xi_exact():
    p = LogLinearParams(a=2.0, b=0.5, c=0.2, xi=0.0)
    report = verify_equivalence_lh_lf(p, list(np.geomspace(0.5, 5.0, 20)))
    assert report.max_rel_error == 0.0
    assert report.max_abs_error == 0.0


def test_equivalence_excluded_branch():
    with pytest.raises(ParamError):
        verify_equivalence_lh_lf(LogLinearParams(a=1.0, b=0.5, c=0.5, xi=-1.0), [1.0])


# ---------------------------------------------------------------------------
# verify_reduction
# ---------------------------------------------------------------------------

def test_reduction_constant_sigma_case():
    p = LogLinearParams(a=1.0, b=0.6, c=1.0, xi=-1.0)
    spec = ves_from_loglinear(p)
    target = reduce_special_case(p)
    assert isinstance(target, CESParams)
    assert target.sigma == pytest.approx(0.6)
    report = verify_reduction(spec, target, list(np.geomspace(0.1, 10.0, 50)))
    assert report.passed
    assert report.max_rel_error < 1e-10


def test_reduction_wage_relation_ces_boundary():
    # c = 0 boundary of the wage-relation family is a CES function with
    # sigma = b and delta = xi(b-1) / (b + xi(b-1))
    a, b, xi = 1.4, 0.7, -1.0
    lh = LiuHildebrandParams(a=a, b=b, c=0.0, xi=xi)
    delta = xi * (b - 1.0) / (b + xi * (b - 1.0))
    m = xi * (b - 1.0) / b
    gamma = a ** (1.0 / (1.0 - b)) * (m + 1.0) ** (b / (b - 1.0))
    target = CESParams(gamma=gamma, delta=delta, sigma=b)
    report = verify_reduction(lh, target, list(np.geomspace(0.2, 20.0, 40)))
    assert report.passed, report
    assert report.max_rel_error < 1e-10


def test_reduction_identity_is_exact():
    cd = CobbDouglasParams(A=2.0, beta=0.4)
    report = verify_reduction(cd, cd, list(np.geomspace(0.1, 10.0, 20)))
    assert report.max_rel_error == 0.0


# ---------------------------------------------------------------------------
# verify_sato_hoffman
# ---------------------------------------------------------------------------

def test_sato_hoffman_affine_sigma_verified():
    s = SatoHoffmanParams(gamma=1.0, delta=0.5, rho=0.5)
    report = verify_sato_hoffman(s, list(np.geomspace(0.05, 1.4, 32)))
    assert report.passed
    assert report.max_rel_error < 1e-6


def test_sato_hoffman_rho_one_is_unit_sigma():
    s = SatoHoffmanParams(gamma=1.0, delta=0.5, rho=1.0)
    report = verify_sato_hoffman(s, list(np.geomspace(0.1, 10.0, 16)))
    assert report.passed  # sigma identically 1, affine slope 0


def test_sato_hoffman_domain_violation():
    s = SatoHoffmanParams(gamma=1.0, delta=0.5, rho=0.5)
    with pytest.raises(DomainError):
        verify_sato_hoffman(s, [0.5, 1.6])


def test_sato_hoffman_alpha_rejected():
    s = SatoHoffmanParams(gamma=1.0, delta=0.5, rho=0.5, alpha=2.0)
    with pytest.raises(ParamError):
        verify_sato_hoffman(s, [0.5])


# ---------------------------------------------------------------------------
# Report invariants
# ---------------------------------------------------------------------------

def test_report_passed_iff_within_tolerance(reference_fit_ves):
    grid = list(np.geomspace(2.4, 20.0, 16))
    report = verify_family(reference_fit_ves, grid, tolerance=1e-12)
    assert report.passed == (report.max_rel_error <= 1e-12)
    assert not report.passed
    report2 = verify_family(reference_fit_ves, grid, tolerance=1e-3)
    assert report2.passed
    assert report2.points_checked > 0
