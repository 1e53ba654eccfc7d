import math

import numpy as np
import pytest

from cyclic_higgs.toda import kernels, solver as S

GROUPS = ("A2", "C2", "G2")


def balance_by_root_finding(p):
    """Independent oracle: solve the projected balance equation F(Omega) = 0 with scipy."""
    opt = pytest.importorskip("scipy.optimize")
    sol = opt.root(lambda w: S.nonlinearity(p, w), np.zeros(p.dim), tol=1e-14)
    assert np.max(np.abs(S.nonlinearity(p, sol.x))) <= 1e-12
    return sol.x


@pytest.mark.parametrize("name", GROUPS)
def test_sigma_dims_and_coefficients(name):
    p = S.build_problem(name, 1 + 2j, 8)
    assert p.dim == (1 if name == "A2" else 2)
    assert np.all(p.coefficients >= 0)
    eta = p.roots.index(max(p.roots, key=lambda a: a.degree))
    assert p.coefficients[eta] == pytest.approx(5.0)


@pytest.mark.parametrize("name", GROUPS)
@pytest.mark.parametrize("q", [1.0, 2.5 - 1j, 0.3j])
def test_constant_solution_matches_root_finder(name, q):
    p = S.build_problem(name, q, 8)
    star = S.constant_solution(p)
    assert np.allclose(star, balance_by_root_finding(p), atol=1e-10)
    R = S.residual(p, S.constant_field(p, star))
    assert np.max(np.abs(R)) <= 1e-12


def test_constant_solution_q_zero():
    p = S.build_problem("A2", 0, 8)
    with pytest.raises(S.NoConstantSolution, match="no constant solution"):
        S.constant_solution(p)


def test_residual_q_zero_at_origin_is_constant_nonzero():
    p = S.build_problem("C2", 0, 8)
    R = S.residual(p, np.zeros((p.dim, 8, 8)))
    # s * (-sum_b r_b h_b), projected: all exponentials equal 1
    expected = -p.sign * (p.P.T @ p.coefficients)
    assert np.allclose(R, expected[:, None, None])
    assert np.all(np.abs(R) > 0.1)


@pytest.mark.parametrize("name", GROUPS)
def test_scaling_law(name):
    p1 = S.build_problem(name, 1.0, 8)
    p2 = S.build_problem(name, 2.0, 8)
    shift = S.constant_solution_coroot(p2) - S.constant_solution_coroot(p1)
    assert np.allclose(shift, math.log(2) * S.scaling_direction(p1), atol=1e-14)


def test_a2_shift_is_along_h_eta():
    p1, p2 = S.build_problem("A2", 1.0, 8), S.build_problem("A2", 2.0, 8)
    shift = S.constant_solution_coroot(p2) - S.constant_solution_coroot(p1)
    assert shift[0] == pytest.approx(shift[1]) and shift[0] == pytest.approx(math.log(2) / 3)


@pytest.mark.parametrize("name", GROUPS)
def test_phase_invariance(name):
    a = S.constant_solution(S.build_problem(name, 1.3, 8))
    b = S.constant_solution(S.build_problem(name, 1.3 * np.exp(0.7j), 8))
    assert np.array_equal(a, b)


def test_residual_rejects_bad_input():
    p = S.build_problem("A2", 1, 8)
    with pytest.raises(ValueError):
        S.residual(p, np.zeros((1, 8, 9)))
    bad = np.zeros((1, 8, 8))
    bad[0, 1, 1] = np.nan
    with pytest.raises(FloatingPointError):
        S.residual(p, bad)


@pytest.mark.parametrize("name", GROUPS)
def test_translation_equivariance(name):
    p = S.build_problem(name, 1 + 1j, 16)
    om = 0.2 * np.random.default_rng(0).standard_normal((p.dim, 16, 16))
    shifted = np.roll(om, (3, -5), axis=(1, 2))
    assert np.array_equal(S.residual(p, shifted), np.roll(S.residual(p, om), (3, -5), axis=(1, 2)))


@pytest.mark.parametrize("name", GROUPS)
def test_jacobian_finite_differences(name):
    p = S.build_problem(name, 1 - 0.5j, 16)
    assert max(S.jacobian_fd_errors(p, probes=10)) <= 1e-6


@pytest.mark.parametrize("name", GROUPS)
def test_truncation_error_second_order(name):
    # residual of the manufactured solution (fixed smooth Omega) drops by ~4 per doubling
    errs = []
    for n in (16, 32, 64):
        p = S.build_problem(name, 1.0, n)
        om, src = S.manufactured(p)
        errs.append(np.max(np.abs(S.residual(p.with_source(src), om))))
    assert 3.6 < errs[0] / errs[1] < 4.4 and 3.6 < errs[1] / errs[2] < 4.4


@pytest.mark.parametrize("name", GROUPS)
def test_mms_order(name):
    orders = S.observed_orders(S.mms_errors(name))
    assert all(1.9 <= o <= 2.1 for o in orders), orders


@pytest.mark.parametrize("name", GROUPS)
def test_newton_from_zero(name):
    p = S.build_problem(name, 1.0, 32)
    st = S.solve_newton(p, tol=1e-10)
    assert st.converged and st.residual_norm <= 1e-10
    assert np.max(np.abs(st.omega - S.constant_solution(p)[:, None, None])) <= 1e-8


def test_g2_random_small_init():
    p = S.build_problem("G2", 1 + 1j, 32)
    init = 0.1 * np.random.default_rng(7).standard_normal((2, 32, 32))
    st = S.solve_newton(p, init=init)
    assert st.converged
    assert np.max(np.abs(st.omega - S.constant_solution(p)[:, None, None])) <= 1e-8


def test_newton_without_preconditioner_agrees():
    p = S.build_problem("C2", 2 - 1j, 16)
    a = S.solve_newton(p, precondition=False)
    b = S.solve_newton(p)
    assert a.converged and b.converged
    assert np.max(np.abs(a.omega - b.omega)) < 1e-10


def test_newton_requires_positive_tol():
    with pytest.raises(ValueError):
        S.solve_newton(S.build_problem("A2", 1, 8), tol=0)


def test_step_rejection_reported():
    p = S.build_problem("G2", 1, 16)
    st = S.solve_newton(p, init=np.full((2, 16, 16), 30.0), max_halvings=2)
    assert not st.converged and st.message


@pytest.mark.parametrize("name", GROUPS)
def test_coercivity_selects_minus(name):
    s, diag = S.choose_sign(name, 1.0, 16)
    assert s == -1
    assert diag["minus"] > 0 > diag["plus"]


def test_cg_solves_spd_system():
    rng = np.random.default_rng(1)
    A = rng.standard_normal((20, 20))
    A = A @ A.T + 20 * np.eye(20)
    b = rng.standard_normal(20)
    res = S.conjugate_gradient(lambda v: A @ v, b, rtol=1e-12)
    assert np.allclose(A @ res.x, b, atol=1e-9)
    ev = np.linalg.eigvalsh(A)
    assert ev[0] - 1e-8 <= res.ritz_min and res.ritz_max <= ev[-1] + 1e-8


def test_cg_reports_negative_curvature():
    res = S.conjugate_gradient(lambda v: -v, np.ones(5))
    assert res.breakdown and res.ritz_min < 0


@pytest.mark.parametrize("name", GROUPS)
def test_density_at_zero_matches_exact_engine(name):
    for q in (0, 1, 2 - 1j):
        p = S.build_problem(name, q, 8)
        dens, _ = S.area_density(p, np.zeros((p.dim, 8, 8)))
        assert np.max(np.abs(dens - S.exact_density_at_zero(p))) <= 1e-10


@pytest.mark.parametrize("name", GROUPS)
def test_density_constant_and_positive(name):
    p = S.build_problem(name, 0.7 + 0.2j, 16)
    dens, total = S.area_density(p, S.constant_field(p, S.constant_solution(p)))
    assert np.ptp(dens) <= 1e-12 and np.all(dens > 0)
    assert total == pytest.approx(dens[0, 0] * p.L ** 2)


@pytest.mark.skipif(not kernels.compiled_available(), reason="compiled kernels not built")
@pytest.mark.parametrize("name", GROUPS)
def test_backends_agree(name):
    py = kernels.get_backend("python")
    cy = kernels.get_backend("cython")
    p = S.build_problem(name, 1 + 1j, 24)
    rng = np.random.default_rng(3)
    om = 0.3 * rng.standard_normal((p.dim, 24, 24))
    d = rng.standard_normal(om.shape)
    E1, E2 = py.nonlinear_terms(om, p.W, p.coefficients), cy.nonlinear_terms(om, p.W, p.coefficients)
    assert np.allclose(E1, E2, rtol=1e-14, atol=0)
    src = rng.standard_normal(om.shape)
    scale = p.inv_h2
    assert np.allclose(py.residual(om, E1, p.P, -1.0, p.inv_h2, src), cy.residual(om, E1, p.P, -1.0, p.inv_h2, src),
                       atol=1e-12 * scale)
    assert np.allclose(py.jacobian_apply(d, E1, p.W, p.P, -1.0, p.inv_h2),
                       cy.jacobian_apply(d, E1, p.W, p.P, -1.0, p.inv_h2), atol=1e-12 * scale)
    assert np.allclose(py.metric_jacobian_apply(d, E1, p.W, p.P, -1.0, p.inv_h2, p.gram),
                       cy.metric_jacobian_apply(d, E1, p.W, p.P, -1.0, p.inv_h2, p.gram), atol=1e-11 * scale)
    assert np.allclose(py.laplacian(om, 1.0), cy.laplacian(om, 1.0), atol=1e-13)


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


def test_solve_driver_reports():
    rep, p, st = S.solve("A2", 1.0, 16)
    js = rep.to_json()
    assert js["converged"] and js["sign_used"] == "minus" and js["distance_to_constant"] <= 1e-8
    assert len(S.state_rows(p, st)) == 16 * 16
    rep, _, st = S.solve("A2", 0.0, 16)
    assert st is None and rep.message == S.NO_CONSTANT_SOLUTION
    rep, _, st = S.solve("C2", 1.0, 16, sign="plus")
    assert not rep.converged and "coercivity" in rep.message and rep.ritz_min < 0
