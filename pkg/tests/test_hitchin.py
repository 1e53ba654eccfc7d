import random
from fractions import Fraction as Q

import numpy as np
import pytest

from cyclic_higgs import load
from cyclic_higgs.exact import ExactScalar, I, to_float
from cyclic_higgs.hitchin import (area_forms, area_identity_holds, build_higgs_field, calibrate_top_invariant,
                                  compute_area_constants, cyclic_frames, frame_area_density, holomorphic_frames,
                                  invariants, verify_area_constants, verify_area_form_identity, verify_higgs)
from conftest import ALL_GROUPS, all_pass

K0 = {"A2": 2, "C2": 3, "G2": 5, "A3": 3}
# lowest nonvanishing ad-invariant on the cyclic slice: (degree, power of q, kappa)
CALIBRATION = {
    "A2": (6, 2, ExactScalar.coerce(27)),
    "C2": (4, 1, ExactScalar.sqrt(2) * 18),
    "G2": (6, 1, ExactScalar.sqrt(3) * -1560),
}


@pytest.mark.parametrize("name", ALL_GROUPS)
def test_area_constants(name):
    eng = load(name)
    ac = compute_area_constants(eng)
    assert ac.k0 == K0[name] == eng.rs.longest.degree
    # oracle: u0 is Killing-dual to minus the half-sum of positive coroots
    assert ac.u0_sharp == tuple(-x for x in eng.triple.r)
    assert all_pass(verify_area_constants(eng, ac))


@pytest.mark.parametrize("name", ALL_GROUPS)
def test_area_identity_normalized(name):
    eng = load(name)
    ac = compute_area_constants(eng)
    assert all_pass(verify_area_form_identity(eng, ac, cyclic_frames(eng, n_random=15)))


def test_literal_identity_off_by_two():
    # the unnormalized identity fails exactly by the wedge factor 2 when both sides are nonzero
    eng = load("G2")
    ac = compute_area_constants(eng)
    for fr in cyclic_frames(eng, n_random=5):
        f = area_forms(eng, ac, fr)
        rhs = f["Omega_0"] - f["Omega_1"] * ac.k0
        assert f["Omega_v0"] == rhs * 2
        assert area_identity_holds(eng, ac, fr, normalization=1) == rhs.is_zero()


def test_area_forms_nonnegative_on_cyclic_surfaces():
    eng = load("C2")
    ac = compute_area_constants(eng)
    for fr in holomorphic_frames(eng, n_random=10):
        f = area_forms(eng, ac, fr)
        assert f["Omega_0"].sign() >= 0 and f["Omega_1"].sign() >= 0


@pytest.mark.parametrize("name", ALL_GROUPS)
def test_higgs_section(name):
    assert all_pass(verify_higgs(load(name), n=10))


@pytest.mark.parametrize("name", sorted(CALIBRATION))
def test_calibration_frozen(name):
    cal = calibrate_top_invariant(load(name))
    assert (cal.degree, cal.power, cal.kappa) == CALIBRATION[name]
    assert cal.exact


def test_a2_invariant_matches_matrix_model():
    # oracle: Phi = E21 + E32 + q E13 in sl3; det(t - ad Phi) on gl3 computed with sympy
    sp = pytest.importorskip("sympy")
    q, t = sp.symbols("q t")
    E = lambda i, j: sp.Matrix(3, 3, lambda a, b: 1 if (a, b) == (i, j) else 0)
    phi = E(1, 0) + E(2, 1) + q * E(0, 2)
    ad = sp.kronecker_product(phi, sp.eye(3)) - sp.kronecker_product(sp.eye(3), phi.T)
    cp = sp.Poly(sp.expand((t * sp.eye(9) - ad).det() / t), t)
    assert cp.coeff_monomial(t ** 2) == 27 * q ** 2


@pytest.mark.parametrize("name", ["C2", "G2"])
def test_invariant_matches_float_eigenvalues(name):
    # second route: characteristic polynomial from floating-point eigenvalues of ad(Phi)
    eng = load(name)
    deg, _, kappa = CALIBRATION[name]
    g = eng.alg
    for s in (1, 2):
        phi = build_higgs_field(eng, [0] * (g.rank - 1) + [s]).value
        ad = np.array([[to_float(x) for x in row] for row in g.ad_matrix(phi)])
        coeffs = np.poly(ad)  # leading first
        assert coeffs[deg].real == pytest.approx(to_float(kappa).real * s, rel=1e-8)


@pytest.mark.parametrize("name", ["A2", "C2", "G2"])
def test_invariants_separate(name):
    eng = load(name)
    vals = {str(invariants(eng, build_higgs_field(eng, [0] * (eng.rs.rank - 1) + [s]))) for s in (1, 2, 3)}
    assert len(vals) == 3


def test_invariants_of_Y_vanish():
    eng = load("G2")
    cs = invariants(eng, eng.triple.Y)
    assert cs[-1] == 1 and all(c.is_zero() for c in cs[:-1])


def test_higgs_field_length_checked():
    with pytest.raises(ValueError):
        build_higgs_field(load("A2"), [1])


@pytest.mark.parametrize("name", ["A2", "C2", "G2"])
def test_frame_density_equals_killing_pairing(name):
    eng = load(name)
    rng = random.Random(0)
    for _ in range(5):
        qv = ExactScalar.gaussian(rng.randint(-3, 3), rng.randint(-3, 3))
        phi = build_higgs_field(eng, [0] * (eng.rs.rank - 1) + [qv]).value
        d = frame_area_density(eng, phi)
        assert d == eng.alg.killing(phi, eng.rho(phi)) * -2
        assert d.is_real() and d.sign() > 0
