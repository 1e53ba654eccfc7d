"""Acceptance criteria 1-13, one test (or small group) per criterion.

Each criterion records a PASS/FAIL line, printed in the terminal summary.
"""

import time

import numpy as np
import pytest

from cyclic_higgs import load
from cyclic_higgs.cyclic import (sample_frames, verify_bracket_table, verify_cyclic_dec_identities,
                                 verify_form_calculus, verify_rigidity_kernels)
from cyclic_higgs.engine import Engine
from cyclic_higgs.hitchin import (area_identity_holds, calibrate_top_invariant, compute_area_constants,
                                  cyclic_frames, verify_area_constants, verify_area_form_identity, verify_higgs)
from cyclic_higgs.involutions import (verify_cartan_involution, verify_hitchin_involution, verify_involution_suite,
                                      verify_rho_principal, verify_torus)
from cyclic_higgs.principal import exponents
from cyclic_higgs.rootsys import build_root_system
from cyclic_higgs.toda import solver as S
from conftest import record

GROUPS = ("A2", "C2", "G2")


def failing(entries):
    return [e["proposition_id"] for e in entries if e["status"] != "pass"]


def test_c01_exponents():
    t = time.perf_counter()
    got, dims = {}, {}
    for name in GROUPS:
        eng = Engine(build_root_system(name))  # fresh engine, so the timing includes construction
        got[name] = exponents(eng.kostant)
        dims[name] = (sum(2 * m + 1 for m in got[name]), eng.alg.dim)
    elapsed = time.perf_counter() - t
    ok = (got == {"A2": [1, 2], "C2": [1, 3], "G2": [1, 5]}
          and dims == {"A2": (8, 8), "C2": (10, 10), "G2": (14, 14)} and elapsed < 1.0)
    record(1, ok, f"exponents {got}, {elapsed:.2f}s")
    assert ok


def test_c02_chevalley_jacobi():
    times, bad = {}, []
    for name in GROUPS:
        t = time.perf_counter()
        g = load(name).alg
        entries = g.verify_axioms() + [g.verify_jacobi()]
        times[name] = time.perf_counter() - t
        bad += failing(entries)
        assert entries[-1]["pairs_checked"] == g.dim ** 3
    ok = not bad and times["G2"] < 10.0
    record(2, ok, f"failures {bad}, G2 {times['G2']:.2f}s")
    assert ok


def test_c03_involutions():
    bad, dims = [], {}
    for name in GROUPS:
        e = load(name)
        entries = (verify_cartan_involution(e.rho) + [verify_rho_principal(e.rho, e.triple)]
                   + verify_hitchin_involution(e.sigma, e.rho, e.triple, e.kostant)
                   + verify_involution_suite(e.rho, e.sigma, e.triple))
        bad += failing(entries)
        dims[name] = e.sigma.fixed_space_dim()
    ok = not bad and dims == {"A2": 3, "C2": 4, "G2": 6}
    record(3, ok, f"fixed dims {dims}, failures {bad}")
    assert ok


def test_c04_torus():
    dims, bad = {}, []
    for name in GROUPS:
        e = load(name)
        dims[name] = e.torus.dim_tc
        bad += failing(verify_torus(e.torus, e.rho, e.sigma))
    e = load("A2")
    g = e.alg
    from cyclic_higgs.involutions import _in_span
    line = _in_span([g.coroot(e.rs.longest)], e.torus.tc_basis[0])
    simple_out = not any(_in_span(e.torus.tc_basis, g.coroot(a)) for a in e.rs.simple)
    ok = dims == {"A2": 1, "C2": 2, "G2": 2} and line and simple_out and not bad
    record(4, ok, f"dim t_C {dims}")
    assert ok


def test_c05_bracket_table():
    counts, bad = {}, []
    for name in GROUPS:
        entries = verify_bracket_table(load(name).alg)
        counts[name] = len(entries)
        bad += failing(entries)
    ok = not bad and set(counts.values()) == {9}
    record(5, ok, f"inclusions per group {counts}, counterexamples {len(bad)}")
    assert ok


def test_c06_cyclic_decomposition():
    bad, n = [], 0
    for name in GROUPS:
        g = load(name).alg
        frames = sample_frames(g, n_random=100, seed=0)
        n += len(frames)
        bad += failing(verify_cyclic_dec_identities(frames))
        bad += failing([e for e in verify_form_calculus(g) if e["proposition_id"] == "forms.jacobi"])
    ok = not bad
    record(6, ok, f"{n} frames, failures {bad}")
    assert ok


def test_c07_rigidity_kernels():
    bad, seen = [], {}
    for name in GROUPS:
        entries = verify_rigidity_kernels(load(name).alg)
        seen[name] = sorted(e["proposition_id"].split(".")[1] for e in entries)
        bad += failing(entries)
    ok = not bad and seen == {"A2": ["K1", "K2", "K3"], "C2": ["K1", "K3", "K4"], "G2": ["K1", "K3", "K4"]}
    record(7, ok, f"kernels {seen}")
    assert ok


def test_c08_higgs_section():
    bad = []
    for name in GROUPS:
        entries = verify_higgs(load(name), n=20, seed=0)
        bad += failing(entries)
        assert all(e["pairs_checked"] == 20 for e in entries)
    record(8, not bad, f"20 seeded q per group, failures {bad}")
    assert not bad


def _linear_calibration(name):
    cal = calibrate_top_invariant(load(name), samples=(1, 2, 3))
    values = [c for _, c in cal.samples]
    separates = len(set(values)) == 3
    return cal, separates, separates and cal.power == 1 and cal.exact


@pytest.mark.parametrize("name", ["C2", "G2"])
def test_c09_invariants_linear(name):
    cal, separates, linear = _linear_calibration(name)
    record(9, linear, f"{name}: c_{cal.degree} = {cal.kappa} q")
    assert linear


@pytest.mark.xfail(strict=True, reason="for A2 every ad-invariant is even in Phi; the lowest nonvanishing "
                                       "one on the cyclic slice is 27 q^2, so no coefficient is linear in q")
def test_c09_invariants_linear_a2():
    cal, separates, linear = _linear_calibration("A2")
    record(9, linear, f"A2: lowest invariant c_{cal.degree} = {cal.kappa} q^{cal.power} (separates: {separates})")
    assert linear


def test_c10_area_constants_defining_system():
    bad, k0 = [], {}
    for name in GROUPS:
        eng = load(name)
        ac = compute_area_constants(eng)
        k0[name] = int(ac.k0)
        bad += failing(verify_area_constants(eng, ac))
        # the identity holds exactly once the factor 2 of w ^ w is taken into account
        bad += failing(verify_area_form_identity(eng, ac, cyclic_frames(eng)))
    ok = not bad and all(v > 0 for v in k0.values())
    record(10, ok, f"u0 solves its system, k0 {k0}, Omega_v0 = 2(Omega_0 - k0 Omega_1) on all frames")
    assert ok


@pytest.mark.xfail(strict=True, reason="with (w ^ w)(e1, e2) = 2[w(e1), w(e2)] the pointwise identity carries a "
                                       "factor 2: Omega_v0 = 2 (Omega_0 - k0 Omega_1)")
def test_c10_area_identity_literal():
    held, total = 0, 0
    for name in GROUPS:
        eng = load(name)
        ac = compute_area_constants(eng)
        for fr in cyclic_frames(eng):
            total += 1
            held += area_identity_holds(eng, ac, fr, normalization=1)
    ok = held == total
    record(10, ok, f"literal Omega_v0 = Omega_0 - k0 Omega_1 holds on {held}/{total} frames")
    assert ok


def test_c11_toda_constant_oracle():
    dist, times = {}, {}
    for name in GROUPS:
        t = time.perf_counter()
        p = S.build_problem(name, 1.0, 32, 1.0, sign=S.choose_sign(name, 1.0, 32)[0])
        st = S.solve_newton(p, init=np.zeros((p.dim, 32, 32)), tol=1e-10)
        times[name] = time.perf_counter() - t
        dist[name] = float(np.max(np.abs(st.omega - S.constant_solution(p)[:, None, None]))) if st.converged else np.inf
    ok = all(d <= 1e-8 for d in dist.values()) and all(t < 30 for t in times.values())
    record(11, ok, "distance " + ", ".join(f"{k} {v:.1e}" for k, v in dist.items()))
    assert ok


def test_c12_mms_and_jacobian():
    orders, fd = {}, {}
    for name in GROUPS:
        orders[name] = S.observed_orders(S.mms_errors(name, sizes=(16, 32, 64)))
        fd[name] = max(S.jacobian_fd_errors(S.build_problem(name, 1 + 0.5j, 16), probes=10))
    ok = all(1.9 <= o <= 2.1 for os_ in orders.values() for o in os_) and all(v <= 1e-6 for v in fd.values())
    record(12, ok, "orders " + ", ".join(f"{k} {[round(o, 3) for o in v]}" for k, v in orders.items())
           + f"; max FD error {max(fd.values()):.1e}")
    assert ok


def test_c13_area_density():
    spread, pos, match = {}, True, {}
    for name in GROUPS:
        p = S.build_problem(name, 1.0, 32)
        dens, _ = S.area_density(p, S.constant_field(p, S.constant_solution(p)))
        spread[name] = float(np.ptp(dens))
        pos &= bool(np.all(dens > 0))
        err = 0.0
        for q in (0, 1, 1 + 1j):
            pq = S.build_problem(name, q, 32)
            d0, _ = S.area_density(pq, np.zeros((pq.dim, 32, 32)))
            err = max(err, float(np.max(np.abs(d0 - S.exact_density_at_zero(pq)))))
        match[name] = err
    ok = all(v <= 1e-12 for v in spread.values()) and pos and all(v <= 1e-10 for v in match.values())
    record(13, ok, f"spread {max(spread.values()):.1e}, positive {pos}, exact match {max(match.values()):.1e}")
    assert ok
