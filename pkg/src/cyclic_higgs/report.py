"""Verification suites and summary tables, serialized as deterministic JSON."""

from __future__ import annotations

import datetime as _dt
import json
import math
import random
from typing import Callable, Iterable

from . import principal as pr
from .chevalley import _entry
from .cyclic import (random_element, sample_frames, verify_bracket_table, verify_cyclic_dec_identities, verify_form_calculus,
                     verify_rigidity_kernels)
from .engine import Engine, load
from .hitchin import (WEDGE_NORMALIZATION, calibrate_top_invariant, compute_area_constants, cyclic_frames,
                      verify_area_constants, verify_area_form_identity, verify_higgs)
from .involutions import (fuchsian_tangent_check, sign_positivity, verify_cartan_involution,
                          verify_hitchin_involution, verify_involution_suite, verify_rho_principal, verify_torus)
from .rootsys import verify_cyclic_sum_property, verify_root_facts

VERIFY_GROUPS = ("A2", "C2", "G2", "A3-smoke")


def _roots(eng: Engine, seed: int) -> list[dict]:
    return verify_root_facts(eng.rs) + verify_cyclic_sum_property(eng.rs)


def _chevalley(eng: Engine, seed: int) -> list[dict]:
    g = eng.alg
    return g.verify_axioms() + [g.verify_jacobi(), g.verify_killing()]


def _principal(eng: Engine, seed: int) -> list[dict]:
    pt, dec = eng.triple, eng.kostant
    ex = pr.exponents(dec)
    total = sum(2 * m + 1 for m in ex)
    out = pt.verify() + pr.verify_kostant(pt, dec) + pr.verify_eta_highest(pt, dec)
    out.append(_entry("principal.exponent_count", "sum (2 m_i + 1) = dim g", len(ex),
                      [] if total == eng.alg.dim else [{"exponents": ex, "sum": total}]))
    return out


def _involutions(eng: Engine, seed: int) -> list[dict]:
    rng = random.Random(seed)
    samples = [random_element(eng.alg, rng) for _ in range(20)]
    return (verify_cartan_involution(eng.rho) + [verify_rho_principal(eng.rho, eng.triple)]
            + verify_hitchin_involution(eng.sigma, eng.rho, eng.triple, eng.kostant)
            + verify_involution_suite(eng.rho, eng.sigma, eng.triple) + [sign_positivity(eng.rho, samples)])


def _torus(eng: Engine, seed: int) -> list[dict]:
    return (verify_torus(eng.torus, eng.rho, eng.sigma)
            + fuchsian_tangent_check(eng.triple, eng.torus, eng.rho, eng.sigma))


def _brackets(eng: Engine, seed: int) -> list[dict]:
    return verify_bracket_table(eng.alg)


def _cyclic_dec(eng: Engine, seed: int) -> list[dict]:
    frames = sample_frames(eng.alg, n_random=100, seed=seed)
    return verify_cyclic_dec_identities(frames) + verify_form_calculus(eng.alg, seed=seed + 1)


def _rigidity(eng: Engine, seed: int) -> list[dict]:
    return verify_rigidity_kernels(eng.alg)


def _higgs(eng: Engine, seed: int) -> list[dict]:
    out = verify_higgs(eng, n=20, seed=seed)
    cal = calibrate_top_invariant(eng)
    values = [c for _, c in cal.samples]
    out.append(_entry("invariants.separate", "lowest invariant separates sampled cyclic q", len(values),
                      [] if len(set(values)) == len(values) else [[str(v) for v in values]]))
    out.append(_entry("invariants.calibrated", "lowest invariant = kappa q_l^p exactly on samples", len(values),
                      [] if cal.exact else [[str(v) for v in values]]))
    return out


def _area(eng: Engine, seed: int) -> list[dict]:
    ac = compute_area_constants(eng)
    return verify_area_constants(eng, ac) + verify_area_form_identity(eng, ac, cyclic_frames(eng, seed=seed))


SUITES: dict[str, Callable[[Engine, int], list[dict]]] = {
    "roots": _roots,
    "chevalley": _chevalley,
    "principal": _principal,
    "involutions": _involutions,
    "torus": _torus,
    "brackets": _brackets,
    "cyclic_dec": _cyclic_dec,
    "rigidity": _rigidity,
    "higgs": _higgs,
    "area": _area,
}


def engine_metadata(eng: Engine, seed: int) -> dict:
    return {
        "root_order_seed": seed,
        "root_order": "by degree, then lexicographic in simple-root coordinates",
        "radicand_tower": list(eng.triple.tower.radicands),
        "sign_conventions": {
            "chevalley": "[x_a, x_-a] = -h_a, with a(h_a) = 2",
            "principal": "[a, X] = X, [a, Y] = -Y, [X, Y] = -a",
            "cartan_involution": "rho(x_a) = x_-a; -id on the real coroot span, extended antilinearly",
            "wedge": "(u ^ v)(e1, e2) = [u(e1), v(e2)] - [u(e2), v(e1)]",
            "area_identity_normalization": WEDGE_NORMALIZATION,
            "toda_sign": "chosen per solve by coercivity; 'minus' for all supported groups",
        },
    }


def run_verify(group: str, suites: Iterable[str] | None = None, seed: int = 0,
               timestamp: str | None = None) -> dict:
    eng = load(group)
    names = list(SUITES) if not suites else list(suites)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    entries = []
    for name in names:
        for e in SUITES[name](eng, seed):
            entries.append({"suite": name, **e})
    ok = all(e["status"] == "pass" for e in entries)
    return {
        "group": group,
        "status": "pass" if ok else "fail",
        "passed": sum(e["status"] == "pass" for e in entries),
        "total": len(entries),
        "entries": entries,
        "engine_metadata": engine_metadata(eng, seed),
        "timestamp": timestamp or _now(),
    }


def run_report(group: str, timestamp: str | None = None) -> dict:
    eng = load(group)
    g, rs = eng.alg, eng.rs
    ac = compute_area_constants(eng)
    cal = calibrate_top_invariant(eng)
    return {
        "group": group,
        "rank": rs.rank,
        "dim": g.dim,
        "cartan_matrix": [list(r) for r in rs.cartan_matrix],
        "exponents": eng.exponents,
        "r_alpha": {str(a): str(x) for a, x in zip(rs.simple, eng.triple.r)},
        "sqrt_r_alpha": {str(a): str(x) for a, x in zip(rs.simple, eng.triple.sqrt_r)},
        "longest_root": str(rs.longest),
        "degree_eta": rs.longest.degree,
        "dim_t_C": eng.torus.dim_tc,
        "cyclic_sets": {"Z": [str(a) for a in rs.Z], "Zdag": [str(a) for a in rs.Zdag],
                        "g1": [str(a) for a in rs.g1_roots]},
        "killing_h": [[str(x) for x in row] for row in rs.killing_h],
        "killing_hstar": [[str(x) for x in row] for row in rs.killing_hstar],
        "u0": [str(x) for x in ac.u0],
        "u0_sharp": [str(x) for x in ac.u0_sharp],
        "k0": str(ac.k0),
        "k0_positive": ac.k0 > 0,
        "structure_constants": {"max_abs": g.max_abs_structure_constant(),
                                "min_abs_nonzero": min(abs(v) for v in g.N.values() if v)},
        "top_invariant": {"degree": cal.degree, "power_of_q": cal.power, "kappa": str(cal.kappa)},
        "engine_metadata": engine_metadata(eng, 0),
        "timestamp": timestamp or _now(),
    }


def _now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def _finite(obj):
    """Non-finite floats become null so the output stays strict JSON."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    return obj


def dumps(obj: dict) -> str:
    return json.dumps(_finite(obj), indent=2, sort_keys=True, default=str, allow_nan=False) + "\n"
