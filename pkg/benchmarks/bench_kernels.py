"""Compare the compiled and numpy Toda kernels.

    python benchmarks/bench_kernels.py [--grid 64 128 256] [--repeat 20]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cyclic_higgs.toda import kernels, solver


def _time(fn, repeat: int) -> float:
    fn()
    t = time.perf_counter()
    for _ in range(repeat):
        fn()
    return (time.perf_counter() - t) / repeat


def bench(group: str, n: int, repeat: int) -> dict[str, dict[str, float]]:
    rng = np.random.default_rng(0)
    out = {}
    for name in ("python", "cython"):
        try:
            k = kernels.get_backend(name)
        except ImportError:
            continue
        p = solver.build_problem(group, 1 + 1j, n, backend=name)
        om = 0.3 * rng.standard_normal((p.dim, n, n))
        d = rng.standard_normal(om.shape)
        E = k.nonlinear_terms(om, p.W, p.coefficients)
        out[name] = {
            "nonlinear": _time(lambda: k.nonlinear_terms(om, p.W, p.coefficients), repeat),
            "residual": _time(lambda: k.residual(om, E, p.P, -1.0, p.inv_h2, None), repeat),
            "jacobian": _time(lambda: k.jacobian_apply(d, E, p.W, p.P, -1.0, p.inv_h2), repeat),
            "newton": _time(lambda: solver.solve_newton(p, init=0.05 * om), 1),
        }
    return out


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--group", default="G2")
    ap.add_argument("--grid", type=int, nargs="+", default=[64, 128, 256])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    print(f"{'N':>5} {'kernel':>10} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for n in args.grid:
        res = bench(args.group, n, args.repeat)
        for key in ("nonlinear", "residual", "jacobian", "newton"):
            py = res["python"][key] * 1e3
            cy = res.get("cython", {}).get(key, float("nan")) * 1e3
            print(f"{n:>5} {key:>10} {py:>10.3f} {cy:>10.3f} {py / cy:>8.2f}")


if __name__ == "__main__":
    main()
