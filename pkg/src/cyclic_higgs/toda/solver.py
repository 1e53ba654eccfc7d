"""Cyclic self-duality equations in the diagonal (Toda) ansatz on a flat square torus.

The unknown is a grid of metric potentials Omega valued in the sigma-fixed real
Cartan subspace. With Z the cyclic roots (negative simple roots and the longest
root), coefficients |c_{-b}|^2 = r_b and |c_eta|^2 = |q|^2, the discrete equation is

    (1/2) Lap(Omega) = s * sum_{a in Z} |c_a|^2 exp(-2 a(Omega)) h_a,

with h_a Killing-orthogonally projected to the sigma-fixed subspace. Since
h_{-b} = -h_b this is  s * (-sum_b r_b e^{2 b(Omega)} h_b + |q|^2 e^{-2 eta(Omega)} h_eta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Callable

import numpy as np

from .. import linalg
from ..engine import Engine, load
from ..exact import ExactScalar
from ..hitchin import build_higgs_field, frame_area_density
from ..rootsys import Root
from . import kernels

SIGN_NAMES = {"plus": 1, "minus": -1}
NO_CONSTANT_SOLUTION = "no constant solution exists; nilpotent Higgs field on torus"
SOLVER_GROUPS = ("A2", "C2", "G2")


class NoConstantSolution(ValueError):
    pass


class CoercivityError(RuntimeError):
    def __init__(self, message: str, ritz_min: float):
        super().__init__(message)
        self.ritz_min = ritz_min


@dataclass(frozen=True, eq=False)
class TodaProblem:
    group: str
    q: complex
    N: int
    L: float
    sign: int
    sigma_basis: tuple[tuple[Q, ...], ...]  # simple-coroot coordinates of each basis vector
    roots: tuple[Root, ...]  # the cyclic set Z
    coefficients: np.ndarray  # |c_a|^2 per root in Z
    W: np.ndarray  # W[a, j] = a(b_j)
    P: np.ndarray  # projected coroot h_a in sigma_basis coordinates
    gram: np.ndarray  # Killing form on sigma_basis
    killing_abs: np.ndarray  # |Kill(x_a, x_-a)|
    exponent_top: int
    r: tuple[Q, ...]
    eta_coroot: tuple[Q, ...]
    source: np.ndarray | None = None
    kernels: object = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.sigma_basis)

    @property
    def h(self) -> float:
        return self.L / self.N

    @property
    def inv_h2(self) -> float:
        return 1.0 / self.h ** 2

    @property
    def impl(self):
        return self.kernels or kernels.impl

    def with_source(self, source: np.ndarray | None) -> "TodaProblem":
        return _replace(self, source=source)

    def with_sign(self, sign: int) -> "TodaProblem":
        return _replace(self, sign=sign)

    def grid(self) -> tuple[np.ndarray, np.ndarray]:
        x = np.arange(self.N) * self.h
        return np.meshgrid(x, x, indexing="ij")

    def to_coroot(self, coords: np.ndarray) -> np.ndarray:
        """Sigma-basis coordinates (d, ...) to simple-coroot coordinates (l, ...)."""
        b = np.array([[float(x) for x in v] for v in self.sigma_basis])
        return np.tensordot(b.T, coords, axes=(1, 0))


def _replace(p: TodaProblem, **kw) -> TodaProblem:
    vals = {f: getattr(p, f) for f in p.__dataclass_fields__}
    vals.update(kw)
    return TodaProblem(**vals)


@dataclass
class TodaState:
    omega: np.ndarray  # shape (d, N, N): sigma-basis coordinates per grid point
    residual_norm: float
    newton_iters: int
    converged: bool = True
    message: str = ""
    ritz_min: float = math.nan
    history: list[float] = field(default_factory=list)

    def vectors(self) -> np.ndarray:
        """The N x N grid of coordinate vectors, shape (N, N, d)."""
        return np.moveaxis(self.omega, 0, -1)


def _parse_sign(sign: int | str) -> int:
    if isinstance(sign, str):
        if sign not in SIGN_NAMES:
            raise ValueError(f"sign must be one of {sorted(SIGN_NAMES)} or 'auto'")
        return SIGN_NAMES[sign]
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return int(sign)


def build_problem(group: str | Engine, q: complex, N: int = 32, L: float = 1.0,
                  sign: int | str = -1, backend: str | None = None) -> TodaProblem:
    """Assemble the float tables for a group from the exact engine."""
    eng = load(group) if isinstance(group, str) else group
    if N < 3:
        raise ValueError("grid needs N >= 3")
    if not L > 0:
        raise ValueError("torus side must be positive")
    rs, g = eng.rs, eng.alg
    l = rs.rank
    basis = [tuple(v.coeffs.get(i, ExactScalar.coerce(0)).to_fraction() for i in range(l))
             for v in eng.torus.tc_basis]
    d = len(basis)
    kh = rs.killing_h
    gram_q = [[rs.killing_on_h(u, v) for v in basis] for u in basis]
    r = eng.triple.r
    q = complex(q)
    Z = rs.Z
    eta = rs.longest
    coeff, W, P, kabs = [], [], [], []
    for a in Z:
        coeff.append(abs(q) ** 2 if a == eta else float(r[rs.simple.index(-a)]))
        W.append([float(rs.pairing(a, b)) for b in basis])
        ha = rs.coroot_coords[a]
        rhs = [sum((Q(b[i]) * kh[i][k] * ha[k] for i in range(l) for k in range(l)), Q(0)) for b in basis]
        P.append([float(x) for x in linalg.solve([list(row) for row in gram_q], rhs)])
        kabs.append(float(abs(g.killing(g.x(a), g.x(-a)).to_fraction())))
    impl = kernels.get_backend(backend) if backend else None
    return TodaProblem(
        group=rs.name, q=q, N=int(N), L=float(L), sign=_parse_sign(sign),
        sigma_basis=tuple(basis), roots=tuple(Z),
        coefficients=np.array(coeff), W=np.ascontiguousarray(W, dtype=float),
        P=np.ascontiguousarray(P, dtype=float), gram=np.array([[float(x) for x in row] for row in gram_q]),
        killing_abs=np.array(kabs), exponent_top=eng.exponents[-1], r=tuple(r),
        eta_coroot=tuple(rs.coroot_coords[eta]), kernels=impl,
    )


# -- residual and linearization ------------------------------------------------------

def _check_shape(problem: TodaProblem, omega: np.ndarray) -> np.ndarray:
    if omega.shape != (problem.dim, problem.N, problem.N):
        raise ValueError(f"omega has shape {omega.shape}, expected {(problem.dim, problem.N, problem.N)}")
    if not np.all(np.isfinite(omega)):
        raise FloatingPointError("non-finite values in omega")
    return np.ascontiguousarray(omega, dtype=np.float64)


def residual(problem: TodaProblem, omega: np.ndarray) -> np.ndarray:
    omega = _check_shape(problem, omega)
    k = problem.impl
    E = k.nonlinear_terms(omega, problem.W, problem.coefficients)
    R = k.residual(omega, E, problem.P, float(problem.sign), problem.inv_h2, problem.source)
    if not np.all(np.isfinite(R)):
        raise FloatingPointError("non-finite residual")
    return R


def jacobian_apply(problem: TodaProblem, omega: np.ndarray, delta: np.ndarray) -> np.ndarray:
    omega = _check_shape(problem, omega)
    k = problem.impl
    E = k.nonlinear_terms(omega, problem.W, problem.coefficients)
    return k.jacobian_apply(np.ascontiguousarray(delta, dtype=np.float64), E, problem.W, problem.P,
                            float(problem.sign), problem.inv_h2)


def nonlinearity(problem: TodaProblem, omega_point: np.ndarray) -> np.ndarray:
    """sum_a |c_a|^2 exp(-2 a(Omega)) h_a at a single point (sigma-basis coordinates)."""
    e = problem.coefficients * np.exp(-2.0 * problem.W @ omega_point)
    return problem.P.T @ e


# -- closed-form constant solution ---------------------------------------------------

def constant_solution_coroot(problem: TodaProblem) -> np.ndarray:
    """Constant Omega in simple-coroot coordinates.

    Balancing each h_b-component gives b(Omega) + eta(Omega) = L_b with
    L_b = (1/2) log(|q|^2 n_b / r_b), h_eta = sum n_b h_b. Writing eta = sum k_b b,
    eta(Omega) = sum k_b L_b / (1 + deg eta).
    """
    if abs(problem.q) == 0:
        raise NoConstantSolution(NO_CONSTANT_SOLUTION)
    eng = load(problem.group)
    rs = eng.rs
    l = rs.rank
    n = problem.eta_coroot
    Lb = np.array([0.5 * math.log(abs(problem.q) ** 2 * float(n[b]) / float(problem.r[b])) for b in range(l)])
    k = np.array(rs.longest.coords, dtype=float)
    eta_val = float(k @ Lb) / (1 + rs.longest.degree)
    y = Lb - eta_val
    A = np.array(rs.cartan_matrix, dtype=float)  # y_b = b(Omega) = sum_i Omega_i A[i, b]
    return np.linalg.solve(A.T, y)


def constant_solution(problem: TodaProblem) -> np.ndarray:
    """Constant Omega* in sigma-basis coordinates; raises NoConstantSolution for q = 0."""
    full = constant_solution_coroot(problem)
    B = np.array([[float(x) for x in v] for v in problem.sigma_basis]).T  # (l, d)
    coords, *_ = np.linalg.lstsq(B, full, rcond=None)
    if np.max(np.abs(B @ coords - full)) > 1e-10 * max(1.0, np.max(np.abs(full))):
        raise ArithmeticError("constant solution is not sigma-fixed")
    return coords


def scaling_direction(problem: TodaProblem) -> np.ndarray:
    """w with Omega*(|q|) = Omega*(1) + log|q| * w, in simple-coroot coordinates.

    Every L_b shifts by log|q|, so b(Omega) shifts by log|q| / (m_top + 1) for all
    simple b: w is the half-sum of positive coroots over (m_top + 1).
    """
    return np.array([float(x) for x in problem.r]) / (problem.exponent_top + 1)


def constant_field(problem: TodaProblem, point: np.ndarray) -> np.ndarray:
    return np.broadcast_to(np.asarray(point, dtype=float)[:, None, None],
                           (problem.dim, problem.N, problem.N)).copy()


# -- conjugate gradients with Ritz values ----------------------------------------------

@dataclass
class CGResult:
    x: np.ndarray
    iters: int
    rel_residual: float
    ritz_min: float
    ritz_max: float
    breakdown: bool


def _ritz(alphas: list[float], betas: list[float]) -> tuple[float, float]:
    """Extreme eigenvalues of the Lanczos matrix assembled from CG coefficients."""
    k = len(alphas)
    if k == 0:
        return math.nan, math.nan
    T = np.zeros((k, k))
    for j in range(k):
        T[j, j] = 1.0 / alphas[j] + (betas[j - 1] / alphas[j - 1] if j > 0 else 0.0)
        if j + 1 < k:
            T[j, j + 1] = T[j + 1, j] = math.sqrt(betas[j]) / alphas[j]
    ev = np.linalg.eigvalsh(T)
    return float(ev[0]), float(ev[-1])


def conjugate_gradient(apply: Callable[[np.ndarray], np.ndarray], b: np.ndarray, rtol: float = 1e-10,
                       max_iters: int = 5000,
                       precond: Callable[[np.ndarray], np.ndarray] | None = None) -> CGResult:
    """(Preconditioned) CG stopped on the true relative residual ||b - A x|| / ||b||.

    Ritz values are those of the (preconditioned) operator; with a symmetric
    positive definite preconditioner their signs agree with those of A. A
    non-positive curvature p.Ap stops the iteration and is reported as breakdown.
    """
    x = np.zeros_like(b)
    r = b.copy()
    z = precond(r) if precond else r
    p = z.copy()
    rz = float(np.vdot(r, z))
    bnorm = float(np.linalg.norm(b))
    rnorm = bnorm
    alphas: list[float] = []
    betas: list[float] = []
    if bnorm == 0:
        return CGResult(x, 0, 0.0, math.nan, math.nan, False)
    it = 0
    while it < max_iters:
        Ap = apply(p)
        pAp = float(np.vdot(p, Ap))
        if pAp <= 0:
            ray = pAp / float(np.vdot(p, p))
            lo, hi = _ritz(alphas, betas[:max(len(alphas) - 1, 0)])
            return CGResult(x, it, rnorm / bnorm, ray if math.isnan(lo) else min(ray, lo), hi, True)
        alpha = rz / pAp
        x += alpha * p
        r -= alpha * Ap
        alphas.append(alpha)
        it += 1
        rnorm = float(np.linalg.norm(r))
        if rnorm <= rtol * bnorm:
            break
        z = precond(r) if precond else r
        rz_new = float(np.vdot(r, z))
        beta = rz_new / rz
        betas.append(beta)
        p = z + beta * p
        rz = rz_new
    lo, hi = _ritz(alphas, betas[:len(alphas) - 1])
    return CGResult(x, it, rnorm / bnorm, lo, hi, False)


def _metric(problem: TodaProblem, u: np.ndarray) -> np.ndarray:
    return np.tensordot(problem.gram, u, axes=(1, 0))


def cg_operator(problem: TodaProblem, omega: np.ndarray) -> Callable[[np.ndarray], np.ndarray]:
    """delta -> G (-J) delta; symmetric, and positive definite in the coercive sign."""
    omega = _check_shape(problem, omega)
    k = problem.impl
    E = k.nonlinear_terms(omega, problem.W, problem.coefficients)
    s, ih2 = float(problem.sign), problem.inv_h2

    def apply(delta: np.ndarray) -> np.ndarray:
        return k.metric_jacobian_apply(delta, E, problem.W, problem.P, s, ih2, problem.gram)

    return apply


def fourier_preconditioner(problem: TodaProblem, omega: np.ndarray) -> Callable[[np.ndarray], np.ndarray] | None:
    """Exact inverse of the CG operator with the nonlinear weights replaced by
    their grid averages; None when that averaged operator is not positive definite."""
    E = problem.impl.nonlinear_terms(_check_shape(problem, omega), problem.W, problem.coefficients)
    Ebar = E.mean(axis=(1, 2))
    GP = problem.P @ problem.gram  # rows G P_a (G symmetric)
    K = -2.0 * problem.sign * np.einsum("a,ai,aj->ij", Ebar, GP, problem.W)
    K = 0.5 * (K + K.T)
    ev = np.linalg.eigvalsh(K)
    if not np.all(np.isfinite(ev)) or ev.min() <= 1e-12 * max(ev.max(), problem.inv_h2):
        return None
    n = problem.N
    sin2 = np.sin(np.pi * np.arange(n) / n) ** 2
    lam = 2.0 * problem.inv_h2 * (sin2[:, None] + sin2[None, :])  # spectrum of -(1/2) Lap
    blocks = lam[:, :, None, None] * problem.gram + K  # (N, N, d, d)
    inv = np.linalg.inv(blocks)

    def apply(r: np.ndarray) -> np.ndarray:
        rh = np.fft.fft2(r, axes=(1, 2))
        zh = np.einsum("xyij,jxy->ixy", inv, rh)
        return np.fft.ifft2(zh, axes=(1, 2)).real

    return apply


def coercivity(problem: TodaProblem, omega: np.ndarray | None = None, seed: int = 0,
               iters: int = 200) -> float:
    """Smallest Ritz value of the CG operator at omega (default: the constant solution)."""
    if omega is None:
        omega = constant_field(problem, constant_solution(problem))
    rng = np.random.default_rng(seed)
    b = rng.standard_normal(omega.shape) + 1.0
    res = conjugate_gradient(cg_operator(problem, omega), b, rtol=1e-12, max_iters=iters)
    return res.ritz_min


def choose_sign(group: str, q: complex, N: int = 32, L: float = 1.0,
                backend: str | None = None) -> tuple[int, dict[str, float]]:
    """The sign whose linearization at the constant solution is coercive."""
    diag = {}
    for name in ("minus", "plus"):
        p = build_problem(group, q, N, L, sign=name, backend=backend)
        diag[name] = coercivity(p)
    for name in ("minus", "plus"):
        if diag[name] > 0:
            return SIGN_NAMES[name], diag
    raise CoercivityError("no sign gives a coercive linearization", min(diag.values()))


# -- damped Newton ----------------------------------------------------------------

def solve_newton(problem: TodaProblem, init: np.ndarray | None = None, tol: float = 1e-10,
                 max_iters: int = 50, max_halvings: int = 40, cg_rtol: float = 1e-10,
                 precondition: bool = True) -> TodaState:
    if not tol > 0:
        raise ValueError("tol must be positive")
    omega = np.zeros((problem.dim, problem.N, problem.N)) if init is None else _check_shape(problem, init).copy()
    R = residual(problem, omega)
    rnorm = float(np.max(np.abs(R)))
    history = [rnorm]
    ritz = math.nan
    for it in range(max_iters + 1):
        if rnorm <= tol:
            return TodaState(omega, rnorm, it, True, "converged", ritz, history)
        if it == max_iters:
            break
        cg = conjugate_gradient(cg_operator(problem, omega), _metric(problem, R), rtol=cg_rtol,
                                precond=fourier_preconditioner(problem, omega) if precondition else None)
        ritz = cg.ritz_min
        if cg.breakdown:
            return TodaState(omega, rnorm, it, False,
                             f"linearization is not coercive (smallest Ritz value {ritz:.3e})", ritz, history)
        step = cg.x
        l2 = float(np.linalg.norm(R))
        t = 1.0
        for _ in range(max_halvings + 1):
            trial = omega + t * step
            try:
                Rt = residual(problem, trial)
            except FloatingPointError:
                Rt = None
            if Rt is not None and np.linalg.norm(Rt) <= (1.0 - 1e-4 * t) * l2:
                break
            t *= 0.5
        else:
            return TodaState(omega, rnorm, it, False,
                             f"step rejected after {max_halvings} halvings", ritz, history)
        omega, R = trial, Rt
        rnorm = float(np.max(np.abs(R)))
        history.append(rnorm)
    return TodaState(omega, rnorm, max_iters, False, f"no convergence in {max_iters} Newton steps", ritz, history)


# -- area density -------------------------------------------------------------------

def area_density(problem: TodaProblem, state: TodaState | np.ndarray) -> tuple[np.ndarray, float]:
    """Pointwise i<Phi, -rho(Phi)> in the metric Omega, and its integral over the torus.

    Each root contributes 2 |c_a|^2 exp(-2 a(Omega)) |Kill(x_a, x_-a)|.
    """
    omega = state.omega if isinstance(state, TodaState) else state
    omega = _check_shape(problem, omega)
    E = problem.impl.nonlinear_terms(omega, problem.W, problem.coefficients)
    dens = 2.0 * np.tensordot(problem.killing_abs, E, axes=(0, 0))
    return dens, float(dens.sum() * problem.h ** 2)


def exact_density_at_zero(problem: TodaProblem) -> float:
    """The exact engine's frame value of i<Phi, -rho(Phi)> for Phi = Y + q x_eta.

    q must have rational real and imaginary parts up to float conversion; it is
    converted through Fraction.
    """
    eng = load(problem.group)
    qe = ExactScalar.gaussian(Q(problem.q.real), Q(problem.q.imag))
    l = eng.rs.rank
    phi = build_higgs_field(eng, [0] * (l - 1) + [qe]).value
    val = frame_area_density(eng, phi)
    return float(val)


# -- manufactured solutions and derivative checks -------------------------------------

def manufactured(problem: TodaProblem, amplitude: float = 0.1) -> tuple[np.ndarray, np.ndarray]:
    """A smooth periodic Omega_m around the constant solution and the source
    making it an exact solution of the continuum equation."""
    base = constant_solution(problem) if abs(problem.q) > 0 else np.zeros(problem.dim)
    X, Y = problem.grid()
    k = 2 * math.pi / problem.L
    om = np.empty((problem.dim, problem.N, problem.N))
    lap = np.empty_like(om)
    for j in range(problem.dim):
        wave = np.sin(k * X + j) * np.cos(k * Y) + 0.5 * np.cos(2 * k * X - 0.3 * j)
        lap_wave = -2 * k ** 2 * np.sin(k * X + j) * np.cos(k * Y) - 0.5 * 4 * k ** 2 * np.cos(2 * k * X - 0.3 * j)
        om[j] = base[j] + amplitude * wave
        lap[j] = amplitude * lap_wave
    E = kernels._pykernels.nonlinear_terms(om, problem.W, problem.coefficients)
    source = 0.5 * lap - problem.sign * np.tensordot(problem.P, E, axes=(0, 0))
    return om, source


def mms_errors(group: str, q: complex = 1.0, sizes=(16, 32, 64), L: float = 1.0, sign: int = -1,
               tol: float = 1e-10, backend: str | None = None) -> list[tuple[int, float]]:
    out = []
    for n in sizes:
        p = build_problem(group, q, n, L, sign=sign, backend=backend)
        om, src = manufactured(p)
        p = p.with_source(src)
        st = solve_newton(p, init=constant_field(p, constant_solution(p)), tol=tol)
        if not st.converged:
            raise RuntimeError(f"MMS solve failed at N={n}: {st.message}")
        out.append((n, float(np.max(np.abs(st.omega - om)))))
    return out


def observed_orders(errors: list[tuple[int, float]]) -> list[float]:
    return [math.log(e0 / e1) / math.log(n1 / n0) for (n0, e0), (n1, e1) in zip(errors, errors[1:])]


def jacobian_fd_errors(problem: TodaProblem, probes: int = 10, seed: int = 0, eps: float = 1e-6) -> list[float]:
    """Relative error between central differences of the residual and J delta."""
    rng = np.random.default_rng(seed)
    shape = (problem.dim, problem.N, problem.N)
    errs = []
    for _ in range(probes):
        om = 0.3 * rng.standard_normal(shape)
        d = rng.standard_normal(shape)
        fd = (residual(problem, om + eps * d) - residual(problem, om - eps * d)) / (2 * eps)
        jd = jacobian_apply(problem, om, d)
        errs.append(float(np.linalg.norm(fd - jd) / np.linalg.norm(jd)))
    return errs


# -- one-call driver --------------------------------------------------------------

@dataclass
class SolveReport:
    group: str
    converged: bool
    iters: int
    residual_norm: float
    sign_used: str
    sign_convention: str
    total_area: float | None
    constant_solution: list[float] | None
    distance_to_constant: float | None
    ritz_min: float | None
    message: str
    backend: str

    def to_json(self) -> dict:
        return {k: v for k, v in self.__dict__.items()}


def sign_convention(sign: int) -> str:
    s = "+" if sign > 0 else "-"
    return f"(1/2) Lap(Omega) = {s} sum_(a in Z) |c_a|^2 exp(-2 a(Omega)) h_a"


def solve(group: str, q: complex, N: int = 32, L: float = 1.0, tol: float = 1e-10,
          sign: int | str = "auto", init: np.ndarray | None = None, max_iters: int = 50,
          backend: str | None = None) -> tuple[SolveReport, TodaProblem, TodaState | None]:
    """Resolve the sign, check the constant solution, run Newton and measure the result."""
    impl = kernels.get_backend(backend) if backend else kernels.impl
    bname = "cython" if impl is not kernels._pykernels else "python"

    def fail(msg: str, s: int, ritz: float | None = None, problem: TodaProblem | None = None):
        p = problem or build_problem(group, q, N, L, sign=s, backend=backend)
        rep = SolveReport(p.group, False, 0, math.nan, _sign_name(s), sign_convention(s), None, None, None,
                          ritz, msg, bname)
        return rep, p, None

    if abs(complex(q)) == 0:
        return fail(NO_CONSTANT_SOLUTION, -1 if sign == "auto" else _parse_sign(sign))
    if sign == "auto":
        try:
            s, _diag = choose_sign(group, q, N, L, backend=backend)
        except CoercivityError as e:
            return fail(str(e), -1, e.ritz_min)
    else:
        s = _parse_sign(sign)
    problem = build_problem(group, q, N, L, sign=s, backend=backend)
    star = constant_solution(problem)
    ritz0 = coercivity(problem)
    if not ritz0 > 0:
        return fail(f"coercivity check failed for sign {_sign_name(s)}: smallest Ritz value {ritz0:.6e}"
                    " at the constant solution", s, ritz0, problem)
    state = solve_newton(problem, init=init, tol=tol, max_iters=max_iters)
    _, total = area_density(problem, state)
    dist = float(np.max(np.abs(state.omega - star[:, None, None])))
    rep = SolveReport(problem.group, state.converged, state.newton_iters, state.residual_norm, _sign_name(s),
                      sign_convention(s), total, [float(x) for x in star], dist, ritz0, state.message, bname)
    return rep, problem, state


def _sign_name(s: int) -> str:
    return "plus" if s > 0 else "minus"


def state_rows(problem: TodaProblem, state: TodaState) -> list[list[float]]:
    """CSV rows: x, y, Omega coordinates, residual max over components, area density."""
    X, Y = problem.grid()
    R = residual(problem, state.omega)
    dens, _ = area_density(problem, state)
    rows = []
    for i in range(problem.N):
        for j in range(problem.N):
            rows.append([X[i, j], Y[i, j], *state.omega[:, i, j], float(np.max(np.abs(R[:, i, j]))), dens[i, j]])
    return rows
