"""Principal sl2 triple (a, X, Y) and the Kostant decomposition of g."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q

from . import linalg
from .chevalley import ConsistencyError, LieAlgebra, LieElement, _entry
from .exact import ExactScalar, Tower
from .rootsys import Root


@dataclass(frozen=True)
class PrincipalTriple:
    alg: LieAlgebra
    a: LieElement
    r: tuple[Q, ...]  # a = sum r_i h_i
    sqrt_r: tuple[ExactScalar, ...]
    X: LieElement
    Y: LieElement
    tower: Tower

    def verify(self) -> list[dict]:
        g, a, X, Y = self.alg, self.a, self.X, self.Y
        out = []
        for pid, anchor, lhs, rhs in (
            ("principal.aX", "[a,X] = X", g.bracket(a, X), X),
            ("principal.aY", "[a,Y] = -Y", g.bracket(a, Y), -Y),
            ("principal.XY", "[X,Y] = -a", g.bracket(X, Y), -a),
        ):
            out.append(_entry(pid, anchor, 1, [] if lhs == rhs else [repr(lhs)]))
        rs = g.rs
        bad = [str(al) for al in rs.roots if rs.pairing(al, self.r) != al.degree]
        out.append(_entry("principal.degree_grading", "deg(alpha) = alpha(a)", len(rs.roots), bad))
        half = half_sum_positive_coroots(g)
        out.append(_entry("principal.half_sum_coroots", "a = (1/2) sum over positive coroots", 1,
                          [] if tuple(half) == self.r else [[str(x) for x in half]]))
        return out


def half_sum_positive_coroots(g: LieAlgebra) -> list[Q]:
    rs = g.rs
    tot = [Q(0)] * rs.rank
    for al in rs.positive:
        for i, c in enumerate(rs.coroot_coords[al]):
            tot[i] += c
    return [x / 2 for x in tot]


def build_principal_triple(g: LieAlgebra, tower: Tower | None = None) -> PrincipalTriple:
    rs = g.rs
    l = rs.rank
    # (i) alpha_j(a) = 1 for simple alpha_j:  sum_i r_i cartan[i][j] = 1
    at = [[Q(rs.cartan_matrix[i][j]) for i in range(l)] for j in range(l)]
    r = linalg.solve(at, [Q(1)] * l)
    # (ii) half-sum of positive coroots
    r2 = half_sum_positive_coroots(g)
    if r != r2:
        raise ConsistencyError(f"grading element disagrees: {r} vs {r2}")
    if any(x <= 0 for x in r):
        raise ConsistencyError(f"non-positive r coefficient in {r}")
    tower = tower or Tower()
    roots = []
    for x in r:
        tower, s = tower.adjoin_sqrt(x)
        roots.append(s)
    X = g.zero()
    Y = g.zero()
    for s, al in zip(roots, rs.simple):
        X = X + g.x(al) * s
        Y = Y + g.x(-al) * s
    return PrincipalTriple(g, g.h(r), tuple(r), tuple(roots), X, Y, tower)


@dataclass(frozen=True)
class KostantIrrep:
    exponent: int
    e: LieElement
    chain: tuple[LieElement, ...]

    @property
    def line(self) -> LieElement:
        """Kostant line a_i = ad(Y)^m e_i, which lies in h."""
        return self.chain[self.exponent]


def _graded_indices(g: LieAlgebra, m: int) -> list[int]:
    return [g.root_index[r] for r in g.roots if r.degree == m]


def kostant_decomposition(pt: PrincipalTriple) -> list[KostantIrrep]:
    g = pt.alg
    top = g.rs.longest.degree
    irreps: list[KostantIrrep] = []
    for m in range(1, top + 1):
        src = _graded_indices(g, m)
        dst = _graded_indices(g, m + 1)
        # ad X : g^(m) -> g^(m+1), restricted; its kernel is ker(ad X) in degree m
        cols = [g.bracket(pt.X, g.basis(k)) for k in src]
        mat = [[c.coeffs.get(row, ExactScalar.coerce(0)) for c in cols] for row in dst]
        ker = linalg.nullspace(mat, len(src)) if dst else [
            [Q(int(i == j)) for j in range(len(src))] for i in range(len(src))]
        for vec in ker:
            e = g.element({k: c for k, c in zip(src, vec)})
            lead = e.coeffs[min(e.coeffs)]
            e = e / lead
            chain = [e]
            for _ in range(2 * m):
                chain.append(g.bracket(pt.Y, chain[-1]))
            if chain[-1].is_zero() or not g.bracket(pt.Y, chain[-1]).is_zero():
                raise ConsistencyError(f"chain of exponent {m} has wrong length")
            irreps.append(KostantIrrep(m, e, tuple(chain)))
    if sum(2 * ir.exponent + 1 for ir in irreps) != g.dim:
        raise ConsistencyError("Kostant decomposition does not account for dim g")
    return irreps


def exponents(dec: list[KostantIrrep]) -> list[int]:
    return [ir.exponent for ir in dec]


def kostant_lines(dec: list[KostantIrrep]) -> list[LieElement]:
    lines = [ir.line for ir in dec]
    g = lines[0].alg
    for a_i in lines:
        if any(k >= g.rank for k in a_i.coeffs):
            raise ConsistencyError("Kostant line outside h")
    if linalg.rank([a_i.vector()[: g.rank] for a_i in lines]) != g.rank:
        raise ConsistencyError("Kostant lines are linearly dependent")
    return lines


def verify_kostant(pt: PrincipalTriple, dec: list[KostantIrrep]) -> list[dict]:
    g = pt.alg
    fails_hw, fails_wt, n = [], [], 0
    for ir in dec:
        if not g.bracket(ir.e, pt.X).is_zero():
            fails_hw.append(ir.exponent)
        for k, v in enumerate(ir.chain):
            n += 1
            if g.bracket(pt.a, v) != v * (ir.exponent - k):
                fails_wt.append([ir.exponent, k])
    dims_ok = sum(2 * ir.exponent + 1 for ir in dec) == g.dim
    a1 = dec[0].line
    prop = linalg.rank([a1.vector(), pt.a.vector()]) == 1
    out = [
        _entry("kostant.highest_weight", "[e_i, X] = 0", len(dec), fails_hw),
        _entry("kostant.weights", "[a, ad(Y)^k e] = (m-k) ad(Y)^k e", n, fails_wt),
        _entry("kostant.dimension", "sum (2 m_i + 1) = dim g", 1, [] if dims_ok else [exponents(dec)]),
        _entry("kostant.first_is_s", "m_1 = 1 and a_1 is proportional to a", 1,
               [] if dec[0].exponent == 1 and prop else ["a_1"]),
    ]
    try:
        kostant_lines(dec)
        out.append(_entry("kostant.lines_basis", "a_i = ad(Y)^m_i e_i form a basis of h", len(dec), []))
    except ConsistencyError as exc:
        out.append(_entry("kostant.lines_basis", "a_i = ad(Y)^m_i e_i form a basis of h", len(dec), [str(exc)]))
    # graded brackets [g^(m), g^(m')] in g^(m+m')
    bad, checked = [], 0
    deg = g.degree_of
    for j in range(g.dim):
        for k in range(g.dim):
            checked += 1
            w = g.bracket(g.basis(j), g.basis(k))
            if any(deg[i] != deg[j] + deg[k] for i in w.coeffs):
                bad.append([g.label(j), g.label(k)])
    out.append(_entry("kostant.graded_brackets", "[g^(m), g^(m')] in g^(m+m')", checked, bad))
    return out


def verify_eta_highest(pt: PrincipalTriple, dec: list[KostantIrrep]) -> list[dict]:
    g = pt.alg
    eta = g.rs.longest
    xe = g.x(eta)
    fails = []
    if not g.bracket(xe, pt.X).is_zero():
        fails.append("[x_eta, X] != 0")
    if g.bracket(pt.a, xe) != xe * eta.degree:
        fails.append("ad(a) x_eta != deg(eta) x_eta")
    if dec[-1].exponent != eta.degree:
        fails.append(f"m_l = {dec[-1].exponent} != deg(eta) = {eta.degree}")
    if linalg.rank([dec[-1].e.vector(), xe.vector()]) != 1:
        fails.append("top highest-weight vector not proportional to x_eta")
    return [_entry("kostant.eta_highest", "x_eta is a highest weight vector of v_l, m_l = deg(eta)", 1, fails)]
