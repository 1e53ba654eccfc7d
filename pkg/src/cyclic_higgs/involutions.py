"""The Cartan involution rho, the Hitchin involution sigma, lambda = sigma o rho,
and the torus t = {u in h : sigma(u) = u, rho(u) = u}."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Sequence

from . import linalg
from .chevalley import LieAlgebra, LieElement, _entry
from .exact import I, ExactScalar, ZERO
from .principal import KostantIrrep, PrincipalTriple, kostant_lines


@dataclass(frozen=True)
class EndoMap:
    """Linear or antilinear endomorphism of g, stored by the images of the basis."""

    alg: LieAlgebra
    images: tuple[LieElement, ...]
    antilinear: bool = False

    def __call__(self, u: LieElement) -> LieElement:
        out = self.alg.zero()
        for k, c in u.coeffs.items():
            out = out + self.images[k] * (c.conj() if self.antilinear else c)
        return out

    apply = __call__

    def compose(self, other: "EndoMap") -> "EndoMap":
        """self o other."""
        return EndoMap(self.alg, tuple(self(im) for im in other.images),
                       self.antilinear ^ other.antilinear)

    def __matmul__(self, other: "EndoMap") -> "EndoMap":
        return self.compose(other)

    def matrix(self) -> list[list[ExactScalar]]:
        cols = [im.vector() for im in self.images]
        return linalg.transpose(cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EndoMap):
            return NotImplemented
        return self.antilinear == other.antilinear and self.images == other.images

    def __hash__(self):
        return hash((self.images, self.antilinear))

    def is_identity(self) -> bool:
        return not self.antilinear and all(im == self.alg.basis(k) for k, im in enumerate(self.images))

    def automorphism_failures(self) -> tuple[list, int]:
        """Basis pairs where T[u,v] != [Tu,Tv]; structure constants are rational,
        so checking basis pairs suffices also in the antilinear case."""
        g = self.alg
        fails, n = [], 0
        for j in range(g.dim):
            for k in range(g.dim):
                n += 1
                lhs = self(g.bracket(g.basis(j), g.basis(k)))
                rhs = g.bracket(self.images[j], self.images[k])
                if lhs != rhs:
                    fails.append([g.label(j), g.label(k)])
        return fails, n

    def fixed_space_dim(self) -> int:
        """Complex dimension of the +1 eigenspace (linear maps only)."""
        if self.antilinear:
            raise ValueError("use real_fixed_dim for antilinear maps")
        m = self.matrix()
        n = len(m)
        shifted = [[m[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
        return n - linalg.rank(shifted)

    def real_fixed_dim(self) -> int:
        """Real dimension of {u : T u = u} for antilinear T.

        With u = p + i q and T u = M conj(u), M = A + i B, the fixed equations are
        (A - 1) p + B q = 0 and B p - (A + 1) q = 0 (real system of size 2n).
        """
        if not self.antilinear:
            raise ValueError("real_fixed_dim is for antilinear maps")
        m = self.matrix()
        n = len(m)
        A = [[x.real_part() for x in row] for row in m]
        B = [[x.imag_part() for x in row] for row in m]
        big = []
        for i in range(n):
            big.append([A[i][j] - (1 if i == j else 0) for j in range(n)] + [B[i][j] for j in range(n)])
        for i in range(n):
            big.append([B[i][j] for j in range(n)] + [-A[i][j] - (1 if i == j else 0) for j in range(n)])
        return 2 * n - linalg.rank(big)


def cartan_involution(g: LieAlgebra) -> EndoMap:
    """rho: x_a -> x_-a, -id on the real coroot span, antilinear."""
    images = [-g.basis(i) for i in range(g.rank)]
    images += [g.x(-r) for r in g.roots]
    return EndoMap(g, tuple(images), antilinear=True)


def hitchin_involution(pt: PrincipalTriple, dec: Sequence[KostantIrrep]) -> EndoMap:
    """sigma(ad(Y)^k e_i) = (-1)^(k+1) ad(Y)^k e_i on the chain basis."""
    g = pt.alg
    chain_vecs, signs = [], []
    for ir in dec:
        for k, v in enumerate(ir.chain):
            chain_vecs.append(v)
            signs.append(-1 if k % 2 == 0 else 1)
    c = linalg.transpose([v.vector() for v in chain_vecs])  # columns = chain vectors
    cinv = linalg.inverse(c)
    images = []
    for k in range(g.dim):
        # b_k = sum_j cinv[j][k] chain_j
        im = g.zero()
        for j, v in enumerate(chain_vecs):
            coef = cinv[j][k]
            if coef != 0:
                im = im + v * (coef * signs[j])
        images.append(im)
    return EndoMap(g, tuple(images), antilinear=False)


def hermitian_gram(rho: EndoMap) -> list[list[ExactScalar]]:
    """Gram matrix of (u, v) -> -Kill(u, rho(v)) on the Chevalley basis."""
    g = rho.alg
    return [[-g.killing(g.basis(j), rho.images[k]) for k in range(g.dim)] for j in range(g.dim)]


def verify_cartan_involution(rho: EndoMap) -> list[dict]:
    g = rho.alg
    out = []
    bad = [str(r) for r in g.roots if rho(g.x(r)) != g.x(-r)]
    out.append(_entry("rho.roots", "rho(x_a) = x_-a", len(g.roots), bad))
    bad = [g.label(i) for i in range(g.rank) if rho(g.basis(i) * I) != g.basis(i) * I]
    out.append(_entry("rho.on_h", "rho = -id on real coroots, so rho(i h_a) = i h_a", g.rank, bad))
    sq = rho @ rho
    out.append(_entry("rho.involution", "rho^2 = id", g.dim, [] if sq.is_identity() else ["rho^2"]))
    fails, n = rho.automorphism_failures()
    out.append(_entry("rho.automorphism", "rho[u,v] = [rho u, rho v]", n, fails))
    minors = linalg.leading_minors(hermitian_gram(rho))
    badm = [k + 1 for k, m in enumerate(minors) if not (m.is_real() and m.sign() > 0)]
    out.append(_entry("rho.positive", "-Kill(u, rho v) positive definite (leading minors)", len(minors), badm))
    return out


def verify_rho_principal(rho: EndoMap, pt: PrincipalTriple) -> dict:
    """rho preserves s: rho(X) = Y, rho(Y) = X, rho(a) = -a."""
    bad = [name for name, got, want in (("X", rho(pt.X), pt.Y), ("Y", rho(pt.Y), pt.X), ("a", rho(pt.a), -pt.a))
           if got != want]
    return _entry("rho.principal", "rho(X) = Y, rho(Y) = X, rho(a) = -a", 3, bad)


def _in_span(vectors: Sequence[LieElement], u: LieElement) -> bool:
    base = [v.vector() for v in vectors]
    return linalg.rank(base + [u.vector()]) == linalg.rank(base)


def _subalgebra_dim(g: LieAlgebra, gens: Sequence[LieElement]) -> int:
    basis_rows: list[list] = []
    span: list[LieElement] = []

    def add(v: LieElement) -> bool:
        row = v.vector()
        if linalg.rank(basis_rows + [row]) > len(basis_rows):
            basis_rows.append(row)
            span.append(v)
            return True
        return False

    for v in gens:
        add(v)
    k = 0
    while k < len(span):
        for j in range(k + 1):
            add(g.bracket(span[j], span[k]))
        k += 1
    return len(span)


def verify_hitchin_involution(sigma: EndoMap, rho: EndoMap, pt: PrincipalTriple,
                              dec: Sequence[KostantIrrep]) -> list[dict]:
    g = sigma.alg
    rs = g.rs
    out = []
    fails, n = sigma.automorphism_failures()
    out.append(_entry("sigma.automorphism", "sigma[u,v] = [sigma u, sigma v]", n, fails))
    out.append(_entry("sigma.involution", "sigma^2 = id", g.dim, [] if (sigma @ sigma).is_identity() else ["sigma^2"]))
    eta = rs.longest
    xe, he = g.x(eta), g.coroot(eta)
    out.append(_entry("sigma.x_eta", "sigma(x_eta) = -x_eta", 1, [] if sigma(xe) == -xe else [repr(sigma(xe))]))
    out.append(_entry("sigma.h_eta", "sigma(h_eta) = h_eta", 1, [] if sigma(he) == he else [repr(sigma(he))]))
    lines = kostant_lines(list(dec))
    bad = [ir.exponent for ir, a_i in zip(dec, lines)
           if sigma(a_i) != a_i * (-1) ** (ir.exponent + 1)]
    out.append(_entry("sigma.kostant_lines", "sigma(a_i) = (-1)^(m_i+1) a_i", len(lines), bad))
    bad = [ir.exponent for ir in dec if sigma(ir.e) != -ir.e]
    if sigma(pt.Y) != -pt.Y:
        bad.append("Y")
    out.append(_entry("sigma.definition", "sigma = -1 on ker ad X, sigma(Y) = -Y", len(dec) + 1, bad))
    # uniqueness conditions
    s_basis = [pt.a, pt.X, pt.Y]
    pres_s = all(_in_span(s_basis, sigma(v)) for v in s_basis)
    nontriv = any(sigma(v) != v for v in s_basis)
    h_basis = [g.basis(i) for i in range(g.rank)]
    pres_h = all(_in_span(h_basis, sigma(v)) for v in h_basis)
    out.append(_entry("sigma.unique_conditions",
                      "sigma automorphism, preserves s and h, nontrivial on s, fixes s cap h, sign on a_i",
                      4, [] if (pres_s and nontriv and pres_h and sigma(pt.a) == pt.a and not fails and not bad)
                      else [{"preserves_s": pres_s, "nontrivial_on_s": nontriv, "preserves_h": pres_h}]))
    gen = _subalgebra_dim(g, h_basis + s_basis)
    out.append(_entry("sigma.h_and_s_generate", "h and s generate g", 1, [] if gen == g.dim else [gen]))
    return out


def verify_involution_suite(rho: EndoMap, sigma: EndoMap, pt: PrincipalTriple) -> list[dict]:
    g = rho.alg
    out = []
    sr, rs_ = sigma @ rho, rho @ sigma
    out.append(_entry("lambda.commute", "sigma rho = rho sigma", g.dim, [] if sr == rs_ else ["sigma rho != rho sigma"]))
    lam = sr
    out.append(_entry("lambda.antilinear", "lambda = sigma o rho is antilinear", 1, [] if lam.antilinear else ["linear"]))
    out.append(_entry("lambda.involution", "lambda^2 = id", g.dim, [] if (lam @ lam).is_identity() else ["lambda^2"]))
    fails, n = lam.automorphism_failures()
    out.append(_entry("lambda.automorphism", "lambda[u,v] = [lambda u, lambda v]", n, fails))
    bad = []
    if lam(pt.X) != -pt.Y:
        bad.append("lambda(X)")
    if lam(pt.Y) != -pt.X:
        bad.append("lambda(Y)")
    if lam(pt.a) != -pt.a:
        bad.append("lambda(a)")
    out.append(_entry("lambda.principal", "lambda(X) = -Y, lambda(Y) = -X, lambda(a) = -a", 3, bad))
    idx = g.subspace_indices
    bad = []
    for tag in ("Z", "Zdag"):
        for k in sorted(idx[tag]):
            if not sigma(g.basis(k)).support() <= idx[tag]:
                bad.append([tag, g.label(k)])
    out.append(_entry("sigma.preserves_cyclic", "sigma preserves g_Z and g_Zdag",
                      len(idx["Z"]) + len(idx["Zdag"]), bad))
    expected = (g.dim - g.rank) // 2
    got = sigma.fixed_space_dim()
    out.append(_entry("sigma.fixed_dim", "dim fix(sigma) = (dim g - rank)/2", 1,
                      [] if got == expected else [{"got": got, "expected": expected}]))
    real = lam.real_fixed_dim()
    out.append(_entry("lambda.split_form_dim", "real dim fix(lambda) = complex dim g", 1,
                      [] if real == g.dim else [{"got": real, "expected": g.dim}]))
    return out


@dataclass(frozen=True)
class TorusData:
    alg: LieAlgebra
    tc_basis: tuple[LieElement, ...]  # basis of t_C (real coroot combinations)
    h0_basis: tuple[LieElement, ...]  # Killing-orthogonal complement of t_C in h

    @property
    def t_basis(self) -> tuple[LieElement, ...]:
        """Real basis of t itself: i times the real sigma-fixed coroot combinations."""
        return tuple(v * I for v in self.tc_basis)

    @property
    def dim_tc(self) -> int:
        return len(self.tc_basis)

    def project(self, u: LieElement, tag: str) -> LieElement:
        g = self.alg
        l = g.rank
        basis = list(self.tc_basis) + list(self.h0_basis)
        # solve for coordinates of the h-part in the t (+) h0 basis
        cols = [[b.coeffs.get(i, ZERO) for b in basis] for i in range(l)]
        hpart = [u.coeffs.get(i, ZERO) for i in range(l)]
        coords = linalg.solve(cols, hpart)
        out = g.zero()
        pick = range(len(self.tc_basis)) if tag == "t" else range(len(self.tc_basis), l)
        for j in pick:
            out = out + basis[j] * coords[j]
        return out


def torus_subalgebra(rho: EndoMap, sigma: EndoMap) -> TorusData:
    g = sigma.alg
    l = g.rank
    m = [[sigma(g.basis(j)).coeffs.get(i, ZERO) for j in range(l)] for i in range(l)]
    shifted = [[m[i][j] - (1 if i == j else 0) for j in range(l)] for i in range(l)]
    tc = [g.h(v) for v in linalg.nullspace(shifted, l)]
    rows = [[g.killing(b, g.basis(i)) for i in range(l)] for b in tc]
    h0 = [g.h(v) for v in linalg.nullspace(rows, l)] if rows else [g.basis(i) for i in range(l)]
    return TorusData(g, tuple(tc), tuple(h0))


def verify_torus(torus: TorusData, rho: EndoMap, sigma: EndoMap) -> list[dict]:
    g = torus.alg
    rs = g.rs
    out = []
    he = g.coroot(rs.longest)
    out.append(_entry("torus.h_eta", "h_eta in t_C", 1, [] if _in_span(torus.tc_basis, he) else ["h_eta"]))
    bad = [repr(t) for t in torus.t_basis if sigma(t) != t or rho(t) != t]
    out.append(_entry("torus.fixed", "t = {u in h : sigma u = u, rho u = u}", len(torus.t_basis), bad))
    bad = []
    for t in torus.t_basis:
        for h in torus.h0_basis:
            if not (-g.killing(t, rho(h))).is_zero():
                bad.append([repr(t), repr(h)])
    out.append(_entry("torus.orthogonal", "t orthogonal to h0 under -Kill(u, rho v)",
                      len(torus.t_basis) * len(torus.h0_basis), bad))
    out.append(_entry("torus.dims", "dim t + dim h0 = rank", 1,
                      [] if torus.dim_tc + len(torus.h0_basis) == g.rank else ["dims"]))
    if rs.name == "A2":
        ok = torus.dim_tc == 1 and _in_span([he], torus.tc_basis[0])
        out.append(_entry("torus.A2_line", "A2: t_C = C h_eta", 1, [] if ok else [torus.dim_tc]))
        bad = [str(a) for a in rs.simple if _in_span(torus.tc_basis, g.coroot(a))]
        out.append(_entry("torus.A2_simple_out", "A2: h_a not in t_C for simple a", len(rs.simple), bad))
    if rs.name in ("C2", "G2"):
        bad = [g.label(i) for i in range(g.rank) if sigma(g.basis(i)) != g.basis(i)]
        out.append(_entry("torus.full_h", "C2, G2: sigma|h = id, t_C = h", g.rank,
                          bad + ([] if torus.dim_tc == g.rank else ["dim"])))
    return out


def fuchsian_tangent_check(pt: PrincipalTriple, torus: TorusData, rho: EndoMap, sigma: EndoMap) -> list[dict]:
    g = pt.alg
    lam = sigma @ rho
    v1 = pt.X - pt.Y
    v2 = (pt.X + pt.Y) * I
    out = []
    bad = [name for name, v in (("X-Y", v1), ("i(X+Y)", v2)) if lam(v) != v]
    out.append(_entry("fuchsian.lambda_fixed", "lambda fixes span{X-Y, i(X+Y)}", 2, bad))
    bad = [name for name, v in (("X-Y", v1), ("i(X+Y)", v2))
           if not (g.project(v, "h").is_zero() and g.project(v, "g1").is_zero())]
    out.append(_entry("fuchsian.no_h_or_g1", "pi_0 = pi_1 = 0 on V0", 2, bad))
    bad = [name for name, v in (("X-Y", v1), ("i(X+Y)", v2))
           if -rho(g.project(v, "Z")) != g.project(v, "Zdag")]
    out.append(_entry("fuchsian.rho_swaps", "-rho maps the Z-part of V0 to its Zdag-part", 2, bad))
    ia = pt.a * I
    ok = sigma(ia) == ia and rho(ia) == ia and _in_span(torus.t_basis, ia)
    out.append(_entry("fuchsian.ia_in_t", "ia in t", 1, [] if ok else ["ia"]))
    return out


def sign_positivity(rho: EndoMap, samples: Sequence[LieElement]) -> dict:
    """-Kill(A, rho(A)) > 0 for every nonzero sample."""
    g = rho.alg
    bad = []
    for A in samples:
        if A.is_zero():
            continue
        val = -g.killing(A, rho(A))
        if not (val.is_real() and val.sign() > 0):
            bad.append(repr(A))
    return _entry("rho.sign_pointwise", "-Kill(A, rho A) > 0 for A != 0", len(samples), bad)
