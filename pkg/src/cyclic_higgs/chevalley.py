"""Chevalley basis, brackets, Killing form and the cyclic projections.

Basis order: the simple coroots h_1..h_l, then x_alpha for every root in the
root-system order.  The signs follow [x_a, x_-a] = -h_a: the standard basis
e_a (with [e_a, e_-a] = h_a) is built first and then x_a = e_a, x_-a = -e_-a
for positive a.
"""

from __future__ import annotations

from fractions import Fraction as Q
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, Sequence

from .exact import ExactScalar, Number, ZERO
from .rootsys import Root, RootSystemData, sort_key


class AlgebraMismatch(ValueError):
    pass


class ConsistencyError(RuntimeError):
    pass


def _extraspecial_constants(rs: RootSystemData) -> dict[tuple[Root, Root], int]:
    """Structure constants N_{a,b} of a standard Chevalley basis.

    All extraspecial pairs get a positive sign; everything else follows from
    antisymmetry, the triangle rule for a+b+c = 0, N_{-a,-b} = -N_{a,b} and
    the four-root relation, recursing on height.
    """
    pos = rs.positive
    order = {r: k for k, r in enumerate(pos)}
    pos_set = set(pos)
    inner = rs.inner

    def p_of(r: Root, s: Root) -> int:
        p = 0
        while rs.is_root(s - r.scale(p + 1)):
            p += 1
        return p

    extraspecial: dict[Root, tuple[Root, Root]] = {}
    for xi in pos:
        if xi.degree == 1:
            continue
        for r in pos:
            if xi - r in pos_set:
                extraspecial[xi] = (r, xi - r)
                break

    cache: dict[tuple[Root, Root], Q] = {}

    def N(r: Root, s: Root) -> Q:
        key = (r, s)
        if key in cache:
            return cache[key]
        t = -(r + s)
        if r.is_positive and s.is_positive:
            if order[r] < order[s]:
                val = special(r, s)
            else:
                val = -N(s, r)
        elif not r.is_positive and not s.is_positive:
            val = -N(-r, -s)
        elif not s.is_positive and not t.is_positive:
            val = inner(t, t) / inner(r, r) * N(s, t)
        elif not r.is_positive and not t.is_positive:
            val = inner(t, t) / inner(s, s) * N(t, r)
        elif r.is_positive and t.is_positive:
            val = inner(t, t) / inner(s, s) * N(t, r)
        else:  # s, t positive
            val = inner(t, t) / inner(r, r) * N(s, t)
        cache[key] = val
        return val

    def special(r: Root, s: Root) -> Q:
        xi = r + s
        r1, s1 = extraspecial[xi]
        if (r, s) == (r1, s1):
            return Q(p_of(r, s) + 1)
        total = Q(0)
        if rs.is_root(s - r1):
            total += N(s, -r1) * N(r, -s1) / inner(s - r1, s - r1)
        if rs.is_root(r - r1):
            total += N(-r1, r) * N(s, -s1) / inner(r - r1, r - r1)
        return -total * inner(xi, xi) / N(-r1, -s1)

    out = {}
    for r, s in product(rs.roots, repeat=2):
        if rs.is_root(r + s):
            v = N(r, s)
            if v.denominator != 1:
                raise ConsistencyError(f"non-integral structure constant N{r, s} = {v}")
            out[(r, s)] = int(v)
    return out


class LieAlgebra:
    """Adjoint engine for a simple Lie algebra in a Chevalley basis."""

    def __init__(self, rs: RootSystemData):
        self.rs = rs
        self.rank = rs.rank
        self.roots = rs.roots
        self.dim = rs.rank + len(rs.roots)
        self.root_index = {r: rs.rank + k for k, r in enumerate(rs.roots)}
        std = _extraspecial_constants(rs)
        self.standard_N = std

        def sgn(r: Root) -> int:
            return 1 if r.is_positive else -1

        # x_a = sgn(a) e_a
        self.N = {(a, b): sgn(a) * sgn(b) * sgn(a + b) * n for (a, b), n in std.items()}
        self._table = self._build_table()

    # -- labels --------------------------------------------------------------
    def label(self, idx: int) -> str:
        if idx < self.rank:
            return f"h{idx + 1}"
        return f"x{self.roots[idx - self.rank]}"

    def root_of(self, idx: int) -> Root | None:
        return None if idx < self.rank else self.roots[idx - self.rank]

    @cached_property
    def degree_of(self) -> list[int]:
        return [0] * self.rank + [r.degree for r in self.roots]

    # -- structure table -----------------------------------------------------
    def _build_table(self) -> dict[tuple[int, int], tuple[tuple[int, Q], ...]]:
        rs, l = self.rs, self.rank
        tab: dict[tuple[int, int], tuple[tuple[int, Q], ...]] = {}
        for i in range(l):
            for a in self.roots:
                ia = self.root_index[a]
                v = Q(rs.on_coroot(a, i))
                if v:
                    tab[(i, ia)] = ((ia, v),)
                    tab[(ia, i)] = ((ia, -v),)
        for a in self.roots:
            ia = self.root_index[a]
            neg = self.root_index[-a]
            tab[(ia, neg)] = tuple((k, -c) for k, c in enumerate(rs.coroot_coords[a]) if c)
        for (a, b), n in self.N.items():
            tab[(self.root_index[a], self.root_index[b])] = ((self.root_index[a + b], Q(n)),)
        return tab

    def basis_bracket(self, j: int, k: int) -> tuple[tuple[int, Q], ...]:
        return self._table.get((j, k), ())

    # -- elements ------------------------------------------------------------
    def element(self, coeffs: Mapping[int, Number] | None = None) -> "LieElement":
        return LieElement(self, coeffs or {})

    def basis(self, idx: int) -> "LieElement":
        return LieElement._trusted(self, {idx: ExactScalar.coerce(1)})

    def x(self, root: Root | Sequence[int]) -> "LieElement":
        r = root if isinstance(root, Root) else Root(tuple(root))
        return self.basis(self.root_index[r])

    def h(self, coords: Sequence[Number]) -> "LieElement":
        """Element of h from simple-coroot coordinates."""
        return LieElement(self, {i: c for i, c in enumerate(coords)})

    def coroot(self, root: Root) -> "LieElement":
        return self.h(self.rs.coroot_coords[root])

    def zero(self) -> "LieElement":
        return LieElement._trusted(self, {})

    def from_vector(self, vec: Sequence[Number]) -> "LieElement":
        return LieElement(self, {k: c for k, c in enumerate(vec)})

    # -- operations ----------------------------------------------------------
    def bracket(self, u: "LieElement", v: "LieElement") -> "LieElement":
        if u.alg is not self or v.alg is not self:
            raise AlgebraMismatch("bracket of elements from different algebras")
        out: dict[int, ExactScalar] = {}
        tab = self._table
        for j, a in u.coeffs.items():
            for k, b in v.coeffs.items():
                entries = tab.get((j, k))
                if not entries:
                    continue
                ab = a * b
                for idx, c in entries:
                    out[idx] = out.get(idx, ZERO) + ab * c
        return LieElement(self, out)

    def ad_matrix(self, u: "LieElement") -> list[list[ExactScalar]]:
        """Matrix of ad(u): column k is [u, b_k]."""
        n = self.dim
        m = [[ZERO] * n for _ in range(n)]
        for k in range(n):
            col = self.bracket(u, self.basis(k))
            for i, c in col.coeffs.items():
                m[i][k] = c
        return m

    @cached_property
    def killing_gram(self) -> dict[tuple[int, int], Q]:
        """Nonzero Killing pairings of basis vectors, from the closed forms."""
        rs, l = self.rs, self.rank
        g: dict[tuple[int, int], Q] = {}
        for i in range(l):
            for k in range(l):
                if rs.killing_h[i][k]:
                    g[(i, k)] = rs.killing_h[i][k]
        for a in self.roots:
            ha = rs.coroot_coords[a]
            # Kill([x_a, x_-a], h) = a(h) Kill(x_a, x_-a) at h = h_a
            val = -rs.killing_on_h(ha, ha) / 2
            g[(self.root_index[a], self.root_index[-a])] = val
        return g

    def killing(self, u: "LieElement", v: "LieElement") -> ExactScalar:
        if u.alg is not self or v.alg is not self:
            raise AlgebraMismatch("Killing form of elements from different algebras")
        gram = self.killing_gram
        acc = ZERO
        for j, a in u.coeffs.items():
            for k, b in v.coeffs.items():
                c = gram.get((j, k))
                if c:
                    acc = acc + a * b * c
        return acc

    def killing_trace(self, u: "LieElement", v: "LieElement") -> ExactScalar:
        """trace(ad u ad v), computed directly (used to cross-check `killing`)."""
        acc = ZERO
        for k in range(self.dim):
            w = self.bracket(u, self.bracket(v, self.basis(k)))
            acc = acc + w.coeffs.get(k, ZERO)
        return acc

    # -- subspaces -----------------------------------------------------------
    @cached_property
    def subspace_indices(self) -> dict[str, frozenset[int]]:
        rs = self.rs
        idx = self.root_index
        return {
            "h": frozenset(range(self.rank)),
            "Z": frozenset(idx[r] for r in rs.Z),
            "Zdag": frozenset(idx[r] for r in rs.Zdag),
            "g1": frozenset(idx[r] for r in rs.g1_roots),
        }

    def project(self, u: "LieElement", tag, torus=None) -> "LieElement":
        """Projection onto h, t, h0, Z, Zdag, g1 or ('root', alpha)."""
        if isinstance(tag, tuple) and tag and tag[0] == "root":
            r = tag[1] if isinstance(tag[1], Root) else Root(tuple(tag[1]))
            keep = {self.root_index[r]}
        elif tag in ("t", "h0"):
            if torus is None:
                raise ValueError(f"projection onto {tag!r} needs torus data")
            return torus.project(u, tag)
        elif tag in self.subspace_indices:
            keep = self.subspace_indices[tag]
        else:
            raise ValueError(f"unknown projection tag {tag!r}")
        return LieElement._trusted(u.alg, {k: c for k, c in u.coeffs.items() if k in keep})

    # -- verification ----------------------------------------------------------
    def verify_axioms(self) -> list[dict]:
        rs = self.rs
        fails_anti, fails_p, n = [], [], 0
        for (a, b), val in self.N.items():
            n += 1
            if self.N.get((b, a)) != -val:
                fails_anti.append([str(a), str(b)])
            p = 0
            while rs.is_root(b - a.scale(p + 1)):
                p += 1
            if abs(val) != p + 1:
                fails_p.append([str(a), str(b), val, p])
        fails_coroot = []
        for a in self.roots:
            got = self.bracket(self.x(a), self.x(-a))
            if got != -self.coroot(a):
                fails_coroot.append(str(a))
        fails_cartan = []
        for i in range(self.rank):
            hi = self.basis(i)
            for a in self.roots:
                if self.bracket(hi, self.x(a)) != self.x(a) * rs.on_coroot(a, i):
                    fails_cartan.append([self.label(i), str(a)])
        return [
            _entry("chevalley.antisymmetry", "N(a,b) = -N(b,a)", n, fails_anti),
            _entry("chevalley.string_length", "|N(a,b)| = p+1", n, fails_p),
            _entry("chevalley.coroot_bracket", "[x_a, x_-a] = -h_a", len(self.roots), fails_coroot),
            _entry("chevalley.cartan_action", "[h, x_a] = a(h) x_a", self.rank * len(self.roots), fails_cartan),
        ]

    def verify_jacobi(self) -> dict:
        n = self.dim
        basis = [self.basis(k) for k in range(n)]
        br = {}
        for j in range(n):
            for k in range(n):
                br[(j, k)] = self.bracket(basis[j], basis[k])
        fails, checked = [], 0
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    checked += 1
                    s = (self.bracket(basis[a], br[(b, c)]) + self.bracket(basis[b], br[(c, a)])
                         + self.bracket(basis[c], br[(a, b)]))
                    if not s.is_zero():
                        fails.append([self.label(a), self.label(b), self.label(c)])
        return _entry("chevalley.jacobi", "[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0", checked, fails)

    def verify_killing(self) -> dict:
        fails, checked = [], 0
        for j in range(self.dim):
            for k in range(j, self.dim):
                checked += 1
                u, v = self.basis(j), self.basis(k)
                if self.killing(u, v) != self.killing_trace(u, v):
                    fails.append([self.label(j), self.label(k)])
        return _entry("chevalley.killing_closed_form", "Kill(u,v) = tr(ad u ad v)", checked, fails)

    def max_abs_structure_constant(self) -> int:
        return max((abs(v) for v in self.N.values()), default=0)


class LieElement:
    """Element of g: sparse map basis index -> ExactScalar."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: LieAlgebra, coeffs: Mapping[int, Number]):
        self.alg = alg
        clean = {}
        for k, c in coeffs.items():
            c = ExactScalar.coerce(c)
            if not c.is_zero():
                if not 0 <= k < alg.dim:
                    raise IndexError(f"basis index {k} out of range")
                clean[k] = c
        self.coeffs = clean

    @classmethod
    def _trusted(cls, alg: LieAlgebra, coeffs: dict[int, ExactScalar]) -> "LieElement":
        obj = object.__new__(cls)
        obj.alg = alg
        obj.coeffs = coeffs
        return obj

    def _check(self, other: "LieElement") -> None:
        if not isinstance(other, LieElement):
            raise TypeError("expected LieElement")
        if other.alg is not self.alg:
            raise AlgebraMismatch("elements belong to different algebras")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, ZERO) + c
        return LieElement(self.alg, out)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __neg__(self) -> "LieElement":
        return LieElement._trusted(self.alg, {k: -c for k, c in self.coeffs.items()})

    def __mul__(self, scalar: Number) -> "LieElement":
        s = ExactScalar.coerce(scalar)
        if s.is_zero():
            return self.alg.zero()
        return LieElement._trusted(self.alg, {k: c * s for k, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar: Number) -> "LieElement":
        return self * (1 / ExactScalar.coerce(scalar))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.alg is other.alg and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def conj(self) -> "LieElement":
        return LieElement._trusted(self.alg, {k: c.conj() for k, c in self.coeffs.items()})

    def vector(self) -> list[ExactScalar]:
        return [self.coeffs.get(k, ZERO) for k in range(self.alg.dim)]

    def support(self) -> set[int]:
        return set(self.coeffs)

    def bracket(self, other: "LieElement") -> "LieElement":
        return self.alg.bracket(self, other)

    def to_json(self) -> dict[str, str]:
        return {self.alg.label(k): str(c) for k, c in sorted(self.coeffs.items())}

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*{self.alg.label(k)}" for k, c in sorted(self.coeffs.items()))


def _entry(pid: str, anchor: str, checked: int, failures: list) -> dict:
    return {
        "proposition_id": pid,
        "quote_anchor": anchor,
        "pairs_checked": checked,
        "status": "pass" if not failures else "fail",
        "counterexample": failures[0] if failures else None,
    }


def build_chevalley(rs: RootSystemData) -> LieAlgebra:
    return LieAlgebra(rs)
