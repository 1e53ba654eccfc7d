"""Root systems of simple complex Lie algebras from Cartan matrices.

Convention: ``cartan[i][j] = alpha_j(h_i)`` where h_i is the coroot of the
i-th simple root.  Roots are integer vectors in the simple-root basis and
elements of h are rational vectors in the simple-coroot basis.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from . import linalg

CARTAN_TYPES: dict[str, tuple[tuple[int, ...], ...]] = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    # alpha_1 short in both non-simply-laced cases
    "C2": ((2, -2), (-1, 2)),
    "G2": ((2, -3), (-1, 2)),
    "A3": ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
}
GROUP_ALIASES = {"A3-smoke": "A3"}


class CartanError(ValueError):
    """Raised for matrices that are not irreducible finite-type Cartan matrices."""


@dataclass(frozen=True, order=True)
class Root:
    coords: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.coords)

    @property
    def is_positive(self) -> bool:
        return self.degree > 0

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coords))

    def __add__(self, other: "Root") -> "Root":
        return Root(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Root") -> "Root":
        return Root(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, k: int) -> "Root":
        return Root(tuple(k * c for c in self.coords))

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def sort_key(r: Root) -> tuple:
    return (r.degree, r.coords)


def parse_cartan(spec: str | Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Named type ('A2', 'C2', 'G2', 'A3') or a JSON integer matrix."""
    if isinstance(spec, str):
        name = GROUP_ALIASES.get(spec, spec)
        if name in CARTAN_TYPES:
            return CARTAN_TYPES[name]
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError:
            raise CartanError(f"unknown group or malformed matrix: {spec!r}") from None
    try:
        mat = tuple(tuple(int(x) for x in row) for row in spec)
    except (TypeError, ValueError):
        raise CartanError(f"not an integer matrix: {spec!r}") from None
    return mat


def validate_cartan(a: Sequence[Sequence[int]]) -> list[Q]:
    """Check finite type and irreducibility; return symmetrizer d_i = (a_i,a_i)/2."""
    n = len(a)
    if n == 0 or any(len(row) != n for row in a):
        raise CartanError("Cartan matrix must be square and non-empty")
    for i in range(n):
        if a[i][i] != 2:
            raise CartanError(f"diagonal entry a[{i}][{i}] = {a[i][i]} != 2")
        for j in range(n):
            if i != j:
                if a[i][j] > 0:
                    raise CartanError(f"positive off-diagonal entry a[{i}][{j}]")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise CartanError(f"zero pattern not symmetric at ({i},{j})")
    # connectivity of the Dynkin graph
    seen, stack = {0}, [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if a[i][j] and j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != n:
        raise CartanError("Cartan matrix is decomposable (Dynkin diagram disconnected)")
    # symmetrizer: d_i a_ij = d_j a_ji, propagated along the tree of edges
    d: list[Q | None] = [None] * n
    d[0] = Q(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if i != j and a[i][j] and d[j] is None:
                d[j] = d[i] * a[i][j] / a[j][i]
                stack.append(j)
    for i in range(n):
        for j in range(n):
            if d[i] * a[i][j] != d[j] * a[j][i]:
                raise CartanError("Cartan matrix is not symmetrizable")
    sym = [[d[i] * a[i][j] for j in range(n)] for i in range(n)]
    minors = linalg.leading_minors(sym)
    if any(m <= 0 for m in minors):
        kind = "affine" if minors[-1] == 0 else "indefinite"
        raise CartanError(f"Cartan matrix is not of finite type ({kind}: leading minors {minors})")
    return d  # type: ignore[return-value]


def _enumerate_positive(a: Sequence[Sequence[int]]) -> list[Root]:
    """Positive roots by root-string closure from the simple roots."""
    n = len(a)
    simple = [Root(tuple(int(i == j) for j in range(n))) for i in range(n)]
    known = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i, ai in enumerate(simple):
                if beta == ai:
                    continue
                pairing = sum(c * a[i][j] for j, c in enumerate(beta.coords))
                p = 0
                while (beta - ai.scale(p + 1)) in known:
                    p += 1
                q = p - pairing
                if q > 0:
                    new = beta + ai
                    if new not in known:
                        known.add(new)
                        nxt.append(new)
        layer = nxt
    return sorted(known, key=sort_key)


@dataclass(frozen=True)
class RootSystemData:
    cartan_matrix: tuple[tuple[int, ...], ...]
    name: str = "custom"
    symmetrizer: tuple[Q, ...] = field(default=(), compare=False)
    roots: tuple[Root, ...] = field(default=(), compare=False)

    # -- basic data ----------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.cartan_matrix)

    @property
    def dim(self) -> int:
        return self.rank + len(self.roots)

    @cached_property
    def positive(self) -> tuple[Root, ...]:
        return tuple(r for r in self.roots if r.is_positive)

    @cached_property
    def simple(self) -> tuple[Root, ...]:
        # indexed like the Cartan matrix, not by the root order
        return tuple(Root(tuple(int(i == j) for j in range(self.rank))) for i in range(self.rank))

    @cached_property
    def root_set(self) -> frozenset[Root]:
        return frozenset(self.roots)

    @cached_property
    def longest(self) -> Root:
        return max(self.positive, key=sort_key)

    def is_root(self, r: Root) -> bool:
        return r in self.root_set

    def pairing(self, root: Root, h: Sequence) -> Q:
        """root(h) for h given in simple-coroot coordinates."""
        a = self.cartan_matrix
        return sum((Q(h[i]) * c * a[i][j] for i in range(self.rank)
                    for j, c in enumerate(root.coords) if c), Q(0))

    def on_coroot(self, root: Root, i: int) -> int:
        """root(h_i) for the i-th simple coroot."""
        return sum(c * self.cartan_matrix[i][j] for j, c in enumerate(root.coords))

    # -- Killing forms -------------------------------------------------------
    @cached_property
    def killing_h(self) -> tuple[tuple[Q, ...], ...]:
        """Gram matrix Kill(h_i, h_k) = sum over roots of gamma(h_i) gamma(h_k)."""
        vals = [[self.on_coroot(g, i) for i in range(self.rank)] for g in self.roots]
        return tuple(
            tuple(Q(sum(v[i] * v[k] for v in vals)) for k in range(self.rank))
            for i in range(self.rank)
        )

    def killing_on_h(self, u: Sequence, v: Sequence) -> Q:
        k = self.killing_h
        return sum((Q(u[i]) * k[i][j] * Q(v[j]) for i in range(self.rank)
                    for j in range(self.rank) if u[i] and v[j]), Q(0))

    def dual_vector(self, root: Root) -> list[Q]:
        """Coordinates of t_gamma in h with Kill(t_gamma, u) = gamma(u)."""
        rhs = [Q(self.on_coroot(root, i)) for i in range(self.rank)]
        return linalg.solve([list(r) for r in self.killing_h], rhs)

    def inner(self, a: Root, b: Root) -> Q:
        """Dual Killing form on h*: <a, b> = b(t_a)."""
        return self.pairing(b, self.dual_vector(a))

    @cached_property
    def killing_hstar(self) -> tuple[tuple[Q, ...], ...]:
        return tuple(tuple(self.inner(a, b) for b in self.simple) for a in self.simple)

    @cached_property
    def coroot_coords(self) -> dict[Root, tuple[Q, ...]]:
        """h_gamma in simple-coroot coordinates, via Kill(h_gamma, u) = 2 gamma(u)/<gamma,gamma>."""
        out = {}
        for g in self.roots:
            t = self.dual_vector(g)
            norm = self.pairing(g, t)
            out[g] = tuple(2 * x / norm for x in t)
        return out

    # -- cyclic sets ---------------------------------------------------------
    @cached_property
    def Zdag(self) -> tuple[Root, ...]:
        return tuple(sorted(set(self.simple) | {-self.longest}, key=sort_key))

    @cached_property
    def Z(self) -> tuple[Root, ...]:
        return tuple(sorted((-r for r in self.Zdag), key=sort_key))

    @cached_property
    def g1_roots(self) -> tuple[Root, ...]:
        cyc = set(self.Z) | set(self.Zdag)
        return tuple(r for r in self.roots if r not in cyc)

    def degree_of_longest(self) -> int:
        return self.longest.degree


def build_root_system(cartan: str | Sequence[Sequence[int]], name: str | None = None) -> RootSystemData:
    if isinstance(cartan, str) and name is None:
        name = GROUP_ALIASES.get(cartan, cartan) if not cartan.lstrip().startswith("[") else "custom"
    a = parse_cartan(cartan)
    d = validate_cartan(a)
    pos = _enumerate_positive(a)
    roots = sorted(pos + [-r for r in pos], key=sort_key)
    return RootSystemData(a, name or "custom", tuple(d), tuple(roots))


def cyclic_sets(rs: RootSystemData) -> tuple[tuple[Root, ...], tuple[Root, ...], tuple[Root, ...]]:
    return rs.Z, rs.Zdag, rs.g1_roots


def _entry(pid: str, anchor: str, checked: int, failures: list) -> dict:
    return {
        "proposition_id": pid,
        "quote_anchor": anchor,
        "pairs_checked": checked,
        "status": "pass" if not failures else "fail",
        "counterexample": failures[0] if failures else None,
    }


def verify_cyclic_sum_property(rs: RootSystemData) -> list[dict]:
    Z = rs.Z
    bad_quads, n = [], 0
    for a0, a1, a2, a3 in product(Z, repeat=4):
        n += 1
        s = a0 + a1
        if s == a2 + a3 and rs.is_root(s) and {a0, a1} != {a2, a3}:
            bad_quads.append([str(a0), str(a1), str(a2), str(a3)])
    bad_sums, m = [], 0
    zset = set(Z)
    for a, b in product(Z, repeat=2):
        m += 1
        if a + b in zset:
            bad_sums.append([str(a), str(b)])
    return [
        _entry("rootsys.cyclic_sum_unique", "a0+a1 = a2+a3 in roots, ai in Z => {a0,a1} = {a2,a3}",
               n, bad_quads),
        _entry("rootsys.Z_sum_not_in_Z", "a, b in Z => a+b not in Z", m, bad_sums),
    ]


def verify_root_facts(rs: RootSystemData) -> list[dict]:
    """Degree bound, simple differences, and eta + positive."""
    eta = rs.longest
    deg_fail = [str(r) for r in rs.positive if r.degree > eta.degree or (r.degree == eta.degree and r != eta)]
    diff_fail = [[str(a), str(b)] for a in rs.simple for b in rs.simple if a != b and rs.is_root(a - b)]
    eta_fail = [str(r) for r in rs.positive if rs.is_root(r + eta)]
    neg_fail = [str(r) for r in rs.roots if not rs.is_root(-r)]
    return [
        _entry("rootsys.degree_bound", "deg(beta) <= deg(eta), equality only for eta",
               len(rs.positive), deg_fail),
        _entry("rootsys.simple_difference", "alpha - beta not a root for distinct simple roots",
               rs.rank ** 2, diff_fail),
        _entry("rootsys.eta_plus_positive", "alpha + eta not a root for positive alpha",
               len(rs.positive), eta_fail),
        _entry("rootsys.negation_closed", "-alpha is a root", len(rs.roots), neg_fail),
    ]
