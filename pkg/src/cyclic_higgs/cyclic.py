"""Pointwise calculus of g-valued forms on a surface and the cyclic identities.

A p-form is stored by its values on a fixed tangent frame (e1, e2):
a 0-form by one value, a 1-form by (w(e1), w(e2)), a 2-form by w(e1, e2).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Sequence

from .chevalley import LieAlgebra, LieElement, _entry
from .exact import ExactScalar


@dataclass(frozen=True)
class Form:
    degree: int
    values: tuple

    def __add__(self, other: "Form") -> "Form":
        if self.degree != other.degree:
            raise ValueError("adding forms of different degrees")
        return Form(self.degree, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "Form") -> "Form":
        return self + other.scale(-1)

    def scale(self, c) -> "Form":
        return Form(self.degree, tuple(v * c for v in self.values))

    def map(self, f: Callable) -> "Form":
        return Form(self.degree, tuple(f(v) for v in self.values))

    @property
    def value(self):
        """The single frame value of a 0- or 2-form."""
        if self.degree == 1:
            raise ValueError("a 1-form has two frame values")
        return self.values[0]


def zero_form(g) -> Form:
    return Form(0, (g,))


def one_form(a1, a2) -> Form:
    return Form(1, (a1, a2))


def two_form(w) -> Form:
    return Form(2, (w,))


def _pair_forms(a: Form, b: Form, pair: Callable) -> Form:
    p, q = a.degree, b.degree
    if p + q > 2:
        raise ValueError("forms of total degree > 2 vanish on a surface")
    if p == 0:
        return Form(q, tuple(pair(a.values[0], v) for v in b.values))
    if q == 0:
        return Form(p, tuple(pair(v, b.values[0]) for v in a.values))
    (a1, a2), (b1, b2) = a.values, b.values
    return Form(2, (pair(a1, b2) - pair(a2, b1),))


def wedge(a: Form, b: Form) -> Form:
    """Bracket-wedge of g-valued forms."""
    return _pair_forms(a, b, lambda x, y: x.alg.bracket(x, y))


def killing_wedge(a: Form, b: Form) -> Form:
    """Killing-wedge <a, b>: scalar-valued."""
    return _pair_forms(a, b, lambda x, y: x.alg.killing(x, y))


def wedge_eval(a: Sequence[LieElement] | LieElement, b: Sequence[LieElement]):
    """(a ^ b)(e1, e2) = [a1, b2] - [a2, b1] for 1-forms; a 0-form a against a
    1-form b gives the pointwise brackets ([a, b1], [a, b2])."""
    if isinstance(a, LieElement):
        return wedge(zero_form(a), one_form(*b)).values
    return wedge(one_form(*a), one_form(*b)).value


def project_form(form: Form, tag) -> Form:
    return form.map(lambda v: v.alg.project(v, tag))


@dataclass(frozen=True)
class CyclicFrame:
    u: LieElement
    v: LieElement

    @property
    def form(self) -> Form:
        return one_form(self.u, self.v)

    def parts(self) -> dict[str, Form]:
        w = self.form
        return {"w0": project_form(w, "h"), "w1": project_form(w, "g1"),
                "phi": project_form(w, "Z"), "phidag": project_form(w, "Zdag")}

    def to_json(self) -> dict:
        return {"u": self.u.to_json(), "v": self.v.to_json()}


# -- bracket table -------------------------------------------------------------

BRACKET_TABLE = (
    ("h_Zdag", "h", "Zdag", ("Zdag",)),
    ("h_Z", "h", "Z", ("Z",)),
    ("h_g1", "h", "g1", ("g1",)),
    ("Z_Zdag", "Z", "Zdag", ("h",)),
    ("Z_g1", "Z", "g1", ("g1", "Zdag")),
    ("Zdag_g1", "Zdag", "g1", ("g1", "Z")),
    ("Z_Z", "Z", "Z", ("g1", "Zdag")),
    ("Zdag_Zdag", "Zdag", "Zdag", ("g1", "Z")),
    ("h_h", "h", "h", ()),
)


def verify_bracket_table(g: LieAlgebra) -> list[dict]:
    idx = g.subspace_indices
    out = []
    for name, s1, s2, target in BRACKET_TABLE:
        allowed = set().union(*(idx[t] for t in target)) if target else set()
        fails, n = [], 0
        for j in sorted(idx[s1]):
            for k in sorted(idx[s2]):
                n += 1
                w = g.bracket(g.basis(j), g.basis(k))
                if not w.support() <= allowed:
                    fails.append([g.label(j), g.label(k)])
        anchor = f"[g_{s1}, g_{s2}] in " + (" + ".join(f"g_{t}" if t != "h" else "h" for t in target) or "0")
        out.append(_entry(f"brackets.{name}", anchor, n, fails))
    return out


# -- cyclic decomposition identities -------------------------------------------

def cyclic_dec_sides(frame: CyclicFrame) -> dict[str, tuple[LieElement, LieElement]]:
    w = frame.form
    p = frame.parts()
    w0, w1, phi, phd = p["w0"], p["w1"], p["phi"], p["phidag"]
    ww = wedge(w, w)

    def proj(f: Form, tag) -> LieElement:
        return project_form(f, tag).value

    w1w1 = wedge(w1, w1)
    zeta = (proj(ww, "h"),
            wedge(phi, phd).value * 2 + proj(w1w1, "h"))
    pi1 = (proj(ww, "g1"),
           proj(wedge(w0, w1) + wedge(w1, phi) + wedge(w1, phd), "g1") * 2
           + proj(w1w1 + wedge(phi, phi) + wedge(phd, phd), "g1"))
    piz = (proj(ww, "Z"),
           wedge(w0, phi).value * 2 + proj(wedge(w1, phd), "Z") * 2
           + proj(wedge(phd, phd), "Z") + proj(w1w1, "Z"))
    return {"cyclic_dec.h_part": zeta, "cyclic_dec.g1_part": pi1, "cyclic_dec.Z_part": piz}


def random_element(g: LieAlgebra, rng: random.Random, lo: int = -3, hi: int = 3,
                   support: Iterable[int] | None = None) -> LieElement:
    keys = list(support) if support is not None else range(g.dim)
    return g.element({k: ExactScalar.gaussian(rng.randint(lo, hi), rng.randint(lo, hi)) for k in keys})


def sample_frames(g: LieAlgebra, n_random: int = 100, seed: int = 0) -> list[CyclicFrame]:
    frames = [CyclicFrame(g.basis(j), g.basis(k)) for j in range(g.dim) for k in range(g.dim)]
    rng = random.Random(seed)
    frames += [CyclicFrame(random_element(g, rng), random_element(g, rng)) for _ in range(n_random)]
    return frames


def verify_cyclic_dec_identities(samples: Sequence[CyclicFrame]) -> list[dict]:
    fails: dict[str, list] = {}
    for fr in samples:
        for pid, (lhs, rhs) in cyclic_dec_sides(fr).items():
            fails.setdefault(pid, [])
            if lhs != rhs:
                fails[pid].append(fr.to_json())
    anchors = {
        "cyclic_dec.h_part": "pi_0(w^w) = 2 phi^phidag + pi_0(w1^w1)",
        "cyclic_dec.g1_part": "pi_1(w^w) = 2 pi_1(w0^w1 + w1^phi + w1^phidag) + pi_1(w1^w1 + phi^phi + phidag^phidag)",
        "cyclic_dec.Z_part": "pi(w^w) = 2 w0^phi + 2 pi(w1^phidag) + pi(phidag^phidag) + pi(w1^w1)",
    }
    return [_entry(pid, anchors[pid], len(samples), f) for pid, f in fails.items()]


def verify_form_calculus(g: LieAlgebra, n: int = 30, seed: int = 1) -> list[dict]:
    """Graded symmetry, the form Jacobi identity and the Killing exchange rule."""
    rng = random.Random(seed)
    fs, fj, fk11, fk01, fpart = [], [], [], [], []
    for _ in range(n):
        a = one_form(random_element(g, rng), random_element(g, rng))
        b = one_form(random_element(g, rng), random_element(g, rng))
        c = zero_form(random_element(g, rng))
        if wedge(a, b).value != wedge(b, a).value:
            fs.append("a^b != b^a")
        if wedge(a, c).values != wedge(c, a).scale(-1).values:
            fs.append("a^c != -c^a")
        lhs = wedge(a, wedge(c, b)) + wedge(b, wedge(c, a))
        if lhs.value != wedge(c, wedge(a, b)).value:
            fj.append("jacobi")
        # (p, q) = (1, 1) with a 0-form gamma
        if killing_wedge(c, wedge(b, a)).value != killing_wedge(wedge(c, a), b).value:
            fk11.append("(1,1)")
        # (p, q) = (0, 1) with a 1-form gamma
        gam = one_form(random_element(g, rng), random_element(g, rng))
        if killing_wedge(gam, wedge(b, c)).value != -killing_wedge(wedge(gam, c), b).value:
            fk01.append("(0,1)")
        u = random_element(g, rng)
        tot = sum((g.project(u, t) for t in ("h", "g1", "Z", "Zdag")), g.zero())
        if tot != u:
            fpart.append("partition")
    return [
        _entry("forms.graded_symmetry", "a^b = (-1)^(pq+1) b^a", n, fs),
        _entry("forms.jacobi", "a^(c^b) + b^(c^a) = c^(a^b)", n, fj),
        _entry("forms.killing_exchange_11", "<c, b^a> = <c^a, b>  (p = q = 1)", n, fk11),
        _entry("forms.killing_exchange_01", "<c, b^a> = -<c^a, b>  (p = 0, q = 1)", n, fk01),
        _entry("forms.partition", "pi + pi_dag + pi_0 + pi_1 = id", n, fpart),
    ]


# -- rigidity kernels -------------------------------------------------------------

def verify_rigidity_kernels(g: LieAlgebra) -> list[dict]:
    rs = g.rs
    idx = g.subspace_indices
    out = []
    # K1
    fails, n = [], 0
    for j, k, m in product(sorted(idx["Zdag"]), sorted(idx["Zdag"]), sorted(idx["Z"])):
        n += 1
        w = g.bracket(g.bracket(g.basis(j), g.basis(k)), g.basis(m))
        if not w.support() <= idx["Zdag"]:
            fails.append([g.label(j), g.label(k), g.label(m)])
    out.append(_entry("rigidity.K1", "[[u,v],w] in g_Zdag for u,v in g_Zdag, w in g_Z", n, fails))
    eta = rs.longest
    if rs.name == "A2":
        a, b = rs.simple
        xm = g.x(-eta)
        lhs = g.bracket(g.x(-a), g.bracket(xm, g.x(a)))
        rhs = g.bracket(g.x(-b), g.bracket(xm, g.x(b)))
        ok = lhs == rhs and not lhs.is_zero() and lhs.support() == xm.support()
        out.append(_entry("rigidity.K2", "[x_-a,[x_-eta,x_a]] = [x_-b,[x_-eta,x_b]] != 0", 1,
                          [] if ok else [repr(lhs), repr(rhs)]))
    fails = [str(a) for a in rs.simple if rs.rank > 1 and not any(rs.is_root(a + b) for b in rs.simple if b != a)]
    out.append(_entry("rigidity.K3", "every simple root has a simple neighbour", rs.rank, fails))
    if rs.name != "A2":
        cyc = set(rs.Z) | set(rs.Zdag)
        wit = [str(a) for a in rs.simple if (eta - a) in rs.positive and (eta - a) not in cyc]
        out.append(_entry("rigidity.K4", "some simple a has eta - a positive, outside Z and Zdag", rs.rank,
                          [] if wit else ["no witness"]))
    return out
