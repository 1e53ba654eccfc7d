"""Exact arithmetic in Q(i, sqrt(d1), ..., sqrt(dk)).

A scalar is a finite sum  c * i^e * sqrt(m)  with c rational, e in {0, 1}
and m a squarefree positive integer.  Square roots of distinct squarefree
integers are linearly independent over Q(i), so this normal form makes
equality decidable by comparing coefficient maps.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction as Q
from numbers import Rational
from typing import Iterable, Union

Number = Union[int, Q, "ExactScalar"]

# A monomial is (m, e): sqrt(m) * i**e.
Monomial = tuple[int, int]


def _prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def squarefree_split(d: Rational) -> tuple[Q, int]:
    """Write a positive rational d as s**2 * m with s rational, m squarefree.

    Returns (s, m), so that sqrt(d) = s * sqrt(m).
    """
    d = Q(d)
    if d <= 0:
        raise ValueError(f"expected a positive rational, got {d}")
    # sqrt(p/q) = sqrt(p*q) / q
    n = d.numerator * d.denominator
    s, m = 1, 1
    for p, k in _prime_factors(n).items():
        s *= p ** (k // 2)
        if k % 2:
            m *= p
    return Q(s, d.denominator), m


class ExactScalar:
    """Immutable element of Q(i, sqrt 2, sqrt 3, sqrt 5, ...)."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: dict[Monomial, Q] | None = None):
        clean = {k: Q(v) for k, v in (terms or {}).items() if v != 0}
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    # -- constructors -------------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict[Monomial, Q]) -> "ExactScalar":
        # trusted path: terms already nonzero Fractions
        obj = object.__new__(cls)
        object.__setattr__(obj, "_terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def coerce(cls, x: Number) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, (int, Q)):
            return cls._raw({(1, 0): Q(x)} if x else {})
        if isinstance(x, complex):
            raise TypeError("floats are not exact; build complex values from i()")
        raise TypeError(f"cannot coerce {type(x).__name__} to ExactScalar")

    @classmethod
    def i(cls) -> "ExactScalar":
        return cls._raw({(1, 1): Q(1)})

    @classmethod
    def sqrt(cls, d: Rational) -> "ExactScalar":
        """Positive square root of a positive rational."""
        s, m = squarefree_split(d)
        return cls._raw({(m, 0): s})

    @classmethod
    def gaussian(cls, re: Rational, im: Rational = 0) -> "ExactScalar":
        return cls({(1, 0): Q(re), (1, 1): Q(im)})

    # -- inspection ---------------------------------------------------------
    @property
    def terms(self) -> dict[Monomial, Q]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(k == (1, 0) for k in self._terms)

    def is_real(self) -> bool:
        return all(e == 0 for _, e in self._terms)

    def to_fraction(self) -> Q:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._terms.get((1, 0), Q(0))

    def radicands(self) -> set[int]:
        return {m for m, _ in self._terms if m != 1}

    def real_part(self) -> "ExactScalar":
        return ExactScalar._raw({k: c for k, c in self._terms.items() if k[1] == 0})

    def imag_part(self) -> "ExactScalar":
        return ExactScalar._raw({(m, 0): c for (m, e), c in self._terms.items() if e == 1})

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other: Number) -> "ExactScalar":
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return ExactScalar._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "ExactScalar":
        return ExactScalar._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: Number) -> "ExactScalar":
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> "ExactScalar":
        return ExactScalar.coerce(other) - self

    def __mul__(self, other: Number) -> "ExactScalar":
        if isinstance(other, (int, Q)):
            if not other:
                return _ZERO
            return ExactScalar._raw({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, ExactScalar):
            return NotImplemented
        out: dict[Monomial, Q] = {}
        for (m1, e1), c1 in self._terms.items():
            for (m2, e2), c2 in other._terms.items():
                g = math.gcd(m1, m2)
                m = (m1 // g) * (m2 // g)
                c = c1 * c2 * g
                e = e1 + e2
                if e == 2:
                    e, c = 0, -c
                k = (m, e)
                v = out.get(k, 0) + c
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return ExactScalar._raw(out)

    __rmul__ = __mul__

    def conj(self) -> "ExactScalar":
        """Complex conjugation: i -> -i, real radicals fixed."""
        return ExactScalar._raw({(m, e): (-c if e else c) for (m, e), c in self._terms.items()})

    def _flip_prime(self, p: int) -> "ExactScalar":
        # Galois automorphism sqrt(p) -> -sqrt(p)
        return ExactScalar._raw({(m, e): (-c if m % p == 0 else c) for (m, e), c in self._terms.items()})

    def inverse(self) -> "ExactScalar":
        if not self._terms:
            raise ZeroDivisionError("inverse of zero")
        num = ExactScalar.coerce(1)
        den = self
        if not den.is_real():
            num, den = num * den.conj(), den * den.conj()
        while True:
            primes = {p for m in den.radicands() for p in _prime_factors(m)}
            if not primes:
                break
            p = max(primes)
            partner = den._flip_prime(p)
            num, den = num * partner, den * partner
        return num * (1 / den.to_fraction())

    def __truediv__(self, other: Number) -> "ExactScalar":
        if isinstance(other, (int, Q)):
            return self * (1 / Q(other))
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Number) -> "ExactScalar":
        return ExactScalar.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "ExactScalar":
        if n < 0:
            return self.inverse() ** (-n)
        out, base = ExactScalar.coerce(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Q)):
            if not other:
                return not self._terms
            return self._terms == {(1, 0): other}
        if isinstance(other, ExactScalar):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            if self.is_rational():
                h = hash(self.to_fraction())
            else:
                h = hash(frozenset(self._terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self) -> bool:
        return bool(self._terms)

    def sign(self) -> int:
        """Exact sign of a real scalar (-1, 0 or 1)."""
        if not self.is_real():
            raise ValueError(f"{self} is not real")
        return _real_sign(self)

    # -- numerics / display --------------------------------------------------
    def to_complex(self) -> complex:
        z = 0j
        for (m, e), c in self._terms.items():
            z += float(c) * math.sqrt(m) * (1j if e else 1)
        return z

    def __complex__(self) -> complex:
        return self.to_complex()

    def __float__(self) -> float:
        if not self.is_real():
            raise ValueError(f"{self} is not real")
        return self.to_complex().real

    def __repr__(self) -> str:
        return f"ExactScalar({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (m, e), c in sorted(self._terms.items()):
            factor = ("i" if e else "") + (f"sqrt({m})" if m != 1 else "")
            if not factor:
                parts.append(str(c))
            elif c == 1:
                parts.append(factor)
            elif c == -1:
                parts.append("-" + factor)
            else:
                parts.append(f"({c})*{factor}")
        return " + ".join(parts).replace("+ -", "- ")


_ZERO = ExactScalar._raw({})
ZERO = _ZERO
ONE = ExactScalar.coerce(1)
I = ExactScalar.i()


def _real_sign(x: ExactScalar) -> int:
    # split x = a + b*sqrt(p) with a, b free of p and recurse
    if not x._terms:
        return 0
    if x.is_rational():
        c = x.to_fraction()
        return (c > 0) - (c < 0)
    p = max(q for m in x.radicands() for q in _prime_factors(m))
    a = ExactScalar._raw({k: c for k, c in x._terms.items() if k[0] % p})
    b = ExactScalar._raw({(m // p, 0): c for (m, _), c in x._terms.items() if m % p == 0})
    sa, sb = _real_sign(a), _real_sign(b)
    if sb == 0 or sa == sb:
        return sa if sa else sb
    if sa == 0:
        return sb
    return sa * _real_sign(a * a - b * b * p)


def to_float(x: Number) -> complex:
    return ExactScalar.coerce(x).to_complex()


def conj(x: Number) -> ExactScalar:
    return ExactScalar.coerce(x).conj()


@dataclass(frozen=True)
class Tower:
    """Record of adjoined square roots, kept multiplicatively independent.

    Radicands are squarefree integers; sqrt(p/q) is stored as sqrt(pq)/q.
    """

    radicands: tuple[int, ...] = ()

    def _span_contains(self, m: int) -> bool:
        # GF(2) elimination on prime-exponent vectors
        basis: dict[int, set[int]] = {}
        for r in self.radicands:
            v = set(_prime_factors(r))
            _reduce_into(basis, v)
        v = set(_prime_factors(m))
        while v:
            p = max(v)
            if p not in basis:
                return False
            v ^= basis[p]
        return True

    def contains_sqrt(self, d: Rational) -> bool:
        _, m = squarefree_split(d)
        return m == 1 or self._span_contains(m)

    def adjoin_sqrt(self, d: Rational) -> tuple["Tower", ExactScalar]:
        """Return (tower', sqrt(d)); tower' == self when sqrt(d) is already present."""
        root = ExactScalar.sqrt(d)
        _, m = squarefree_split(d)
        if m == 1 or self._span_contains(m):
            return self, root
        return Tower(self.radicands + (m,)), root

    def field_contains(self, x: ExactScalar) -> bool:
        return all(self._span_contains(m) for m in x.radicands())


def _reduce_into(basis: dict[int, set[int]], v: set[int]) -> None:
    while v:
        p = max(v)
        if p not in basis:
            basis[p] = v
            return
        v ^= basis[p]


def as_scalars(values: Iterable[Number]) -> list[ExactScalar]:
    return [ExactScalar.coerce(v) for v in values]
