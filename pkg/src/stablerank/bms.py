"""
The Bass-Milnor-Serre invariant of relative SL2 matrices.

For a nonzero ideal I of S (Z[i] or Z[w]) the divisor r(I) of the number
m of roots of unity is computed prime by prime, and a matrix
``[[a, b], [*, *]]`` in SL2(S, I) is sent to the residue symbol
``(b / a)_r`` in mu_r.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import arith
from .errors import DomainError
from .quadratic import PrincipalIdeal, QuadInt, RingKind, ext_gcd, gcd, ord_prime, primes_above
from .residues import RootOfUnity, symbol

__all__ = [
    "BmsDivisor",
    "PrimeStep",
    "Mat2",
    "Sk1Certificate",
    "complete_sl2_rel",
    "in_sl2_rel",
    "r_of_ideal",
    "sk1_invariant",
]


@dataclass(frozen=True)
class Mat2:
    """Row-major 2x2 matrix ``[[a, b], [c, d]]`` over a quadratic ring."""

    a: QuadInt
    b: QuadInt
    c: QuadInt
    d: QuadInt

    @classmethod
    def identity(cls, kind):
        one, zero = QuadInt(kind, 1), QuadInt(kind, 0)
        return cls(one, zero, zero, one)

    @classmethod
    def from_rows(cls, rows, kind=None):
        (a, b), (c, d) = rows
        if kind is None:
            kind = next((x.kind for x in (a, b, c, d) if isinstance(x, QuadInt)), RingKind.GAUSSIAN)
        return cls(*(QuadInt.of(kind, x) for x in (a, b, c, d)))

    @property
    def kind(self):
        return self.a.kind

    def det(self):
        return self.a * self.d - self.b * self.c

    def __mul__(self, o):
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"

    def to_json(self):
        return [[x.to_json() for x in row] for row in self.rows()]


@dataclass(frozen=True)
class PrimeStep:
    """One rational prime p | m: ``minimand`` is the minimum over the primes
    above p of the floored ratio, ``j`` its clamp into ``[0, ord_m]``."""

    p: int
    ord_m: int
    j: int
    minimand: int
    terms: tuple  # (prime above p, unfloored rational)

    def to_json(self):
        return {
            "p": self.p,
            "ord_p_m": self.ord_m,
            "j_p": self.j,
            "minimand": self.minimand,
            "terms": [{"prime": pi.to_json(), "value": str(v)} for pi, v in self.terms],
        }


@dataclass(frozen=True)
class BmsDivisor:
    """r(I) together with the per-prime computation that produced it."""

    ring: RingKind
    ideal: PrincipalIdeal
    m: int
    r: int
    per_prime_log: tuple = field(default=())

    def recompute(self):
        out = 1
        for step in self.per_prime_log:
            out *= step.p**step.j
        return out

    def to_json(self):
        return {
            "ring": self.ring.value,
            "ideal": self.ideal.to_json(),
            "m": self.m,
            "r": self.r,
            "per_prime_log": [step.to_json() for step in self.per_prime_log],
        }


def r_of_ideal(kind, ideal):
    """The divisor r(I) of m = #mu(S) attached to a nonzero ideal I."""
    if not isinstance(ideal, PrincipalIdeal):
        ideal = PrincipalIdeal.of(QuadInt.of(kind, ideal))
    if ideal.is_zero():
        raise DomainError("r(I) is defined for nonzero ideals only")
    gen = ideal.generator
    m = kind.unit_count
    r = 1
    log = []
    for p, ord_m in arith.factor_int(m).factors:
        terms = []
        for pi in primes_above(kind, p):
            ratio = Fraction(ord_prime(gen, pi), ord_prime(QuadInt(kind, p), pi)) - Fraction(1, p - 1)
            terms.append((pi, ratio))
        minimand = min(arith.floor_fraction(v) for _, v in terms)
        j = min(max(minimand, 0), ord_m)
        r *= p**j
        log.append(PrimeStep(p, ord_m, j, minimand, tuple(terms)))
    return BmsDivisor(kind, ideal, m, r, tuple(log))


def _ideal(kind, ideal):
    if isinstance(ideal, PrincipalIdeal):
        return ideal
    return PrincipalIdeal.of(QuadInt.of(kind, ideal))


def in_sl2_rel(M, ideal):
    """Membership in SL2(S, I); returns ``(ok, reason)``."""
    I = _ideal(M.kind, ideal)
    if M.det() != QuadInt(M.kind, 1):
        return False, f"det = {M.det()} != 1"
    one = QuadInt(M.kind, 1)
    for name, x, target in (("a", M.a, one), ("b", M.b, 0), ("c", M.c, 0), ("d", M.d, one)):
        if not I.congruent(x, target):
            return False, f"{name} = {x} is not congruent to {target} mod {I}"
    return True, "ok"


def complete_sl2_rel(a, b, ideal):
    """Complete ``(a, b)`` with ``a = 1, b = 0 (mod I)`` to a matrix in SL2(S, I).

    The second row comes from a Bezout relation and is then shifted by
    ``t * (a, b)`` where ``t`` is the canonical residue of ``-c0`` mod I.
    """
    kind = a.kind
    b = QuadInt.of(kind, b)
    I = _ideal(kind, ideal)
    if not I.congruent(a, 1):
        raise DomainError(f"a = {a} is not congruent to 1 mod {I}")
    if not I.contains(b):
        raise DomainError(f"b = {b} is not congruent to 0 mod {I}")
    g, u, v = ext_gcd(a, b)
    if g.norm() != 1:
        raise DomainError(f"pair not unimodular: gcd({a}, {b}) = {g}")
    # a*u + b*v = 1
    d0, c0 = u, -v
    # a = 1 mod I, so a**-1 = 1 mod I and t = -c0 mod I
    t = I.residue(-c0)
    M = Mat2(a, b, c0 + t * a, d0 + t * b)
    ok, why = in_sl2_rel(M, I)
    assert ok, why
    return M


@dataclass(frozen=True)
class Sk1Certificate:
    matrix: Mat2
    ideal: PrincipalIdeal
    r: int
    value: RootOfUnity

    def verify(self):
        ok, _ = in_sl2_rel(self.matrix, self.ideal)
        if not ok:
            return False
        if r_of_ideal(self.ideal.kind, self.ideal).r != self.r:
            return False
        return _symbol_value(self.matrix, self.r) == self.value

    def to_json(self):
        return {
            "matrix": self.matrix.to_json(),
            "ideal": self.ideal.to_json(),
            "r": self.r,
            "value": self.value.to_json(),
        }


def _symbol_value(M, r):
    if r == 1 or not M.b:
        return RootOfUnity(r)
    return symbol(M.b, M.a, r)


def sk1_invariant(M, ideal):
    """The class of ``M`` in SK1(S, I), as ``(b / a)_r`` in mu_r."""
    I = _ideal(M.kind, ideal)
    ok, why = in_sl2_rel(M, I)
    if not ok:
        raise DomainError(f"matrix not in SL2(S, {I}): {why}")
    r = r_of_ideal(M.kind, I).r
    return Sk1Certificate(M, I, r, _symbol_value(M, r))


def relative_elementary(kind, i, j, x):
    """``e_ij(x)`` as a Mat2; ``x`` should lie in I for SL2(S, I) use."""
    one, zero = QuadInt(kind, 1), QuadInt(kind, 0)
    x = QuadInt.of(kind, x)
    if (i, j) == (1, 2):
        return Mat2(one, x, zero, one)
    if (i, j) == (2, 1):
        return Mat2(one, zero, x, one)
    raise DomainError(f"bad elementary position ({i}, {j})")


def is_coprime(x, y):
    return gcd(x, y).norm() == 1
