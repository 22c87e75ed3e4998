"""
m-th power residue symbols over Z[i] (m | 4) and Z[w] (m | 6).

Everything is computed from the definition: factor the denominator, and
for each prime ``pi`` find the root of unity congruent to
``b**((N(pi) - 1) / m)`` modulo ``pi``.  Congruences are decided by
Euclidean division in the ring, so split, inert and ramified primes share
one code path.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, SymbolUndefined
from .quadratic import PrincipalIdeal, QuadInt, RingKind, factor, gcd, quad_divmod

__all__ = [
    "RootOfUnity",
    "SymbolQuery",
    "mu_elements",
    "power_mod",
    "prime_symbol",
    "symbol",
]


def _generator(kind, m):
    if m == 1:
        return QuadInt(kind, 1)
    if m == 2:
        return QuadInt(kind, -1)
    if m == 4 and kind is RingKind.GAUSSIAN:
        return QuadInt(kind, 0, 1)
    if m == 3 and kind is RingKind.EISENSTEIN:
        return QuadInt(kind, 0, 1)
    if m == 6 and kind is RingKind.EISENSTEIN:
        # -w**2 = 1 + w
        return QuadInt(kind, 1, 1)
    raise DomainError(f"mu_{m} is not contained in the {kind.value} ring")


def _kind_for_order(order):
    return RingKind.GAUSSIAN if order in (1, 2, 4) else RingKind.EISENSTEIN


@dataclass(frozen=True)
class RootOfUnity:
    """``g**exponent`` for the canonical generator ``g`` of ``mu_order``.

    Generators: 1 (order 1), -1 (2), i (4), w (3), 1 + w = -w**2 (6).
    """

    order: int
    exponent: int = 0

    def __post_init__(self):
        if self.order not in (1, 2, 3, 4, 6):
            raise DomainError(f"unsupported root-of-unity order {self.order}")
        object.__setattr__(self, "exponent", self.exponent % self.order)

    def __mul__(self, other):
        if self.order != other.order:
            raise DomainError("roots of unity of different orders")
        return RootOfUnity(self.order, self.exponent + other.exponent)

    def __pow__(self, e):
        return RootOfUnity(self.order, self.exponent * e)

    def is_trivial(self):
        return self.exponent == 0

    def embed(self, kind=None):
        kind = kind or _kind_for_order(self.order)
        return _generator(kind, self.order) ** self.exponent

    def __str__(self):
        return str(self.embed())

    def to_json(self):
        return {"order": self.order, "exponent": self.exponent, "embed": str(self)}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["order"]), int(obj["exponent"]))


def mu_elements(kind, m):
    """The m-th roots of unity, as successive powers of the canonical generator."""
    g = _generator(kind, m)
    return [g**k for k in range(m)]


def power_mod(b, e, pi):
    """``b**e`` reduced modulo ``pi`` by square-and-multiply."""
    out = quad_divmod(QuadInt(b.kind, 1), pi)[1]
    base = quad_divmod(b, pi)[1]
    while e:
        if e & 1:
            out = quad_divmod(out * base, pi)[1]
        base = quad_divmod(base * base, pi)[1]
        e >>= 1
    return out


def prime_symbol(b, pi, m):
    """``(b / pi)_m`` for a prime element ``pi``."""
    kind = pi.kind
    b = QuadInt.of(kind, b)
    mus = mu_elements(kind, m)
    if not quad_divmod(b, pi)[1]:
        raise SymbolUndefined(f"symbol undefined: {pi} divides {b}")
    if not quad_divmod(QuadInt(kind, m), pi)[1]:
        raise SymbolUndefined(f"symbol undefined: {pi} divides {m}")
    q = pi.norm()
    assert (q - 1) % m == 0
    t = power_mod(b, (q - 1) // m, pi)
    hits = [k for k, z in enumerate(mus) if not quad_divmod(t - z, pi)[1]]
    assert len(hits) == 1, f"no unique root of unity for ({b}/{pi})_{m}"
    return RootOfUnity(m, hits[0])


@dataclass(frozen=True)
class SymbolQuery:
    """The data of ``(b / a)_m``: numerator, ideal denominator, degree."""

    numerator: QuadInt
    denominator: PrincipalIdeal
    m: int

    def check(self):
        kind = self.denominator.kind
        if self.numerator.kind is not kind:
            raise DomainError("mixed ring kinds")
        if kind.unit_count % self.m:
            raise DomainError(f"mu_{self.m} is not contained in the {kind.value} ring")
        if self.denominator.is_zero():
            raise DomainError("zero denominator ideal")
        bm = self.numerator * self.m
        if gcd(self.denominator.generator, bm).norm() != 1:
            raise SymbolUndefined(
                f"symbol undefined: {self.denominator} + ({self.numerator}*{self.m}) is not the unit ideal"
            )


def symbol(b, a, m):
    """``(b / a)_m`` where ``a`` is an element or a PrincipalIdeal.

    >>> from stablerank.quadratic import parse_quad
    >>> str(symbol(parse_quad("12"), parse_quad("1+4i"), 2))
    '-1'
    """
    ideal = a if isinstance(a, PrincipalIdeal) else PrincipalIdeal.of(a)
    b = QuadInt.of(ideal.kind, b)
    SymbolQuery(b, ideal, m).check()
    out = RootOfUnity(m)
    for pi, e in factor(ideal.generator).factors:
        out = out * prime_symbol(b, pi, m) ** e
    return out
