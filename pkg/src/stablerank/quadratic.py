"""
Arithmetic in the Euclidean imaginary quadratic rings Z[i] and Z[w],
w = exp(2*pi*i/3).

Elements are stored as integer coordinates ``a + b*w`` where ``w`` is
``i`` for the Gaussian ring and the primitive cube root of unity for the
Eisenstein ring.  Everything is exact; no floating point is used, not even
for choosing canonical associates.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass

from . import arith
from .errors import DomainError

__all__ = [
    "PrincipalIdeal",
    "QuadFactorization",
    "QuadInt",
    "RingKind",
    "canonical_associate",
    "divides",
    "factor",
    "is_prime_element",
    "gcd",
    "ext_gcd",
    "norm",
    "ord_prime",
    "parse_quad",
    "prime_above",
    "primes_above",
    "quad_divmod",
    "units",
]


class RingKind(enum.Enum):
    GAUSSIAN = "gaussian"
    EISENSTEIN = "eisenstein"

    @property
    def unit_count(self):
        return 4 if self is RingKind.GAUSSIAN else 6

    @property
    def symbol(self):
        return "i" if self is RingKind.GAUSSIAN else "w"

    @classmethod
    def parse(cls, text):
        key = text.strip().lower()
        aliases = {"gaussian": cls.GAUSSIAN, "zi": cls.GAUSSIAN, "z[i]": cls.GAUSSIAN,
                   "eisenstein": cls.EISENSTEIN, "zw": cls.EISENSTEIN}
        if key not in aliases:
            raise DomainError(f"unknown ring {text!r}")
        return aliases[key]


@dataclass(frozen=True)
class QuadInt:
    """The element ``a + b*w`` of the ring ``kind``."""

    kind: RingKind
    a: int
    b: int = 0

    # -- construction helpers -------------------------------------------------
    @classmethod
    def of(cls, kind, value):
        if isinstance(value, QuadInt):
            if value.kind is not kind:
                raise DomainError("mixed ring kinds")
            return value
        return cls(kind, int(value), 0)

    def _coerce(self, other):
        if isinstance(other, QuadInt):
            if other.kind is not self.kind:
                raise DomainError("mixed ring kinds")
            return other
        if isinstance(other, int):
            return QuadInt(self.kind, other, 0)
        return NotImplemented

    # -- ring operations ------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadInt(self.kind, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(self.kind, -self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadInt(self.kind, self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.a, self.b, other.a, other.b
        if self.kind is RingKind.GAUSSIAN:
            return QuadInt(self.kind, a * c - b * d, a * d + b * c)
        # w**2 = -1 - w
        return QuadInt(self.kind, a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise DomainError("negative exponent")
        out, base = QuadInt(self.kind, 1, 0), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __bool__(self):
        return bool(self.a or self.b)

    def conj(self):
        if self.kind is RingKind.GAUSSIAN:
            return QuadInt(self.kind, self.a, -self.b)
        # conj(w) = w**2 = -1 - w
        return QuadInt(self.kind, self.a - self.b, -self.b)

    def norm(self):
        a, b = self.a, self.b
        if self.kind is RingKind.GAUSSIAN:
            return a * a + b * b
        return a * a - a * b + b * b

    def is_unit(self):
        return self.norm() == 1

    def is_rational(self):
        return self.b == 0

    # -- text -----------------------------------------------------------------
    def __str__(self):
        s = self.kind.symbol
        if self.b == 0:
            return str(self.a)
        bpart = {1: s, -1: "-" + s}.get(self.b, f"{self.b}{s}")
        if self.a == 0:
            return bpart
        if bpart.startswith("-"):
            return f"{self.a}{bpart}"
        return f"{self.a}+{bpart}"

    def to_json(self):
        return {"kind": self.kind.value, "a": str(self.a), "b": str(self.b)}

    @classmethod
    def from_json(cls, obj):
        return cls(RingKind(obj["kind"]), int(obj["a"]), int(obj["b"]))


_TERM = re.compile(r"([+-])(\d*)\*?([iw]?)")


def parse_quad(text, kind=None):
    """Parse ``a``, ``a+bi``, ``a-bi``, ``bi`` (Gaussian) or the same with ``w``.

    The ring is inferred from the symbol when ``kind`` is None; a bare
    integer then defaults to the Gaussian ring.
    """
    s = text.replace(" ", "")
    if not s:
        raise DomainError("empty ring element")
    if s[0] not in "+-":
        s = "+" + s
    pos, a, b, seen = 0, 0, 0, None
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise DomainError(f"cannot parse ring element {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            if seen and seen != m.group(3):
                raise DomainError(f"mixed ring symbols in {text!r}")
            seen = m.group(3)
            b += sign * coef
        else:
            a += sign * coef
        pos = m.end()
    inferred = {"i": RingKind.GAUSSIAN, "w": RingKind.EISENSTEIN}.get(seen)
    if kind is None:
        kind = inferred or RingKind.GAUSSIAN
    elif inferred is not None and inferred is not kind:
        raise DomainError(f"{text!r} does not belong to the {kind.value} ring")
    return QuadInt(kind, a, b)


def norm(x):
    return x.norm()


def units(kind):
    """All units, as powers of a generator of the unit group (i resp. 1 + w)."""
    g = QuadInt(kind, 0, 1) if kind is RingKind.GAUSSIAN else QuadInt(kind, 1, 1)
    return [g**k for k in range(kind.unit_count)]


def quad_divmod(x, y):
    """Return ``(q, r)`` with ``x == q*y + r`` and ``r`` of minimal norm.

    The quotient is the lattice point nearest to ``x / y``; the remainder
    satisfies ``N(r) <= N(y)/2`` (Gaussian) or ``N(y)/3`` (Eisenstein).
    Ties are broken by smallest ``(N(r), q.a, q.b)``.
    """
    if x.kind is not y.kind:
        raise DomainError("mixed ring kinds")
    if not y:
        raise ZeroDivisionError("division by zero in quadratic ring")
    num = x * y.conj()
    n = y.norm()
    fa, fb = num.a // n, num.b // n
    best = None
    # x/y sits in the cell spanned by (fa, fb); the nearest lattice point is
    # one of the four corners for both lattices.
    for da in (0, 1):
        for db in (0, 1):
            q = QuadInt(x.kind, fa + da, fb + db)
            r = x - q * y
            key = (r.norm(), q.a, q.b)
            if best is None or key < best[0]:
                best = (key, q, r)
    return best[1], best[2]


def divides(d, x):
    """True when ``d | x``; the zero element divides only zero."""
    if not d:
        return not x
    return not quad_divmod(x, d)[1]


def exact_div(x, d):
    q, r = quad_divmod(x, d)
    if r:
        raise DomainError(f"{d} does not divide {x}")
    return q


def _in_sector(x):
    if x.kind is RingKind.GAUSSIAN:
        # argument in [0, pi/2)
        return x.a > 0 and x.b >= 0
    # argument in [0, pi/3): x = s + t*(1 + w) with s > 0, t >= 0
    return x.a > x.b >= 0


def canonical_associate(x):
    """Return ``(c, u)`` with ``x == u*c``, ``u`` a unit and ``c`` canonical."""
    if not x:
        raise DomainError("zero has no canonical associate")
    for v in units(x.kind):
        c = v * x
        if _in_sector(c):
            # v * x = c, so x = v**-1 * c = conj(v) * c
            return c, v.conj()
    raise AssertionError("no associate in the canonical sector")


def gcd(x, y):
    if not x and not y:
        raise DomainError("gcd(0, 0) is undefined")
    while y:
        x, y = y, quad_divmod(x, y)[1]
    return canonical_associate(x)[0]


def ext_gcd(x, y):
    """Return ``(g, u, v)`` with ``u*x + v*y == g`` and ``g`` canonical."""
    if not x and not y:
        raise DomainError("gcd(0, 0) is undefined")
    kind = x.kind
    one, zero = QuadInt(kind, 1), QuadInt(kind, 0)
    r0, r1, s0, s1, t0, t1 = x, y, one, zero, zero, one
    while r1:
        q, r = quad_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    g, w = canonical_associate(r0)
    winv = w.conj()
    return g, s0 * winv, t0 * winv


@dataclass(frozen=True)
class PrincipalIdeal:
    """The ideal ``generator * S``; the generator is canonical (or zero)."""

    generator: QuadInt

    @classmethod
    def of(cls, x):
        if not x:
            return cls(x)
        return cls(canonical_associate(x)[0])

    @property
    def kind(self):
        return self.generator.kind

    def is_zero(self):
        return not self.generator

    def is_unit(self):
        return self.generator.norm() == 1

    def contains(self, x):
        return divides(self.generator, x)

    def congruent(self, x, y):
        return self.contains(x - y)

    def residue(self, x):
        """Canonical residue of ``x`` modulo the ideal, via ``quad_divmod``."""
        if self.is_zero():
            return x
        return quad_divmod(x, self.generator)[1]

    def __mul__(self, other):
        return PrincipalIdeal.of(self.generator * other.generator)

    def __str__(self):
        return f"({self.generator})"

    def to_json(self):
        return {"generator": self.generator.to_json()}


@dataclass(frozen=True)
class QuadFactorization:
    """``unit * prod(p**e for p, e in factors)``; primes canonical, sorted by (norm, a, b)."""

    unit: QuadInt
    factors: tuple[tuple[QuadInt, int], ...]

    def value(self):
        out = self.unit
        for p, e in self.factors:
            out = out * p**e
        return out

    def to_json(self):
        return {
            "unit": self.unit.to_json(),
            "factors": [{"prime": p.to_json(), "exponent": e} for p, e in self.factors],
        }


def _cube_root_of_unity_mod(p):
    """A primitive cube root of unity modulo a prime p = 1 (mod 3)."""
    z = 2
    while True:
        w = pow(z, (p - 1) // 3, p)
        if w != 1:
            return w
        z += 1


def primes_above(kind, p):
    """Canonical primes of the ring lying over the rational prime ``p``."""
    if kind is RingKind.GAUSSIAN:
        if p == 2:
            return [QuadInt(kind, 1, 1)]
        if p % 4 == 3:
            return [QuadInt(kind, p, 0)]
        r = arith.sqrt_minus_one(p)
        pi = gcd(QuadInt(kind, p), QuadInt(kind, r, 1))
    else:
        if p == 3:
            return [QuadInt(kind, 2, 1)]
        if p % 3 == 2:
            return [QuadInt(kind, p, 0)]
        r = _cube_root_of_unity_mod(p)
        pi = gcd(QuadInt(kind, p), QuadInt(kind, -r, 1))
    other = canonical_associate(pi.conj())[0]
    return sorted({pi, other}, key=lambda q: (q.norm(), q.a, q.b))


def prime_above(kind, p):
    return primes_above(kind, p)[0]


def ord_prime(x, pi):
    """Largest ``e`` with ``pi**e | x``."""
    if not x:
        raise DomainError("order of zero is infinite")
    if pi.norm() <= 1:
        raise DomainError(f"{pi} is not a prime")
    e = 0
    while True:
        q, r = quad_divmod(x, pi)
        if r:
            return e
        x, e = q, e + 1


def factor(x):
    """Factor ``x != 0`` into a unit times canonical prime powers."""
    if not x:
        raise DomainError("cannot factor zero")
    kind = x.kind
    factors = []
    rest = x
    n = x.norm()
    if n > 1:
        for p, _ in arith.factor_int(n).factors:
            for pi in primes_above(kind, p):
                e = 0
                while True:
                    q, r = quad_divmod(rest, pi)
                    if r:
                        break
                    rest, e = q, e + 1
                if e:
                    factors.append((pi, e))
    if rest.norm() != 1:
        raise AssertionError(f"incomplete factorization of {x}")
    factors.sort(key=lambda t: (t[0].norm(), t[0].a, t[0].b))
    return QuadFactorization(rest, tuple(factors))


def is_prime_element(x):
    n = x.norm()
    if arith.is_prime(n):
        return True
    if x.b == 0 or x.a == 0 or (x.kind is RingKind.EISENSTEIN and x.a == x.b):
        # associate of a rational integer: prime iff it is an inert rational prime
        r = math.isqrt(n)
        if r * r == n and arith.is_prime(r):
            return primes_above(x.kind, r) == [QuadInt(x.kind, r)]
    return False
