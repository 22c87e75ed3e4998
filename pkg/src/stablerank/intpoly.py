"""
Univariate polynomials over Z, resultants, and unimodularity certificates
for rows in Z[x].

A row ``(r_1, ..., r_n)`` is unimodular when some ``w_i`` satisfy
``sum w_i r_i = 1``.  ``unimodular_certificate`` either returns such
witnesses (checked by exact expansion) or a reason why none exist: a
common root over the rationals, or a prime p modulo which the row has a
nonconstant common factor.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from . import arith
from .errors import DomainError
from .quadratic import QuadInt

__all__ = [
    "BezoutCertificate",
    "IntPoly",
    "NonUnimodularObstruction",
    "eval_quad",
    "parse_poly",
    "parse_row",
    "resultant",
    "sylvester_matrix",
    "unimodular_certificate",
    "verify_certificate",
]

# e-expansion guard: the certificate needs (1 - e)(1 + e + ... + e^(s-1))
MAX_EXPANSION_EXPONENT = 64


def _trim(coeffs):
    coeffs = list(coeffs)
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    del coeffs[n:]
    return coeffs


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients low degree first, no trailing zeros."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = _trim(self.coeffs)
        if not all(type(x) is int for x in c):
            c = [int(x) for x in c]
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def _raw(cls, coeffs):
        # internal constructor for lists already known to hold ints
        out = object.__new__(cls)
        object.__setattr__(out, "coeffs", tuple(_trim(coeffs)))
        return out

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @property
    def degree(self):
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def _lift(self, other):
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, y in enumerate(b):
            out[k] += y
        return IntPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self or not other:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        out, base = IntPoly((1,)), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def content(self):
        return reduce(math.gcd, self.coeffs, 0)

    def primitive(self):
        """Primitive part with positive leading coefficient."""
        c = self.content()
        if c == 0:
            return self
        if self.lc() < 0:
            c = -c
        return IntPoly(x // c for x in self.coeffs)

    def __call__(self, x):
        """Horner evaluation at an int, Fraction or QuadInt."""
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def reduce_mod(self, p):
        return [c % p for c in self.coeffs]

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def to_json(self):
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, arr):
        return cls(int(c) for c in arr)


_POLY_TERM = re.compile(r"([+-])(\d*)\*?(x(?:\^(\d+))?)?")


def parse_poly(text):
    """Parse integer polynomials in x such as ``x^2+16`` or ``21+2*x``."""
    s = text.replace(" ", "")
    if not s:
        raise DomainError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    coeffs = {}
    pos = 0
    while pos < len(s):
        m = _POLY_TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise DomainError(f"cannot parse polynomial {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            deg = int(m.group(4)) if m.group(4) else 1
        else:
            deg = 0
        coeffs[deg] = coeffs.get(deg, 0) + sign * coef
        pos = m.end()
    top = max(coeffs)
    return IntPoly(coeffs.get(k, 0) for k in range(top + 1))


def parse_row(text):
    return [parse_poly(part) for part in text.split(",")]


def eval_quad(f, theta):
    """Evaluate ``f`` at a quadratic integer by Horner's rule."""
    out = QuadInt(theta.kind, 0)
    for c in reversed(f.coeffs):
        out = out * theta + c
    return out


# ---------------------------------------------------------------------------
# Resultants

def _prem(a, b):
    """Pseudo-remainder of integer coefficient lists (low degree first)."""
    a = list(a)
    lb = b[-1]
    delta = len(a) - len(b) + 1
    while len(a) >= len(b) and a:
        la = a[-1]
        shift = len(a) - len(b)
        a = [lb * c for c in a]
        for k in range(len(b)):
            a[shift + k] -= la * b[k]
        a = _trim(a)
        delta -= 1
    if delta > 0:
        a = [c * lb**delta for c in a]
    return a


def resultant(f, g):
    """Res(f, g) by the subresultant algorithm (fraction-free).

    Equals the determinant of the Sylvester matrix; ``Res(f, 0) == 0``.
    """
    if not f and not g:
        raise DomainError("resultant of two zero polynomials")
    if not f or not g:
        return 0
    A, B = list(f.coeffs), list(g.coeffs)
    da, db = len(A) - 1, len(B) - 1
    s = 1
    if da < db:
        A, B = B, A
        da, db = db, da
        if da * db % 2:
            s = -1
    if db == 0:
        return s * B[0] ** da
    ca, cb = reduce(math.gcd, A), reduce(math.gcd, B)
    A = [c // ca for c in A]
    B = [c // cb for c in B]
    t = ca**db * cb**da
    g_, h = 1, 1
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = _prem(A, B)
        A = B
        div = g_ * h**delta
        B = [c // div for c in R]
        g_ = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g_
        else:
            h = g_**delta // h ** (delta - 1)
        if not B:
            return 0
        if len(B) == 1:
            da = len(A) - 1
            return s * t * (B[0] ** da // h ** (da - 1))


def sylvester_matrix(f, g):
    m, n = f.degree, g.degree
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - n - 1 - i))
    return rows


# ---------------------------------------------------------------------------
# Field arithmetic helpers (coefficient lists, low degree first)

def _q_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lb
        shift = len(a) - len(b)
        q[shift] = c
        for k in range(len(b)):
            a[shift + k] -= c * b[k]
        a = _trim(a)
    return q, a


def _z_content(a):
    """Content of a nonzero integer coefficient list, signed like its leading coefficient."""
    c = reduce(math.gcd, a, 0)
    return -c if a[-1] < 0 else c


def _z_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _z_lin(x, a, y, b):
    """``x*a + y*b`` for integer scalars x, y and coefficient lists a, b."""
    n = max(len(a), len(b))
    return _trim(
        x * (a[k] if k < len(a) else 0) + y * (b[k] if k < len(b) else 0) for k in range(n)
    )


def _z_pdivmod(a, b):
    """Pseudo-division: returns ``(k, q, r)`` with ``k*a == q*b + r``, k a power of lc(b)."""
    n = len(a) - len(b) + 1
    if n <= 0:
        return 1, [], list(a)
    a = list(a)
    q = [0] * n
    lb = b[-1]
    top = len(b) - 1
    for shift in range(n - 1, -1, -1):
        c = a[shift + top]
        if lb != 1:
            a = [x * lb for x in a]
            q = [x * lb for x in q]
        q[shift] += c
        if c:
            for k, y in enumerate(b):
                a[shift + k] -= c * y
    return lb**n, q, _trim(a)


def _z_reduce(r, s, t, lam):
    """Make ``r`` primitive in ``s*A + t*B == lam*r`` and cancel common factors."""
    c = _z_content(r)
    r = [x // c for x in r]
    lam *= c
    g = reduce(math.gcd, s + t, lam)
    if g > 1:
        s, t, lam = [x // g for x in s], [x // g for x in t], lam // g
    return r, s, t, lam


def _z_xgcd(a, b):
    """Primitive remainder sequence with cofactors.

    Returns ``(h, s, t, lam)`` with ``s*a + t*b == lam*h``, ``h`` the primitive
    gcd over Q with positive leading coefficient.  All arithmetic stays in Z.
    """
    r0, s0, t0, l0 = _z_reduce(list(a), [1], [], 1)
    r1, s1, t1, l1 = _z_reduce(list(b), [], [1], 1)
    while True:
        k, q, rem = _z_pdivmod(r0, r1)
        if not rem:
            return r1, s1, t1, l1
        # l0*l1*rem = k*l1*(l0*r0) - l0*q*(l1*r1)
        S = _z_lin(k * l1, s0, -l0, _z_mul(q, s1))
        T = _z_lin(k * l1, t0, -l0, _z_mul(q, t1))
        r0, s0, t0, l0, (r1, s1, t1, l1) = r1, s1, t1, l1, _z_reduce(rem, S, T, l0 * l1)


def _p_divmod(a, b, p):
    a = list(a)
    lb = len(b)
    n = len(a) - lb + 1
    if n <= 0:
        return [], a
    inv = pow(b[-1], -1, p)
    q = [0] * n
    for shift in range(n - 1, -1, -1):
        c = a[shift + lb - 1] * inv % p
        if c:
            q[shift] = c
            for k in range(lb):
                a[shift + k] = (a[shift + k] - c * b[k]) % p
    return q, _trim(a[: lb - 1])


def _p_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _p_sub(a, b, p):
    out = list(a) + [0] * (len(b) - len(a))
    for k, y in enumerate(b):
        out[k] = (out[k] - y) % p
    return _trim(out)


def _p_xgcd(a, b, p):
    """Monic gcd over F_p with Bezout cofactors; ``a`` and ``b`` reduced mod p."""
    r0, r1 = _trim(a), _trim(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _p_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _p_sub(s0, _p_mul(q, s1, p), p)
        t0, t1 = t1, _p_sub(t0, _p_mul(q, t1, p), p)
    if not r0:
        return [], s0, t0
    inv = pow(r0[-1], -1, p)
    return ([c * inv % p for c in r0], [c * inv % p for c in s0], [c * inv % p for c in t0])


# ---------------------------------------------------------------------------
# Certificates

@dataclass(frozen=True)
class BezoutCertificate:
    """Witnesses ``w`` with ``sum(w_i * r_i) == 1`` in Z[x]."""

    row: tuple[IntPoly, ...]
    witnesses: tuple[IntPoly, ...]
    d_stage: int = 1

    def verify(self):
        return verify_certificate(self)

    def to_json(self):
        return {
            "row": [r.to_json() for r in self.row],
            "witnesses": [w.to_json() for w in self.witnesses],
            "d_stage": str(self.d_stage),
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            tuple(IntPoly.from_json(r) for r in obj["row"]),
            tuple(IntPoly.from_json(w) for w in obj["witnesses"]),
            int(obj.get("d_stage", "1")),
        )


@dataclass(frozen=True)
class NonUnimodularObstruction:
    """Why a row is not unimodular.

    ``kind`` is ``"common_root"`` (the rational gcd ``gcd`` is nonconstant;
    stored as a primitive integer polynomial) or ``"mod_p"`` (the row
    reduced modulo ``p`` has common factor ``gcd``, monic mod p, or is zero).
    """

    row: tuple[IntPoly, ...]
    kind: str
    gcd: IntPoly
    p: int | None = None

    def recheck(self):
        rows = [list(r.coeffs) for r in self.row]
        if self.kind == "common_root":
            if self.gcd.degree < 1:
                return False
            g = [Fraction(c) for c in self.gcd.coeffs]
            return all(not _q_divmod([Fraction(c) for c in r], g)[1] for r in rows if r)
        if self.kind == "mod_p":
            p = self.p
            if p is None or not arith.is_prime(p):
                return False
            g = [c % p for c in self.gcd.coeffs]
            if not _trim(g):
                # every entry vanishes mod p
                return all(not _trim(c % p for c in r) for r in rows)
            if len(_trim(g)) < 2:
                return False
            return all(not _p_divmod(_trim(c % p for c in r), _trim(g), p)[1] for r in rows)
        return False

    def to_json(self):
        out = {"kind": self.kind, "gcd": self.gcd.to_json(), "row": [r.to_json() for r in self.row]}
        if self.p is not None:
            out["p"] = str(self.p)
        return out


def verify_certificate(cert):
    if len(cert.row) != len(cert.witnesses):
        raise DomainError("row and witness lengths differ")
    total = IntPoly()
    for r, w in zip(cert.row, cert.witnesses):
        total = total + r * w
    return total == IntPoly((1,))


def _fold_order(row):
    return sorted(range(len(row)), key=lambda i: (row[i].degree < 1, -row[i].degree, i))


def integer_bezout(row):
    """Fold the extended primitive remainder sequence along the row.

    Non-constant entries are folded first, by decreasing degree, and
    constants last, so a constant entry only enters the integer ``D`` when
    the polynomial entries alone are coprime over Q only through it.
    Returns ``(g, w, lam)`` with ``sum w_i row_i == lam * g``, ``g`` the
    primitive gcd over Q (``[1]`` for a row coprime over Q).
    """
    g = []
    w = [[] for _ in row]
    lam = 1
    for i in _fold_order(row):
        r = list(row[i].coeffs)
        if not r or len(g) == 1:
            continue
        if not g:
            c = _z_content(r)
            g, w[i], lam = [x // c for x in r], [1], c
            continue
        g, s, t, mu = _z_xgcd(g, r)
        w = [_z_mul(s, wj) for wj in w]
        w[i] = _z_lin(1, w[i], lam, t)
        lam *= mu
        common = reduce(math.gcd, (x for wj in w for x in wj), lam)
        if common > 1:
            w, lam = [[x // common for x in wj] for wj in w], lam // common
    return g, w, lam


def rational_bezout(row):
    """The same fold as :func:`integer_bezout`, scaled to ``g`` monic over Q.

    Returns ``(g, w)`` as Fraction lists with ``sum w_i row_i == g``.
    """
    g, w, lam = integer_bezout(row)
    if not g:
        return [], w
    scale = lam * g[-1]
    return [Fraction(c, g[-1]) for c in g], [[Fraction(c, scale) for c in wj] for wj in w]


def _p_gcd(a, b, p):
    while b:
        a, b = b, _p_divmod(a, b, p)[1]
    return a


def _mod_p_bezout(row, p):
    """Row generates the unit ideal mod p?  Returns ``(gcd, witnesses)`` over F_p.

    The gcd alone is folded first; cofactors are only built for a unit gcd.
    """
    reduced = [_trim(c % p for c in r.coeffs) for r in row]
    g = []
    for rp in reduced:
        if rp:
            g = _p_gcd(rp, g, p) if g else rp
            if len(g) == 1:
                break
    if len(g) != 1:
        if g:
            inv = pow(g[-1], -1, p)
            g = [c * inv % p for c in g]
        return g, None
    g = []
    w = [[] for _ in row]
    for i, rp in enumerate(reduced):
        if not rp or len(g) == 1:
            continue
        if not g:
            inv = pow(rp[-1], -1, p)
            g = [c * inv % p for c in rp]
            w[i] = [inv]
            continue
        g, s, t = _p_xgcd(g, rp, p)
        w = [_p_mul(s, wj, p) for wj in w]
        w[i] = _trim((x + y) % p for x, y in _zip_pad(w[i], t))
    return g, w


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return [((a[k] if k < len(a) else 0), (b[k] if k < len(b) else 0)) for k in range(n)]


def unimodular_certificate(row):
    """Decide unimodularity of a row in Z[x].

    Returns a :class:`BezoutCertificate` or a :class:`NonUnimodularObstruction`.
    """
    row = tuple(r if isinstance(r, IntPoly) else IntPoly.const(r) for r in row)
    if not row or all(not r for r in row):
        raise DomainError("row has no nonzero entry")

    g, w, lam = integer_bezout(row)
    if len(g) > 1:
        return NonUnimodularObstruction(row, "common_root", IntPoly(g))

    # integer witnesses u with sum u_i r_i = D; the fold keeps gcd(w, lam) = 1
    D = abs(lam)
    u = [IntPoly(c if lam > 0 else -c for c in wj) for wj in w]

    if D == 1:
        cert = BezoutCertificate(row, tuple(u), 1)
        assert verify_certificate(cert)
        return cert

    fac = arith.factor_int(D).factors
    per_prime = []
    for p, _ in fac:
        gp, wp = _mod_p_bezout(row, p)
        if len(gp) != 1:
            return NonUnimodularObstruction(row, "mod_p", IntPoly(gp), p)
        per_prime.append((p, wp))

    s = max(e for _, e in fac)
    if s > MAX_EXPANSION_EXPONENT:
        raise DomainError(f"D-stage integer {D} needs exponent {s} > {MAX_EXPANSION_EXPONENT}")

    # v = CRT of the mod-p witnesses, coefficientwise
    rad = 1
    for p, _ in fac:
        rad *= p
    v = []
    for i in range(len(row)):
        n = max(len(wp[i]) for _, wp in per_prime)
        coeffs = []
        for k in range(n):
            coeffs.append(_crt_centered([(wp[i][k] if k < len(wp[i]) else 0, p) for p, wp in per_prime], rad))
        v.append(IntPoly(coeffs))

    combo = IntPoly()
    for vi, ri in zip(v, row):
        combo = combo + vi * ri
    e = 1 - combo
    # e = 0 mod rad(D) coefficientwise, so e^s = 0 mod D
    geo = IntPoly((1,))
    power = IntPoly((1,))
    for _ in range(s - 1):
        power = power * e
        geo = geo + power
    es = power * e
    assert all(c % D == 0 for c in es.coeffs)
    h = IntPoly(c // D for c in es.coeffs)
    witnesses = tuple(vi * geo + h * ui for vi, ui in zip(v, u))
    cert = BezoutCertificate(row, witnesses, D)
    if not verify_certificate(cert):
        raise AssertionError(f"certificate failed to verify for row {[str(r) for r in row]}")
    return cert


def _crt_centered(pairs, modulus):
    if len(pairs) == 1:
        x = pairs[0][0] % pairs[0][1]
    else:
        x = arith.crt(pairs)
    return x - modulus if 2 * x > modulus else x
