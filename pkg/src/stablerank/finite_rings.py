"""
Brute-force checks of stable-range facts over Z/nZ.

Everything here enumerates: unimodular rows, stabilizing shifts, SL2
matrices and their lifts.  Each exhaustive check reports the size of the
space it searched.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import reduce

from . import arith
from .errors import DomainError

__all__ = [
    "Elementary",
    "LemmaReport",
    "UnitLiftReport",
    "ZnMat2",
    "check_stable_row_lemma",
    "e2_decompose",
    "is_stable_row",
    "is_unimodular",
    "recompose",
    "sl2_group",
    "sl2_lift",
    "stable_rank",
    "um_rows",
    "unit_lift_check",
]

# n above this makes check_stable_row_lemma slow (it enumerates Um_3 x SL2)
LEMMA_BOUND = 8


def _check_modulus(n):
    if n < 2:
        raise DomainError(f"modulus must be at least 2, got {n}")


def is_unimodular(row, n):
    return reduce(math.gcd, row, n) == 1


def um_rows(n, k):
    """Unimodular rows of length k over Z/n, in lexicographic order."""
    _check_modulus(n)
    if k < 1:
        raise DomainError("row length must be positive")
    return [row for row in itertools.product(range(n), repeat=k) if reduce(math.gcd, row, n) == 1]


def is_stable_row(row, n):
    """Brute-force stability of a unimodular row ``(r_1, ..., r_k, c)``.

    Returns ``(True, s)`` for the lexicographically first shift ``s`` making
    ``(r_i + s_i c)`` unimodular, else ``(False, None)``.
    """
    _check_modulus(n)
    row = tuple(x % n for x in row)
    if len(row) < 2:
        raise DomainError("stability needs a row of length at least 2")
    if not is_unimodular(row, n):
        raise DomainError(f"row {row} is not unimodular mod {n}")
    *head, c = row
    for s in itertools.product(range(n), repeat=len(head)):
        if reduce(math.gcd, ((r + si * c) % n for r, si in zip(head, s)), n) == 1:
            return True, s
    return False, None


def stable_rank(n):
    """Least k such that every row of Um_{k+1}(Z/n) is stable.

    Stops at the first k that passes; larger k then pass as well.
    """
    _check_modulus(n)
    k = 1
    while True:
        if all(is_stable_row(row, n)[0] for row in um_rows(n, k + 1)):
            return k
        k += 1


@dataclass(frozen=True)
class ZnMat2:
    """``[[a, b], [c, d]]`` with entries reduced into ``[0, n)``."""

    n: int
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % self.n)

    @classmethod
    def from_rows(cls, n, rows):
        (a, b), (c, d) = rows
        return cls(n, a, b, c, d)

    def det(self):
        return (self.a * self.d - self.b * self.c) % self.n

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]


def sl2_group(n):
    """All of SL2(Z/n), lexicographic in ``(a, b, c, d)``."""
    out = []
    for a, b, c, d in itertools.product(range(n), repeat=4):
        if (a * d - b * c) % n == 1 % n:
            out.append((a, b, c, d))
    return out


def sl2_lift(M):
    """Lift ``M`` in SL2(Z/n) to an integer matrix of determinant exactly 1.

    The first row is lifted to a coprime integer pair (``b`` is moved by a
    multiple of n so as to avoid every prime of ``a`` not dividing n), then
    completed by an integer Bezout relation, and the second row is shifted
    by the multiple of the first row that fixes its residue class.
    """
    n = M.n
    if M.det() != 1 % n:
        raise DomainError(f"det = {M.det()} is not 1 mod {n}")
    a = M.a if M.a else n
    b = M.b
    outside = [q for q in arith.factor_int(a).primes() if n % q]
    if any(b % q == 0 for q in outside):
        # b + n*t = 1 (mod q) for every prime q of a outside n; fixing only
        # the offending primes could move b onto another prime of a
        t = arith.crt([((1 - b) * arith.inverse_mod(n, q) % q, q) for q in outside])
        b += n * t
    g, x, y = arith.ext_gcd(a, b)
    assert g == 1
    # a*x + b*y = 1, so [[a, b], [-y, x]] has determinant 1
    c0, d0 = -y, x
    t = (d0 * (M.c - c0) - c0 * (M.d - d0)) % n
    out = ((a, b), (c0 + t * a, d0 + t * b))
    assert out[0][0] * out[1][1] - out[0][1] * out[1][0] == 1
    assert all((out[i][j] - M.rows()[i][j]) % n == 0 for i in range(2) for j in range(2))
    return out


@dataclass(frozen=True)
class Elementary:
    """``e_ij(amount)``: the identity plus ``amount`` at position ``(i, j)``, 1-based."""

    i: int
    j: int
    amount: int

    def __post_init__(self):
        if {self.i, self.j} != {1, 2}:
            raise DomainError(f"bad elementary position ({self.i}, {self.j})")

    def matrix(self):
        if self.i == 1:
            return ((1, self.amount), (0, 1))
        return ((1, 0), (self.amount, 1))

    def inverse(self):
        return Elementary(self.i, self.j, -self.amount)


def _mat_mul(x, y, n=None):
    out = tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )
    if n:
        out = tuple(tuple(v % n for v in row) for row in out)
    return out


def recompose(word, n=None):
    """Multiply out an elementary word (over Z, or mod n when given)."""
    out = ((1, 0), (0, 1))
    if n:
        out = tuple(tuple(v % n for v in row) for row in out)
    for e in word:
        out = _mat_mul(out, e.matrix(), n)
    return out


# -I as a product of four elementary matrices
_MINUS_I = [Elementary(1, 2, 1), Elementary(2, 1, -2), Elementary(1, 2, 1), Elementary(2, 1, -2)]


def _normalize(word, n=None):
    out = []
    for e in word:
        amt = e.amount % n if n else e.amount
        if n and 2 * amt > n:
            amt -= n
        if out and (out[-1].i, out[-1].j) == (e.i, e.j):
            merged = out[-1].amount + amt
            if n:
                merged %= n
                if 2 * merged > n:
                    merged -= n
            out[-1] = Elementary(e.i, e.j, merged)
            if not out[-1].amount:
                out.pop()
            continue
        if amt:
            out.append(Elementary(e.i, e.j, amt))
    return out


def _e2_integer(rows):
    (a, b), (c, d) = rows
    if a * d - b * c != 1:
        raise DomainError(f"det = {a * d - b * c} is not 1")
    ops = []

    def col(i, j, k):
        # right-multiply the working matrix by e_ij(k)
        nonlocal a, b, c, d
        ops.append(Elementary(i, j, k))
        if (i, j) == (2, 1):
            a, c = a + k * b, c + k * d
        else:
            b, d = b + k * a, d + k * c

    while b:
        if a == 0:
            # b = +-1 here since gcd(a, b) = 1
            col(2, 1, b)
        elif abs(b) >= abs(a):
            col(1, 2, -(b // a))
        else:
            col(2, 1, -(a // b))
    # now M * ops = [[a, 0], [c, a]] with a = +-1
    if a == 1:
        head = [Elementary(2, 1, c)]
    else:
        head = _MINUS_I + [Elementary(2, 1, -c)]
    return _normalize(head + [e.inverse() for e in reversed(ops)])


def e2_decompose(M):
    """Write ``M`` (integer rows or a :class:`ZnMat2`) as a product of elementary matrices.

    The first row is reduced to ``(+-1, 0)`` by Euclidean column operations;
    a leftover ``-I`` uses the fixed word ``e12(1) e21(-2) e12(1) e21(-2)``.
    Over Z/n the matrix is first lifted by :func:`sl2_lift`.
    """
    if isinstance(M, ZnMat2):
        word = _e2_integer(sl2_lift(M))
        word = _normalize(word, M.n)
        assert recompose(word, M.n) == tuple(map(tuple, M.rows()))
        return word
    rows = tuple(tuple(r) for r in M)
    word = _e2_integer(rows)
    assert recompose(word) == rows
    return word


@dataclass
class LemmaReport:
    n: int
    holds: bool
    rows_checked: int = 0
    stable_rows: int = 0
    matrices_checked: int = 0
    search_space: int = 0
    counterexample: tuple | None = None

    def to_json(self):
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}


def check_stable_row_lemma(n, only_c=None, bound=LEMMA_BOUND):
    """Check, for every ``(a, b, c)`` in Um_3(Z/n), that stability is
    equivalent to every SL2((Z/n)/(c)) matrix with first row ``(a, b)``
    having a preimage in SL2(Z/n).

    The quotient (Z/n)/(c) is Z/g with g = gcd(c, n); g = 1 is the zero ring.
    """
    _check_modulus(n)
    if n > bound:
        raise DomainError(f"modulus {n} exceeds the exhaustion bound {bound}")
    group = sl2_group(n)
    images = {}
    report = LemmaReport(n, True)
    for a, b, c in um_rows(n, 3):
        if only_c is not None and c != only_c % n:
            continue
        report.rows_checked += 1
        stable, _ = is_stable_row((a, b, c), n)
        report.search_space += n * n
        report.stable_rows += stable
        g = math.gcd(c, n)
        if g not in images:
            images[g] = {tuple(x % g for x in m) for m in group}
        targets = [
            (a % g, b % g, d, e)
            for d in range(g)
            for e in range(g)
            if (a * e - b * d) % g == 1 % g
        ]
        report.matrices_checked += len(targets)
        lifts = all(t in images[g] for t in targets)
        if stable != lifts:
            report.holds = False
            report.counterexample = (a, b, c)
            return report
    return report


@dataclass
class UnitLiftReport:
    source: str
    target: int
    units: list = field(default_factory=list)
    lifts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def surjective(self):
        return not self.failures

    def to_json(self):
        return {
            "source": self.source,
            "target": self.target,
            "units": self.units,
            "lifts": {str(k): v for k, v in self.lifts.items()},
            "failures": self.failures,
            "surjective": self.surjective,
        }


def unit_lift_check(source, d):
    """Does every unit of Z/d lift to a unit of the source ring?

    ``source`` is ``"Z"`` (units +-1 only) or a modulus n with ``d | n``.
    """
    _check_modulus(d)
    units = [u for u in range(d) if math.gcd(u, d) == 1]
    if source == "Z":
        rep = UnitLiftReport("Z", d, units)
        for u in units:
            hit = next((v for v in (1, -1) if (v - u) % d == 0), None)
            if hit is None:
                rep.failures.append(u)
            else:
                rep.lifts[u] = hit
        return rep
    n = int(source)
    if n % d:
        raise DomainError(f"{d} does not divide {n}")
    rep = UnitLiftReport(f"Z/{n}", d, units)
    for u in units:
        hit = next((v for v in range(u, n, d) if math.gcd(v, n) == 1), None)
        if hit is None:
            rep.failures.append(u)
        else:
            rep.lifts[u] = hit
    return rep
