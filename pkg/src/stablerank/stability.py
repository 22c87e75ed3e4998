"""
Non-stability obstruction for unimodular rows ``(a, b, c)`` in Z[x].

The row is pushed through ``x -> theta`` into the order ``Z + fS`` where
``c(theta) = 0`` and ``f | theta``.  The evaluated pair ``(a(theta),
b(theta))`` is the first row of a matrix in SL2(S, fS); if its
Bass-Milnor-Serre invariant is nontrivial the row cannot be stable,
because SK1(Z[x]) is trivial and stable rows lift every SL2 matrix over
the quotient by ``c``.  Only the matrix membership and the symbol value
are computed here; the surrounding K-theory is cited, not re-derived.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

from .bms import Mat2, complete_sl2_rel, in_sl2_rel, r_of_ideal, sk1_invariant
from .errors import DomainError, PreconditionError
from .intpoly import (
    BezoutCertificate,
    IntPoly,
    NonUnimodularObstruction,
    eval_quad,
    unimodular_certificate,
)
from .quadratic import PrincipalIdeal, QuadInt, RingKind
from .residues import RootOfUnity

__all__ = [
    "ObstructionReport",
    "StabilizerWitness",
    "Verdict",
    "find_roots",
    "obstruction",
    "propose_theta",
    "search_space_size",
    "search_stabilizer",
]

CITED_CHAIN = (
    "SK1(Z[x]) = 1 (Bass-Heller-Swan); a stable (a, b, c) lifts every SL2 matrix over "
    "Z[x]/(c) with first row (a, b); the surjection Z[x] -> Z + fS, x -> theta, factors "
    "through Z[x]/(c); SK1(Z + fS, fS) -> SK1(S, fS) is onto and SK1(Z + fS, fS) = SK1(Z + fS)."
)
NOT_FOUND_NOTE = "no stabilizer in the searched box; this is not a proof of non-stability"


class Verdict(enum.Enum):
    NOT_STABLE = "NotStable"
    INCONCLUSIVE = "Inconclusive"


def _as_row(row):
    return tuple(r if isinstance(r, IntPoly) else IntPoly.const(r) for r in row)


@dataclass(frozen=True)
class ObstructionReport:
    row: tuple[IntPoly, IntPoly, IntPoly]
    ring: RingKind
    theta: QuadInt
    conductor: int
    ideal: PrincipalIdeal
    r: int
    completion: Mat2
    value: RootOfUnity
    verdict: Verdict
    unimodularity: BezoutCertificate

    def verify(self):
        """Recompute every step from the row; returns ``(ok, reason)``."""
        a, b, c = self.row
        th = self.theta
        if not self.unimodularity.verify() or tuple(self.unimodularity.row) != tuple(self.row):
            return False, "unimodularity certificate does not verify"
        if eval_quad(c, th):
            return False, "c(theta) != 0"
        f = self.conductor
        if th.a % f or th.b % f:
            return False, "conductor does not divide theta"
        if PrincipalIdeal.of(QuadInt(th.kind, f)) != self.ideal:
            return False, "ideal is not f*S"
        if (self.completion.a, self.completion.b) != (eval_quad(a, th), eval_quad(b, th)):
            return False, "completion first row is not the evaluated pair"
        ok, why = in_sl2_rel(self.completion, self.ideal)
        if not ok:
            return False, why
        if r_of_ideal(th.kind, self.ideal).r != self.r:
            return False, "r(I) mismatch"
        cert = sk1_invariant(self.completion, self.ideal)
        if cert.value != self.value:
            return False, "symbol value mismatch"
        expected = Verdict.INCONCLUSIVE if self.value.is_trivial() else Verdict.NOT_STABLE
        if expected is not self.verdict:
            return False, "verdict inconsistent with value"
        return True, "ok"

    def to_json(self):
        return {
            "row": [r.to_json() for r in self.row],
            "ring": self.ring.value,
            "theta": self.theta.to_json(),
            "conductor": str(self.conductor),
            "ideal": self.ideal.to_json(),
            "r": self.r,
            "completion": self.completion.to_json(),
            "value": self.value.to_json(),
            "verdict": self.verdict.value,
            "unimodularity": self.unimodularity.to_json(),
            "cited": CITED_CHAIN,
        }


def find_roots(c, kind):
    """All roots of the integer polynomial ``c`` in the ring ``kind``.

    A nonzero root divides the lowest nonzero coefficient, which bounds its
    norm by that coefficient squared.
    """
    if not c:
        raise DomainError("every element is a root of the zero polynomial")
    k = next(i for i, x in enumerate(c.coeffs) if x)
    roots = [QuadInt(kind, 0)] if k else []
    c0 = c.coeffs[k]
    bound = c0 * c0
    # norm >= (3/4) * max(|a|, |b|)**2 for both lattices
    box = math.isqrt(4 * bound // 3) + 1
    for a, b in itertools.product(range(-box, box + 1), repeat=2):
        th = QuadInt(kind, a, b)
        n = th.norm()
        if n == 0 or n > bound or bound % n:
            continue
        if not eval_quad(c, th):
            roots.append(th)
    return sorted(set(roots), key=lambda t: (t.norm(), t.a, t.b))


def propose_theta(c, kinds=(RingKind.GAUSSIAN, RingKind.EISENSTEIN)):
    """Candidate ``(theta, f)`` pairs: roots of ``c`` with f = content of theta."""
    out = []
    for kind in kinds:
        for th in find_roots(c, kind):
            f = math.gcd(th.a, th.b)
            if f:
                out.append((th, f))
    return out


def obstruction(row, kind=None, theta=None, f=None):
    """Run the obstruction pipeline on a length-3 row of Z[x].

    When ``theta`` is omitted the roots of ``c`` in the supported rings are
    searched (restricted to ``kind`` if given) and the first root whose
    conductor satisfies the congruence conditions is used.
    """
    row = _as_row(row)
    if len(row) != 3:
        raise DomainError("obstruction needs a row of length 3")
    a, b, c = row
    cert = unimodular_certificate(row)
    if isinstance(cert, NonUnimodularObstruction):
        raise PreconditionError("not_unimodular", "row not unimodular", cert)

    if theta is None:
        kinds = (kind,) if kind else (RingKind.GAUSSIAN, RingKind.EISENSTEIN)
        candidates = propose_theta(c, kinds)
        if not candidates:
            raise PreconditionError("no_root", "no root in supported rings")
        last = None
        for th, ff in candidates:
            try:
                return obstruction(row, th.kind, th, ff if f is None else f)
            except PreconditionError as exc:
                last = exc
        raise last

    if kind is not None and theta.kind is not kind:
        raise DomainError("theta does not lie in the requested ring")
    kind = theta.kind
    if f is None:
        f = math.gcd(theta.a, theta.b)
    if f <= 0:
        raise PreconditionError("conductor", "conductor f must be a positive integer")
    if eval_quad(c, theta):
        raise PreconditionError("c_root", "eval(c, theta) != 0")
    if theta.a % f or theta.b % f:
        raise PreconditionError("f_divides_theta", f"f = {f} does not divide theta = {theta}")
    I = PrincipalIdeal.of(QuadInt(kind, f))
    at, bt = eval_quad(a, theta), eval_quad(b, theta)
    if not I.congruent(at, 1):
        raise PreconditionError("a_congruence", f"eval(a, theta) = {at} is not 1 mod {f}S")
    if not I.contains(bt):
        raise PreconditionError("b_congruence", f"eval(b, theta) = {bt} is not 0 mod {f}S")
    r = r_of_ideal(kind, I).r
    M = complete_sl2_rel(at, bt, I)
    value = sk1_invariant(M, I).value
    verdict = Verdict.INCONCLUSIVE if value.is_trivial() else Verdict.NOT_STABLE
    return ObstructionReport(row, kind, theta, f, I, r, M, value, verdict, cert)


@dataclass(frozen=True)
class StabilizerWitness:
    s1: IntPoly
    s2: IntPoly
    certificate: BezoutCertificate

    def verify(self, row):
        a, b, c = _as_row(row)
        short = (a + self.s1 * c, b + self.s2 * c)
        return tuple(self.certificate.row) == short and self.certificate.verify()

    def to_json(self):
        return {"s1": self.s1.to_json(), "s2": self.s2.to_json(), "certificate": self.certificate.to_json()}


def _polys_of_degree(d, bound):
    if d < 0:
        yield IntPoly()
        return
    rng = range(-bound, bound + 1)
    lead = [v for v in rng if v]
    for low in itertools.product(rng, repeat=d):
        for top in lead:
            yield IntPoly(low + (top,))


def _scan(deg_bound, coeff_bound):
    for d1 in range(-1, deg_bound + 1):
        for d2 in range(-1, deg_bound + 1):
            shape1 = sorted(_polys_of_degree(d1, coeff_bound), key=lambda p: p.coeffs)
            shape2 = sorted(_polys_of_degree(d2, coeff_bound), key=lambda p: p.coeffs)
            for s1 in shape1:
                for s2 in shape2:
                    yield s1, s2


def search_space_size(deg_bound, coeff_bound):
    width = 2 * coeff_bound + 1
    per = [1] + [(width - 1) * width**d for d in range(deg_bound + 1)]
    total = sum(per)
    return total * total


def search_stabilizer(row, deg_bound, coeff_bound):
    """First ``(s1, s2)`` in scan order making ``(a + s1 c, b + s2 c)`` unimodular.

    Scan order: ``(deg s1, deg s2)`` lexicographically (zero polynomial has
    degree -1), then the coefficient tuples lexicographically.  Returns
    None when the box holds no stabilizer; that does not prove the row
    unstable.
    """
    row = _as_row(row)
    if len(row) != 3:
        raise DomainError("stabilizer search needs a row of length 3")
    cert = unimodular_certificate(row)
    if isinstance(cert, NonUnimodularObstruction):
        raise PreconditionError("not_unimodular", "row not unimodular", cert)
    a, b, c = row
    for s1, s2 in _scan(deg_bound, coeff_bound):
        short = (a + s1 * c, b + s2 * c)
        if not any(short):
            continue
        out = unimodular_certificate(short)
        if isinstance(out, BezoutCertificate):
            return StabilizerWitness(s1, s2, out)
    return None
