import json
import random
from fractions import Fraction

import pytest

from stablerank.bms import (
    Mat2,
    complete_sl2_rel,
    in_sl2_rel,
    r_of_ideal,
    relative_elementary,
    sk1_invariant,
)
from stablerank.errors import DomainError, SymbolUndefined
from stablerank.quadratic import PrincipalIdeal, QuadInt, RingKind, gcd, parse_quad
from stablerank.residues import RootOfUnity

G, E = RingKind.GAUSSIAN, RingKind.EISENSTEIN


def g(a, b=0):
    return QuadInt(G, a, b)


def ideal(x):
    return PrincipalIdeal.of(x)


FIXED_MATRIX = Mat2(g(1, 4), g(12), g(24), g(17, -68))


def _v(n, p):
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def r_by_norms(kind, x):
    """r(xS) from valuations of the norm alone (one prime above 2 and 3)."""
    n = x.norm()

    def j(ord_p_of_I, ord_p_of_pS, p, cap):
        return min(max(int((Fraction(ord_p_of_I, ord_p_of_pS) - Fraction(1, p - 1)) // 1), 0), cap)

    if kind is G:
        # 1+i has norm 2; 2S = (1+i)^2
        return 2 ** j(_v(n, 2), 2, 2, 2)
    # 2 is inert (norm 4); 3S = (1-w)^2 with norm 3
    return 2 ** j(_v(n, 2) // 2, 1, 2, 1) * 3 ** j(_v(n, 3), 2, 3, 1)


# ---- r(I) ----------------------------------------------------------------

def test_r_examples():
    assert r_of_ideal(G, ideal(g(4))).r == 2
    assert r_of_ideal(G, ideal(g(1, 1))).r == 1
    assert r_of_ideal(G, ideal(g(8))).r == 4
    assert r_of_ideal(E, ideal(QuadInt(E, 3))).r == 1


def test_r_log():
    d = r_of_ideal(G, ideal(g(4)))
    (step,) = d.per_prime_log
    assert (step.p, step.ord_m, step.j, step.minimand) == (2, 2, 1, 1)
    assert step.terms[0][1] == Fraction(1)
    d = r_of_ideal(G, ideal(g(1, 1)))
    assert d.per_prime_log[0].minimand == -1 and d.per_prime_log[0].j == 0


def test_r_zero_ideal():
    with pytest.raises(DomainError):
        r_of_ideal(G, ideal(g(0)))


def test_r_matches_norm_oracle_and_divides_m():
    rng = random.Random(1)
    for _ in range(2000):
        kind = rng.choice([G, E])
        x = QuadInt(kind, rng.randint(-200, 200), rng.randint(-200, 200))
        if not x:
            continue
        d = r_of_ideal(kind, ideal(x))
        assert d.r == r_by_norms(kind, x)
        assert d.m % d.r == 0
        assert d.recompute() == d.r
        for step in d.per_prime_log:
            assert 0 <= step.j <= step.ord_m


def test_r_powers_of_two():
    # 2^k S in Z[i]: ord_{1+i} = 2k, j = min(max(k - 1, 0), 2)
    assert [r_of_ideal(G, g(2**k)).r for k in range(1, 6)] == [1, 2, 4, 4, 4]


def test_bms_json():
    blob = json.loads(json.dumps(r_of_ideal(G, g(4)).to_json()))
    assert blob["r"] == 2 and blob["m"] == 4


# ---- membership and completion ------------------------------------------

def test_in_sl2_rel_examples():
    assert FIXED_MATRIX.det() == g(1)
    assert in_sl2_rel(FIXED_MATRIX, g(4))[0]
    assert in_sl2_rel(Mat2.identity(G), g(4))[0]
    ok, why = in_sl2_rel(Mat2(g(1), g(1), g(0), g(1)), g(4))
    assert not ok and "b" in why
    ok, why = in_sl2_rel(Mat2(g(2), g(0), g(0), g(1)), g(4))
    assert not ok and "det" in why


def test_complete_examples():
    M = complete_sl2_rel(g(1, 4), g(12), ideal(g(4)))
    assert (M.a, M.b) == (g(1, 4), g(12))
    assert in_sl2_rel(M, g(4))[0]
    assert complete_sl2_rel(g(1), g(0), ideal(g(4))) == Mat2.identity(G)
    with pytest.raises(DomainError):
        complete_sl2_rel(g(1, 4), g(2), ideal(g(4)))
    with pytest.raises(DomainError):
        complete_sl2_rel(g(3), g(0), ideal(g(4)))


def test_complete_non_unimodular_pair():
    # a = 1 + 4(1+2i) = 5+8i, b = 4(5+8i): gcd is a
    a = g(5, 8)
    with pytest.raises(DomainError, match="not unimodular"):
        complete_sl2_rel(a, a * 4, ideal(g(4)))


def random_pair(rng, kind, f):
    """(a, b) with a = 1, b = 0 mod f and gcd(a, b) = 1."""
    while True:
        a = QuadInt(kind, 1) + QuadInt(kind, rng.randint(-30, 30), rng.randint(-30, 30)) * f
        b = QuadInt(kind, rng.randint(-30, 30), rng.randint(-30, 30)) * f
        if b and gcd(a, b).norm() == 1:
            return a, b


def test_completion_validity_random():
    rng = random.Random(2)
    for f in (4, 8):
        I = ideal(g(f))
        for _ in range(1000):
            a, b = random_pair(rng, G, f)
            M = complete_sl2_rel(a, b, I)
            assert (M.a, M.b) == (a, b)
            assert in_sl2_rel(M, I) == (True, "ok")


def test_completion_validity_eisenstein():
    rng = random.Random(3)
    for f in (2, 3, 6):
        I = ideal(QuadInt(E, f))
        for _ in range(200):
            a, b = random_pair(rng, E, f)
            assert in_sl2_rel(complete_sl2_rel(a, b, I), I)[0]


# ---- the invariant -------------------------------------------------------

def test_fixed_matrix_invariant():
    cert = sk1_invariant(FIXED_MATRIX, g(4))
    assert cert.r == 2
    assert cert.value == RootOfUnity(2, 1)
    assert cert.verify()
    assert sk1_invariant(Mat2.identity(G), g(4)).value.is_trivial()


def test_invariant_requires_membership():
    with pytest.raises(DomainError):
        sk1_invariant(Mat2(g(1), g(1), g(0), g(1)), g(4))


def completions(a, b, f, count):
    base = complete_sl2_rel(a, b, ideal(g(f)))
    out = []
    for k in range(count):
        t = g(f * (k // 5 - 2), f * (k % 5 - 2))
        out.append(Mat2(a, b, base.c + t * a, base.d + t * b))
    return out


def test_invariant_constant_over_completions():
    Ms = completions(g(1, 4), g(12), 4, 25)
    assert len(set(Ms)) == 25
    for M in Ms:
        assert in_sl2_rel(M, g(4))[0]
        assert sk1_invariant(M, g(4)).value == RootOfUnity(2, 1)


def test_invariant_r1_trivial():
    rng = random.Random(4)
    for _ in range(100):
        a, b = random_pair(rng, G, 1)
        a, b = g(1) + (a - g(1)) * g(1, 1), b * g(1, 1)
        if gcd(a, b).norm() != 1:
            continue
        M = complete_sl2_rel(a, b, ideal(g(1, 1)))
        assert sk1_invariant(M, g(1, 1)).value.is_trivial()


def _inv(M, f):
    try:
        return sk1_invariant(M, g(f)).value
    except SymbolUndefined:
        return None


def test_homomorphism_on_samples():
    rng = random.Random(5)
    checked = 0
    for f in (4, 8):
        for _ in range(300):
            M1 = complete_sl2_rel(*random_pair(rng, G, f), ideal(g(f)))
            M2 = complete_sl2_rel(*random_pair(rng, G, f), ideal(g(f)))
            if rng.random() < 0.5:
                i, j = rng.choice([(1, 2), (2, 1)])
                M2 = M2 * relative_elementary(G, i, j, g(f * rng.randint(-5, 5)))
            vals = [_inv(M, f) for M in (M1, M2, M1 * M2)]
            if None in vals:
                continue
            assert vals[2] == vals[0] * vals[1]
            checked += 1
    assert checked > 300


def test_elementary_triviality():
    rng = random.Random(6)
    for f in (4, 8):
        for _ in range(200):
            x = g(rng.randint(-9, 9), rng.randint(-9, 9)) * f
            for i, j in ((1, 2), (2, 1)):
                e = relative_elementary(G, i, j, x)
                assert sk1_invariant(e, g(f)).value.is_trivial()
                M = complete_sl2_rel(*random_pair(rng, G, f), ideal(g(f)))
                v1, v2 = _inv(M, f), _inv(M * e, f)
                if v1 is not None and v2 is not None:
                    assert v1 == v2


def test_relative_elementary_bad_position():
    with pytest.raises(DomainError):
        relative_elementary(G, 1, 1, g(4))


def test_certificate_json_and_tamper():
    cert = sk1_invariant(FIXED_MATRIX, g(4))
    blob = json.loads(json.dumps(cert.to_json()))
    assert blob["value"]["embed"] == "-1"
    assert blob["matrix"][1][1] == {"kind": "gaussian", "a": "17", "b": "-68"}
    from dataclasses import replace
    assert not replace(cert, value=RootOfUnity(2, 0)).verify()
    assert not replace(cert, r=4).verify()


def test_parsing_round_trip_of_matrix_entries():
    M = Mat2.from_rows([[parse_quad("1+4i"), 12], [24, parse_quad("17-68i")]])
    assert M == FIXED_MATRIX
    assert str(M) == "[[1+4i,12],[24,17-68i]]"
