import json
import math
import random

import pytest
from hypothesis import given, strategies as st

from stablerank import arith
from stablerank.errors import DomainError
from stablerank.quadratic import (
    PrincipalIdeal,
    QuadInt,
    RingKind,
    canonical_associate,
    divides,
    exact_div,
    ext_gcd,
    factor,
    gcd,
    is_prime_element,
    ord_prime,
    parse_quad,
    primes_above,
    quad_divmod,
    units,
)

G, E = RingKind.GAUSSIAN, RingKind.EISENSTEIN


def g(a, b=0):
    return QuadInt(G, a, b)


def e(a, b=0):
    return QuadInt(E, a, b)


coords = st.integers(-300, 300)
kinds = st.sampled_from([G, E])


@st.composite
def elements(draw, kind=None, nonzero=False):
    k = kind or draw(kinds)
    x = QuadInt(k, draw(coords), draw(coords))
    if nonzero and not x:
        x = QuadInt(k, 1)
    return x


def to_complex(x):
    w = 1j if x.kind is G else complex(-0.5, math.sqrt(3) / 2)
    return x.a + x.b * w


# ---- arithmetic --------------------------------------------------------

def test_norm_examples():
    assert g(1, 4).norm() == 17
    assert g(0).norm() == 0
    assert e(1, -1).norm() == 3


def test_eisenstein_relation():
    w = e(0, 1)
    assert w * w == e(-1, -1)
    assert w**3 == e(1)


def test_arithmetic_matches_complex():
    rng = random.Random(7)
    for _ in range(2000):
        k = rng.choice([G, E])
        x = QuadInt(k, rng.randint(-50, 50), rng.randint(-50, 50))
        y = QuadInt(k, rng.randint(-50, 50), rng.randint(-50, 50))
        assert abs(to_complex(x * y) - to_complex(x) * to_complex(y)) < 1e-6
        assert abs(to_complex(x + y) - (to_complex(x) + to_complex(y))) < 1e-9
        assert abs(abs(to_complex(x)) ** 2 - x.norm()) < 1e-6
        assert abs(to_complex(x.conj()) - to_complex(x).conjugate()) < 1e-9


def test_norm_multiplicative_random():
    rng = random.Random(11)
    for _ in range(10_000):
        k = rng.choice([G, E])
        x = QuadInt(k, rng.randint(-10**4, 10**4), rng.randint(-10**4, 10**4))
        y = QuadInt(k, rng.randint(-10**4, 10**4), rng.randint(-10**4, 10**4))
        assert (x * y).norm() == x.norm() * y.norm()


def test_mixed_kinds_rejected():
    with pytest.raises(DomainError):
        g(1) + e(1)


# ---- divmod and gcd ----------------------------------------------------

def test_divmod_examples():
    assert quad_divmod(g(-4, 1), g(1, 4)) == (g(0, 1), g(0))
    x = g(7, -3)
    assert quad_divmod(x, g(1)) == (x, g(0))
    q, r = quad_divmod(g(5), g(1, 1))
    assert g(5) == q * g(1, 1) + r and r.norm() <= 1


def test_divmod_by_zero():
    with pytest.raises(ZeroDivisionError):
        quad_divmod(g(1), g(0))


def test_divmod_bound_random():
    rng = random.Random(3)
    for _ in range(10_000):
        k = rng.choice([G, E])
        x = QuadInt(k, rng.randint(-10**5, 10**5), rng.randint(-10**5, 10**5))
        y = QuadInt(k, rng.randint(-999, 999), rng.randint(-999, 999))
        if not y:
            continue
        q, r = quad_divmod(x, y)
        assert x == q * y + r
        if k is G:
            assert 2 * r.norm() <= y.norm()
        else:
            assert 3 * r.norm() <= y.norm()


def test_divmod_is_nearest_lattice_point():
    # brute force over a neighbourhood of the exact quotient
    rng = random.Random(5)
    for _ in range(500):
        k = rng.choice([G, E])
        x = QuadInt(k, rng.randint(-200, 200), rng.randint(-200, 200))
        y = QuadInt(k, rng.randint(-20, 20), rng.randint(-20, 20))
        if not y:
            continue
        q, r = quad_divmod(x, y)
        best = min(
            (x - QuadInt(k, q.a + da, q.b + db) * y).norm()
            for da in range(-2, 3)
            for db in range(-2, 3)
        )
        assert r.norm() == best


def test_gaussian_rounding_ties_toward_minus_infinity():
    # 1/2 and i/2 are ties in both coordinates
    q, r = quad_divmod(g(1, 1), g(2))
    assert q == g(0, 0) and r == g(1, 1)
    q, r = quad_divmod(g(-1, -1), g(2))
    assert q == g(-1, -1)


def gcd_steps(x, y):
    n = 0
    while y:
        x, y = y, quad_divmod(x, y)[1]
        n += 1
    return n


def test_gcd_examples():
    assert gcd(g(12), g(1, 4)) == g(1)
    x = g(-3, 7)
    assert gcd(x, g(0)) == canonical_associate(x)[0]
    assert gcd(g(4), g(2, 2)) == g(2, 2)


def test_gcd_zero_zero():
    with pytest.raises(DomainError):
        gcd(g(0), g(0))
    with pytest.raises(DomainError):
        ext_gcd(e(0), e(0))


@given(elements(), st.data())
def test_ext_gcd_identity(x, data):
    y = data.draw(elements(kind=x.kind))
    if not x and not y:
        return
    d, u, v = ext_gcd(x, y)
    assert u * x + v * y == d
    assert divides(d, x) and divides(d, y)
    assert d == gcd(x, y)
    assert canonical_associate(d)[0] == d
    # steps bounded by log of the norm: each step shrinks the norm by >= 2
    if y:
        assert gcd_steps(x, y) <= 2 + math.log2(max(y.norm(), 1)) + 1


# ---- canonical associates ----------------------------------------------

def test_canonical_examples():
    assert canonical_associate(g(1, -4)) == (g(4, 1), g(0, -1))
    assert canonical_associate(g(1)) == (g(1), g(1))
    assert canonical_associate(g(-3)) == (g(3), g(-1))
    with pytest.raises(DomainError):
        canonical_associate(g(0))


@given(elements(nonzero=True))
def test_canonical_idempotent_and_class_constant(x):
    c, u = canonical_associate(x)
    assert u * c == x and u.is_unit()
    assert canonical_associate(c) == (c, QuadInt(x.kind, 1))
    for v in units(x.kind):
        assert canonical_associate(v * x)[0] == c
    # sector check by angle
    ang = math.atan2(to_complex(c).imag, to_complex(c).real)
    width = math.pi / 2 if x.kind is G else math.pi / 3
    assert -1e-12 <= ang < width - 1e-12


def test_units():
    for k, n in ((G, 4), (E, 6)):
        us = units(k)
        assert len(set(us)) == n
        assert all(u.norm() == 1 for u in us)
        assert all(u**n == QuadInt(k, 1) for u in us)


# ---- ideals ------------------------------------------------------------

def test_ideal_equality_by_generator():
    assert PrincipalIdeal.of(g(4)) == PrincipalIdeal.of(g(0, -4))
    assert PrincipalIdeal.of(e(2, 1)) == PrincipalIdeal.of(e(1, -1))
    I = PrincipalIdeal.of(g(4))
    assert I.contains(g(8, 12)) and not I.contains(g(2))
    assert I.congruent(g(1, 4), g(1))
    r = I.residue(g(17, -68))
    assert I.congruent(r, g(17, -68)) and 2 * r.norm() <= 16


# ---- factorization -----------------------------------------------------

def test_factor_examples():
    f = factor(g(4))
    assert f.unit == g(-1) and f.factors == ((g(1, 1), 4),)
    f = factor(g(17))
    assert f.unit == g(0, -1) and f.factors == ((g(1, 4), 1), (g(4, 1), 1))
    f = factor(g(3))
    assert f.unit == g(1) and f.factors == ((g(3), 1),)
    f = factor(g(0, 1))
    assert f.unit == g(0, 1) and f.factors == ()
    with pytest.raises(DomainError):
        factor(g(0))


def test_eisenstein_ramified_prime():
    (pi,) = primes_above(E, 3)
    assert pi.norm() == 3
    # associate of 1 - w
    assert PrincipalIdeal.of(pi) == PrincipalIdeal.of(e(1, -1))
    f = factor(e(3))
    assert f.factors == ((pi, 2),)


def _prime_or_inert(pi):
    n = pi.norm()
    if arith.is_prime(n):
        return True
    p = math.isqrt(n)
    if p * p != n or not arith.is_prime(p):
        return False
    inert = p % 4 == 3 if pi.kind is G else p % 3 == 2
    return inert and PrincipalIdeal.of(pi) == PrincipalIdeal.of(QuadInt(pi.kind, p))


def test_factor_roundtrip_random():
    rng = random.Random(17)
    done = 0
    while done < 10_000:
        k = rng.choice([G, E])
        x = QuadInt(k, rng.randint(-1000, 1000), rng.randint(-1000, 1000))
        if not x or x.norm() > 10**6:
            continue
        f = factor(x)
        assert f.value() == x
        assert f.unit.is_unit()
        keys = [(p.norm(), p.a, p.b) for p, _ in f.factors]
        assert keys == sorted(set(keys))
        for p, ex in f.factors:
            assert ex >= 1
            assert canonical_associate(p)[0] == p
            assert _prime_or_inert(p)
            assert is_prime_element(p)
        done += 1


def test_split_primes_conjugate():
    for p in arith.primes_up_to(400):
        for k, split in ((G, p % 4 == 1), (E, p % 3 == 1)):
            ps = primes_above(k, p)
            if split:
                a, b = ps
                assert a.norm() == b.norm() == p
                assert PrincipalIdeal.of(a.conj()) == PrincipalIdeal.of(b)
                assert a != b
            else:
                assert len(ps) == 1


def test_ord_prime_examples():
    assert ord_prime(g(4), g(1, 1)) == 4
    assert ord_prime(g(12), g(1, 4)) == 0
    assert ord_prime(g(1, 4), g(1, 4)) == 1


def test_exact_div():
    assert exact_div(g(-4, 1), g(1, 4)) == g(0, 1)
    with pytest.raises(DomainError):
        exact_div(g(2), g(1, 4))


# ---- text and JSON -----------------------------------------------------

@pytest.mark.parametrize(
    "text, value",
    [
        ("1+4i", g(1, 4)),
        ("17 - 68i", g(17, -68)),
        ("-i", g(0, -1)),
        ("4i", g(0, 4)),
        ("12", g(12)),
        ("2+w", e(2, 1)),
        ("1-w", e(1, -1)),
        ("-3*w", e(0, -3)),
    ],
)
def test_parse(text, value):
    assert parse_quad(text) == value


@pytest.mark.parametrize("text", ["", "1+", "i+w", "1+4j", "++1", "4ii"])
def test_parse_rejects(text):
    with pytest.raises(DomainError):
        parse_quad(text)


def test_parse_kind_mismatch():
    with pytest.raises(DomainError):
        parse_quad("1+i", E)
    assert parse_quad("5", E) == e(5)


@given(elements())
def test_text_and_json_roundtrip(x):
    assert parse_quad(str(x), x.kind) == x
    blob = json.dumps(x.to_json())
    assert QuadInt.from_json(json.loads(blob)) == x
    assert all(isinstance(v, str) for v in x.to_json().values())
