import json
import math

import pytest

from stablerank import arith
from stablerank.errors import DomainError
from stablerank.finite_rings import (
    LEMMA_BOUND,
    Elementary,
    ZnMat2,
    check_stable_row_lemma,
    e2_decompose,
    is_stable_row,
    recompose,
    sl2_group,
    sl2_lift,
    stable_rank,
    um_rows,
    unit_lift_check,
)


def test_um_rows_examples():
    assert um_rows(4, 1) == [(1,), (3,)]
    assert um_rows(6, 1) == [(1,), (5,)]
    for p in (2, 3, 5, 7, 11):
        assert len(um_rows(p, 2)) == p * p - 1


def test_um_rows_count_formula():
    # |Um_k(Z/n)| = n^k prod_{p | n} (1 - p^-k)
    for n in range(2, 16):
        for k in (1, 2, 3):
            count = n**k
            for p in arith.factor_int(n).primes():
                count = count * (p**k - 1) // p**k
            assert len(um_rows(n, k)) == count


def test_um_rows_lexicographic():
    rows = um_rows(6, 2)
    assert rows == sorted(rows)


def test_is_stable_row_examples():
    assert is_stable_row((1, 0), 5) == (True, (0,))
    assert is_stable_row((0, 1), 4) == (True, (1,))
    with pytest.raises(DomainError):
        is_stable_row((2, 2), 4)
    with pytest.raises(DomainError):
        is_stable_row((1,), 4)


def test_every_um3_row_stable_small():
    for n in range(2, 9):
        for row in um_rows(n, 3):
            ok, s = is_stable_row(row, n)
            assert ok
            a, b, c = row
            assert math.gcd(a + s[0] * c, b + s[1] * c, n) == 1


def test_stable_rank_examples():
    assert stable_rank(4) == 1
    assert stable_rank(5) == 1


def test_jacobson_compatibility():
    # J = rad(n) Z/n lies in Jac(Z/n) and (Z/n)/J = Z/rad(n)
    for n in range(2, 31):
        assert stable_rank(arith.radical(n)) == stable_rank(n) == 1


def sl2_order(n):
    out = n**3
    for p in arith.factor_int(n).primes():
        out = out * (p * p - 1) // (p * p)
    return out


def test_sl2_group_size():
    for n in range(2, 13):
        assert len(sl2_group(n)) == sl2_order(n)
    assert len(sl2_group(12)) == 1152


def _check_lift(M):
    (a, b), (c, d) = sl2_lift(M)
    assert a * d - b * c == 1
    assert ((a - M.a) % M.n, (b - M.b) % M.n, (c - M.c) % M.n, (d - M.d) % M.n) == (0, 0, 0, 0)
    return (a, b), (c, d)


def test_sl2_lift_examples():
    for n in (2, 5, 7, 12):
        assert _check_lift(ZnMat2(n, 1, 0, 0, 1)) == ((1, 0), (0, 1))
        _check_lift(ZnMat2(n, 0, n - 1, 1, 0))
    assert sl2_lift(ZnMat2(5, 2, 1, 1, 1)) == ((2, 1), (1, 1))
    with pytest.raises(DomainError):
        sl2_lift(ZnMat2(5, 2, 0, 0, 2))


def test_sl2_lift_needs_crt_adjustment():
    # b = 0 shares every prime of a = 3
    _check_lift(ZnMat2(5, 3, 0, 0, 2))
    # a = 6 has primes 2 and 3 outside n = 7; moving b off 2 must not land on 3
    _check_lift(ZnMat2(7, 6, 2, 0, 6))
    _check_lift(ZnMat2(11, 6, 4, 0, 2))


def test_sl2_lift_total_up_to_12():
    for n in range(2, 13):
        for a, b, c, d in sl2_group(n):
            _check_lift(ZnMat2(n, a, b, c, d))


def test_e2_examples():
    assert e2_decompose([[1, 5], [0, 1]]) == [Elementary(1, 2, 5)]
    assert e2_decompose([[0, -1], [1, 0]]) == [Elementary(2, 1, 1), Elementary(1, 2, -1), Elementary(2, 1, 1)]
    assert e2_decompose([[1, 0], [0, 1]]) == []
    minus = e2_decompose([[-1, 0], [0, -1]])
    assert recompose(minus) == ((-1, 0), (0, -1))
    with pytest.raises(DomainError):
        e2_decompose([[2, 0], [0, 1]])


def test_e2_integer_random():
    import random
    rng = random.Random(1)
    for _ in range(2000):
        a, b = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
        g, x, y = arith.ext_gcd(a, b)
        if g != 1:
            continue
        M = ((a, b), (-y, x))
        assert recompose(e2_decompose(M)) == M


def test_e2_exhaustive_up_to_8():
    for n in range(2, 9):
        for a, b, c, d in sl2_group(n):
            word = e2_decompose(ZnMat2(n, a, b, c, d))
            assert recompose(word, n) == ((a, b), (c, d))
            assert all(e.amount % n for e in word)


def test_elementary_validation():
    with pytest.raises(DomainError):
        Elementary(1, 1, 3)
    e = Elementary(2, 1, 4)
    assert recompose([e, e.inverse()]) == ((1, 0), (0, 1))


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_stable_row_lemma(n):
    rep = check_stable_row_lemma(n)
    assert rep.holds and rep.counterexample is None
    assert rep.rows_checked == len(um_rows(n, 3))
    assert rep.search_space == rep.rows_checked * n * n


def test_stable_row_lemma_degenerate_quotient():
    rep = check_stable_row_lemma(5, only_c=0)
    assert rep.holds and rep.rows_checked == len([r for r in um_rows(5, 3) if r[2] == 0])


def test_stable_row_lemma_bound():
    with pytest.raises(DomainError):
        check_stable_row_lemma(LEMMA_BOUND + 1)
    json.dumps(check_stable_row_lemma(3).to_json())


def test_unit_lift_examples():
    rep = unit_lift_check("Z", 5)
    assert rep.failures == [2, 3]
    assert not rep.surjective
    rep = unit_lift_check(10, 5)
    assert rep.surjective and rep.lifts[2] == 7
    assert unit_lift_check(9, 9).lifts == {u: u for u in (1, 2, 4, 5, 7, 8)}
    with pytest.raises(DomainError):
        unit_lift_check(10, 3)


def test_reduction_surjective_on_units():
    # Um_1 is the unit group; its reduction Z/n -> Z/d is onto for n <= 30
    for n in range(2, 31):
        for d in arith.divisors(n):
            if d >= 2:
                assert unit_lift_check(n, d).surjective


def test_reduction_surjective_on_um2():
    for n in range(2, 13):
        for d in arith.divisors(n):
            if d < 2:
                continue
            image = {(x % d, y % d) for x, y in um_rows(n, 2)}
            assert image == set(um_rows(d, 2))


def test_minus_identity_word():
    from stablerank.finite_rings import _MINUS_I

    assert len(_MINUS_I) == 4
    assert recompose(_MINUS_I) == ((-1, 0), (0, -1))
    assert e2_decompose(((-1, 0), (0, -1))) == _MINUS_I
