"""
Exact rational-integer utilities: factorization, modular powers, CRT and
square roots of -1 modulo primes.

Python integers are arbitrary precision, so nothing here can overflow.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

__all__ = [
    "Fraction",
    "IntFactorization",
    "crt",
    "divisors",
    "ext_gcd",
    "factor_int",
    "floor_fraction",
    "is_prime",
    "inverse_mod",
    "modexp",
    "primes_up_to",
    "radical",
    "sqrt_minus_one",
]

Rational = Fraction

# Deterministic Miller-Rabin: the first 13 primes are a valid witness set
# for every n < 3.3 * 10**24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_TRIAL_BOUND = 1000


def primes_up_to(n):
    """Sieve of Eratosthenes; primes p <= n in increasing order."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(range(p * p, n + 1, p)))
    return [p for p in range(n + 1) if sieve[p]]


_SMALL_PRIMES = primes_up_to(_TRIAL_BOUND)


def is_prime(n):
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n, seed=1):
    """Return a nontrivial factor of the odd composite n (Brent's cycle variant)."""
    rng = random.Random(seed)
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


@dataclass(frozen=True)
class IntFactorization:
    """``sign * prod(p**e for p, e in factors)`` with primes strictly increasing."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self):
        out = self.sign
        for p, e in self.factors:
            out *= p**e
        return out

    def primes(self):
        return [p for p, _ in self.factors]


def factor_int(n):
    """Factor a nonzero integer.

    >>> factor_int(12)
    IntFactorization(sign=1, factors=((2, 2), (3, 1)))
    """
    if n == 0:
        raise DomainError("cannot factor zero")
    sign = -1 if n < 0 else 1
    n = abs(n)
    counts = {}
    for p in _SMALL_PRIMES:
        if p * p > n:
            # no factor up to sqrt(n) left, so n is 1 or prime
            if n > 1:
                counts[n] = counts.get(n, 0) + 1
            return IntFactorization(sign, tuple(sorted(counts.items())))
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            counts[m] = counts.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _pollard_brent(m)
        stack += [d, m // d]
    return IntFactorization(sign, tuple(sorted(counts.items())))


def radical(n):
    out = 1
    for p, _ in factor_int(n).factors:
        out *= p
    return out


def divisors(n):
    """Positive divisors of n != 0, increasing."""
    divs = [1]
    for p, e in factor_int(n).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def modexp(b, e, n):
    if n <= 1:
        raise DomainError("modulus must exceed 1")
    if e < 0:
        raise DomainError("exponent must be nonnegative")
    return pow(b, e, n)


def ext_gcd(a, b):
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def inverse_mod(a, n):
    g, x, _ = ext_gcd(a % n, n)
    if g != 1:
        raise DomainError(f"{a} is not invertible modulo {n}")
    return x % n


def sqrt_minus_one(p):
    """Smaller square root of -1 modulo a prime p = 1 (mod 4).

    Uses c**((p-1)/4) for the least quadratic non-residue c; the search is
    deterministic.
    """
    if p == 2 or p % 4 != 1 or not is_prime(p):
        raise DomainError(f"prime does not split: {p}")
    c = 2
    while pow(c, (p - 1) // 2, p) != p - 1:
        c += 1
    r = pow(c, (p - 1) // 4, p)
    return min(r, p - r)


def crt(pairs):
    """Combine congruences ``x = r_i (mod n_i)``; moduli must be pairwise coprime."""
    x, modulus = 0, 1
    for r, n in pairs:
        if n <= 1:
            raise DomainError(f"modulus must exceed 1, got {n}")
        g, inv, _ = ext_gcd(modulus % n, n)
        if g != 1:
            raise DomainError(f"moduli not coprime: {modulus} and {n}")
        t = (r - x) * inv % n
        x += modulus * t
        modulus *= n
    return x % modulus


def floor_fraction(q):
    return q.numerator // q.denominator
