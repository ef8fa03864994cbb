"""Integer helpers: primality, factoring, CRT, totients, orders."""

import math
import random

import pytest

from primework.arith import (crt_solve, euler_phi, euler_phi_range, factorize,
                             factor_with_table, is_prime,
                             least_coprime_exceeding_one,
                             multiplicative_order, sieve_primes,
                             smallest_factor_table)
from primework.config import DEFAULT_CONFIG
from primework.errors import NotCoprime


def _trial_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def test_is_prime_small_table():
    known = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    assert {n for n in range(50) if is_prime(n)} == known


def test_is_prime_matches_trial_division():
    rng = random.Random(11)
    for _ in range(400):
        n = rng.randrange(2, 10**6)
        assert is_prime(n) == _trial_prime(n), n


def test_is_prime_reference_values():
    assert not is_prime(2047)  # 23 * 89
    assert is_prime(6700417)
    assert is_prime(67280421310721)
    assert not is_prime(4294967297)


def test_factorize_reference():
    assert sorted(factorize(4294967297).factors) == [(641, 1), (6700417, 1)]
    assert sorted(factorize(2047).factors) == [(23, 1), (89, 1)]
    assert list(factorize(8).factors) == [(2, 3)]


def test_factorize_roundtrip_random():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randrange(2, 10**9)
        fac = factorize(n)
        prod = 1
        for p, e in fac.factors:
            assert is_prime(p)
            prod *= p**e
        assert prod == n


def test_sieve_matches_is_prime():
    primes = sieve_primes(2000)
    assert list(primes) == [n for n in range(2, 2001) if is_prime(n)]


def test_smallest_factor_table():
    spf = smallest_factor_table(1000)
    for n in range(2, 1001):
        assert n % spf[n] == 0
        assert is_prime(spf[n])
        parts = factor_with_table(n, spf)
        prod = 1
        for p, e in parts:
            prod *= p**e
        assert prod == n


def test_euler_phi_brute_force():
    for n in range(1, 400):
        brute = sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
        assert euler_phi(n) == brute


def test_euler_phi_range_consistent():
    table = euler_phi_range(500)
    for n in range(1, 501):
        assert table[n] == euler_phi(n)


def test_multiplicative_order():
    assert multiplicative_order(2, 7) == 3
    assert multiplicative_order(2, 11) == 10
    assert multiplicative_order(2, 2047) == 11
    rng = random.Random(3)
    for _ in range(100):
        m = rng.randrange(3, 5000) | 1
        d = multiplicative_order(2, m)
        assert pow(2, d, m) == 1
        # minimality: no proper divisor of d works
        for q in range(1, d):
            if d % q == 0 and q < d:
                assert pow(2, q, m) != 1 or q == d


def test_multiplicative_order_rejects_shared_factor():
    with pytest.raises(NotCoprime):
        multiplicative_order(2, 6)


def test_crt_solve_roundtrip():
    rng = random.Random(17)
    for _ in range(200):
        m1 = rng.randrange(2, 500)
        m2 = rng.randrange(2, 500)
        if math.gcd(m1, m2) != 1:
            continue
        a1, a2 = rng.randrange(m1), rng.randrange(m2)
        x, mod = crt_solve([(a1, m1), (a2, m2)])
        assert x % m1 == a1 and x % m2 == a2
        assert mod == m1 * m2 and 0 <= x < mod


def test_least_coprime_exceeding_one():
    # for m > 2 the least element of Z_m^* above 1 is the least prime
    # not dividing m
    for m in range(3, 500):
        a = least_coprime_exceeding_one(m)
        assert a > 1 and math.gcd(a, m) == 1
        for b in range(2, a):
            assert math.gcd(b, m) != 1
        assert is_prime(a)


def test_least_coprime_of_primorial():
    # 2*3*5*7 = 210 forces the answer up to 11
    assert least_coprime_exceeding_one(210) == 11
    assert least_coprime_exceeding_one(2 * 3 * 5 * 7 * 11 * 13) == 17
