"""Density constants, predicted versus actual prime counts, progressions."""

import math

import pytest

from primework.arith import is_prime, sieve_primes
from primework.config import DEFAULT_CONFIG
from primework.density import (actual_count, ap_product_inequality,
                               bateman_horn_constant, density_estimate,
                               dlvp_ratio, least_prime_ap, omega_p,
                               predicted_count)
from primework.errors import NotCoprime, NotUnivariatePolynomial
from primework.expr import parse_function, parse_system


def test_omega_twin_system():
    fs = parse_system("x; x+2")
    assert omega_p(fs, 2) == 1
    for p in (3, 5, 7, 11, 13):
        assert omega_p(fs, p) == 2


def test_omega_quadratic():
    # x^2+1 has two roots mod p = 1 (mod 4), none mod p = 3 (mod 4)
    fs = (parse_function("x^2+1"),)
    assert omega_p(fs, 2) == 1
    for p in (5, 13, 17, 29):
        assert omega_p(fs, p) == 2
    for p in (3, 7, 11, 19, 23):
        assert omega_p(fs, p) == 0


def test_omega_matches_literal_count():
    from primework.expr import evaluate_mod
    fs = parse_system("x; x+2")
    g = parse_function("x^2+1")
    for p in sieve_primes(50):
        lit = sum(1 for x in range(p)
                  if any(evaluate_mod(f, (x,), p, allow_zero=True) == 0
                         for f in fs))
        assert omega_p(fs, p) == lit
        lit_g = sum(1 for x in range(p)
                    if evaluate_mod(g, (x,), p, allow_zero=True) == 0)
        assert omega_p((g,), p) == lit_g


def test_omega_large_prime_gcd_route():
    # beyond the literal-scan cutoff the root count comes from
    # gcd(x^p - x, g) degree; cross-check one prime both ways
    from primework.expr import evaluate_mod
    g = (parse_function("x^2+1"),)
    p = 2003  # 2003 = 3 (mod 4): no roots
    assert omega_p(g, p) == 0
    p = 2017  # 1 (mod 4): two roots
    assert omega_p(g, p) == 2


def test_bateman_horn_twin_constant():
    bh = bateman_horn_constant(parse_system("x; x+2"), 10**5)
    assert bh.obstruction is None
    assert abs(bh.value - 1.3203246909334732) < 1e-9
    assert bh.relative_change < 1e-2


def test_bateman_horn_obstruction():
    bh = bateman_horn_constant(parse_system("x; x+1"), 10**4)
    assert bh.obstruction == 2
    assert bh.value == 0.0


def test_bateman_horn_rejects_nonpolynomial():
    with pytest.raises(NotUnivariatePolynomial):
        bateman_horn_constant((parse_function("2^x-1"),), 10**3)


def test_actual_twin_count():
    fs = parse_system("x; x+2")
    assert actual_count(fs, 10**4) == 205


def test_actual_count_brute_force():
    fs = parse_system("x; x+2")
    brute = sum(1 for n in range(1, 301)
                if is_prime(n) and is_prime(n + 2))
    assert actual_count(fs, 300) == brute


def test_predicted_close_to_actual_twins():
    fs = parse_system("x; x+2")
    pred = predicted_count(fs, 10**4, prime_cutoff=10**5)
    actual = actual_count(fs, 10**4)
    assert 0.85 < pred.sum_form / actual < 1.15


def test_dlvp_ratios():
    assert abs(dlvp_ratio(1, 4, 10**5) - 1.1013) < 5e-4
    assert abs(dlvp_ratio(3, 4, 10**5) - 1.1071) < 5e-4


def test_dlvp_rejects_shared_factor():
    with pytest.raises(NotCoprime):
        dlvp_ratio(2, 4, 1000)


def test_least_prime_ap_mod_4():
    table = least_prime_ap(4)
    entries = dict(table.entries)
    assert entries == {1: 5, 3: 3}


def test_least_prime_ap_strict_start():
    cfg = DEFAULT_CONFIG.with_overrides(strict_positive_n=True)
    table = least_prime_ap(4, cfg)
    entries = dict(table.entries)
    # with n >= 1 the progression 3 mod 4 starts at 7
    assert entries == {1: 5, 3: 7}


def test_least_prime_ap_values_are_least():
    table = least_prime_ap(10)
    for l, p in table.entries:
        assert p % 10 == l and is_prime(p)
        q = l
        while q < p:
            assert not is_prime(q) or q % 10 != l or q == p
            q += 10


def test_ap_product_inequality():
    rep = ap_product_inequality(1, 2, 40)
    assert rep.c_star >= 0
    for n in range(rep.c_star + 1, 41):
        assert n not in rep.violations


def test_density_estimate_aggregate():
    est = density_estimate(parse_system("x; x+2"), 10**4, 10**4)
    assert est.obstruction is None
    assert est.actual == 205
    assert est.predicted_sum > 0
    assert len(est.omega_sample) == 25  # primes below 100
    assert est.degrees == (1, 1)
