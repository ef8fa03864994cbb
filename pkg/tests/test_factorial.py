"""Membership in Z_{l!}^* and the least-witness probes built on it."""

import math

import pytest

from primework.arith import is_prime
from primework.config import DEFAULT_CONFIG
from primework.expr import parse_function, parse_system
from primework.factorial import (conjecture3_probe, coprime_to_factorial,
                                 in_factorial_zm, least_factorial_witness,
                                 less_than_factorial, prop3_scan,
                                 section9_probe)


def test_coprime_to_factorial():
    assert coprime_to_factorial(187, 6)  # 11 * 17, both above 6
    assert not coprime_to_factorial(25, 6)
    assert not coprime_to_factorial(14, 6)
    assert coprime_to_factorial(121, 10)
    assert not coprime_to_factorial(121, 11)


def test_coprime_to_factorial_brute_force():
    for l in range(2, 9):
        fact = math.factorial(l)
        for v in range(2, 200):
            assert coprime_to_factorial(v, l) == (math.gcd(v, fact) == 1), \
                (v, l)


def test_coprime_rejects_unit():
    with pytest.raises(ValueError):
        coprime_to_factorial(1, 5)


def test_less_than_factorial_exact_range():
    for l in range(2, 15):
        fact = math.factorial(l)
        for v in (fact - 2, fact - 1, fact, fact + 1):
            if v >= 1:
                assert less_than_factorial(v, l) == (v < fact), (v, l)


def test_less_than_factorial_huge_index():
    # beyond the exact range the log2 bound decides; margins are far
    # from the boundary here
    assert less_than_factorial(10**40, 60)
    assert not less_than_factorial(math.factorial(60) * 2, 60)
    assert not less_than_factorial(math.factorial(60), 60)
    assert less_than_factorial(math.factorial(60) - 1, 60)


def test_in_factorial_zm():
    assert in_factorial_zm(187, 6)
    assert not in_factorial_zm(187, 3)  # 187 >= 3! fails the range
    assert not in_factorial_zm(4, 4)


def test_pair_shift_180_witness_at_6():
    fs = parse_system("x; x+180")
    w = least_factorial_witness(fs, 6)
    assert w is not None
    assert w.point == (7,)
    assert w.values == (7, 187)
    assert not w.all_prime
    assert w.least_value_prime
    assert not is_prime(187)


def test_pair_shift_180_witness_exists_onward():
    fs = parse_system("x; x+180")
    for l in range(7, 15):
        w = least_factorial_witness(fs, l)
        assert w is not None, l
        for v in w.values:
            assert in_factorial_zm(v, l)


def test_twin_witness_range_invariant():
    fs = parse_system("x; x+2")
    assert least_factorial_witness(fs, 3) is None  # needs 2 units below 6
    w = least_factorial_witness(fs, 4)
    assert w is not None
    assert w.point == (5,) and w.values == (5, 7)


def test_witness_is_least():
    fs = parse_system("x; x+2")
    w = least_factorial_witness(fs, 5)
    x = w.point[0]
    for y in range(1, x):
        vals = (y, y + 2)
        assert not all(in_factorial_zm(v, 5) for v in vals)


def test_prop3_identity_least_values_prime():
    rep = prop3_scan(parse_function("x"), (3, 200))
    for e in rep.entries:
        assert e.value is not None
        assert e.prime, e.m
        # least coprime value above 1 really is what it claims
        for b in range(2, e.value):
            assert math.gcd(b, e.m) != 1


def test_prop3_mersenne_composite_case():
    rep = prop3_scan(parse_function("2^x-1"), (82677, 82677))
    e = rep.entries[0]
    assert e.value == 2047
    assert not e.prime


def test_prop3_squares_frozen():
    rep = prop3_scan(parse_function("x^2"), (2, 100))
    found = [e for e in rep.entries if e.value is not None]
    assert len(found) == 90
    assert all(not e.prime for e in found)


def test_conjecture3_twin_frozen():
    fs = parse_system("x; x+2")
    rep = conjecture3_probe(fs, (3, 15))
    assert rep.violations == ()
    assert rep.r_estimate == 4
    by_l = dict(zip(range(3, 16), rep.entries))
    assert by_l[3] is None
    assert by_l[4].values == (5, 7)
    assert by_l[5].values == (11, 13)
    assert by_l[11].values == (17, 19)


def test_conjecture3_identity():
    rep = conjecture3_probe((parse_function("x"),), (2, 20))
    assert rep.violations == ()
    assert rep.r_estimate == 3


def test_conjecture3_pair_shift_violation():
    rep = conjecture3_probe(parse_system("x; x+180"), (6, 6))
    assert rep.violations == (6,)


def test_section9_identity_smoke():
    rep = section9_probe((parse_function("x"),), (4, 10), horizon=10**3)
    # whatever is reported must be a prime unit below the factorial
    for e in rep.entries:
        if e is None:
            continue
        for v in e.values:
            assert is_prime(v)
