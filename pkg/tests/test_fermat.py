"""Doubly exponential terms 2^(2^x) + 1: factors, membership, finiteness."""

import math

import pytest

from primework.arith import is_prime
from primework.config import DEFAULT_CONFIG
from primework.errors import EvaluationBudgetExceeded
from primework.fermat import (FermatStatus, divides_fermat,
                              euler_lucas_search, factorization_is_complete,
                              fermat_coprime_check, fermat_in_zm,
                              fermat_number, finiteness_argument_check,
                              known_fermat_records, verify_factorization)


def test_small_values():
    assert [fermat_number(x) for x in range(6)] == [
        3, 5, 17, 257, 65537, 4294967297]


def test_value_budget_guard():
    with pytest.raises(EvaluationBudgetExceeded):
        fermat_number(60)


def test_divides_fermat():
    assert divides_fermat(641, 5)
    assert divides_fermat(6700417, 5)
    assert divides_fermat(274177, 6)
    assert divides_fermat(67280421310721, 6)
    assert divides_fermat(2424833, 9)
    assert not divides_fermat(641, 6)
    assert not divides_fermat(3, 1)
    assert not divides_fermat(1, 5)


def test_trial_search_f5():
    hits = euler_lucas_search(5, 16)
    assert hits == [641]
    # 641 = 10*64 + 1 = 5*128 + 1: both classical progressions hit it
    assert (641 - 1) // 64 == 10
    assert (641 - 1) // 128 == 5


def test_trial_search_f6():
    hits = euler_lucas_search(6, 1100)
    assert 274177 in hits
    assert (274177 - 1) % 256 == 0


def test_trial_search_f4_empty():
    assert euler_lucas_search(4, 10**4) == []


def test_trial_search_candidates_verified():
    for x in (5, 6, 7):
        for d in euler_lucas_search(x, 2000):
            assert divides_fermat(d, x)
            assert is_prime(d)


def test_verify_factorization():
    assert verify_factorization(5, [641, 6700417])
    assert verify_factorization(6, [274177, 67280421310721])
    assert not verify_factorization(5, [641])
    assert not verify_factorization(5, [641, 6700417, 3])
    assert not verify_factorization(6, [641, 6700417])


def test_pairwise_coprime_with_index():
    # gcd(m, 2^(2^m) + 1) = 1 for every m in range
    assert fermat_coprime_check((2, 1000)) == []


def test_telescoping_product():
    prod = 1
    for i in range(5):
        prod *= fermat_number(i)
    assert prod == fermat_number(5) - 2


def test_finiteness_argument():
    rows = finiteness_argument_check((1, 6))
    assert len(rows) == 6
    for r in rows:
        assert r.telescoping_ok
        assert r.fermat_free
    assert rows[3].m == 65535  # product of the first four terms


def test_membership_mod_51():
    assert fermat_in_zm(51) == 5


def test_membership_mod_1285():
    assert fermat_in_zm(1285) == 17


def test_membership_mod_65535():
    assert fermat_in_zm(65535) is None


def test_membership_respects_x_min():
    # F(0) = 3 is in Z_7^* but x_min=1 starts at F(1) = 5
    assert fermat_in_zm(7, x_min=0) == 3
    assert fermat_in_zm(7, x_min=1) == 5


def test_membership_brute_force():
    for m in (11, 20, 51, 100, 257, 1285):
        got = fermat_in_zm(m, x_min=0)
        brute = None
        x = 0
        while 2**x + 1 <= m.bit_length() + 64:  # generous envelope
            v = 2**(2**x) + 1
            if 1 <= v < m and math.gcd(v, m) == 1:
                brute = v
                break
            x += 1
        assert got == brute, m


def test_known_records():
    records = known_fermat_records()
    assert len(records) == 12
    by_x = {r.x: r for r in records}
    assert by_x[4].status is FermatStatus.PRIME
    assert by_x[5].status is FermatStatus.COMPOSITE
    assert by_x[5].known_factors == (641, 6700417)
    assert by_x[6].known_factors == (274177, 67280421310721)
    for r in records:
        for d in r.known_factors:
            assert divides_fermat(d, r.x)


def test_factorization_completeness_flags():
    assert factorization_is_complete(5)
    assert factorization_is_complete(6)
    assert not factorization_is_complete(9)
