"""Core integer arithmetic: primality, factoring, sieving, phi, CRT.

Everything here is deterministic for a fixed config.  Primality is a
Miller-Rabin test with a fixed witness set that is exhaustive below
3.3e24; beyond that the same witnesses plus seeded extra rounds are
used and the result is flagged probable rather than proven.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import DEFAULT_CONFIG, WorkbenchConfig
from .errors import (FactoringBudgetExceeded, MemoryBudgetExceeded,
                     ModuliNotCoprime, NotCoprime)

# Witness set deterministic for n < 3,317,044,064,679,887,385,961,981
# (first twelve primes; Sorenson-Webster).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_BELOW = 3_317_044_064_679_887_385_961_981

_SMALL_PRIME_LIMIT = 1000
_small_primes: list[int] = []
_small_prime_set: frozenset[int] = frozenset()


def _flat_sieve(limit: int) -> list[int]:
    """Plain sieve, no memory guard.  Internal use for modest limits."""
    if limit < 2:
        return []
    bs = bytearray([1]) * (limit + 1)
    bs[0] = bs[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if bs[i]:
            bs[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i in range(limit + 1) if bs[i]]


def _ensure_small_primes():
    global _small_primes, _small_prime_set
    if not _small_primes:
        _small_primes = _flat_sieve(_SMALL_PRIME_LIMIT)
        _small_prime_set = frozenset(_small_primes)


@dataclass(frozen=True)
class PrimalityResult:
    n: int
    prime: bool
    # False when n was above the deterministic witness bound
    deterministic: bool


def _mr_round(n: int, a: int, d: int, s: int) -> bool:
    """One Miller-Rabin round; True means a is not a witness against n."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def primality(n: int, config: WorkbenchConfig = DEFAULT_CONFIG) -> PrimalityResult:
    if n < 2:
        return PrimalityResult(n, False, True)
    _ensure_small_primes()
    if n <= _SMALL_PRIME_LIMIT:
        return PrimalityResult(n, n in _small_prime_set, True)
    for p in _small_primes[:30]:
        if n % p == 0:
            return PrimalityResult(n, False, True)
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        if not _mr_round(n, a, d, s):
            return PrimalityResult(n, False, True)
    if n < _MR_DETERMINISTIC_BELOW:
        return PrimalityResult(n, True, True)
    # Beyond the proven range: extra seeded rounds, result is "probable".
    rng_state = (config.seed * 0x9E3779B97F4A7C15 + 1) & (2**64 - 1)
    for _ in range(20):
        rng_state = (rng_state * 6364136223846793005 + 1442695040888963407) & (2**64 - 1)
        a = 2 + rng_state % (n - 3)
        if not _mr_round(n, a, d, s):
            return PrimalityResult(n, False, True)
    return PrimalityResult(n, True, False)


def is_prime(n: int, config: WorkbenchConfig = DEFAULT_CONFIG) -> bool:
    return primality(n, config).prime


@dataclass(frozen=True)
class Factorization:
    n: int
    # sorted (prime, exponent) pairs
    factors: tuple[tuple[int, int], ...]
    # composite remainder the budget could not split; 1 when complete
    cofactor: int = 1
    complete: bool = True

    def reconstruct(self) -> int:
        out = self.cofactor
        for p, e in self.factors:
            out *= p**e
        return out

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


def _rho_brent(n: int, budget: int, seed: int) -> tuple[int, int]:
    """Brent-cycle Pollard rho.  Returns (factor, iterations_used);
    factor == n means failure within budget."""
    if n % 2 == 0:
        return 2, 0
    used = 0
    c = seed % n or 1
    while used < budget:
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1 and used < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                cnt = min(m, r - k)
                for _ in range(cnt):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                used += cnt
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            # backtrack one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                used += 1
        if 1 < g < n:
            return g, used
        c += 1  # retry with the next polynomial offset
    return n, used


def _is_perfect_power(n: int) -> tuple[int, int] | None:
    for k in range(2, n.bit_length() + 1):
        r = round(n ** (1.0 / k))
        for cand in (r - 1, r, r + 1):
            if cand > 1 and cand**k == n:
                return cand, k
    return None


def factorize(n: int, config: WorkbenchConfig = DEFAULT_CONFIG) -> Factorization:
    """Complete factorization, trial division then Pollard rho.

    Raises FactoringBudgetExceeded (carrying the partial result) if a
    cofactor survives the configured rho budget.
    """
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    orig = n
    found: dict[int, int] = {}
    # trial division by primes up to the configured bound, early exit at sqrt
    _ensure_small_primes()
    for p in _small_primes:
        if p * p > n:
            break
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    if n > 1 and n >= _SMALL_PRIME_LIMIT * _SMALL_PRIME_LIMIT:
        p = (_SMALL_PRIME_LIMIT + 1) | 1  # first odd candidate past the table
        while p <= config.trial_division_bound and p * p <= n:
            while n % p == 0:
                found[p] = found.get(p, 0) + 1
                n //= p
            p += 2
    budget = config.rho_budget
    pending = [n] if n > 1 else []
    while pending:
        m = pending.pop()
        if m == 1:
            continue
        if primality(m, config).prime:
            found[m] = found.get(m, 0) + 1
            continue
        pp = _is_perfect_power(m)
        if pp:
            base, k = pp
            pending.extend([base] * k)
            continue
        g, used = _rho_brent(m, budget, config.seed)
        budget -= used
        if g == m or g == 1:
            for rest in pending:
                m *= rest  # roll unsplit work back into the cofactor
            partial = Factorization(orig, tuple(sorted(found.items())),
                                    cofactor=m, complete=False)
            raise FactoringBudgetExceeded(partial)
        pending.extend([g, m // g])
    return Factorization(orig, tuple(sorted(found.items())))


def _estimated_sieve_bytes(limit: int) -> int:
    # working segment + base sieve + the returned list of ints
    if limit < 100:
        return 4096
    count_est = int(limit / max(math.log(limit) - 1.1, 1.0)) + 10
    return limit // 2 // 8 + 48 * count_est


_SEGMENT = 1 << 20


def sieve_primes(limit: int, config: WorkbenchConfig = DEFAULT_CONFIG) -> list[int]:
    """All primes <= limit via a segmented sieve.

    Raises MemoryBudgetExceeded when the estimated footprint (dominated
    by the result list itself) would pass the configured cap.
    """
    if _estimated_sieve_bytes(limit) > config.sieve_memory_cap:
        raise MemoryBudgetExceeded(
            f"sieve to {limit} needs ~{_estimated_sieve_bytes(limit)} bytes")
    if limit < 2:
        return []
    if limit <= 4 * _SEGMENT:
        return _flat_sieve(limit)
    base = _flat_sieve(math.isqrt(limit))
    out = list(base)
    lo = math.isqrt(limit) + 1
    while lo <= limit:
        hi = min(lo + _SEGMENT - 1, limit)
        seg = bytearray([1]) * (hi - lo + 1)
        for p in base:
            if p * p > hi:
                break
            start = max(p * p, (lo + p - 1) // p * p)
            seg[start - lo :: p] = bytearray(len(range(start, hi + 1, p)))
        out.extend(i + lo for i, flag in enumerate(seg) if flag)
        lo = hi + 1
    return out


def smallest_factor_table(limit: int) -> list[int]:
    """spf[i] = smallest prime factor of i (spf[0] = spf[1] = 0)."""
    spf = list(range(limit + 1))
    if limit >= 1:
        spf[1] = 0
    if limit >= 0:
        spf[0] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if spf[i] == i:  # i is prime
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


def factor_with_table(n: int, spf: list[int]) -> list[tuple[int, int]]:
    out = []
    while n > 1:
        p = spf[n]
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    return out


def euler_phi(n: int, config: WorkbenchConfig = DEFAULT_CONFIG) -> int:
    """Euler totient; phi(1) = 1 by convention."""
    if n < 1:
        raise ValueError("phi needs a positive integer")
    if n == 1:
        return 1
    out = n
    for p, _ in factorize(n, config).factors:
        out = out // p * (p - 1)
    return out


def euler_phi_range(limit: int) -> list[int]:
    """phi[0..limit] by sieve; phi[0] set to 0."""
    phi = list(range(limit + 1))
    for i in range(2, limit + 1):
        if phi[i] == i:  # prime
            for j in range(i, limit + 1, i):
                phi[j] -= phi[j] // i
    if limit >= 1:
        phi[1] = 1
    return phi


def omega(n: int, config: WorkbenchConfig = DEFAULT_CONFIG) -> int:
    """Number of distinct prime factors; omega(1) = 0."""
    if n == 1:
        return 0
    return len(factorize(n, config).factors)


def crt_solve(congruences: list[tuple[int, int]]) -> tuple[int, int]:
    """Solve x = r_i (mod m_i) for pairwise coprime moduli.

    Returns (x, M) with 0 <= x < M = product of the moduli.
    """
    x, M = 0, 1
    for r, m in congruences:
        if m < 2:
            raise ValueError(f"modulus {m} too small")
        if not 0 <= r < m:
            raise ValueError(f"residue {r} outside [0, {m})")
        g = math.gcd(M, m)
        if g != 1:
            raise ModuliNotCoprime(f"moduli share factor {g}")
        # combine: x' = x + M * t where t = (r - x) / M mod m
        t = (r - x) * pow(M, -1, m) % m
        x += M * t
        M *= m
    return x, M


def least_coprime_exceeding_one(m: int) -> int:
    """Smallest integer a > 1 with gcd(a, m) = 1."""
    if m < 1:
        raise ValueError("modulus must be positive")
    a = 2
    while math.gcd(a, m) != 1:
        a += 1
    return a


def multiplicative_order(a: int, m: int, config: WorkbenchConfig = DEFAULT_CONFIG) -> int:
    """Order of a modulo m; requires gcd(a, m) = 1."""
    if math.gcd(a, m) != 1:
        raise NotCoprime(f"{a} shares a factor with {m}")
    if m == 1:
        return 1
    e = euler_phi(m, config)
    for p, _ in factorize(e, config).factors:
        while e % p == 0 and pow(a, e // p, m) == 1:
            e //= p
    return e
