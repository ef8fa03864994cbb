"""Quantitative estimates: how many primes should a system produce.

The hard part is the singular-series constant C: a product over primes
of (1 - omega(p)/p) / (1 - 1/p)^s, where omega(p) counts roots of the
product polynomial mod p.  It converges slowly, so the partial product
is always reported with its cutoff and a convergence indicator, and
accumulation runs over exactly-summed logs in ascending prime order so
results are bit-stable regardless of chunking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .analysis import classify, univariate_coeffs
from .arith import is_prime, sieve_primes
from .config import DEFAULT_CONFIG, WorkbenchConfig
from .errors import (DomainError, EvaluationBudgetExceeded, EvaluationError,
                     NotCoprime, NotUnivariatePolynomial)
from .expr import FunctionSystem, NtFunction, evaluate


def _require_univariate_polys(fs: FunctionSystem,
                              config: WorkbenchConfig) -> list[list[int]]:
    """Coefficient lists (ascending degree) for every member."""
    out = []
    for f in fs:
        prof = classify(f, config)
        if not (prof.is_polynomial and prof.arity == 1):
            raise NotUnivariatePolynomial(str(f))
        out.append(univariate_coeffs(f))
    return out


def _product_coeffs(coeff_lists: list[list[int]]) -> list[int]:
    prod = [1]
    for cs in coeff_lists:
        nxt = [0] * (len(prod) + len(cs) - 1)
        for i, a in enumerate(prod):
            for j, b in enumerate(cs):
                nxt[i + j] += a * b
        prod = nxt
    return prod


def _poly_mod(coeffs: list[int], p: int) -> list[int]:
    cs = [c % p for c in coeffs]
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    return cs


def _polymul_mod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    # reduce by the monic-scaled modulus
    d = len(mod) - 1
    inv = pow(mod[-1], -1, p)
    for i in range(len(out) - 1, d - 1, -1):
        c = out[i]
        if c:
            f = c * inv % p
            for j in range(d + 1):
                out[i - d + j] = (out[i - d + j] - f * mod[j]) % p
    del out[d:]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_gcd_mod(a: list[int], b: list[int], p: int) -> list[int]:
    while len(b) > 1 or b[0] != 0:
        inv = pow(b[-1], -1, p)
        r = a[:]
        while len(r) >= len(b) and (len(r) > 1 or r[0] != 0):
            f = r[-1] * inv % p
            off = len(r) - len(b)
            for j in range(len(b)):
                r[off + j] = (r[off + j] - f * b[j]) % p
            while len(r) > 1 and r[-1] == 0:
                r.pop()
            if len(r) < len(b):
                break
        a, b = b, r
    return a


def _distinct_roots_gcd(coeffs: list[int], p: int) -> int:
    """Distinct roots mod p as deg gcd(x^p - x, g)."""
    g = _poly_mod(coeffs, p)
    if g == [0]:
        return p
    if len(g) == 1:
        return 0
    # x^p mod g by square and multiply
    result = [1]
    base = _polymul_mod([0, 1], [1], g, p)
    e = p
    while e:
        if e & 1:
            result = _polymul_mod(result, base, g, p)
        base = _polymul_mod(base, base, g, p)
        e >>= 1
    # x^p - x
    h = result[:]
    while len(h) < 2:
        h.append(0)
    h[1] = (h[1] - 1) % p
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    gcd = _poly_gcd_mod(g, h, p)
    return len(gcd) - 1


def omega_p(fs: FunctionSystem, p: int,
            config: WorkbenchConfig = DEFAULT_CONFIG) -> int:
    """Roots of f_1(x)*...*f_s(x) mod p among 0..p-1, exactly."""
    coeff_lists = _require_univariate_polys(fs, config)
    if not is_prime(p, config):
        raise ValueError(f"{p} is not prime")
    if all(len(cs) <= 2 for cs in coeff_lists):
        roots = set()
        for cs in coeff_lists:
            b = cs[0] % p
            a = cs[1] % p if len(cs) == 2 else 0
            if a == 0:
                if b == 0:
                    return p  # the zero polynomial kills every residue
                continue
            roots.add(-b * pow(a, -1, p) % p)
        return len(roots)
    prod = _product_coeffs(coeff_lists)
    if p <= 2000:
        count = 0
        for x in range(p):
            acc = 0
            for c in reversed(prod):
                acc = (acc * x + c) % p
            if acc == 0:
                count += 1
        return count
    return _distinct_roots_gcd(prod, p)


@dataclass(frozen=True)
class BhConstant:
    value: float
    cutoff: int
    relative_change: float  # |C(P) - C(P/10)| / C(P), 0 when C = 0
    obstruction: int | None  # prime with omega(p) = p, forcing C = 0


def bateman_horn_constant(fs: FunctionSystem, prime_cutoff: int,
                          config: WorkbenchConfig = DEFAULT_CONFIG) -> BhConstant:
    """Partial singular-series product over primes <= cutoff.

    A prime with omega(p) = p is a divisibility obstruction: the system
    can produce at most finitely many primes and C is reported as 0,
    flagged, rather than raised."""
    s = len(fs)
    primes = sieve_primes(prime_cutoff, config)
    snapshot_at = prime_cutoff // 10
    terms: list[float] = []
    snapshot_terms = 0
    for p in primes:
        w = omega_p(fs, p, config)
        if w == p:
            return BhConstant(0.0, prime_cutoff, 0.0, p)
        terms.append(math.log1p(-w / p) - s * math.log1p(-1.0 / p))
        if p <= snapshot_at:
            snapshot_terms = len(terms)
    value = math.exp(math.fsum(terms))
    if snapshot_terms and snapshot_terms < len(terms) and value:
        earlier = math.exp(math.fsum(terms[:snapshot_terms]))
        rel = abs(value - earlier) / value
    else:
        rel = 0.0
    return BhConstant(value, prime_cutoff, rel, None)


@dataclass(frozen=True)
class PredictedCount:
    m: int
    constant: float
    sum_form: float  # C / prod(d_i) * sum_{n=2..m} 1 / (log n)^s
    closed_form: float  # C / prod(d_i) * m / (log m)^s


def predicted_count(fs: FunctionSystem, m: int, prime_cutoff: int = 10**5,
                    config: WorkbenchConfig = DEFAULT_CONFIG) -> PredictedCount:
    """Both textbook shapes of the predicted prime count up to m; the
    sum form is the one to trust at desk scale."""
    if m < 2:
        raise ValueError("m must be at least 2")
    degrees = []
    for f in fs:
        prof = classify(f, config)
        if not (prof.is_polynomial and prof.arity == 1 and prof.total_degree):
            raise NotUnivariatePolynomial(str(f))
        degrees.append(prof.total_degree)
    s = len(fs)
    c = bateman_horn_constant(fs, prime_cutoff, config).value
    scale = c / math.prod(degrees)
    total = math.fsum(math.log(n) ** -s for n in range(2, m + 1))
    return PredictedCount(m, c, scale * total, scale * m / math.log(m) ** s)


def actual_count(fs: FunctionSystem, m: int,
                 config: WorkbenchConfig = DEFAULT_CONFIG) -> int:
    """Exact number of 1 <= n <= m with every f_i(n) prime."""
    if any(f.arity != 1 for f in fs):
        raise ValueError("actual_count scans univariate systems")
    rows = []
    top = 0
    for n in range(1, m + 1):
        vals = []
        for f in fs:
            try:
                v = evaluate(f, (n,), config=config)
            except (DomainError, EvaluationError, EvaluationBudgetExceeded):
                vals = None
                break
            if v < 2:
                vals = None
                break
            vals.append(v)
        rows.append(vals)
        if vals:
            top = max(top, *vals)
    if top and top <= 10**7:
        composite = bytearray(top + 1)
        for p in sieve_primes(int(math.isqrt(top)), config):
            composite[p * p::p] = b"\x01" * len(range(p * p, top + 1, p))
        def prime(v: int) -> bool:
            return not composite[v]
    else:
        def prime(v: int) -> bool:
            return is_prime(v, config)
    return sum(1 for vals in rows if vals and all(prime(v) for v in vals))


def dlvp_ratio(a: int, b: int, x: int,
               config: WorkbenchConfig = DEFAULT_CONFIG) -> float:
    """pi_{a,b}(x) * phi(b) * log(x) / x, the ratio that tends to 1."""
    if b < 1:
        raise ValueError("b must be positive")
    if math.gcd(a, b) != 1:
        raise NotCoprime(f"gcd({a}, {b}) != 1")
    if x < 2:
        raise ValueError("x must be at least 2")
    count = sum(1 for p in sieve_primes(x, config) if p % b == a % b)
    phi_b = sum(1 for r in range(1, b + 1) if math.gcd(r, b) == 1)
    return count * phi_b * math.log(x) / x


@dataclass(frozen=True)
class ApLeastPrimeTable:
    k: int
    entries: tuple[tuple[int, int], ...]  # (l, least prime == l mod k)
    p_k: int
    empirical_exponent: float  # log p_k / log k

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)


def least_prime_ap(k: int,
                   config: WorkbenchConfig = DEFAULT_CONFIG) -> ApLeastPrimeTable:
    """p(l, k) for every l coprime to k.

    The scan starts at n = 0, so l itself counts when prime; set
    strict_positive_n to start at n = 1 (the stricter reading)."""
    if k < 2:
        raise ValueError("k must be at least 2")
    start = 1 if config.strict_positive_n else 0
    entries = []
    for l in range(1, k + 1):
        if math.gcd(l, k) != 1:
            continue
        n = start
        while True:
            v = l + n * k
            if v >= 2 and is_prime(v, config):
                entries.append((l, v))
                break
            n += 1
            if n > config.horizon:
                raise RuntimeError(f"no prime found for l={l}, k={k}")
    p_k = max(p for _, p in entries)
    return ApLeastPrimeTable(k, tuple(entries), p_k,
                             math.log(p_k) / math.log(k))


@dataclass(frozen=True)
class ApProductReport:
    a: int
    b: int
    n_max: int
    violations: tuple[int, ...]  # n with P_1 * ... * P_n <= P_{n+1}
    c_star: int  # least threshold with no violation beyond it in range


def ap_product_inequality(a: int, b: int, n_max: int,
                          config: WorkbenchConfig = DEFAULT_CONFIG,
                          ) -> ApProductReport:
    """Partial products of primes of the form a + b*x against the next
    prime of the form: past a small threshold the product always wins."""
    if b < 1:
        raise ValueError("b must be positive")
    if math.gcd(a, b) != 1:
        raise NotCoprime(f"gcd({a}, {b}) != 1")
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    need = n_max + 1
    primes: list[int] = []
    x = 1 if config.strict_positive_n else 0
    while len(primes) < need:
        v = a + b * x
        if v >= 2 and is_prime(v, config):
            primes.append(v)
        x += 1
        if x > config.horizon:
            raise RuntimeError(f"fewer than {need} primes of form "
                               f"{a}+{b}x within the horizon")
    violations = []
    product = 1
    for n in range(1, n_max + 1):
        product *= primes[n - 1]
        if product <= primes[n]:
            violations.append(n)
    return ApProductReport(a, b, n_max, tuple(violations),
                           violations[-1] if violations else 0)


@dataclass(frozen=True)
class DensityEstimate:
    system: tuple[str, ...]
    degrees: tuple[int, ...]
    prime_cutoff: int
    constant: float
    relative_change: float
    obstruction: int | None
    omega_sample: tuple[tuple[int, int], ...]  # (p, omega(p)) for small p
    m: int
    predicted_sum: float
    predicted_closed: float
    actual: int


def density_estimate(fs: FunctionSystem, prime_cutoff: int, m: int,
                     config: WorkbenchConfig = DEFAULT_CONFIG) -> DensityEstimate:
    """One-stop aggregate: constant, omega sample, prediction, truth."""
    degrees = tuple(classify(f, config).total_degree or 0 for f in fs)
    bh = bateman_horn_constant(fs, prime_cutoff, config)
    sample = tuple((p, omega_p(fs, p, config))
                   for p in sieve_primes(100, config))
    if bh.obstruction is None:
        pred = predicted_count(fs, m, prime_cutoff, config)
        predicted_sum, predicted_closed = pred.sum_form, pred.closed_form
    else:
        predicted_sum = predicted_closed = 0.0
    return DensityEstimate(tuple(str(f) for f in fs), degrees, prime_cutoff,
                           bh.value, bh.relative_change, bh.obstruction,
                           sample, m, predicted_sum, predicted_closed,
                           actual_count(fs, m, config))
