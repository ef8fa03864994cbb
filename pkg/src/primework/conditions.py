"""Checkers for the necessary conditions a prime-representing function
must satisfy.

Letter key, for one function f and a modulus m (system forms take the
product of the member values):

  A  arbitrarily long pairwise-coprime value sequences exist
  B  some value is coprime to m
  C  some value is not divisible by m
  D  for each prime p, some value is not divisible by p
  E  some value exceeds 1 and is coprime to m
  F  some value exceeds 1 and is not divisible by m
  G  E restricted to prime moduli
  H  system form of A (pairwise coprime products, all members > 1)
  I  system form of E

Scans are three-valued.  Polynomial and base-power shapes close
conclusively through residue periods and envelope certificates; other
shapes report Unknown when the horizon runs out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .analysis import (envelope_outside_bound, exceeds_one_from,
                       exp_linear_shape, iter_points, poly_normal_form,
                       univariate_coeffs)
from .arith import factorize, is_prime, multiplicative_order, sieve_primes
from .config import DEFAULT_CONFIG, WorkbenchConfig
from .errors import EvaluationBudgetExceeded, GRequiresPrime
from .expr import Mul, NtFunction, evaluate, evaluate_mod


class Status(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Witness:
    point: tuple[int, ...]
    values: tuple[int, ...]
    modulus: int


@dataclass(frozen=True)
class Verdict:
    status: Status
    witness: Witness | None = None
    obstruction: int | None = None  # prime (or modulus) blocking the condition
    horizon: int | None = None      # recorded when the scan was horizon-limited

    @property
    def conclusive(self) -> bool:
        return self.status is not Status.UNKNOWN


_DEFAULT_SCAN = 10**4


def _poly_mod_scanner(f: NtFunction, modulus: int):
    """Per-x residue of a univariate polynomial, Horner, early-callable."""
    coeffs = univariate_coeffs(f)
    red = [c % modulus for c in coeffs]

    def at(x: int) -> int:
        acc = 0
        for c in reversed(red):
            acc = (acc * x + c) % modulus
        return acc
    return at


def _residue_period(f: NtFunction, modulus: int,
                    config: WorkbenchConfig) -> int | None:
    """Period of x -> f(x) mod modulus over x >= 1, when provable."""
    if f.arity != 1:
        return None
    if poly_normal_form(f) is not None:
        return modulus
    shape = exp_linear_shape(f)
    if shape is not None:
        _, b, _ = shape
        if math.gcd(b, modulus) == 1:
            return multiplicative_order(b, modulus, config)
        if b % modulus == 0:
            return 1  # b^x = 0 mod modulus for every x >= 1
    return None


def _scan_nonzero_residue(f: NtFunction, modulus: int, horizon: int,
                          config: WorkbenchConfig) -> Verdict:
    """Common core of C and D: least x >= 1 with f(x) != 0 mod modulus."""
    period = _residue_period(f, modulus, config)
    limit = horizon if period is None else min(horizon, period)
    if f.arity == 1 and poly_normal_form(f) is not None:
        at = _poly_mod_scanner(f, modulus)
        for x in range(1, limit + 1):
            if at(x):
                return Verdict(Status.HOLDS,
                               Witness((x,), (evaluate(f, (x,), config=config),), modulus))
    else:
        for x in range(1, limit + 1):
            if evaluate_mod(f, (x,), modulus):
                value = evaluate(f, (x,), config=config)
                return Verdict(Status.HOLDS, Witness((x,), (value,), modulus))
    if period is not None and period <= horizon:
        return Verdict(Status.FAILS, obstruction=modulus)
    return Verdict(Status.UNKNOWN, horizon=horizon)


def check_condition_D(f: NtFunction, prime_bound: int,
                      horizon: int = _DEFAULT_SCAN,
                      config: WorkbenchConfig = DEFAULT_CONFIG) -> dict[int, Verdict]:
    """Condition D prime by prime, for every prime <= prime_bound."""
    return {p: _scan_nonzero_residue(f, p, horizon, config)
            for p in sieve_primes(prime_bound, config)}


def check_condition_C(f: NtFunction, m: int, horizon: int = _DEFAULT_SCAN,
                      config: WorkbenchConfig = DEFAULT_CONFIG) -> Verdict:
    """Condition C: some value not divisible by m (m >= 2)."""
    if m < 2:
        raise ValueError("condition C needs a modulus >= 2")
    return _scan_nonzero_residue(f, m, horizon, config)


def _radical(m: int, config: WorkbenchConfig) -> int:
    out = 1
    for p, _ in factorize(m, config).factors:
        out *= p
    return out


def check_condition_B(f: NtFunction, m: int, horizon: int = _DEFAULT_SCAN,
                      config: WorkbenchConfig = DEFAULT_CONFIG) -> Verdict:
    """Condition B: some value coprime to m.

    For polynomials each prime p | m gets a full residue scan; if some
    prime divides every value, that prime is the obstruction and B
    fails conclusively.  Otherwise residues combine through the
    Chinese remainder theorem, so a witness exists within the radical
    of m and the least one is reported.
    """
    if m < 2:
        raise ValueError("condition B needs a modulus >= 2")
    primes = [p for p, _ in factorize(m, config).factors]
    if f.arity == 1 and poly_normal_form(f) is not None:
        for p in primes:
            at = _poly_mod_scanner(f, p)
            if all(at(r) == 0 for r in range(p)):
                return Verdict(Status.FAILS, obstruction=p)
        rad = _radical(m, config)
        at_rad = _poly_mod_scanner(f, rad)
        for x in range(1, rad + 1):
            if math.gcd(at_rad(x), rad) == 1:
                return Verdict(Status.HOLDS,
                               Witness((x,), (evaluate(f, (x,), config=config),), m))
        raise AssertionError("CRT guarantees a witness within the radical")
    # non-polynomial: per-prime conclusive failure needs a period
    periods = []
    for p in primes:
        period = _residue_period(f, p, config)
        if period is not None:
            at_done = False
            for x in range(1, min(period, horizon) + 1):
                if evaluate_mod(f, (x,), p):
                    at_done = True
                    break
            if not at_done and period <= horizon:
                return Verdict(Status.FAILS, obstruction=p)
            periods.append(period)
        else:
            periods = None  # joint period unavailable
            break
    joint = None
    if periods is not None:
        joint = 1
        for q in periods:
            joint = joint * q // math.gcd(joint, q)
    limit = horizon if joint is None else min(horizon, joint)
    for x in range(1, limit + 1):
        if math.gcd(evaluate_mod(f, (x,), m), m) == 1:
            try:
                value = evaluate(f, (x,), config=config)
            except EvaluationBudgetExceeded:
                value = None
            return Verdict(Status.HOLDS,
                           Witness((x,), (value,), m))
    if joint is not None and joint <= horizon:
        return Verdict(Status.FAILS, obstruction=m)
    return Verdict(Status.UNKNOWN, horizon=horizon)


VALUE_MODES = ("E", "F", "G", "Zm")


def find_value_witness(f: NtFunction, m: int, mode: str,
                       horizon: int = _DEFAULT_SCAN,
                       config: WorkbenchConfig = DEFAULT_CONFIG) -> Verdict:
    """Least-x witness scans for the value conditions E, F, G and for
    plain membership of a value in Z_m^* (mode "Zm")."""
    if mode not in VALUE_MODES:
        raise ValueError(f"mode must be one of {VALUE_MODES}")
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if mode == "G" and not is_prime(m, config):
        raise GRequiresPrime(f"{m} is not prime")
    if f.arity != 1:
        return _value_witness_multivar(f, m, mode, horizon, config)

    if mode == "Zm":
        env = envelope_outside_bound(f, m, config)
        limit = horizon if env is None else min(horizon, env - 1)
        for x in range(1, limit + 1):
            v = evaluate(f, (x,), config=config)
            if 1 <= v < m and math.gcd(v, m) == 1:
                return Verdict(Status.HOLDS, Witness((x,), (v,), m))
        if env is not None and env - 1 <= horizon:
            return Verdict(Status.FAILS)
        return Verdict(Status.UNKNOWN, horizon=horizon)

    # E, F, G: value must exceed 1; coprimality (E, G) or indivisibility (F)
    check_div = (mode == "F")
    cert = exceeds_one_from(f, config)
    period = None
    if cert is not None:
        x1, eventually_positive = cert
        if not eventually_positive:
            limit = min(horizon, x1 - 1)
        else:
            period = _residue_period(f, m if check_div else _radical(m, config), config)
            limit = horizon if period is None else min(horizon, x1 + period - 1)
    else:
        limit = horizon
    for x in range(1, limit + 1):
        try:
            v = evaluate(f, (x,), config=config)
        except EvaluationBudgetExceeded:
            break  # values beyond any practical witness report
        if v <= 1:
            continue
        ok = (v % m != 0) if check_div else (math.gcd(v % m, m) == 1)
        if ok:
            return Verdict(Status.HOLDS, Witness((x,), (v,), m))
    if cert is not None:
        x1, eventually_positive = cert
        if not eventually_positive and x1 - 1 <= horizon:
            return Verdict(Status.FAILS)
        if eventually_positive and period is not None and x1 + period - 1 <= horizon:
            return Verdict(Status.FAILS, obstruction=m)
    return Verdict(Status.UNKNOWN, horizon=horizon)


def _value_witness_multivar(f: NtFunction, m: int, mode: str, horizon: int,
                            config: WorkbenchConfig) -> Verdict:
    for point in iter_points(f.arity, horizon):
        try:
            v = evaluate(f, point, config=config)
        except EvaluationBudgetExceeded:
            continue
        if mode == "Zm":
            if 1 <= v < m and math.gcd(v, m) == 1:
                return Verdict(Status.HOLDS, Witness(point, (v,), m))
        else:
            if v <= 1:
                continue
            ok = (v % m != 0) if mode == "F" else (math.gcd(v % m, m) == 1)
            if ok:
                return Verdict(Status.HOLDS, Witness(point, (v,), m))
    return Verdict(Status.UNKNOWN, horizon=horizon)


@dataclass(frozen=True)
class CoprimeSequence:
    requested: int
    entries: tuple[tuple[tuple[int, ...], int], ...]  # (point, value)
    # True when the function provably yields no further values > 1,
    # so no longer sequence exists at any horizon
    capped: bool = False

    @property
    def achieved(self) -> int:
        return len(self.entries)


def generate_coprime_sequence(f: NtFunction, count: int,
                              horizon: int = _DEFAULT_SCAN,
                              config: WorkbenchConfig = DEFAULT_CONFIG) -> CoprimeSequence:
    """Greedy condition-A witness: scan points in workbench order and
    keep each value > 1 that is coprime to everything kept so far."""
    entries = []
    product = 1
    cert = exceeds_one_from(f, config) if f.arity == 1 else None
    limit = horizon
    capped = False
    if cert is not None and not cert[1]:
        # beyond x1 every value is < 1: the sequence cannot grow there
        limit = min(horizon, cert[0] - 1)
        capped = cert[0] - 1 <= horizon
    for point in iter_points(f.arity, limit):
        try:
            v = evaluate(f, point, config=config)
        except EvaluationBudgetExceeded:
            break
        if v > 1 and math.gcd(v, product) == 1:
            entries.append((point, v))
            product *= v
            if len(entries) == count:
                break
    return CoprimeSequence(count, tuple(entries), capped and len(entries) < count)


def check_system_conditions(fs: tuple[NtFunction, ...], m: int,
                            horizon: int = _DEFAULT_SCAN,
                            config: WorkbenchConfig = DEFAULT_CONFIG) -> Verdict:
    """Condition I for a system: least point where every member value
    exceeds 1 and the product of values is coprime to m.

    All-polynomial systems fail conclusively when some prime of m
    divides the product at every residue combination.
    """
    if m < 2:
        raise ValueError("modulus must be >= 2")
    arity = fs[0].arity
    product_fn = fs[0]
    for g in fs[1:]:
        product_fn = NtFunction(arity, Mul(product_fn.body, g.body))
    if all(poly_normal_form(g) is not None for g in fs):
        for p, _ in factorize(m, config).factors:
            if _poly_vanishes_everywhere(product_fn, p, config):
                return Verdict(Status.FAILS, obstruction=p)
    for point in iter_points(arity, horizon):
        values = []
        good = True
        for g in fs:
            try:
                v = evaluate(g, point, config=config)
            except EvaluationBudgetExceeded:
                good = False
                break
            if v <= 1 or math.gcd(v % m, m) != 1:
                good = False
                break
            values.append(v)
        if good:
            return Verdict(Status.HOLDS, Witness(point, tuple(values), m))
    return Verdict(Status.UNKNOWN, horizon=horizon)


def _poly_vanishes_everywhere(f: NtFunction, p: int,
                              config: WorkbenchConfig) -> bool:
    """Does p divide f at every residue combination mod p?"""
    if f.arity == 1:
        at = _poly_mod_scanner(f, p)
        return all(at(r) == 0 for r in range(p))
    def rec(point, i):
        if i == f.arity:
            return evaluate_mod(f, tuple(point), p, allow_zero=True) == 0
        return all(rec(point + [r], i + 1) for r in range(p))
    return rec([], 0)


@dataclass(frozen=True)
class ConditionReport:
    modulus: int
    verdicts: dict
    coprime_sequence: CoprimeSequence


def condition_report(f: NtFunction, m: int, horizon: int = _DEFAULT_SCAN,
                     config: WorkbenchConfig = DEFAULT_CONFIG) -> ConditionReport:
    """One-stop report for a single function against one modulus.

    D and G are evaluated at the primes dividing m and their verdicts
    conjoined (Fails wins, then Unknown).  The A entry records whether
    a pairwise-coprime sequence of length omega(m) + 1 was reached.
    """
    primes = [p for p, _ in factorize(m, config).factors]
    verdicts = {}
    seq = generate_coprime_sequence(f, len(primes) + 1, horizon, config)
    verdicts["A"] = Verdict(Status.HOLDS if seq.achieved == len(primes) + 1
                            else (Status.FAILS if seq.capped else Status.UNKNOWN),
                            horizon=horizon)
    verdicts["B"] = check_condition_B(f, m, horizon, config)
    verdicts["C"] = check_condition_C(f, m, horizon, config)
    d_parts = [_scan_nonzero_residue(f, p, horizon, config) for p in primes]
    verdicts["D"] = _conjoin(d_parts)
    verdicts["E"] = find_value_witness(f, m, "E", horizon, config)
    verdicts["F"] = find_value_witness(f, m, "F", horizon, config)
    g_parts = [find_value_witness(f, p, "G", horizon, config) for p in primes]
    verdicts["G"] = _conjoin(g_parts)
    return ConditionReport(m, verdicts, seq)


def _conjoin(parts: list[Verdict]) -> Verdict:
    for v in parts:
        if v.status is Status.FAILS:
            return v
    for v in parts:
        if v.status is Status.UNKNOWN:
            return v
    witnessed = [v for v in parts if v.witness is not None]
    return Verdict(Status.HOLDS, witness=witnessed[0].witness if witnessed else None)
