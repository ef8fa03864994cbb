"""Generalized Euler counting and pairwise-coprime packing.

phi_general counts distinct value tuples landing in Z_n^* in every
slot; with the identity it reduces to Euler phi, which is the check
the tests lean on.  pi_general_* measure the largest pairwise-coprime
set of values in (1, x]; with the identity the exact solver must land
on pi(x).  Exactness is only ever claimed when a monotone envelope
proves the scanned box covers every attainable value.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .analysis import envelope_outside_bound, is_identity
from .arith import factor_with_table, factorize, smallest_factor_table
from .config import DEFAULT_CONFIG, WorkbenchConfig
from .conditions import Status, find_value_witness
from .errors import (CapExceeded, DomainError, EvaluationBudgetExceeded,
                     EvaluationError)
from .expr import FunctionSystem, NtFunction, evaluate


@dataclass(frozen=True)
class PhiResult:
    n: int
    count: int
    box: int  # side of the scanned cube [1, box]^k
    exact: bool


@dataclass(frozen=True)
class PiResult:
    x: int
    value: int
    method: str  # "exact" | "greedy-lower-bound"
    subset: tuple[int, ...]
    enumeration_complete: bool = True


def _fallback_side(k: int, config: WorkbenchConfig) -> int:
    # keep the point count near the horizon when no envelope exists
    return max(1, int(round(config.horizon ** (1.0 / k))))


def _required_side(fs: FunctionSystem, bound: int,
                   config: WorkbenchConfig) -> int | None:
    """Side beyond which some member provably leaves [1, bound-1],
    killing every tuple; None when no member has an envelope."""
    best = None
    for f in fs:
        x = envelope_outside_bound(f, bound, config)
        if x is not None and (best is None or x < best):
            best = x
    return None if best is None else best - 1


def phi_general(fs: FunctionSystem, n: int, box: int | None = None,
                config: WorkbenchConfig = DEFAULT_CONFIG) -> PhiResult:
    """Count distinct tuples (f_1(X),...,f_s(X)) with every component
    in Z_n^*, X ranging over [1, side]^k."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if not fs:
        raise ValueError("empty system")
    k = fs[0].arity
    required = _required_side(fs, n, config)
    if box is None:
        side = required if required is not None else _fallback_side(k, config)
    else:
        side = box
    exact = required is not None and side >= required

    if len(fs) == 1 and is_identity(fs[0]):
        gcd = math.gcd
        limit = min(side, n - 1)
        count = sum(1 for a in range(1, limit + 1) if gcd(a, n) == 1)
        return PhiResult(n, count, side, exact)

    single = len(fs) == 1
    seen: set = set()
    for point in itertools.product(range(1, side + 1), repeat=k):
        vals = []
        ok = True
        for f in fs:
            try:
                v = evaluate(f, point, config=config)
            except (DomainError, EvaluationError, EvaluationBudgetExceeded):
                ok = False
                break
            if not (1 <= v < n and math.gcd(v, n) == 1):
                ok = False
                break
            vals.append(v)
        if ok:
            seen.add(vals[0] if single else tuple(vals))
    return PhiResult(n, len(seen), side, exact)


def _distinct_values(f: NtFunction, x: int,
                     config: WorkbenchConfig) -> tuple[set[int], bool]:
    """Distinct values of f in (1, x]; flag says the box provably
    covers every attainable one."""
    if is_identity(f):
        return set(range(2, x + 1)), True
    env = envelope_outside_bound(f, x + 1, config)
    if env is not None:
        side, complete = env - 1, True
    else:
        side, complete = _fallback_side(f.arity, config), False
    values: set[int] = set()
    for point in itertools.product(range(1, side + 1), repeat=f.arity):
        try:
            v = evaluate(f, point, config=config)
        except (DomainError, EvaluationError, EvaluationBudgetExceeded):
            continue
        if 1 < v <= x:
            values.add(v)
    return values, complete


def _supports(values: list[int],
              config: WorkbenchConfig) -> dict[int, frozenset[int]]:
    out = {}
    top = max(values)
    table = smallest_factor_table(top) if top <= 10**6 else None
    for v in values:
        if table is not None:
            pairs = factor_with_table(v, table)
        else:
            pairs = factorize(v, config).factors
        out[v] = frozenset(p for p, _ in pairs)
    return out


def _dominance_reduce(values: list[int],
                      supp: dict[int, frozenset[int]]) -> list[int]:
    """Drop v whenever some kept u has supp(u) included in supp(v):
    any coprime set using v can swap in u, so the maximum survives."""
    order = sorted(values, key=lambda v: (len(supp[v]), v))
    kept: list[int] = []
    for v in order:
        sv = supp[v]
        if not any(supp[u] <= sv for u in kept):
            kept.append(v)
    return sorted(kept)


def _greedy_pack(values: list[int],
                 supp: dict[int, frozenset[int]]) -> list[int]:
    used: set[int] = set()
    chosen = []
    for v in values:
        if used.isdisjoint(supp[v]):
            chosen.append(v)
            used.update(supp[v])
    return chosen


def pi_general_exact(f: NtFunction, x: int, cap: int | None = 64,
                     config: WorkbenchConfig = DEFAULT_CONFIG) -> PiResult:
    """True maximum pairwise-coprime subset of the values of f in
    (1, x], via branch and bound over prime supports."""
    values, complete = _distinct_values(f, x, config)
    if not values:
        return PiResult(x, 0, "exact", (), complete)
    if cap is not None and len(values) > cap:
        raise CapExceeded(
            f"{len(values)} distinct values exceed cap {cap}; "
            "use pi_general_greedy or raise the cap")
    vlist = sorted(values)
    supp = _supports(vlist, config)
    ground = _dominance_reduce(vlist, supp)

    best_set = _greedy_pack(ground, supp)
    best = len(best_set)

    n = len(ground)
    suffix: list[frozenset[int]] = [frozenset()] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] | supp[ground[i]]

    def walk(i: int, used: frozenset[int], cur: list[int]) -> None:
        nonlocal best, best_set
        if len(cur) > best:
            best, best_set = len(cur), list(cur)
        if i == n:
            return
        if len(cur) + min(n - i, len(suffix[i] - used)) <= best:
            return
        s = supp[ground[i]]
        if used.isdisjoint(s):
            cur.append(ground[i])
            walk(i + 1, used | s, cur)
            cur.pop()
        walk(i + 1, used, cur)

    walk(0, frozenset(), [])
    return PiResult(x, best, "exact", tuple(sorted(best_set)), complete)


def pi_general_greedy(f: NtFunction, x: int,
                      config: WorkbenchConfig = DEFAULT_CONFIG) -> PiResult:
    """Smallest-value-first coprime packing; a lower bound for the
    exact maximum, usable past the exact solver's cap."""
    values, complete = _distinct_values(f, x, config)
    if not values:
        return PiResult(x, 0, "greedy-lower-bound", (), complete)
    vlist = sorted(values)
    supp = _supports(vlist, config)
    chosen = _greedy_pack(vlist, supp)
    return PiResult(x, len(chosen), "greedy-lower-bound", tuple(chosen),
                    complete)


def implication_check(f: NtFunction, m_range: tuple[int, int],
                      config: WorkbenchConfig = DEFAULT_CONFIG) -> list[dict]:
    """Whenever Pi_f(m) > omega(m), some value of f must sit in Z_m^*.

    Returns violating m (expected none: this is a theorem, so an entry
    means an implementation bug)."""
    lo, hi = m_range
    if lo < 2 or hi < lo:
        raise ValueError("bad range")
    spf = smallest_factor_table(hi)
    violations = []
    for m in range(lo, hi + 1):
        pi = pi_general_exact(f, m, cap=None, config=config)
        omega_m = len(factor_with_table(m, spf))
        if pi.value <= omega_m:
            continue
        verdict = find_value_witness(f, m, "Zm", horizon=10**4, config=config)
        if verdict.status is not Status.HOLDS:
            violations.append({
                "m": m,
                "pi": pi.value,
                "omega": omega_m,
                "zm_witness_status": verdict.status.name,
            })
    return violations
