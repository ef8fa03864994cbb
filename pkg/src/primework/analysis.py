"""Structural analysis of parsed functions.

Classification into polynomial normal form, fixed divisors via finite
grids, monotonicity traits, and the envelope bounds that let bounded
scans close conclusively: once every later value provably falls
outside [1, m-1], an empty scan is a proof rather than a shrug.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import DEFAULT_CONFIG, WorkbenchConfig
from .errors import EvaluationBudgetExceeded, NotPolynomial, NotUnivariatePolynomial
from .expr import (Add, Const, Floor, Mul, Neg, NtFunction, Node, Piecewise,
                   Pow, Sub, Var, _max_var, evaluate)

# --- polynomial normal form ---------------------------------------------

def _nf_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
        if out[k] == 0:
            del out[k]
    return out


def _nf_scale(a: dict, c: int) -> dict:
    return {k: v * c for k, v in a.items() if v * c != 0}


def _nf_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, 0) + va * vb
            if out[k] == 0:
                del out[k]
    return out


def _normal_form(node: Node, arity: int) -> dict | None:
    """Monomial dict {exponent tuple: coefficient} or None if the node
    is not polynomial (variable exponents, floors, piecewise)."""
    zero = (0,) * arity
    if isinstance(node, Const):
        return {zero: node.value} if node.value else {}
    if isinstance(node, Var):
        key = tuple(1 if i == node.index - 1 else 0 for i in range(arity))
        return {key: 1}
    if isinstance(node, (Add, Sub)):
        left = _normal_form(node.left, arity)
        right = _normal_form(node.right, arity)
        if left is None or right is None:
            return None
        return _nf_add(left, right if isinstance(node, Add) else _nf_scale(right, -1))
    if isinstance(node, Neg):
        inner = _normal_form(node.operand, arity)
        return None if inner is None else _nf_scale(inner, -1)
    if isinstance(node, Mul):
        left = _normal_form(node.left, arity)
        right = _normal_form(node.right, arity)
        if left is None or right is None:
            return None
        return _nf_mul(left, right)
    if isinstance(node, Pow):
        if not isinstance(node.exponent, Const) or node.exponent.value < 0:
            return None
        base = _normal_form(node.base, arity)
        if base is None:
            return None
        out = {zero: 1}
        for _ in range(node.exponent.value):
            out = _nf_mul(out, base)
        return out
    return None  # Floor, Piecewise


def poly_normal_form(f: NtFunction) -> dict | None:
    return _normal_form(f.body, f.arity)


@dataclass(frozen=True)
class FunctionProfile:
    arity: int
    is_polynomial: bool
    total_degree: int | None = None
    var_degrees: tuple[int, ...] | None = None
    # univariate nonzero polynomials only
    leading_coefficient: int | None = None
    fixed_divisor: int | None = None
    monomials: tuple[tuple[tuple[int, ...], int], ...] | None = None


def classify(f: NtFunction, config: WorkbenchConfig = DEFAULT_CONFIG) -> FunctionProfile:
    """Shape report; fixed_divisor is filled exactly when polynomial."""
    nf = poly_normal_form(f)
    if nf is None:
        return FunctionProfile(arity=f.arity, is_polynomial=False)
    if not nf:
        return FunctionProfile(arity=f.arity, is_polynomial=True, total_degree=0,
                               var_degrees=(0,) * f.arity, leading_coefficient=None,
                               fixed_divisor=0, monomials=())
    total = max(sum(k) for k in nf)
    var_deg = tuple(max(k[i] for k in nf) for i in range(f.arity))
    leading = nf[max(nf, key=lambda k: k[0])] if f.arity == 1 else None
    fd = _fixed_divisor_from_grid(f, var_deg, config)
    return FunctionProfile(arity=f.arity, is_polynomial=True, total_degree=total,
                           var_degrees=var_deg, leading_coefficient=leading,
                           fixed_divisor=fd,
                           monomials=tuple(sorted(nf.items())))


def _fixed_divisor_from_grid(f: NtFunction, var_deg: tuple[int, ...],
                             config: WorkbenchConfig) -> int:
    # gcd over the grid [0,d1] x ... x [0,dk] pins down gcd over all of Z^k
    # (finite differences with integer binomial weights)
    g = 0
    def rec(point: list[int], i: int):
        nonlocal g
        if i == len(var_deg):
            v = evaluate(f, tuple(point), allow_zero=True, config=config)
            g = math.gcd(g, v)
            return
        for t in range(var_deg[i] + 1):
            point.append(t)
            rec(point, i + 1)
            point.pop()
            if g == 1:
                return
    rec([], 0)
    return g


def fixed_divisor(f: NtFunction, profile: FunctionProfile | None = None,
                  config: WorkbenchConfig = DEFAULT_CONFIG) -> int:
    """gcd of all values of a polynomial over integer points."""
    if profile is None:
        profile = classify(f, config)
    if not profile.is_polynomial:
        raise NotPolynomial("fixed divisor is defined for polynomials only")
    assert profile.fixed_divisor is not None
    return profile.fixed_divisor


def univariate_coeffs(f: NtFunction) -> list[int]:
    """Dense coefficient list (constant first) of a univariate polynomial."""
    if f.arity != 1:
        raise NotUnivariatePolynomial(f"arity {f.arity}")
    nf = poly_normal_form(f)
    if nf is None:
        raise NotUnivariatePolynomial("not a polynomial")
    if not nf:
        return [0]
    deg = max(k[0] for k in nf)
    out = [0] * (deg + 1)
    for k, c in nf.items():
        out[k[0]] = c
    return out


# --- monotonicity traits -------------------------------------------------

@dataclass(frozen=True)
class Traits:
    nonneg: bool          # value >= 0 on the whole domain (components >= 1)
    ge1: bool             # value >= 1 on the whole domain
    nondec: bool          # nondecreasing in every variable
    unbounded: frozenset  # variables that individually drive the value to infinity


_NO_VARS = frozenset()
_BOTTOM = Traits(False, False, False, _NO_VARS)


def _is_const_subtree(node: Node) -> bool:
    return _max_var(node) == 0


def traits(node: Node) -> Traits:
    """Conservative structural traits; any False just means unproven."""
    if isinstance(node, Const):
        return Traits(node.value >= 0, node.value >= 1, True, _NO_VARS)
    if isinstance(node, Var):
        return Traits(True, True, True, frozenset({node.index}))
    if isinstance(node, Add):
        a, b = traits(node.left), traits(node.right)
        nondec = a.nondec and b.nondec
        return Traits(a.nonneg and b.nonneg,
                      (a.ge1 and b.nonneg) or (a.nonneg and b.ge1),
                      nondec,
                      (a.unbounded | b.unbounded) if nondec else _NO_VARS)
    if isinstance(node, Sub):
        if _is_const_subtree(node.right):
            a = traits(node.left)
            return Traits(False, False, a.nondec, a.unbounded if a.nondec else _NO_VARS)
        return _BOTTOM
    if isinstance(node, Mul):
        a, b = traits(node.left), traits(node.right)
        nondec = a.nondec and b.nondec and a.nonneg and b.nonneg
        unb = _NO_VARS
        if nondec:
            unb = frozenset(v for v in a.unbounded | b.unbounded
                            if (v in a.unbounded and b.ge1) or (v in b.unbounded and a.ge1))
        return Traits(a.nonneg and b.nonneg, a.ge1 and b.ge1, nondec, unb)
    if isinstance(node, Pow):
        b = traits(node.base)
        if isinstance(node.exponent, Const):
            c = node.exponent.value
            if c == 0:
                return Traits(True, True, True, _NO_VARS)
            if c < 0:
                return _BOTTOM
            nondec = b.nondec and b.nonneg
            return Traits(b.nonneg, b.ge1, nondec,
                          b.unbounded if (nondec and b.nonneg) else _NO_VARS)
        e = traits(node.exponent)
        if isinstance(node.base, Const):
            base = node.base.value
            if base >= 2:
                return Traits(True, True, e.nondec, e.unbounded if e.nondec else _NO_VARS)
            if base == 1:
                return Traits(True, True, True, _NO_VARS)
            return _BOTTOM
        # variable base with variable exponent: only mild guarantees
        nondec = b.nondec and e.nondec and b.ge1
        return Traits(b.ge1, b.ge1, nondec,
                      b.unbounded if (nondec and e.ge1) else _NO_VARS)
    if isinstance(node, Floor):
        a = traits(node.numerator)
        return Traits(a.nonneg, False, a.nondec, a.unbounded if a.nondec else _NO_VARS)
    if isinstance(node, Neg):
        return _BOTTOM
    if isinstance(node, Piecewise):
        return _BOTTOM
    raise TypeError(f"not a node: {node!r}")


# --- envelope bounds -----------------------------------------------------

def _cauchy_outside(coeffs: list[int], m: int) -> int:
    """Least X with every integer x >= X outside [1, m-1] for the given
    univariate polynomial (nonconstant)."""
    d = len(coeffs) - 1
    lead = coeffs[d]
    bound = 0.0
    for shift in (1, m - 1):
        shifted0 = coeffs[0] - shift
        top = max([abs(c) for c in coeffs[1:d]] + [abs(shifted0)], default=0)
        bound = max(bound, 1.0 + top / abs(lead))
    return int(bound) + 1


def _ge_probe(f: NtFunction, point: tuple[int, ...], m: int, nonneg: bool,
              config: WorkbenchConfig) -> bool:
    """Is f(point) >= m?  Uses a bit-length shortcut for huge values."""
    probe_budget = m.bit_length() + 16
    try:
        return evaluate(f, point, config=config.with_overrides(bit_budget=probe_budget)) >= m
    except EvaluationBudgetExceeded:
        if nonneg:
            return True  # nonnegative and far more bits than m
        return evaluate(f, point, config=config) >= m


def _axis_threshold(f: NtFunction, axis: int, m: int, nonneg: bool,
                    config: WorkbenchConfig) -> int | None:
    """Least t with f(1,..,t,..,1) >= m along one axis, by doubling then
    bisection.  None if not reached by 2**62."""
    def at(t: int) -> tuple[int, ...]:
        return tuple(t if i == axis else 1 for i in range(f.arity))
    if _ge_probe(f, at(1), m, nonneg, config):
        return 1
    hi = 2
    while hi < 2**62:
        if _ge_probe(f, at(hi), m, nonneg, config):
            break
        hi *= 2
    else:
        return None
    lo = hi // 2  # f(lo) < m <= f(hi)
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if _ge_probe(f, at(mid), m, nonneg, config):
            hi = mid
        else:
            lo = mid
    return hi


def envelope_outside_bound(f: NtFunction, m: int,
                           config: WorkbenchConfig = DEFAULT_CONFIG) -> int | None:
    """A bound X such that any point with some coordinate >= X has
    f(point) outside [1, m-1].  None when no certificate applies.

    With such an X, exhausting the box [1, X)^k turns an empty scan
    into a proof that no value of f lies in Z_m^*.
    """
    if m < 2:
        return 1
    body = f.body
    # monotone route first: bisection gives tight bounds
    t = traits(body)
    if t.nondec and t.unbounded == frozenset(range(1, f.arity + 1)):
        worst = 1
        for axis in range(f.arity):
            th = _axis_threshold(f, axis, m, t.nonneg, config)
            if th is None:
                break
            worst = max(worst, th)
        else:
            return worst
    if isinstance(body, Piecewise) and f.arity == 1:
        tail = NtFunction(1, body.default)
        tail_bound = envelope_outside_bound(tail, m, config)
        if tail_bound is None:
            return None
        return max(body.branches[-1][0] + 1, tail_bound)
    nf = poly_normal_form(f)
    if nf is not None:
        if not nf or max(sum(k) for k in nf) == 0:
            v = nf.get((0,) * f.arity, 0)
            return 1 if not 1 <= v <= m - 1 else None
        if f.arity == 1:
            return _cauchy_outside(univariate_coeffs(f), m)
    return None


def exceeds_one_from(f: NtFunction,
                     config: WorkbenchConfig = DEFAULT_CONFIG) -> tuple[int, bool] | None:
    """For univariate f: (X, True) when f(x) > 1 for all x >= X, or
    (X, False) when f(x) < 1 for all x >= X.  None if undetermined."""
    if f.arity != 1:
        return None
    nf = poly_normal_form(f)
    if nf is not None and nf and max(k[0] for k in nf) > 0:
        coeffs = univariate_coeffs(f)
        X = _cauchy_outside(coeffs, 2)  # outside [1,1] means <1 or >=2
        return X, coeffs[-1] > 0
    if nf is not None:  # constant polynomial
        v = nf.get((0,), 0)
        return 1, v > 1
    body = f.body
    if isinstance(body, Piecewise):
        tail = exceeds_one_from(NtFunction(1, body.default), config)
        if tail is None:
            return None
        return max(body.branches[-1][0] + 1, tail[0]), tail[1]
    t = traits(body)
    if t.nondec and 1 in t.unbounded:
        th = _axis_threshold(f, 0, 2, t.nonneg, config)
        if th is not None:
            return th, True
    return None


# --- scan order ----------------------------------------------------------

def _shell(k: int, n: int, prefix: tuple = (), has_n: bool = False):
    if len(prefix) == k:
        if has_n:
            yield prefix
        return
    last = len(prefix) == k - 1
    for v in range(1, n + 1):
        if v == n:
            yield from _shell(k, n, prefix + (v,), True)
        elif has_n or not last:
            yield from _shell(k, n, prefix + (v,), has_n)


def iter_points(k: int, limit: int):
    """Points of N^k with components in [1, limit], ordered by max-norm
    with lexicographic tie-break.  This is the workbench scan order."""
    if k == 1:
        for n in range(1, limit + 1):
            yield (n,)
        return
    for n in range(1, limit + 1):
        yield from _shell(k, n)


# --- shape detection -----------------------------------------------------

def is_identity(f: NtFunction) -> bool:
    return isinstance(f.body, Var) and f.body.index == 1


def exp_linear_shape(f: NtFunction) -> tuple[int, int, int] | None:
    """Match c1 * b^x + c0 with constant b >= 2; returns (c1, b, c0)."""
    if f.arity != 1:
        return None
    out = _collect_exp_linear(f.body)
    if out is None:
        return None
    c1, b, c0 = out
    if b is None or c1 == 0 or b < 2:
        return None
    return c1, b, c0


def _collect_exp_linear(node: Node):
    if isinstance(node, Const):
        return 0, None, node.value
    if (isinstance(node, Pow) and isinstance(node.base, Const)
            and isinstance(node.exponent, Var)):
        return 1, node.base.value, 0
    if isinstance(node, (Add, Sub)):
        left = _collect_exp_linear(node.left)
        right = _collect_exp_linear(node.right)
        if left is None or right is None:
            return None
        sign = 1 if isinstance(node, Add) else -1
        c1a, ba, c0a = left
        c1b, bb, c0b = right
        if ba is not None and bb is not None and ba != bb:
            return None
        return c1a + sign * c1b, ba if ba is not None else bb, c0a + sign * c0b
    if isinstance(node, Neg):
        inner = _collect_exp_linear(node.operand)
        if inner is None:
            return None
        return -inner[0], inner[1], -inner[2]
    if isinstance(node, Mul):
        for const_side, term_side in ((node.left, node.right), (node.right, node.left)):
            if isinstance(const_side, Const):
                inner = _collect_exp_linear(term_side)
                if inner is not None:
                    c = const_side.value
                    return inner[0] * c, inner[1], inner[2] * c
        return None
    return None


def is_mersenne_shape(f: NtFunction) -> bool:
    """True for 2^x - 1."""
    return exp_linear_shape(f) == (1, 2, -1)


def is_fermat_shape(f: NtFunction) -> bool:
    """True for 2^(2^x) + 1."""
    body = f.body
    if f.arity != 1 or not isinstance(body, Add):
        return False
    head, one = body.left, body.right
    if not (isinstance(one, Const) and one.value == 1):
        return False
    return (isinstance(head, Pow) and isinstance(head.base, Const)
            and head.base.value == 2 and isinstance(head.exponent, Pow)
            and isinstance(head.exponent.base, Const) and head.exponent.base.value == 2
            and isinstance(head.exponent.exponent, Var))


# --- compiled evaluation -------------------------------------------------

def _codegen(node: Node) -> str:
    if isinstance(node, Const):
        return repr(node.value)
    if isinstance(node, Var):
        return f"a{node.index}"
    if isinstance(node, Add):
        return f"({_codegen(node.left)} + {_codegen(node.right)})"
    if isinstance(node, Sub):
        return f"({_codegen(node.left)} - {_codegen(node.right)})"
    if isinstance(node, Neg):
        return f"(-{_codegen(node.operand)})"
    if isinstance(node, Mul):
        return f"({_codegen(node.left)} * {_codegen(node.right)})"
    if isinstance(node, Pow):
        return f"({_codegen(node.base)} ** {_codegen(node.exponent)})"
    if isinstance(node, Floor):
        return f"({_codegen(node.numerator)} // {node.divisor})"
    if isinstance(node, Piecewise):
        out = _codegen(node.default)
        for bound, body in reversed(node.branches):
            out = f"({_codegen(body)} if a{node.var} <= {bound} else {out})"
        return out
    raise TypeError(f"not a node: {node!r}")


def compile_plain(f: NtFunction):
    """Compile to a raw Python callable on positional args.

    No domain or budget checks; callers must keep scans bounded (values
    grow however the expression says).  Used for hot loops only.
    """
    args = ", ".join(f"a{i}" for i in range(1, f.arity + 1))
    return eval(f"lambda {args}: {_codegen(f.body)}", {"__builtins__": {}})
