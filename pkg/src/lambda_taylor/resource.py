"""Resource calculus with sum markers.

Terms are the nameless tuples of `terms` with sorted monomials in argument
position; ('inl', s) stands for s(+)* and ('inr', s) for *(+)s. Reduction maps
an expression to a FormalSum with natural coefficients.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import factorial, prod
from collections import Counter

from .perm import weak_compositions, width_compositions
from .sums import FormalSum
from .terms import (
    APP, BVAR, FVAR, INJ, LAM, is_term, lam_prefix, lams, occurrences,
    shift, spine, unspine,
)

__all__ = [
    "occurrences", "weak_compositions", "msubst", "beta_res", "step_L_res",
    "step_L_sum", "normal_form", "is_normal", "one_step_all", "coherent",
    "is_clique", "multiplicity", "SNMeasure", "sn_measure", "lambda_count",
    "oplus_count", "oplus_weights", "MeasureError", "observe_steps",
]


# ------------------------------------------------------------ substitution

def _route(e, hit, drop: bool, u: tuple, d: int) -> dict:
    """Sum over every way of handing the elements of u to the hit variables.

    `hit(v, d)` recognises an occurrence of the substituted variable at binder
    depth d; with `drop` the variable was bound by a removed binder, so deeper
    indices shift down by one. Returns {expr: natural}.
    """
    if not is_term(e):
        widths = [_count(t, hit, d) for t in e]
        if sum(widths) != len(u):
            return {}
        out: dict = {}
        for blocks in width_compositions(widths, u):
            parts = []
            for t, blk in zip(e, blocks):
                r = _route(t, hit, drop, tuple(u[i] for i in blk), d)
                if not r:
                    break
                parts.append(r)
            else:
                for combo in product(*(p.items() for p in parts)):
                    key = tuple(sorted(c[0] for c in combo))
                    out[key] = out.get(key, 0) + prod(c[1] for c in combo)
        return out
    tag = e[0]
    if tag in (FVAR, BVAR):
        if hit(e, d):
            return {shift(u[0], d): 1} if len(u) == 1 else {}
        if u:
            return {}
        if drop and tag == BVAR and e[1] > d:
            return {(BVAR, e[1] - 1): 1}
        return {e: 1}
    if tag == LAM:
        return {(LAM, b): c for b, c in _route(e[1], hit, drop, u, d + 1).items()}
    if tag in INJ:
        return {(tag, b): c for b, c in _route(e[1], hit, drop, u, d).items()}
    # application: the function takes as many elements as it has occurrences
    f, args = e[1], e[2]
    nf = _count(f, hit, d)
    if nf + _count(args, hit, d) != len(u):
        return {}
    out = {}
    idx = range(len(u))
    for left in combinations(idx, nf):
        rest = tuple(i for i in idx if i not in left)
        rf = _route(f, hit, drop, tuple(u[i] for i in left), d)
        if not rf:
            continue
        ra = _route(args, hit, drop, tuple(u[i] for i in rest), d)
        for f2, c1 in rf.items():
            for a2, c2 in ra.items():
                key = (APP, f2, a2)
                out[key] = out.get(key, 0) + c1 * c2
    return out


def _count(e, hit, d: int) -> int:
    if not is_term(e):
        return sum(_count(t, hit, d) for t in e)
    tag = e[0]
    if tag in (FVAR, BVAR):
        return 1 if hit(e, d) else 0
    if tag == LAM:
        return _count(e[1], hit, d + 1)
    if tag in INJ:
        return _count(e[1], hit, d)
    return _count(e[1], hit, d) + _count(e[2], hit, d)


def _hit_bound(v, d):
    return v[0] == BVAR and v[1] == d


def msubst(e, x: str, u) -> FormalSum:
    """Symmetric multilinear substitution of the monomial u for the name x."""
    target = (FVAR, x)
    return FormalSum(_route(e, lambda v, d: v == target, False, tuple(u), 0))


def beta_res(body, u) -> dict:
    """Fire <lam body>u: substitute u for index 0 of body and drop the binder."""
    return _route(body, _hit_bound, True, tuple(u), 0)


# ---------------------------------------------------------------- strategy

def _mono_product(results) -> dict:
    out: dict = {}
    for combo in product(*(r.items() for r in results)):
        key = tuple(sorted(c[0] for c in combo))
        out[key] = out.get(key, 0) + prod(c[1] for c in combo)
    return out


def _L(e) -> dict:
    if not is_term(e):
        return _mono_product([_L(t) for t in e])
    tag = e[0]
    if tag in INJ:
        return {(tag, s): c for s, c in _L(e[1]).items()}
    k, body = lam_prefix(e)
    if body[0] in INJ:
        # k >= 1: the marker moves above the innermost binder
        return {lams(k - 1, (body[0], (LAM, body[1]))): 1}
    head, args = spine(body)
    if args:
        if head[0] in INJ:
            moved = (head[0], (APP, head[1], args[0]))
            return {lams(k, unspine(moved, args[1:])): 1}
        if head[0] == LAM:
            return {
                lams(k, unspine(r, args[1:])): c
                for r, c in beta_res(head[1], args[0]).items()
            }
        out: dict = {}
        for combo in product(*(_L(a).items() for a in args)):
            key = lams(k, unspine(head, [c[0] for c in combo]))
            out[key] = out.get(key, 0) + prod(c[1] for c in combo)
        return out
    return {e: 1}


_observers: list = []


@contextmanager
def observe_steps(callback):
    """Call `callback(before, after)` on every L step taken inside the block."""
    _observers.append(callback)
    try:
        yield
    finally:
        _observers.remove(callback)


def _notify(before: FormalSum, after: FormalSum) -> None:
    for f in _observers:
        f(before, after)


def step_L_res(e) -> FormalSum:
    """Hereditary head reduction of a single resource expression."""
    out = FormalSum(_L(e))
    if _observers:
        _notify(FormalSum.of(e), out)
    return out


def step_L_sum(s: FormalSum) -> FormalSum:
    out = s.map_linear(_L)
    if _observers:
        _notify(s, out)
    return out


def is_normal(e) -> bool:
    if not is_term(e):
        return all(is_normal(t) for t in e)
    tag = e[0]
    if tag in (FVAR, BVAR):
        return True
    if tag == LAM:
        return e[1][0] not in INJ and is_normal(e[1])
    if tag in INJ:
        return is_normal(e[1])
    return e[1][0] not in INJ + (LAM,) and is_normal(e[1]) and is_normal(e[2])


# ----------------------------------------------------------- the SN measure

def lambda_count(e) -> int:
    if not is_term(e):
        return sum(lambda_count(t) for t in e)
    tag = e[0]
    if tag in (FVAR, BVAR):
        return 0
    if tag == LAM:
        return 1 + lambda_count(e[1])
    if tag in INJ:
        return lambda_count(e[1])
    return lambda_count(e[1]) + lambda_count(e[2])


def oplus_count(e) -> int:
    if not is_term(e):
        return sum(oplus_count(t) for t in e)
    tag = e[0]
    if tag in (FVAR, BVAR):
        return 0
    if tag in INJ:
        return 1 + oplus_count(e[1])
    if tag == LAM:
        return oplus_count(e[1])
    return oplus_count(e[1]) + oplus_count(e[2])


def oplus_weights(e, acc: list | None = None) -> list:
    """Marker counts below every abstraction and in every function position."""
    if acc is None:
        acc = []
    if not is_term(e):
        for t in e:
            oplus_weights(t, acc)
        return acc
    tag = e[0]
    if tag == LAM:
        acc.append(oplus_count(e[1]))
        oplus_weights(e[1], acc)
    elif tag in INJ:
        oplus_weights(e[1], acc)
    elif tag == APP:
        acc.append(oplus_count(e[1]))
        oplus_weights(e[1], acc)
        oplus_weights(e[2], acc)
    return acc


@dataclass(frozen=True, order=True)
class SNMeasure:
    """Two multisets of naturals, each stored sorted in decreasing order.

    For a total order on elements, the multiset extension coincides with the
    lexicographic order of the decreasing listings, so the dataclass order is
    the lexicographic product of two multiset orders.
    """

    lambda_count: tuple
    oplus_weights: tuple


def sn_measure(s) -> SNMeasure:
    """Measure of a sum, counting each support element once."""
    if not isinstance(s, FormalSum):
        s = FormalSum.of(s)
    lam_ms = []
    opl: list = []
    for e in s.support():
        lam_ms.append(lambda_count(e))
        oplus_weights(e, opl)
    return SNMeasure(tuple(sorted(lam_ms, reverse=True)), tuple(sorted(opl, reverse=True)))


class MeasureError(AssertionError):
    pass


def normal_form(s, *, check_measure: bool = True, on_step=None) -> FormalSum:
    """Iterate step_L_sum to its fixpoint.

    With check_measure the SN measure must strictly decrease at every
    non-fixpoint step; `on_step(before, after)` sees each such step.
    """
    if not isinstance(s, FormalSum):
        s = FormalSum.of(s)
    measure = sn_measure(s) if check_measure else None
    while True:
        nxt = step_L_sum(s)
        if nxt == s:
            return s
        if check_measure:
            m2 = sn_measure(nxt)
            if not m2 < measure:
                raise MeasureError(f"measure did not decrease: {measure} -> {m2}")
            measure = m2
        if on_step is not None:
            on_step(s, nxt)
        s = nxt


def nf_steps(e) -> tuple[FormalSum, int]:
    """Normal form together with the number of strategy steps it took."""
    s = FormalSum.of(e)
    n = 0
    while True:
        nxt = step_L_sum(s)
        if nxt == s:
            return s, n
        s = nxt
        n += 1


# -------------------------------------------------------- one-step reduction

def _base_steps(e) -> list:
    """Rule instances fired at the root of a term."""
    tag = e[0]
    out = []
    if tag == APP:
        f = e[1]
        if f[0] == LAM:
            out.append(beta_res(f[1], e[2]))
        elif f[0] in INJ:
            out.append({(f[0], (APP, f[1], e[2])): 1})
    elif tag == LAM and e[1][0] in INJ:
        b = e[1]
        out.append({(b[0], (LAM, b[1])): 1})
    return out


def _steps(e) -> list:
    """All single-step reducts as dicts, outermost first, left to right."""
    if not is_term(e):
        out = []
        for i, t in enumerate(e):
            if i and t == e[i - 1]:
                continue
            rest = e[:i] + e[i + 1:]
            for r in _steps(t):
                out.append(_mono_product([r] + [{x: 1} for x in rest]))
        return out
    out = _base_steps(e)
    tag = e[0]
    if tag == LAM or tag in INJ:
        for r in _steps(e[1]):
            out.append({(tag, b): c for b, c in r.items()})
    elif tag == APP:
        for r in _steps(e[1]):
            out.append({(APP, f, e[2]): c for f, c in r.items()})
        for r in _steps(e[2]):
            out.append({(APP, e[1], a): c for a, c in r.items()})
    return out


def one_step_all(e) -> list:
    """Distinct reducts of e by one rule instance, in enumeration order."""
    seen = []
    for r in _steps(e):
        s = FormalSum(r)
        if s not in seen:
            seen.append(s)
    return seen


# --------------------------------------------------------- coherence

def coherent(e, f) -> bool:
    if is_term(e) != is_term(f):
        return False
    if not is_term(e):
        items = sorted(set(e) | set(f))
        for i, a in enumerate(items):
            for b in items[i:]:
                if not coherent(a, b):
                    return False
        return True
    te, tf = e[0], f[0]
    if te in INJ and tf in INJ:
        return te != tf or coherent(e[1], f[1])
    if te != tf:
        return False
    if te in (FVAR, BVAR):
        return e == f
    if te == LAM:
        return coherent(e[1], f[1])
    return coherent(e[1], f[1]) and coherent(e[2], f[2])


def is_clique(es) -> bool:
    es = sorted(set(es))
    return all(coherent(a, b) for i, a in enumerate(es) for b in es[i:])


def is_uniform(e) -> bool:
    return coherent(e, e)


# --------------------------------------------------------- multiplicity

@lru_cache(maxsize=200_000)
def multiplicity(e) -> int:
    if not is_term(e):
        return prod(factorial(n) * multiplicity(t) ** n for t, n in Counter(e).items())
    tag = e[0]
    if tag in (FVAR, BVAR):
        return 1
    if tag == LAM or tag in INJ:
        return multiplicity(e[1])
    return multiplicity(e[1]) * multiplicity(e[2])
