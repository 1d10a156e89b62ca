"""Rigid resource terms: argument lists keep their order.

Rigid expressions share the tuple encoding of resource expressions, only
monomials are not sorted. ZERO is the absorbing result of an ill-matched
substitution.
"""

from __future__ import annotations

from itertools import permutations, product

from .resource import coherent, is_normal
from .terms import APP, BVAR, FVAR, INJ, LAM, is_term, lam_prefix, lams, shift, spine, unspine


class _Zero:
    __slots__ = ()

    def __repr__(self) -> str:
        return "ZERO"

    def __reduce__(self):
        return "ZERO"


ZERO = _Zero()


def readback(r):
    """The resource expression represented by r (sort every list)."""
    if r is ZERO:
        raise ValueError("ZERO has no readback")
    if not is_term(r):
        return tuple(sorted(readback(t) for t in r))
    tag = r[0]
    if tag in (FVAR, BVAR):
        return r
    if tag == APP:
        return (APP, readback(r[1]), readback(r[2]))
    return (tag, readback(r[1]))


def _distinct_orders(items: tuple) -> list:
    return sorted(set(permutations(items)))


def enumerate_rigids(e) -> list:
    """Every rigid r with readback(r) == e, without repetition, sorted."""
    if not is_term(e):
        reps = {t: enumerate_rigids(t) for t in set(e)}
        out = set()
        for order in _distinct_orders(tuple(e)):
            for choice in product(*(reps[t] for t in order)):
                out.add(tuple(choice))
        return sorted(out)
    tag = e[0]
    if tag in (FVAR, BVAR):
        return [e]
    if tag == APP:
        return [(APP, f, a) for f in enumerate_rigids(e[1]) for a in enumerate_rigids(e[2])]
    return [(tag, b) for b in enumerate_rigids(e[1])]


def canonical_rigid(e):
    """The representative that keeps every sorted monomial in its stored order."""
    return e


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


def _route(e, hit, drop, b: tuple, d: int):
    """Hand b out to the hit variables in pre-order, function before arguments."""
    if not is_term(e):
        out = []
        pos = 0
        for t in e:
            n = _count(t, hit, d)
            r = _route(t, hit, drop, b[pos:pos + n], d)
            if r is ZERO:
                return ZERO
            out.append(r)
            pos += n
        return tuple(out) if pos == len(b) else ZERO
    tag = e[0]
    if tag in (FVAR, BVAR):
        if hit(e, d):
            return shift(b[0], d) if len(b) == 1 else ZERO
        if b:
            return ZERO
        if drop and tag == BVAR and e[1] > d:
            return (BVAR, e[1] - 1)
        return e
    if tag == LAM:
        r = _route(e[1], hit, drop, b, d + 1)
        return ZERO if r is ZERO else (LAM, r)
    if tag in INJ:
        r = _route(e[1], hit, drop, b, d)
        return ZERO if r is ZERO else (tag, r)
    n = _count(e[1], hit, d)
    f = _route(e[1], hit, drop, b[:n], d)
    if f is ZERO:
        return ZERO
    a = _route(e[2], hit, drop, b[n:], d)
    return ZERO if a is ZERO else (APP, f, a)


def rigid_subst(r, x: str, b):
    """Positional substitution of the list b for the occurrences of x."""
    if r is ZERO or b is ZERO:
        return ZERO
    target = (FVAR, x)
    return _route(r, lambda v, d: v == target, False, tuple(b), 0)


def rigid_beta(body, b):
    return _route(body, lambda v, d: v[0] == BVAR and v[1] == d, True, tuple(b), 0)


def rigid_step_L(r):
    if r is ZERO:
        return ZERO
    if not is_term(r):
        out = []
        for t in r:
            t2 = rigid_step_L(t)
            if t2 is ZERO:
                return ZERO
            out.append(t2)
        return tuple(out)
    tag = r[0]
    if tag in INJ:
        s = rigid_step_L(r[1])
        return ZERO if s is ZERO else (tag, s)
    k, body = lam_prefix(r)
    if body[0] in INJ:
        return lams(k - 1, (body[0], (LAM, body[1])))
    head, args = spine(body)
    if args:
        if head[0] in INJ:
            return lams(k, unspine((head[0], (APP, head[1], args[0])), args[1:]))
        if head[0] == LAM:
            s = rigid_beta(head[1], args[0])
            return ZERO if s is ZERO else lams(k, unspine(s, args[1:]))
        new = []
        for a in args:
            a2 = rigid_step_L(a)
            if a2 is ZERO:
                return ZERO
            new.append(a2)
        return lams(k, unspine(head, new))
    return r


def rigid_nf(r):
    while True:
        r2 = rigid_step_L(r)
        if r2 == r:
            return r
        r = r2


def rigid_is_normal(r) -> bool:
    return r is ZERO or is_normal(r)


def rigid_coherent(r, r2) -> bool:
    if is_term(r) != is_term(r2):
        return False
    if not is_term(r):
        items = list(r) + list(r2)
        return all(rigid_coherent(a, b) for i, a in enumerate(items) for b in items[i:])
    ta, tb = r[0], r2[0]
    if ta in INJ and tb in INJ:
        return ta != tb or rigid_coherent(r[1], r2[1])
    if ta != tb:
        return False
    if ta in (FVAR, BVAR):
        return r == r2
    if ta == LAM:
        return rigid_coherent(r[1], r2[1])
    return rigid_coherent(r[1], r2[1]) and rigid_coherent(r[2], r2[2])


def isomorphic(r, r2) -> bool:
    """r and r2 are related by some permutation expression."""
    return readback(r) == readback(r2)


def coherent_readback(r, r2) -> bool:
    return coherent(readback(r), readback(r2))
