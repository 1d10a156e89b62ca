"""Truncated Taylor expansion of lambda-plus terms and approximants.

The support of T(M) is built by size, one constructor at a time, with
monomials of every width that fits; bottom contributes nothing. Each s in
the support has coefficient 1/m(s).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .lambda_oplus import bohm_approx, step_L
from .perm import stabilizer
from .resource import multiplicity, normal_form, step_L_res
from .sums import FormalSum
from .terms import (
    APP, BOT, BVAR, FVAR, INL, INR, LAM, PLUS, is_term, lam_prefix, lams,
    spine, unshift, unspine,
)


@lru_cache(maxsize=4096)
def _buckets(m, b: int) -> tuple:
    """Support elements of T(m) grouped by size: result[k] lists size k, sorted."""
    out = [[] for _ in range(b + 1)]
    if b < 1:
        return tuple(tuple(x) for x in out)
    tag = m[0]
    if tag in (FVAR, BVAR):
        out[1].append(m)
    elif tag == LAM:
        for k, items in enumerate(_buckets(m[1], b - 1)):
            out[k + 1].extend((LAM, s) for s in items)
    elif tag == PLUS:
        for k, items in enumerate(_buckets(m[1], b - 1)):
            out[k + 1].extend((INL, s) for s in items)
        for k, items in enumerate(_buckets(m[2], b - 1)):
            out[k + 1].extend((INR, s) for s in items)
    elif tag == APP and b >= 2:
        funs = _buckets(m[1], b - 1)
        monos = _monomials(m[2], b - 2)
        for kf, fs in enumerate(funs):
            for km in range(0, b - kf):
                for s in fs:
                    for t in monos[km]:
                        out[1 + kf + km].append((APP, s, t))
    return tuple(tuple(sorted(x)) for x in out)


@lru_cache(maxsize=4096)
def _monomials(q, b: int) -> tuple:
    """Multisets over T(q) grouped by total size, up to b (width 0 included)."""
    items = [(s, k) for k, group in enumerate(_buckets(q, b)) for s in group]
    items.sort()
    out = [[] for _ in range(max(b, 0) + 1)]
    cur: list = []

    def go(start: int, room: int, total: int):
        out[total].append(tuple(cur))
        for i in range(start, len(items)):
            s, k = items[i]
            if k <= room:
                cur.append(s)
                go(i, room - k, total + k)
                cur.pop()

    if b >= 0:
        go(0, b, 0)
    return tuple(tuple(x) for x in out)


def taylor_support(m, b: int) -> frozenset:
    """{s in T(m) : size(s) <= b}."""
    return frozenset(s for group in _buckets(m, b) for s in group)


def taylor_support_sorted(m, b: int) -> list:
    return sorted(taylor_support(m, b))


def in_taylor_support(m, s) -> bool:
    """Decide s in T(m) by structural recursion (no size bound)."""
    tag = m[0]
    if tag == BOT:
        return False
    if tag in (FVAR, BVAR):
        return s == m
    if tag == LAM:
        return s[0] == LAM and in_taylor_support(m[1], s[1])
    if tag == PLUS:
        if s[0] == INL:
            return in_taylor_support(m[1], s[1])
        if s[0] == INR:
            return in_taylor_support(m[2], s[1])
        return False
    if s[0] != APP:
        return False
    return in_taylor_support(m[1], s[1]) and all(in_taylor_support(m[2], t) for t in s[2])


def taylor_coeff(m, s) -> Fraction:
    """1/m(s) on the support of T(m), 0 elsewhere."""
    if is_term(s) and in_taylor_support(m, s):
        return Fraction(1, multiplicity(s))
    return Fraction(0)


def promotion_coeff(base, s: tuple) -> Fraction:
    """Coefficient of the monomial s in the promotion of base.

    Product of base coefficients along s, divided by the order of the
    stabilizer of s under the symmetric group (counted element by element).
    """
    c = Fraction(1)
    for t in s:
        c *= base[t]
        if c == 0:
            return c
    return c / len(stabilizer(s))


def taylor_coeff_direct(m, s) -> Fraction:
    """Coefficient of s in T(m) by the clause-by-clause recursion."""
    tag = m[0]
    if tag == BOT:
        return Fraction(0)
    if tag in (FVAR, BVAR):
        return Fraction(int(s == m))
    if tag == LAM:
        return taylor_coeff_direct(m[1], s[1]) if s[0] == LAM else Fraction(0)
    if tag == PLUS:
        if s[0] == INL:
            return taylor_coeff_direct(m[1], s[1])
        if s[0] == INR:
            return taylor_coeff_direct(m[2], s[1])
        return Fraction(0)
    if s[0] != APP:
        return Fraction(0)
    c = taylor_coeff_direct(m[1], s[1])
    if c == 0:
        return c
    base = FormalSum({t: taylor_coeff_direct(m[2], t) for t in set(s[2])})
    return c * promotion_coeff(base, s[2])


@dataclass(frozen=True)
class TaylorSlice:
    source: tuple
    budget: int
    entries: FormalSum


def taylor_slice(m, b: int) -> TaylorSlice:
    entries = FormalSum({s: Fraction(1, multiplicity(s)) for s in taylor_support(m, b)})
    return TaylorSlice(m, b, entries)


def taysup_bt(m, depth: int, b: int) -> frozenset:
    """Support of T(eBT(L^depth m)) within the budget."""
    return taylor_support(bohm_approx(m, depth), b)


def in_taysup_bt(m, depth: int, s) -> bool:
    return in_taylor_support(bohm_approx(m, depth), s)


def nf_taylor(m, b: int) -> FormalSum:
    """Normal form of the truncated expansion: sum of NF(s)/m(s)."""
    out = FormalSum()
    for s in sorted(taylor_support(m, b)):
        out = out + normal_form(s).scale(Fraction(1, multiplicity(s)))
    return out


# ----------------------------------------------------- preimages under L

def _desubst(p, n, v, d: int):
    """Split v in T(p[n/y]) (y bound as index d in p) into (u, w).

    u is in T(p) and w lists the elements of T(n) sitting at the occurrences
    of y, so that v appears in the substitution of w into u. None if v has
    the wrong shape.
    """
    tag = p[0]
    if tag == BVAR:
        if p[1] == d:
            w = unshift(v, d)
            return None if w is None else ((BVAR, d), [w])
        want = p if p[1] < d else (BVAR, p[1] - 1)
        return (p, []) if v == want else None
    if tag == FVAR:
        return (p, []) if v == p else None
    if tag == BOT:
        return None
    if tag == LAM:
        if v[0] != LAM:
            return None
        r = _desubst(p[1], n, v[1], d + 1)
        return None if r is None else ((LAM, r[0]), r[1])
    if tag == PLUS:
        if v[0] not in (INL, INR):
            return None
        r = _desubst(p[1] if v[0] == INL else p[2], n, v[1], d)
        return None if r is None else ((v[0], r[0]), r[1])
    if v[0] != APP:
        return None
    rf = _desubst(p[1], n, v[1], d)
    if rf is None:
        return None
    us, ws = [], list(rf[1])
    for t in v[2]:
        r = _desubst(p[2], n, t, d)
        if r is None:
            return None
        us.append(r[0])
        ws.extend(r[1])
    return (APP, rf[0], tuple(sorted(us))), ws


def _strip_lams(t, k: int):
    for _ in range(k):
        if t[0] != LAM:
            return None
        t = t[1]
    return t


def _peel(t, n: int):
    rest = []
    for _ in range(n):
        if t[0] != APP:
            return None, None
        rest.append(t[2])
        t = t[1]
    rest.reverse()
    return t, rest


def _preimage(m, t):
    if m[0] == PLUS:
        if t[0] not in (INL, INR):
            return None
        s = _preimage(m[1] if t[0] == INL else m[2], t[1])
        return None if s is None else (t[0], s)
    k, body = lam_prefix(m)
    if body[0] == PLUS:
        tb = _strip_lams(t, k - 1)
        if tb is None or tb[0] not in (INL, INR) or tb[1][0] != LAM:
            return None
        return lams(k, (tb[0], tb[1][1]))
    tb = _strip_lams(t, k)
    if tb is None:
        return None
    head, args = spine(body)
    thead, targs = spine(tb)
    if not args:
        return t
    if head[0] == PLUS:
        # t = lams . <inl <s> r> q2 ... ; preimage lams . <<inl s> r> q2 ...
        if len(targs) != len(args) - 1 or thead[0] not in (INL, INR) or thead[1][0] != APP:
            return None
        inner = thead[1]
        new = (APP, (thead[0], inner[1]), inner[2])
        return lams(k, unspine(new, targs))
    if head[0] == LAM:
        # the contracted redex may itself be an application: peel only the
        # arguments that followed it
        inner, rest = _peel(tb, len(args) - 1)
        if inner is None:
            return None
        r = _desubst(head[1], args[0], inner, 0)
        if r is None:
            return None
        u, w = r
        new = (APP, (LAM, u), tuple(sorted(w)))
        return lams(k, unspine(new, rest))
    if len(targs) != len(args) or thead != head:
        return None
    new_args = []
    for q, mono_ in zip(args, targs):
        elems = []
        for x in mono_:
            s = _preimage(q, x)
            if s is None:
                return None
            elems.append(s)
        new_args.append(tuple(sorted(elems)))
    return lams(k, unspine(head, new_args))


def l_preimage(m, t):
    """Some s in T(m) with t in supp(L(s)), or None if t is not in T(L(m)).

    The candidate is rebuilt from the shape of m and then verified, so a
    returned s is always a genuine preimage.
    """
    s = _preimage(m, t)
    if s is None or not in_taylor_support(m, s):
        return None
    if t not in step_L_res(s):
        return None
    return s


def l_preimage_chain(m, t, depth: int):
    """s in T(m) with t in supp(L^depth(s)), by repeated one-step preimages."""
    terms = [m]
    for _ in range(depth):
        terms.append(step_L(terms[-1]))
    cur = t
    for i in range(depth - 1, -1, -1):
        cur = l_preimage(terms[i], cur)
        if cur is None:
            return None
    return cur


def preimage_budget(b: int, depth: int = 1) -> int:
    for _ in range(depth):
        b = 4 * b + 4
    return b


__all__ = [
    "taylor_support", "in_taylor_support", "taylor_coeff", "taylor_coeff_direct",
    "promotion_coeff", "TaylorSlice", "taylor_slice", "taysup_bt", "in_taysup_bt",
    "nf_taylor", "l_preimage", "l_preimage_chain", "preimage_budget",
]
