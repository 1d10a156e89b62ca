"""The nondeterministic lambda calculus with a free superposition operator.

Terms live in nameless form (see `terms`), so alpha-equivalent terms are
equal tuples. Approximants add ('bot',). The strategy `step_L` is the
hereditary head reduction. It pushes sums outwards and fires head redexes
before it recurses into the arguments of a head variable.
"""

from __future__ import annotations

from .terms import (
    APP, BOT, BOTTOM, BVAR, FVAR, LAM, PLUS, Expr, app, bvar, fvar, is_term,
    lam, lam_prefix, lams, plus, shift, spine, unspine,
)


def _subst(m: Expr, hit, repl: Expr, d: int, drop: bool) -> Expr:
    tag = m[0]
    if tag == BVAR:
        if hit(m, d):
            return shift(repl, d)
        if drop and m[1] > d:
            return (BVAR, m[1] - 1)
        return m
    if tag == FVAR:
        return shift(repl, d) if hit(m, d) else m
    if tag == BOT:
        return m
    if tag == LAM:
        return (LAM, _subst(m[1], hit, repl, d + 1, drop))
    return (tag, _subst(m[1], hit, repl, d, drop), _subst(m[2], hit, repl, d, drop))


def subst_capture_avoiding(m: Expr, x: str, n: Expr) -> Expr:
    """m[n/x] for the free name x; capture cannot happen in nameless form."""
    target = (FVAR, x)
    return _subst(m, lambda v, d: v == target, n, 0, False)


def beta(body: Expr, arg: Expr) -> Expr:
    """Contract (lam body) arg: substitute arg for index 0 and drop the binder."""
    return _subst(body, lambda v, d: v[0] == BVAR and v[1] == d, arg, 0, True)


def step_L(m: Expr) -> Expr:
    """One step of hereditary head reduction."""
    if m[0] == PLUS:
        return (PLUS, step_L(m[1]), step_L(m[2]))
    k, body = lam_prefix(m)
    if body[0] == PLUS:
        # k >= 1 here, the sum sits right under the innermost binder
        return lams(k - 1, (PLUS, (LAM, body[1]), (LAM, body[2])))
    head, args = spine(body)
    if args:
        if head[0] == PLUS:
            p = args[0]
            new = (PLUS, (APP, head[1], p), (APP, head[2], p))
            return lams(k, unspine(new, args[1:]))
        if head[0] == LAM:
            return lams(k, unspine(beta(head[1], args[0]), args[1:]))
    return lams(k, unspine(head, [step_L(a) for a in args]))


def iterate_L(m: Expr, n: int) -> Expr:
    for _ in range(n):
        m = step_L(m)
    return m


def is_normal(m: Expr) -> bool:
    """No beta-redex, no sum under an abstraction or in function position."""
    tag = m[0]
    if tag in (BVAR, FVAR, BOT):
        return True
    if tag == LAM:
        return m[1][0] != PLUS and is_normal(m[1])
    if tag == APP:
        return m[1][0] not in (LAM, PLUS) and is_normal(m[1]) and is_normal(m[2])
    return is_normal(m[1]) and is_normal(m[2])


def ebt(m: Expr) -> Expr:
    """Elementary Bohm tree: the stable head-normal part of m."""
    if m[0] == PLUS:
        return (PLUS, ebt(m[1]), ebt(m[2]))
    k, body = lam_prefix(m)
    head, args = spine(body)
    if head[0] in (BVAR, FVAR):
        return lams(k, unspine(head, [ebt(a) for a in args]))
    return BOTTOM


def is_elementary(a: Expr) -> bool:
    """Membership in the grammar  bot | lam* x N... | N + N."""
    if a == BOTTOM:
        return True
    if a[0] == PLUS:
        return is_elementary(a[1]) and is_elementary(a[2])
    _, body = lam_prefix(a)
    head, args = spine(body)
    return head[0] in (BVAR, FVAR) and all(is_elementary(q) for q in args)


def elementary(a: Expr) -> Expr:
    """Return a unchanged after checking it is an elementary Bohm tree."""
    if not is_elementary(a):
        raise ValueError("not an elementary Bohm tree")
    return a


def approx_le(a: Expr, b: Expr) -> bool:
    if a == BOTTOM:
        return True
    if a[0] != b[0]:
        return False
    tag = a[0]
    if tag in (BVAR, FVAR):
        return a == b
    if tag == LAM:
        return approx_le(a[1], b[1])
    return approx_le(a[1], b[1]) and approx_le(a[2], b[2])


def bohm_approx(m: Expr, n: int) -> Expr:
    if n < 0:
        raise ValueError("depth must be nonnegative")
    return ebt(iterate_L(m, n))


def is_approximant(m) -> bool:
    return is_term(m) and _well_formed(m, 0)


def _well_formed(m, d) -> bool:
    tag = m[0]
    if tag == BVAR:
        return 0 <= m[1] < d
    if tag in (FVAR, BOT):
        return True
    if tag == LAM:
        return _well_formed(m[1], d + 1)
    if tag in (APP, PLUS):
        return is_term(m[1]) and is_term(m[2]) and _well_formed(m[1], d) and _well_formed(m[2], d)
    return False


I = lam(bvar(0))
K = lam(lam(bvar(1)))
DELTA = lam(app(bvar(0), bvar(0)))
OMEGA = app(DELTA, DELTA)
_TURING = lam(lam(app(bvar(0), app(app(bvar(1), bvar(1)), bvar(0)))))
THETA = app(_TURING, _TURING)

PRELUDE = {
    "I": I,
    "K": K,
    "Δ": DELTA,
    "Delta": DELTA,
    "Ω": OMEGA,
    "Omega": OMEGA,
    "Θ": THETA,
    "Theta": THETA,
}

__all__ = [
    "subst_capture_avoiding", "beta", "step_L", "iterate_L", "is_normal", "ebt",
    "is_elementary", "elementary", "approx_le", "bohm_approx", "I", "K", "DELTA",
    "OMEGA", "THETA", "PRELUDE", "fvar", "plus",
]
