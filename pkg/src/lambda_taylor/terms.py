"""Nameless syntax shared by every calculus in the package.

Expressions are nested tuples whose first slot is a string tag:

    ('fvar', name)        free variable
    ('bvar', i)           bound variable, de Bruijn index i
    ('bot',)              the undefined approximant
    ('lam', body)
    ('app', fun, arg)     arg is a term (lambda-plus) or a monomial tuple
    ('plus', left, right)
    ('inl', s) / ('inr', s)
    ('perm', sigma, parts)  a permutation monomial (groupoid morphisms)

A monomial is a bare tuple of terms. Resource monomials are kept sorted,
rigid ones keep their order. Plain tuple comparison gives the structural
total order: constructor tag first, then children lexicographically.
"""

from __future__ import annotations

from typing import Any, Iterable

FVAR = "fvar"
BVAR = "bvar"
BOT = "bot"
LAM = "lam"
APP = "app"
PLUS = "plus"
INL = "inl"
INR = "inr"
PERM = "perm"

INJ = (INL, INR)
VARS = (FVAR, BVAR)

Expr = tuple
BOTTOM: Expr = (BOT,)


def fvar(name: str) -> Expr:
    return (FVAR, name)


def bvar(i: int) -> Expr:
    return (BVAR, i)


def lam(body: Expr) -> Expr:
    return (LAM, body)


def app(fun: Expr, arg: Any) -> Expr:
    return (APP, fun, arg)


def plus(left: Expr, right: Expr) -> Expr:
    return (PLUS, left, right)


def inl(s: Expr) -> Expr:
    return (INL, s)


def inr(s: Expr) -> Expr:
    return (INR, s)


def mono(items: Iterable[Expr]) -> tuple:
    """Canonical (sorted) resource monomial."""
    return tuple(sorted(items))


def is_term(e: Any) -> bool:
    return isinstance(e, tuple) and bool(e) and type(e[0]) is str


def is_monomial(e: Any) -> bool:
    return isinstance(e, tuple) and not is_term(e)


def is_var(e: Expr) -> bool:
    return e[0] in VARS


def lams(k: int, body: Expr) -> Expr:
    for _ in range(k):
        body = (LAM, body)
    return body


def lam_prefix(e: Expr) -> tuple[int, Expr]:
    k = 0
    while e[0] == LAM:
        e = e[1]
        k += 1
    return k, e


def spine(e: Expr) -> tuple[Expr, list]:
    """Split e into its head and the list of arguments it is applied to."""
    args = []
    while e[0] == APP:
        args.append(e[2])
        e = e[1]
    args.reverse()
    return e, args


def unspine(head: Expr, args: Iterable) -> Expr:
    for a in args:
        head = (APP, head, a)
    return head


def shift(e: Any, by: int, cutoff: int = 0) -> Any:
    """Add `by` to every bound index >= cutoff (indices dangling out of e)."""
    if by == 0:
        return e
    if not is_term(e):
        return tuple(shift(t, by, cutoff) for t in e)
    tag = e[0]
    if tag == BVAR:
        i = e[1]
        if i < cutoff:
            return e
        if i + by < 0:
            raise ValueError("negative de Bruijn index after shift")
        return (BVAR, i + by)
    if tag in (FVAR, BOT):
        return e
    if tag == LAM:
        return (LAM, shift(e[1], by, cutoff + 1))
    if tag == PERM:
        return (PERM, e[1], tuple(shift(t, by, cutoff) for t in e[2]))
    return (tag,) + tuple(shift(c, by, cutoff) for c in e[1:])


def unshift(e: Any, by: int, cutoff: int = 0) -> Any:
    """Inverse of shift; None when e refers to one of the removed binders."""
    if not is_term(e):
        out = []
        for t in e:
            u = unshift(t, by, cutoff)
            if u is None:
                return None
            out.append(u)
        return tuple(out)
    tag = e[0]
    if tag == BVAR:
        i = e[1]
        if i < cutoff:
            return e
        if i - by < cutoff:
            return None
        return (BVAR, i - by)
    if tag in (FVAR, BOT):
        return e
    if tag == LAM:
        body = unshift(e[1], by, cutoff + 1)
        return None if body is None else (LAM, body)
    if tag == PERM:
        parts = unshift(e[2], by, cutoff)
        return None if parts is None else (PERM, e[1], parts)
    kids = []
    for c in e[1:]:
        u = unshift(c, by, cutoff)
        if u is None:
            return None
        kids.append(u)
    return (tag,) + tuple(kids)


def free_names(e: Any, acc: set | None = None) -> set:
    if acc is None:
        acc = set()
    if not is_term(e):
        for t in e:
            free_names(t, acc)
        return acc
    tag = e[0]
    if tag == FVAR:
        acc.add(e[1])
    elif tag == PERM:
        free_names(e[2], acc)
    elif tag not in (BVAR, BOT):
        for c in e[1:]:
            free_names(c, acc)
    return acc


def is_closed(e: Any, depth: int = 0) -> bool:
    """True when e has no dangling bound index (free names are allowed)."""
    if not is_term(e):
        return all(is_closed(t, depth) for t in e)
    tag = e[0]
    if tag == BVAR:
        return e[1] < depth
    if tag in (FVAR, BOT):
        return True
    if tag == LAM:
        return is_closed(e[1], depth + 1)
    if tag == PERM:
        return is_closed(e[2], depth)
    return all(is_closed(c, depth) for c in e[1:])


def occurrences(e: Any, x: str) -> int:
    """Number of free occurrences of the name x."""
    if not is_term(e):
        return sum(occurrences(t, x) for t in e)
    tag = e[0]
    if tag == FVAR:
        return 1 if e[1] == x else 0
    if tag in (BVAR, BOT):
        return 0
    if tag == PERM:
        return sum(occurrences(t, x) for t in e[2])
    return sum(occurrences(c, x) for c in e[1:])


def bound_occurrences(e: Any, k: int = 0) -> int:
    """Occurrences of the bound index k (seen from the top of e)."""
    if not is_term(e):
        return sum(bound_occurrences(t, k) for t in e)
    tag = e[0]
    if tag == BVAR:
        return 1 if e[1] == k else 0
    if tag in (FVAR, BOT):
        return 0
    if tag == LAM:
        return bound_occurrences(e[1], k + 1)
    if tag == PERM:
        return sum(bound_occurrences(t, k) for t in e[2])
    return sum(bound_occurrences(c, k) for c in e[1:])


def size(e: Any) -> int:
    """Constructor count; a monomial weighs the sum of its elements."""
    if not is_term(e):
        return sum(size(t) for t in e)
    tag = e[0]
    if tag in (FVAR, BVAR, BOT):
        return 1
    if tag == PERM:
        return sum(size(t) for t in e[2])
    return 1 + sum(size(c) for c in e[1:])


def abstract(e: Any, x: str, depth: int = 0) -> Any:
    """Turn the free name x into the bound index of a new outermost binder."""
    if not is_term(e):
        return tuple(abstract(t, x, depth) for t in e)
    tag = e[0]
    if tag == FVAR:
        return (BVAR, depth) if e[1] == x else e
    if tag == BVAR:
        return (BVAR, e[1] + 1) if e[1] >= depth else e
    if tag == BOT:
        return e
    if tag == LAM:
        return (LAM, abstract(e[1], x, depth + 1))
    if tag == PERM:
        return (PERM, e[1], tuple(abstract(t, x, depth) for t in e[2]))
    return (tag,) + tuple(abstract(c, x, depth) for c in e[1:])
