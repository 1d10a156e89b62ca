"""Permutation expressions: the morphisms between rigid expressions.

A permutation expression has the shape of a rigid term. A variable node
stands for its own identity. Each argument list is replaced by
('perm', sigma, parts), where part i maps source slot i to target slot
sigma(i).
"""

from __future__ import annotations

from itertools import product

from . import kernels
from .perm import Perm, multiplex, stabilizer, tensor, symmetric_group
from .rigid import ZERO, readback, rigid_subst
from .terms import APP, BVAR, FVAR, INJ, LAM, PERM, is_term, occurrences, shift


class GroupoidError(ValueError):
    """Endpoints or arities do not match."""


def _is_pmono(e) -> bool:
    return is_term(e) and e[0] == PERM


def src(eps):
    if _is_pmono(eps):
        return tuple(src(a) for a in eps[2])
    tag = eps[0]
    if tag in (FVAR, BVAR):
        return eps
    if tag == APP:
        return (APP, src(eps[1]), src(eps[2]))
    return (tag, src(eps[1]))


def tgt(eps):
    if _is_pmono(eps):
        sigma, parts = eps[1], eps[2]
        return sigma.act([tgt(a) for a in parts])
    tag = eps[0]
    if tag in (FVAR, BVAR):
        return eps
    if tag == APP:
        return (APP, tgt(eps[1]), tgt(eps[2]))
    return (tag, tgt(eps[1]))


def identity(r):
    if not is_term(r):
        return (PERM, Perm.identity(len(r)), tuple(identity(a) for a in r))
    tag = r[0]
    if tag in (FVAR, BVAR):
        return r
    if tag == APP:
        return (APP, identity(r[1]), identity(r[2]))
    return (tag, identity(r[1]))


def compose(eps2, eps1):
    """eps2 after eps1; requires tgt(eps1) == src(eps2)."""
    if tgt(eps1) != src(eps2):
        raise GroupoidError("compose: target of the first differs from source of the second")
    return _compose(eps2, eps1)


def _compose(e2, e1):
    if _is_pmono(e1):
        s1, p1 = e1[1], e1[2]
        s2, p2 = e2[1], e2[2]
        parts = tuple(_compose(p2[s1(i + 1) - 1], p1[i]) for i in range(len(p1)))
        return (PERM, s2 * s1, parts)
    tag = e1[0]
    if tag in (FVAR, BVAR):
        return e1
    if tag == APP:
        return (APP, _compose(e2[1], e1[1]), _compose(e2[2], e1[2]))
    return (tag, _compose(e2[1], e1[1]))


def inverse(eps):
    if _is_pmono(eps):
        sigma, parts = eps[1], eps[2]
        inv = sigma.inverse()
        return (PERM, inv, tuple(inverse(parts[inv(j) - 1]) for j in range(1, sigma.n + 1)))
    tag = eps[0]
    if tag in (FVAR, BVAR):
        return eps
    if tag == APP:
        return (APP, inverse(eps[1]), inverse(eps[2]))
    return (tag, inverse(eps[1]))


def _slot_bijections(a: tuple, b: tuple):
    """Permutations s with readback(a[i]) == readback(b[s(i)]) for all i."""
    ka = [readback(t) for t in a]
    kb = [readback(t) for t in b]
    n = len(a)
    used = [False] * n
    cur = [0] * n

    def go(i):
        if i == n:
            yield Perm._trusted(tuple(cur))
            return
        for j in range(n):
            if not used[j] and ka[i] == kb[j]:
                used[j] = True
                cur[i] = j + 1
                yield from go(i + 1)
                used[j] = False

    yield from go(0)


def hom_set(r, r2, _memo: dict | None = None) -> list:
    """Every permutation expression from r to r2, sorted."""
    memo = {} if _memo is None else _memo
    key = (r, r2)
    if key in memo:
        return memo[key]
    out: list = []
    if is_term(r) != is_term(r2):
        pass
    elif not is_term(r):
        if len(r) == len(r2):
            for sigma in _slot_bijections(r, r2):
                choices = [hom_set(r[i], r2[sigma(i + 1) - 1], memo) for i in range(len(r))]
                out.extend((PERM, sigma, parts) for parts in product(*choices))
    elif r[0] == r2[0]:
        tag = r[0]
        if tag in (FVAR, BVAR):
            if r == r2:
                out = [r]
        elif tag == APP:
            out = [
                (APP, f, a)
                for f in hom_set(r[1], r2[1], memo)
                for a in hom_set(r[2], r2[2], memo)
            ]
        else:
            out = [(tag, b) for b in hom_set(r[1], r2[1], memo)]
    out.sort()
    memo[key] = out
    return out


def hom_count(r, r2, _memo: dict | None = None) -> int:
    """|hom_set(r, r2)|, summing over slot bijections via a permanent."""
    memo = {} if _memo is None else _memo
    key = (r, r2)
    if key in memo:
        return memo[key]
    if is_term(r) != is_term(r2):
        n = 0
    elif not is_term(r):
        if len(r) != len(r2):
            n = 0
        else:
            n = kernels.permanent([[hom_count(a, b, memo) for b in r2] for a in r])
    elif r[0] != r2[0]:
        n = 0
    elif r[0] in (FVAR, BVAR):
        n = int(r == r2)
    elif r[0] == APP:
        n = hom_count(r[1], r2[1], memo)
        if n:
            n *= hom_count(r[2], r2[2], memo)
    else:
        n = hom_count(r[1], r2[1], memo)
    memo[key] = n
    return n


def aut_group(r) -> list:
    return hom_set(r, r)


def aut_card(r) -> int:
    return hom_count(r, r)


def quasi_stabilizer(a) -> list:
    """{s : a[i] and a[s(i)] are isomorphic for all i}."""
    return stabilizer([readback(t) for t in a])


def restriction(eps, x: str) -> Perm:
    """The permutation eps induces on the occurrences of x, in pre-order."""
    if _is_pmono(eps):
        return multiplex(eps[1], [restriction(a, x) for a in eps[2]])
    tag = eps[0]
    if tag == FVAR:
        return Perm.identity(1 if eps[1] == x else 0)
    if tag == BVAR:
        return Perm.identity(0)
    if tag == APP:
        return tensor(restriction(eps[1], x), restriction(eps[2], x))
    return restriction(eps[1], x)


def perm_subst(eps, x: str, betas):
    """Substitute the permutation expressions betas for the occurrences of x."""
    betas = tuple(betas)
    if occurrences(eps, x) != len(betas):
        raise GroupoidError("perm_subst: number of betas differs from occurrences of x")
    return _psubst(eps, x, betas, 0)


def _psubst(eps, x, betas, d):
    if _is_pmono(eps):
        parts = []
        pos = 0
        for a in eps[2]:
            n = occurrences(a, x)
            parts.append(_psubst(a, x, betas[pos:pos + n], d))
            pos += n
        return (PERM, eps[1], tuple(parts))
    tag = eps[0]
    if tag == FVAR and eps[1] == x:
        return shift(betas[0], d)
    if tag in (FVAR, BVAR):
        return eps
    if tag == LAM:
        return (LAM, _psubst(eps[1], x, betas, d + 1))
    if tag in INJ:
        return (tag, _psubst(eps[1], x, betas, d))
    n = occurrences(eps[1], x)
    return (APP, _psubst(eps[1], x, betas[:n], d), _psubst(eps[2], x, betas[n:], d))


def sub_stabilizer(r, b, x: str) -> set:
    """{s : r[b/x] and r[s.b/x] are isomorphic}, tested for every s in S_n."""
    b = tuple(b)
    if occurrences(r, x) != len(b):
        raise GroupoidError("sub_stabilizer: length of b differs from occurrences of x")
    base = readback(rigid_subst(r, x, b))
    out = set()
    for sigma in symmetric_group(len(b)):
        s = rigid_subst(r, x, sigma.act(b))
        if s is not ZERO and readback(s) == base:
            out.add(sigma)
    return out


def product_set(h, k) -> set:
    return {a * b for a in h for b in k}


def vector_auts(b) -> list:
    """D(b_1) x ... x D(b_n): tuples of automorphisms of each element."""
    return [tuple(p) for p in product(*(aut_group(t) for t in b))]
