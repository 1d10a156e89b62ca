"""Brute-force oracles and randomized drivers for the counting lemmas.

Every driver draws seeded instances, evaluates one property against an
independent computation, and records counterexamples. `check_lemma` runs a
driver by name; `commutation_check` is the end-to-end comparison between the
normalized Taylor expansion and the expansion of the Bohm tree.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import generators as G
from .groupoid import (
    aut_card, aut_group, compose, hom_count, hom_set, identity, inverse,
    perm_subst, product_set, quasi_stabilizer, restriction, src, sub_stabilizer,
    tgt,
)
from .lambda_oplus import approx_le, bohm_approx, ebt, step_L
from .perm import (
    Perm, decompose_perm, multiplex, orbit, orbit_stabilizer_counts,
    recompose_perm, stabilizer, symmetric_group,
)
from .resource import (
    coherent, is_clique, is_normal, msubst, multiplicity, nf_steps,
    normal_form, step_L_res,
)
from .rigid import (
    ZERO, enumerate_rigids, readback, rigid_coherent, rigid_nf, rigid_step_L,
    rigid_subst,
)
from .sums import FormalSum
from .syntax import show_lambda, show_perm_expr, show_resource, show_rigid, show_sum
from .taylor import (
    in_taylor_support, l_preimage, l_preimage_chain, preimage_budget,
    taylor_coeff, taylor_coeff_direct, taylor_support, taysup_bt,
)
from .terms import APP, BOTTOM, LAM, PLUS, occurrences, size


@dataclass
class LemmaReport:
    lemma_id: str
    instances_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"lemma": self.lemma_id, "checked": self.instances_checked, "failures": self.failures}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)


def _show(e) -> str:
    if e is ZERO:
        return "0"
    if isinstance(e, FormalSum):
        return show_sum(e)
    return show_resource(e)


def msubst_oracle(e, x: str, t) -> FormalSum:
    """Sum of readbacks of rigid substitutions over every reordering of t."""
    t = tuple(t)
    if occurrences(e, x) != len(t):
        return FormalSum()
    acc: dict = {}
    for sigma in symmetric_group(len(t)):
        r = rigid_subst(e, x, sigma.act(t))
        if r is not ZERO:
            key = readback(r)
            acc[key] = acc.get(key, 0) + 1
    return FormalSum(acc)


def msubst_oracle_from(r, x: str, b) -> FormalSum:
    """The oracle computed from chosen representatives r of e and b of t."""
    b = tuple(b)
    acc: dict = {}
    for sigma in symmetric_group(len(b)):
        s = rigid_subst(r, x, sigma.act(b))
        if s is not ZERO:
            key = readback(s)
            acc[key] = acc.get(key, 0) + 1
    return FormalSum(acc)


# ------------------------------------------------------------------ drivers
# A driver takes (rng, max_size) and returns a list of failure descriptions.

REP_CAP = 48
X = "x"


def _subst_instance(rng, max_size, uniform=True):
    occ = rng.randint(0, 4)
    if uniform:
        e = G.random_uniform(rng, max_size, need=lambda e: occurrences(e, X) <= 4)
    else:
        e = G.random_resource(rng, max_size)
        if occurrences(e, X) > 4:
            e = G.random_uniform(rng, max_size, need=lambda e: occurrences(e, X) <= 4)
    occ = occurrences(e, X)
    t = G.random_monomial(rng, occ, max(max_size // 2, 2), pool_size=rng.randint(1, 3))
    return e, t


def _d_m_is_cardG(rng, max_size):
    e = G.random_uniform(rng, max_size) if rng.random() < 0.5 else G.random_resource(rng, max_size)
    fails = []
    m = multiplicity(e)
    reps = enumerate_rigids(e)
    for r in [e, rng.choice(reps)]:
        a = aut_card(r)
        if a != m:
            fails.append({"input": show_rigid(r), "expected": m, "actual": a})
    return fails


def _d_cardGmonomial(rng, max_size):
    e = G.random_monomial(rng, rng.randint(0, 4), max_size, pool_size=rng.randint(1, 3))
    a = G.random_rigid(rng, e)
    lhs = len(hom_set(a, a))
    rhs = len(quasi_stabilizer(a))
    for t in a:
        rhs *= aut_card(t)
    if lhs != rhs:
        return [{"input": show_rigid(a), "expected": rhs, "actual": lhs}]
    return []


def _coeff_fail(e, t, got: FormalSum):
    fails = []
    for e2, c in got.items():
        want = Fraction(multiplicity(e) * multiplicity(t), multiplicity(e2))
        if c != want:
            fails.append({"input": f"{_show(e)} [{_show(t)}/x]", "term": _show(e2),
                          "expected": str(want), "actual": str(c)})
    return fails


def _d_coeffNsubst(rng, max_size):
    e, t = _subst_instance(rng, max_size)
    got = msubst(e, X, t)
    want = msubst_oracle(e, X, t)
    fails = []
    if got != want:
        fails.append({"input": f"{_show(e)} [{_show(t)}/x]", "expected": _show(want), "actual": _show(got)})
    return fails + _coeff_fail(e, t, got)


def _d_softifySubst(rng, max_size):
    e, t = _subst_instance(rng, max_size, uniform=False)
    got = msubst(e, X, t)
    fails = []
    reps_e = G.enumerate_rigids_capped(e, 8)
    reps_t = G.enumerate_rigids_capped(t, 8)
    for r in reps_e:
        for b in reps_t:
            want = msubst_oracle_from(r, X, b)
            if want != got:
                fails.append({"input": f"{show_rigid(r)} [{show_rigid(b)}/x]",
                              "expected": _show(want), "actual": _show(got)})
    return fails


def _d_lhdSubst(rng, max_size):
    e, t = _subst_instance(rng, max_size, uniform=rng.random() < 0.5)
    r = G.random_rigid(rng, e)
    b = G.random_rigid(rng, t)
    want = set()
    for sigma in symmetric_group(len(b)):
        s = rigid_subst(r, X, sigma.act(b))
        if s is not ZERO:
            want.add(readback(s))
    got = set(msubst(e, X, t).support())
    if got != want:
        return [{"input": f"{show_rigid(r)} [{show_rigid(b)}/x]",
                 "expected": sorted(map(_show, want)), "actual": sorted(map(_show, got))}]
    return []


def _d_lhdDeSubst(rng, max_size):
    e, t = _subst_instance(rng, min(max_size, 9), uniform=rng.random() < 0.5)
    images = set()
    for r in G.enumerate_rigids_capped(e, REP_CAP):
        for b in G.enumerate_rigids_capped(t, REP_CAP):
            s = rigid_subst(r, X, b)
            if s is not ZERO:
                images.add(s)
    fails = []
    for e2 in msubst(e, X, t).support():
        for r2 in G.enumerate_rigids_capped(e2, REP_CAP):
            if r2 not in images:
                fails.append({"input": f"{_show(e)} [{_show(t)}/x]", "unreached": show_rigid(r2)})
    return fails


def _d_coeffL(rng, max_size):
    e = G.random_uniform(rng, max_size)
    fails = []
    for e2, c in step_L_res(e).items():
        want = Fraction(multiplicity(e), multiplicity(e2))
        if c != want:
            fails.append({"input": _show(e), "term": _show(e2), "expected": str(want), "actual": str(c)})
    return fails


def _d_coeffNF(rng, max_size):
    e = G.random_uniform(rng, max_size)
    fails = []
    for e2, c in normal_form(e).items():
        want = Fraction(multiplicity(e), multiplicity(e2))
        if c != want or c.denominator != 1 or c <= 0:
            fails.append({"input": _show(e), "term": _show(e2), "expected": str(want), "actual": str(c)})
    return fails


def _d_redSupp(rng, max_size):
    e = G.random_uniform(rng, max_size) if rng.random() < 0.5 else G.random_resource(rng, max_size)
    reps = G.enumerate_rigids_capped(e, 10 ** 6)
    if len(reps) > 500:
        reps = enumerate_rigids(e)
    l_want = {readback(x) for x in map(rigid_step_L, reps) if x is not ZERO}
    nf_want = {readback(x) for x in map(rigid_nf, reps) if x is not ZERO}
    fails = []
    got_l = set(step_L_res(e).support())
    got_nf = set(normal_form(e).support())
    if got_l != l_want:
        fails.append({"input": _show(e), "part": "L", "expected": sorted(map(_show, l_want)),
                      "actual": sorted(map(_show, got_l))})
    if got_nf != nf_want:
        fails.append({"input": _show(e), "part": "NF", "expected": sorted(map(_show, nf_want)),
                      "actual": sorted(map(_show, got_nf))})
    return fails


def _coherent_rigid_pair(rng, max_size):
    e, e2 = G.random_coherent_pair(rng, max_size)
    return G.random_rigid(rng, e), G.random_rigid(rng, e2)


def _d_cohSubst(rng, max_size):
    shape = G.random_shape(rng, rng.randint(3, 7))
    e = G.sample_taylor(rng, shape, max_size)
    e2 = G.sample_taylor(rng, shape, max_size)
    if e is None or e2 is None or not coherent(e, e2):
        return []
    arg_shape = G.random_shape(rng, rng.randint(1, 3))
    b = []
    for _ in range(occurrences(e, X)):
        s = G.sample_taylor(rng, arg_shape, 4)
        if s is None:
            return []
        b.append(s)
    b2 = []
    for _ in range(occurrences(e2, X)):
        s = G.sample_taylor(rng, arg_shape, 4)
        if s is None:
            return []
        b2.append(s)
    r, r2 = G.random_rigid(rng, e), G.random_rigid(rng, e2)
    if not (rigid_coherent(r, r2) and rigid_coherent(tuple(b), tuple(b2))):
        return []
    s, s2 = rigid_subst(r, X, b), rigid_subst(r2, X, b2)
    if not rigid_coherent(s, s2):
        return [{"input": [show_rigid(r), show_rigid(tuple(b)), show_rigid(r2), show_rigid(tuple(b2))],
                 "expected": "coherent", "actual": [show_rigid(s), show_rigid(s2)]}]
    return []


def _d_cohRedRigid(rng, max_size):
    r, r2 = _coherent_rigid_pair(rng, max_size)
    fails = []
    for name, f in (("L", rigid_step_L), ("NF", rigid_nf)):
        a, b = f(r), f(r2)
        if a is not ZERO and b is not ZERO and not rigid_coherent(a, b):
            fails.append({"input": [show_rigid(r), show_rigid(r2)], "part": name,
                          "actual": [show_rigid(a), show_rigid(b)]})
    return fails


def _d_cohRed(rng, max_size):
    e, e2 = G.random_coherent_pair(rng, max_size)
    fails = []
    for name, f in (("L", step_L_res), ("NF", normal_form)):
        sa, sb = f(e).support(), f(e2).support()
        bad = [(a, b) for a in sa for b in sb if not coherent(a, b)]
        if bad:
            fails.append({"input": [_show(e), _show(e2)], "part": name,
                          "incoherent": [[_show(a), _show(b)] for a, b in bad[:3]]})
        if coherent(e, e) and coherent(e2, e2) and not is_clique(sa | sb):
            fails.append({"input": [_show(e), _show(e2)], "part": name, "expected": "clique"})
    return fails


def _d_suppNFRigid(rng, max_size):
    r, r2 = _coherent_rigid_pair(rng, max_size)
    fails = []
    for name, f in (("L", rigid_step_L), ("NF", rigid_nf)):
        a, b = f(r), f(r2)
        if a is ZERO or b is ZERO:
            continue
        if readback(a) == readback(b) and readback(r) != readback(r2):
            fails.append({"input": [show_rigid(r), show_rigid(r2)], "part": name,
                          "actual": show_rigid(a)})
    return fails


def _d_disjoint(rng, max_size):
    e, e2 = G.random_coherent_pair(rng, max_size)
    if e == e2:
        return []
    common = normal_form(e).support() & normal_form(e2).support()
    if common:
        return [{"input": [_show(e), _show(e2)], "common": sorted(map(_show, common))}]
    return []


def _d_SN(rng, max_size):
    e = G.random_uniform(rng, max_size) if rng.random() < 0.5 else G.random_resource(rng, max_size)
    try:
        normal_form(e, check_measure=True)
    except AssertionError as exc:
        return [{"input": _show(e), "error": str(exc)}]
    return []


def _shape(rng, max_size):
    return G.random_shape(rng, rng.randint(2, max(3, max_size // 2)))


def _slice_budget(max_size):
    return min(max_size, 8)


def _d_clique(rng, max_size):
    m = _shape(rng, max_size)
    supp = taylor_support(m, _slice_budget(max_size))
    if not is_clique(supp):
        return [{"input": show_lambda(m, fold=False), "expected": "clique"}]
    return []


def _d_taylorCoeff(rng, max_size):
    m = _shape(rng, max_size)
    fails = []
    for s in taylor_support(m, _slice_budget(max_size)):
        a, b = taylor_coeff(m, s), taylor_coeff_direct(m, s)
        if not (a == b == Fraction(1, multiplicity(s))):
            fails.append({"input": show_lambda(m, fold=False), "term": _show(s),
                          "expected": f"1/{multiplicity(s)}", "actual": [str(a), str(b)]})
    return fails


def support_commutation(m, b: int) -> list:
    """Failures of supp L(T_b(m)) = T_b(L m), the converse via preimages."""
    fails = []
    lm = step_L(m)
    target = taylor_support(lm, b)
    for s in sorted(taylor_support(m, b)):
        for t in step_L_res(s).support():
            if t not in target:
                fails.append({"input": show_lambda(m, fold=False), "source": _show(s),
                              "stray": _show(t)})
    for t in sorted(target):
        s = l_preimage(m, t)
        if s is None or size(s) > preimage_budget(b):
            fails.append({"input": show_lambda(m, fold=False), "target": _show(t),
                          "preimage": None if s is None else _show(s)})
    return fails


def support_commutation_exhaustive(m, b: int) -> list:
    """The converse by brute force over T(m) at the preimage budget."""
    hit = set()
    for s in taylor_support(m, preimage_budget(b)):
        hit |= step_L_res(s).support()
    missing = taylor_support(step_L(m), b) - hit
    if missing:
        return [{"input": show_lambda(m, fold=False), "budget": b,
                 "unreached": sorted(map(_show, missing))}]
    return []


def _d_commL(rng, max_size):
    m = _shape(rng, max_size)
    return support_commutation(m, _slice_budget(max_size))


def _approx_below(rng, a):
    if rng.random() < 0.2:
        return BOTTOM
    tag = a[0]
    if tag == LAM:
        return (LAM, _approx_below(rng, a[1]))
    if tag in (APP, PLUS):
        return (tag, _approx_below(rng, a[1]), _approx_below(rng, a[2]))
    return a


def _d_orderBT(rng, max_size):
    hi = _approx_below(rng, _shape(rng, max_size))
    lo = _approx_below(rng, hi)
    b = _slice_budget(max_size)
    fails = []
    if not approx_le(lo, hi):
        fails.append({"input": [show_lambda(lo), show_lambda(hi)], "expected": "lo <= hi"})
    if not taylor_support(lo, b) <= taylor_support(hi, b):
        fails.append({"input": [show_lambda(lo), show_lambda(hi)], "expected": "T(lo) in T(hi)"})
    return fails


def _d_eBTtaysup(rng, max_size):
    m = _shape(rng, max_size)
    b = _slice_budget(max_size)
    normal = {s for s in taylor_support(m, b) if is_normal(s)}
    want = taylor_support(ebt(m), b)
    if normal != want:
        return [{"input": show_lambda(m, fold=False), "expected": sorted(map(_show, want)),
                 "actual": sorted(map(_show, normal))}]
    return []


def _d_increasingBT(rng, max_size):
    m = _shape(rng, max_size)
    fails = []
    prev = bohm_approx(m, 0)
    for n in range(1, 5):
        cur = bohm_approx(m, n)
        if not approx_le(prev, cur):
            fails.append({"input": show_lambda(m, fold=False), "depth": n,
                          "actual": [show_lambda(prev), show_lambda(cur)]})
        prev = cur
    if not approx_le(ebt(m), m):
        fails.append({"input": show_lambda(m, fold=False), "expected": "eBT(m) <= m"})
    return fails


def _d_conglhd(rng, max_size):
    e = G.random_resource(rng, max_size)
    e2 = e if rng.random() < 0.5 else G.random_resource(rng, max_size)
    r, r2 = G.random_rigid(rng, e), G.random_rigid(rng, e2)
    nonempty = bool(hom_set(r, r2))
    if nonempty != (readback(r) == readback(r2)):
        return [{"input": [show_rigid(r), show_rigid(r2)], "actual": nonempty}]
    if nonempty and hom_count(r, r2) != len(hom_set(r, r2)):
        return [{"input": [show_rigid(r), show_rigid(r2)], "expected": "count == enumeration"}]
    return []


def _random_widths(rng, n: int, total: int) -> list:
    cuts = sorted(rng.randint(0, total) for _ in range(n - 1))
    return [b - a for a, b in zip([0] + cuts, cuts + [total])]


def _rand_perm(rng, n):
    return Perm(G.random_perm_images(rng, n))


def _d_permComp(rng, max_size):
    k = rng.randint(0, 5)
    n = rng.randint(1, 4)
    widths = _random_widths(rng, n, k)
    sigma = _rand_perm(rng, k)
    parts, perms = decompose_perm(sigma, widths)
    back = recompose_perm(parts, perms)
    if back != sigma or [len(p) for p in parts] != widths:
        return [{"input": [str(sigma), widths], "actual": str(back)}]
    return []


def _d_compMultiplex(rng, max_size):
    n = rng.randint(0, 4)
    widths = [rng.randint(0, 3) for _ in range(n)]
    sigma, sigma2 = _rand_perm(rng, n), _rand_perm(rng, n)
    taus = [_rand_perm(rng, w) for w in widths]
    # the second multiplex acts on blocks already moved by sigma
    moved = sigma.act(widths)
    taus2 = [_rand_perm(rng, w) for w in moved]
    lhs = multiplex(sigma2, taus2) * multiplex(sigma, taus)
    rhs = multiplex(sigma2 * sigma, [taus2[sigma(i + 1) - 1] * taus[i] for i in range(n)])
    if lhs != rhs:
        return [{"input": [str(sigma), [str(t) for t in taus], str(sigma2), [str(t) for t in taus2]],
                 "expected": str(rhs), "actual": str(lhs)}]
    return []


def _d_actionMultiplex(rng, max_size):
    n = rng.randint(0, 4)
    widths = [rng.randint(0, 3) for _ in range(n)]
    sigma = _rand_perm(rng, n)
    taus = [_rand_perm(rng, w) for w in widths]
    blocks, c = [], 0
    for w in widths:
        blocks.append(tuple(range(c, c + w)))
        c += w
    flat = tuple(v for blk in blocks for v in blk)
    lhs = multiplex(sigma, taus).act(flat)
    moved = sigma.act([taus[i].act(blocks[i]) for i in range(n)])
    rhs = tuple(v for blk in moved for v in blk)
    if lhs != rhs:
        return [{"input": [str(sigma), [str(t) for t in taus]], "expected": rhs, "actual": lhs}]
    return []


def _small_uniform_rigid(rng, max_size, need_x=True):
    e = G.random_uniform(rng, min(max_size, 10),
                         need=(lambda e: 1 <= occurrences(e, X) <= 4) if need_x else None)
    return G.random_rigid(rng, e)


def _d_functor(rng, max_size):
    r = _small_uniform_rigid(rng, max_size, need_x=rng.random() < 0.8)
    reps = G.enumerate_rigids_capped(readback(r), 16)
    r2, r3 = rng.choice(reps), rng.choice(reps)
    h1, h2 = hom_set(r, r2), hom_set(r2, r3)
    e1, e2 = rng.choice(h1), rng.choice(h2)
    fails = []
    if restriction(compose(e2, e1), X) != restriction(e2, X) * restriction(e1, X):
        fails.append({"input": [show_perm_expr(e1), show_perm_expr(e2)], "expected": "functorial"})
    if not restriction(identity(r), X).is_identity():
        fails.append({"input": show_rigid(r), "expected": "identity restricts to identity"})
    if restriction(inverse(e1), X) != restriction(e1, X).inverse():
        fails.append({"input": show_perm_expr(e1), "expected": "inverse restricts to inverse"})
    return fails


def _arg_rigids(rng, n, max_size):
    shape = G.random_shape(rng, rng.randint(1, 3))
    b = []
    for _ in range(n):
        s = G.sample_taylor(rng, shape, max(3, max_size // 3))
        if s is None:
            s = ("fvar", "y")
        b.append(G.random_rigid(rng, s))
    return tuple(b)


def _d_substPerm(rng, max_size):
    r = _small_uniform_rigid(rng, max_size)
    r2 = rng.choice(G.enumerate_rigids_capped(readback(r), 16))
    eps = rng.choice(hom_set(r, r2))
    b = _arg_rigids(rng, occurrences(r, X), max_size)
    b2 = tuple(rng.choice(G.enumerate_rigids_capped(readback(t), 8)) for t in b)
    betas = [rng.choice(hom_set(x, y)) for x, y in zip(b, b2)]
    phi = perm_subst(eps, X, betas)
    want_src = rigid_subst(r, X, b)
    want_tgt = rigid_subst(r2, X, restriction(eps, X).act(b2))
    if src(phi) != want_src or tgt(phi) != want_tgt:
        return [{"input": [show_perm_expr(eps), [show_perm_expr(x) for x in betas]],
                 "expected": [show_rigid(want_src), show_rigid(want_tgt)],
                 "actual": [show_rigid(src(phi)), show_rigid(tgt(phi))]}]
    return []


def _factorizations(r, r2, b, b2):
    """All eps[beta/x] with eps: r -> r2 and beta: b -> eps|x^-1 . b2."""
    out = []
    for eps in hom_set(r, r2):
        target = restriction(eps, X).inverse().act(b2)
        for betas in product(*(hom_set(x, y) for x, y in zip(b, target))):
            out.append(((eps, betas), perm_subst(eps, X, betas)))
    return out


def _subst_pair(rng, max_size):
    e, e2 = G.random_coherent_pair(rng, min(max_size, 9))
    r, r2 = G.random_rigid(rng, e), G.random_rigid(rng, e2)
    b = _arg_rigids(rng, occurrences(r, X), max_size)
    if rng.random() < 0.5 and occurrences(r2, X) == len(b):
        b2 = tuple(rng.choice(G.enumerate_rigids_capped(readback(t), 8)) for t in b)
        b2 = _rand_perm(rng, len(b2)).act(b2)
    else:
        b2 = _arg_rigids(rng, occurrences(r2, X), max_size)
    return r, r2, b, b2


def _d_substInj(rng, max_size):
    r, r2, b, b2 = _subst_pair(rng, max_size)
    seen = {}
    for key, phi in _factorizations(r, r2, b, b2):
        if phi in seen and seen[phi] != key:
            return [{"input": [show_rigid(r), show_rigid(r2), show_rigid(b), show_rigid(b2)],
                     "collision": show_perm_expr(phi)}]
        seen[phi] = key
    return []


def _d_substSurj(rng, max_size):
    r, r2, b, b2 = _subst_pair(rng, max_size)
    if not rigid_coherent(r, r2):
        return []
    s, s2 = rigid_subst(r, X, b), rigid_subst(r2, X, b2)
    if s is ZERO or s2 is ZERO:
        return []
    made = {phi for _, phi in _factorizations(r, r2, b, b2)}
    homs = set(hom_set(s, s2))
    if made != homs:
        return [{"input": [show_rigid(r), show_rigid(r2), show_rigid(b), show_rigid(b2)],
                 "expected": len(homs), "actual": len(made)}]
    return []


def _d_cohAntired(rng, max_size):
    r, r2, b, b2 = _subst_pair(rng, max_size)
    if not rigid_coherent(r, r2):
        return []
    s, s2 = rigid_subst(r, X, b), rigid_subst(r2, X, b2)
    if s is ZERO or s2 is ZERO or readback(s) != readback(s2):
        return []
    if readback(r) != readback(r2) or readback(tuple(b)) != readback(tuple(b2)):
        return [{"input": [show_rigid(r), show_rigid(r2), show_rigid(b), show_rigid(b2)],
                 "expected": "r and b isomorphic to r2 and b2"}]
    return []


def substabilizer_instance(rng, max_size):
    r = _small_uniform_rigid(rng, max_size)
    b = _arg_rigids(rng, occurrences(r, X), max_size)
    return r, b


def _group_data(r, b):
    aut = aut_group(r)
    h = {restriction(eps, X) for eps in aut}
    k = set(quasi_stabilizer(b))
    sub = sub_stabilizer(r, b, X)
    return aut, h, k, sub


def _d_cardSvar(rng, max_size):
    r, b = substabilizer_instance(rng, max_size)
    aut, h, k, sub = _group_data(r, b)
    if sub != product_set(h, k):
        return [{"input": [show_rigid(r), show_rigid(b)], "expected": sorted(map(str, product_set(h, k))),
                 "actual": sorted(map(str, sub))}]
    return []


def _d_cardSubst(rng, max_size):
    r, b = substabilizer_instance(rng, max_size)
    aut = aut_group(r)
    k = set(quasi_stabilizer(b))
    preq = [eps for eps in aut if restriction(eps, X) in k]
    vec = 1
    for t in b:
        vec *= aut_card(t)
    lhs = aut_card(rigid_subst(r, X, b))
    if lhs != len(preq) * vec:
        return [{"input": [show_rigid(r), show_rigid(b)], "expected": len(preq) * vec, "actual": lhs}]
    return []


def _d_cardStree(rng, max_size):
    r, b = substabilizer_instance(rng, max_size)
    sub = sub_stabilizer(r, b, X)
    want = Fraction(aut_card(r) * aut_card(tuple(b)), aut_card(rigid_subst(r, X, b)))
    if len(sub) != want:
        return [{"input": [show_rigid(r), show_rigid(b)], "expected": str(want), "actual": len(sub)}]
    return []


def group_facts(r, b) -> list:
    """Check the group counting facts on the subgroups arising from one instance."""
    fails = []
    aut, h, k, sub = _group_data(r, b)
    n = len(b)
    labels = tuple(readback(t) for t in b)
    orb, stab, order = orbit_stabilizer_counts(labels)
    if orb * stab != order or len(orbit(labels)) != orb or len(stabilizer(labels)) != stab:
        fails.append({"fact": "orbit-stabilizer", "input": show_rigid(b), "actual": [orb, stab, order]})
    hk = product_set(h, k)
    if len(hk) * len(h & k) != len(h) * len(k):
        fails.append({"fact": "subgroup product", "input": [show_rigid(r), show_rigid(b)],
                      "actual": [len(hk), len(h), len(k), len(h & k)]})
    # quotient: G = Aut(r), f = restriction to x, K = quasi-stabilizer of b
    pre = [eps for eps in aut if restriction(eps, X) in k]
    if Fraction(len(aut), len(pre)) != Fraction(len(h), len(h & k)):
        fails.append({"fact": "quotient", "input": [show_rigid(r), show_rigid(b)],
                      "actual": [len(aut), len(pre), len(h), len(h & k)]})
    for g in (h, k):
        ident = Perm.identity(n)
        if ident not in g or any(p * q not in g for p in g for q in g):
            fails.append({"fact": "subgroup", "input": [show_rigid(r), show_rigid(b)]})
    return fails


def _d_facts(rng, max_size):
    r, b = substabilizer_instance(rng, max_size)
    return group_facts(r, b)


def _d_groupoid(rng, max_size):
    e = G.random_resource(rng, min(max_size, 10))
    reps = G.enumerate_rigids_capped(e, 12)
    r1, r2, r3 = (rng.choice(reps) for _ in range(3))
    a, b, c = rng.choice(hom_set(r1, r2)), rng.choice(hom_set(r2, r3)), rng.choice(hom_set(r3, r1))
    fails = []
    if compose(c, compose(b, a)) != compose(compose(c, b), a):
        fails.append({"law": "associativity", "input": show_perm_expr(a)})
    if compose(identity(r2), a) != a or compose(a, identity(r1)) != a:
        fails.append({"law": "identity", "input": show_perm_expr(a)})
    if compose(inverse(a), a) != identity(r1) or compose(a, inverse(a)) != identity(r2):
        fails.append({"law": "inverse", "input": show_perm_expr(a)})
    return fails


LEMMAS = {
    "m_is_cardG": _d_m_is_cardG,
    "cardGmonomial": _d_cardGmonomial,
    "coeffNsubst": _d_coeffNsubst,
    "softifySubst": _d_softifySubst,
    "lhdSubst": _d_lhdSubst,
    "lhdDeSubst": _d_lhdDeSubst,
    "coeffL": _d_coeffL,
    "coeffNF": _d_coeffNF,
    "redSupp": _d_redSupp,
    "cohSubst": _d_cohSubst,
    "cohRedRigid": _d_cohRedRigid,
    "cohRed": _d_cohRed,
    "suppNFRigid": _d_suppNFRigid,
    "disjoint": _d_disjoint,
    "SN": _d_SN,
    "clique": _d_clique,
    "taylorCoeff": _d_taylorCoeff,
    "commL": _d_commL,
    "orderBT": _d_orderBT,
    "eBTtaysup": _d_eBTtaysup,
    "increasingBT": _d_increasingBT,
    "conglhd": _d_conglhd,
    "permComp": _d_permComp,
    "compMultiplex": _d_compMultiplex,
    "actionMultiplex": _d_actionMultiplex,
    "functor": _d_functor,
    "substPerm": _d_substPerm,
    "substInj": _d_substInj,
    "substSurj": _d_substSurj,
    "cohAntired": _d_cohAntired,
    "cardSvar": _d_cardSvar,
    "cardSubst": _d_cardSubst,
    "cardStree": _d_cardStree,
    "facts": _d_facts,
    "groupoid": _d_groupoid,
}


def instance_rng(seed: int, index: int) -> random.Random:
    return random.Random(seed * 1_000_003 + index)


def check_lemma(lemma_id: str, seed: int = 1, count: int = 100, max_size: int = 12) -> LemmaReport:
    try:
        driver = LEMMAS[lemma_id]
    except KeyError:
        raise KeyError(f"unknown lemma id {lemma_id!r}; known: {', '.join(sorted(LEMMAS))}") from None
    report = LemmaReport(lemma_id)
    for i in range(count):
        for f in driver(instance_rng(seed, i), max_size):
            report.failures.append({"instance": i, **f})
        report.instances_checked += 1
    return report


# ------------------------------------------------------------ end to end

def commutation_check(m, budget: int, depth: int) -> LemmaReport:
    """Compare NF of the truncated expansion of m with the expansion of its Bohm tree."""
    report = LemmaReport("commutation")
    name = show_lambda(m, fold=False)
    approxes: dict = {}

    def bt_member(n, t):
        if n not in approxes:
            approxes[n] = bohm_approx(m, n)
        return in_taylor_support(approxes[n], t)

    owner: dict = {}
    for s in sorted(taylor_support(m, budget)):
        report.instances_checked += 1
        nf, steps = nf_steps(s)
        n = max(depth, steps)
        for t, c in nf.items():
            if not bt_member(n, t):
                report.failures.append({"input": name, "source": _show(s), "stray": _show(t)})
            want = Fraction(multiplicity(s), multiplicity(t))
            if c != want:
                report.failures.append({"input": name, "source": _show(s), "term": _show(t),
                                        "expected": str(want), "actual": str(c)})
            if t in owner:
                report.failures.append({"input": name, "term": _show(t),
                                        "sources": [_show(owner[t]), _show(s)]})
            owner[t] = s
    for t in sorted(taysup_bt(m, depth, budget)):
        report.instances_checked += 1
        s = l_preimage_chain(m, t, depth)
        if s is None or size(s) > preimage_budget(budget, depth):
            report.failures.append({"input": name, "target": _show(t), "preimage": None})
            continue
        total = normal_form(s)[t] / multiplicity(s)
        if s in owner.values() and owner.get(t) not in (None, s):
            report.failures.append({"input": name, "target": _show(t), "expected": "a single source"})
        if total != Fraction(1, multiplicity(t)):
            report.failures.append({"input": name, "target": _show(t), "source": _show(s),
                                    "expected": f"1/{multiplicity(t)}", "actual": str(total)})
    return report
