from fractions import Fraction

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from lambda_taylor import _pykernels, kernels
from lambda_taylor.groupoid import aut_card, compose, hom_set, identity, inverse, restriction
from lambda_taylor.lambda_oplus import approx_le, bohm_approx, ebt, is_normal, step_L
from lambda_taylor.oracles import msubst_oracle
from lambda_taylor.perm import Perm, decompose_perm, multiplex, recompose_perm
from lambda_taylor.resource import (
    coherent, is_clique, msubst, multiplicity, normal_form, one_step_all, sn_measure,
    step_L_res,
)
from lambda_taylor.rigid import canonical_rigid, enumerate_rigids, readback
from lambda_taylor.sums import FormalSum
from lambda_taylor.syntax import (
    parse_lambda, parse_resource, parse_rigid, parse_sum, show_lambda, show_resource,
    show_rigid, show_sum,
)
from lambda_taylor.terms import occurrences

from strategies import lambda_terms, monomials, perms, resource_terms

FAST = settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@FAST
@given(lambda_terms(bottom=True))
def test_lambda_round_trip(m):
    assert parse_lambda(show_lambda(m)) == m
    assert show_lambda(parse_lambda(show_lambda(m))) == show_lambda(m)


@FAST
@given(resource_terms())
def test_resource_round_trip(e):
    assert parse_resource(show_resource(e)) == e


@FAST
@given(resource_terms(rigid=True))
def test_rigid_round_trip(r):
    assert parse_rigid(show_rigid(r)) == r


@FAST
@given(lambda_terms())
def test_step_L_fixpoint_iff_normal(m):
    assert (step_L(m) == m) == is_normal(m)


@FAST
@given(lambda_terms())
def test_ebt_below_term_and_bohm_chain(m):
    assert approx_le(ebt(m), m)
    chain = [bohm_approx(m, n) for n in range(4)]
    assert all(approx_le(a, b) for a, b in zip(chain, chain[1:]))


@FAST
@given(lambda_terms(bottom=True), lambda_terms(bottom=True))
def test_approx_order_antisymmetric(a, b):
    assert approx_le(a, a)
    if approx_le(a, b) and approx_le(b, a):
        assert a == b


@FAST
@given(resource_terms(9))
def test_multiplicity_is_aut_card(e):
    assert multiplicity(e) == aut_card(canonical_rigid(e))


@FAST
@given(st.data())
def test_msubst_matches_oracle(data):
    e = data.draw(resource_terms(8))
    n = occurrences(e, "x")
    assume(n <= 4)
    t = data.draw(monomials(n))
    assert msubst(e, "x", t) == msubst_oracle(e, "x", t)


@FAST
@given(resource_terms(9))
def test_local_confluence_smoke(e):
    # every one-step reduct has the same normal form as the strategy
    nf = normal_form(e)
    for s in one_step_all(e):
        assert normal_form(s) == nf


@FAST
@given(resource_terms(9))
def test_measure_decreases(e):
    out = step_L_res(e)
    if out != FormalSum.of(e):
        assert sn_measure(out) < sn_measure(e)


@FAST
@given(resource_terms(9))
def test_uniform_nf_is_clique_with_integer_coefficients(e):
    assume(coherent(e, e))
    nf = normal_form(e)
    assert is_clique(nf.support())
    for e2, c in nf.items():
        assert c == Fraction(multiplicity(e), multiplicity(e2)) and c.denominator == 1


@FAST
@given(resource_terms(), resource_terms())
def test_coherence_symmetric(a, b):
    assert coherent(a, b) == coherent(b, a)


@FAST
@given(st.dictionaries(resource_terms(4), st.fractions(0, 5), max_size=4),
       st.dictionaries(resource_terms(4), st.fractions(0, 5), max_size=4))
def test_sum_algebra(a, b):
    a, b = FormalSum(a), FormalSum(b)
    assert a + b == b + a
    assert (a + b).scale(3) == a.scale(3) + b.scale(3)
    assert parse_sum(show_sum(a)) == a


@FAST
@given(st.integers(0, 6).flatmap(lambda n: st.tuples(perms(n), perms(n), perms(n))))
def test_perm_group_laws(ps):
    p, q, r = ps
    assert (p * q) * r == p * (q * r)
    assert p * p.inverse() == Perm.identity(p.n)
    assert (p * q).act("abcdef"[:p.n]) == p.act(q.act("abcdef"[:p.n]))


@FAST
@given(st.data())
def test_decompose_round_trip(data):
    widths = data.draw(st.lists(st.integers(0, 3), min_size=1, max_size=4))
    sigma = data.draw(perms(sum(widths)))
    parts, taus = decompose_perm(sigma, widths)
    assert recompose_perm(parts, taus) == sigma


@FAST
@given(st.data())
def test_multiplex_action(data):
    widths = data.draw(st.lists(st.integers(0, 3), max_size=4))
    sigma = data.draw(perms(len(widths)))
    taus = [data.draw(perms(w)) for w in widths]
    blocks, c = [], 0
    for w in widths:
        blocks.append(tuple(range(c, c + w)))
        c += w
    got = multiplex(sigma, taus).act(tuple(range(c)))
    moved = sigma.act([t.act(b) for t, b in zip(taus, blocks)])
    assert got == tuple(v for b in moved for v in b)


@FAST
@given(resource_terms(8))
def test_groupoid_laws(e):
    reps = enumerate_rigids(e)[:6]
    r1, r2 = reps[0], reps[-1]
    for a in hom_set(r1, r2)[:4]:
        assert compose(inverse(a), a) == identity(r1)
        assert compose(a, identity(r1)) == a
        for b in hom_set(r2, r1)[:4]:
            assert restriction(compose(b, a), "x") == restriction(b, "x") * restriction(a, "x")
    assert all(readback(r) == e for r in reps)


@FAST
@given(st.lists(st.integers(0, 2), max_size=7),
       st.lists(st.lists(st.integers(0, 1), min_size=5, max_size=5), min_size=5, max_size=5),
       st.integers(0, 5))
def test_kernel_backends_agree(labels, matrix, k):
    labels = tuple(labels)
    m = [row[:k] for row in matrix[:k]]
    for be in kernels.BACKENDS.values():
        assert be.stabilizer(labels) == _pykernels.stabilizer(labels)
        assert be.orbit_stabilizer(labels) == _pykernels.orbit_stabilizer(labels)
        assert be.permanent(m) == _pykernels.permanent(m)
