import pytest

from lambda_taylor.groupoid import (
    GroupoidError, aut_card, aut_group, compose, hom_count, hom_set, identity, inverse,
    perm_subst, quasi_stabilizer, restriction, src, sub_stabilizer, tgt,
)
from lambda_taylor.perm import Perm, orbit_stabilizer_counts
from lambda_taylor.rigid import rigid_subst
from lambda_taylor.syntax import parse_perm_expr as E, parse_rigid as G

SWAP = Perm([2, 1])


def test_src_tgt():
    assert src(E("x")) == tgt(E("x")) == G("x")
    tau = E("(sigma=[2,1]; x,x)")
    assert src(tau) == tgt(tau) == G("(x,x)")
    eps = E("<y>(sigma=[2,1]; x,z)")
    assert src(eps) == G("<y>(x,z)")
    assert tgt(eps) == G("<y>(z,x)")


def test_compose_and_inverse():
    eps = E("<y>(sigma=[2,1]; x,z)")
    assert compose(identity(tgt(eps)), eps) == eps
    assert compose(inverse(eps), eps) == identity(src(eps))
    tau = E("(sigma=[2,1]; x,x)")
    assert compose(tau, tau) == identity(G("(x,x)"))
    with pytest.raises(GroupoidError):
        compose(eps, eps)


def test_hom_set():
    assert hom_set(G("x"), G("x")) == [E("x")]
    assert len(hom_set(G("(x,x)"), G("(x,x)"))) == 2
    assert hom_set(G("x"), G(r"\y.y")) == []
    assert hom_count(G("(x,x)"), G("(x,x)")) == 2


@pytest.mark.parametrize("r, n", [
    ("x", 1), ("(x,x)", 2), (r"<y>(\x.<x>(z,z),\x.<x>(z,z))", 8), ("<y>(x,x,x)", 6),
])
def test_aut_card(r, n):
    assert aut_card(G(r)) == n
    assert len(aut_group(G(r))) == n


def test_quasi_stabilizer():
    assert set(quasi_stabilizer(G("(x,x)"))) == {Perm([1, 2]), SWAP}
    assert quasi_stabilizer(G("(x,y)")) == [Perm([1, 2])]
    assert set(quasi_stabilizer(G("(x,y,x)"))) == {Perm([1, 2, 3]), Perm([3, 2, 1])}


def test_restriction():
    assert restriction(E("x"), "x") == Perm([1])
    assert restriction(E("<y>(sigma=[2,1]; x,x)"), "x") == SWAP
    assert restriction(E(r"\y.x"), "x") == Perm([1])


def test_perm_subst():
    beta = E("(sigma=[2,1]; y,y)")
    assert perm_subst(E("x"), "x", [beta]) == beta
    r = G("<x>(x,z)")
    b = (G("y"), G("w"))
    assert perm_subst(identity(r), "x", [identity(t) for t in b]) == identity(rigid_subst(r, "x", b))


def test_perm_subst_counterexample_needs_restriction():
    # the target of eps[beta/x] reorders the beta targets by eps restricted to x
    eps = E("<y>(sigma=[2,1]; x,x)")
    b = (G("u"), G("v"))
    phi = perm_subst(eps, "x", [identity(t) for t in b])
    assert src(phi) == G("<y>(u,v)")
    assert tgt(phi) == G("<y>(v,u)")
    assert tgt(phi) != rigid_subst(tgt(eps), "x", b)


def test_sub_stabilizer():
    assert sub_stabilizer(G("<x>(x)"), (G("y"), G("y")), "x") == {Perm([1, 2]), SWAP}
    assert sub_stabilizer(G("<x>(x)"), (G("y"), G("z")), "x") == {Perm([1, 2])}


def test_cardinality_on_examples():
    for r, b in [(G("<x>(x)"), (G("y"), G("y"))), (G("<x>(x)"), (G("y"), G("z")))]:
        s = rigid_subst(r, "x", b)
        n = len(sub_stabilizer(r, b, "x"))
        assert n * aut_card(s) == aut_card(r) * aut_card(b)


@pytest.mark.parametrize("seq, counts", [
    ("xx", (1, 2, 2)), ("xy", (2, 1, 2)), ("xyx", (3, 2, 6)),
])
def test_orbit_stabilizer(seq, counts):
    assert orbit_stabilizer_counts(tuple(seq)) == counts
