import pytest

from lambda_taylor.resource import multiplicity
from lambda_taylor.rigid import (
    ZERO, enumerate_rigids, isomorphic, readback, rigid_coherent, rigid_nf,
    rigid_step_L, rigid_subst,
)
from lambda_taylor.syntax import parse_resource as R, parse_rigid as G, show_rigid


@pytest.mark.parametrize("r, e", [("(x,y)", "[x,y]"), ("<z>(y,x)", "<z>[x,y]"), ("inl x", "inl x")])
def test_readback(r, e):
    assert readback(G(r)) == R(e)


@pytest.mark.parametrize("e, reps", [
    ("[x,x]", ["(x,x)"]),
    ("[x,y]", ["(x,y)", "(y,x)"]),
    ("<z>[x,y]", ["<z>(x,y)", "<z>(y,x)"]),
    ("<z>[<y>[x,x],<y>[x,z]]", ["<z>(<y>(x,x),<y>(x,z))", "<z>(<y>(x,x),<y>(z,x))",
                                 "<z>(<y>(x,z),<y>(x,x))", "<z>(<y>(z,x),<y>(x,x))"]),
])
def test_enumerate_rigids(e, reps):
    assert set(enumerate_rigids(R(e))) == {G(r) for r in reps}
    assert all(readback(r) == R(e) for r in enumerate_rigids(R(e)))


@pytest.mark.parametrize("r, b, want", [
    ("<x>(x)", "(y,z)", "<y>(z)"),
    ("y", "()", "y"),
    ("x", "(u,v)", None),
    (r"\z.<z>(x,x)", "(z,y)", r"\w.<w>(z,y)"),
])
def test_rigid_subst(r, b, want):
    got = rigid_subst(G(r), "x", G(b))
    assert got == (ZERO if want is None else G(want))


def test_rigid_step_L():
    a = rigid_step_L(G(r"<\x.<x>(x)>(inl y,inr z)"))
    a2 = rigid_step_L(G(r"<\x.<x>(x)>(inr z,inl y)"))
    assert a == G("<inl y>(inr z)")
    assert a2 == G("<inr z>(inl y)")
    assert not isomorphic(a, a2)
    assert rigid_step_L(G(r"<\x.x>(y,z)")) is ZERO
    assert rigid_step_L(ZERO) is ZERO


def test_rigid_nf_fires_injection_redex():
    assert rigid_nf(G(r"<\x.<x>(x)>(inl y,inr z)")) == G("inl <y>(inr z)")
    assert show_rigid(rigid_nf(G(r"<\x.x>(y,z)"))) == "0"


@pytest.mark.parametrize("a, b, want", [
    ("inl x", "inr z", True),
    (r"(x,\y.y)", "()", False),
    ("x", "x", True),
    ("(x,x)", "(x)", True),
    ("x", "y", False),
])
def test_rigid_coherent(a, b, want):
    assert rigid_coherent(G(a), G(b)) is want


def test_representatives_count_matches_multiplicity():
    # |S_n| * |Aut(e)| / m(e) style check on one monomial: 3!/2 orderings of [x,x,y]
    assert len(enumerate_rigids(R("[x,x,y]"))) == 3
    assert multiplicity(R("[x,x,y]")) == 2
