import json

import pytest

from lambda_taylor import oracles
from lambda_taylor.oracles import (
    LEMMAS, LemmaReport, check_lemma, commutation_check, msubst_oracle,
    support_commutation_exhaustive,
)
from lambda_taylor.sums import FormalSum
from lambda_taylor.syntax import parse_lambda as P, parse_resource as R, parse_sum as S


@pytest.mark.parametrize("e, t, want", [
    ("<x>[x]", "[y,z]", "<y>[z] + <z>[y]"),
    ("y", "[]", "y"),
    ("<x>[x]", "[y,y]", "2*<y>[y]"),
    ("<x>[x]", "[y]", "0"),
])
def test_msubst_oracle(e, t, want):
    assert msubst_oracle(R(e), "x", R(t)) == S(want)


@pytest.mark.parametrize("lemma, count", [("m_is_cardG", 200), ("coeffNsubst", 100), ("disjoint", 100)])
def test_reference_runs(lemma, count):
    rep = check_lemma(lemma, seed=1, count=count, max_size=12)
    assert rep.instances_checked == count
    assert rep.failures == []


@pytest.mark.parametrize("lemma", sorted(LEMMAS))
def test_every_lemma(lemma):
    rep = check_lemma(lemma, seed=3, count=40, max_size=12)
    assert rep.ok, rep.failures[:3]


def test_unknown_lemma():
    with pytest.raises(KeyError):
        check_lemma("no-such-lemma")


def test_deterministic():
    a = check_lemma("coeffNF", seed=9, count=20)
    b = check_lemma("coeffNF", seed=9, count=20)
    assert a.to_json() == b.to_json()


def test_report_json():
    rep = LemmaReport("x", 3, [{"b": 1, "a": 2}])
    assert json.loads(rep.to_json()) == {"lemma": "x", "checked": 3, "failures": [{"a": 2, "b": 1}]}
    assert rep.to_json() == '{"checked": 3, "failures": [{"a": 2, "b": 1}], "lemma": "x"}'
    assert not rep.ok


def test_broken_substitution_is_caught(monkeypatch):
    real = oracles.msubst
    monkeypatch.setattr(oracles, "msubst", lambda e, x, t: FormalSum({k: 1 for k in real(e, x, t).support()}))
    assert not check_lemma("coeffNsubst", seed=1, count=100).ok


def test_broken_multiplicity_is_caught(monkeypatch):
    real = oracles.multiplicity
    monkeypatch.setattr(oracles, "multiplicity", lambda e: real(e) + (real(e) > 1))
    assert not check_lemma("m_is_cardG", seed=1, count=100).ok


@pytest.mark.parametrize("m, b, d", [
    (r"\x. x", 4, 1),
    (r"(\x. x x) (\x. x)", 8, 2),
    (r"Θ (\y. y (+) x)", 14, 6),
    ("Ω", 12, 3),
    (r"(\x. x (x y)) (\z. z (+) w)", 10, 3),
])
def test_commutation_check(m, b, d):
    rep = commutation_check(P(m), b, d)
    assert rep.instances_checked > 0
    assert rep.failures == []


@pytest.mark.parametrize("m", ["I", "Δ", "y (x (+) x)", r"Θ (\y. y (+) x)", r"(\x. x x) (\x. x)"])
def test_preimage_budget_exhaustive(m):
    for b in (2, 3):
        assert support_commutation_exhaustive(P(m), b) == []


def test_commutation_check_catches_wrong_coefficients(monkeypatch):
    real = oracles.normal_form
    monkeypatch.setattr(oracles, "normal_form", lambda s, **kw: real(s, **kw).scale(2))
    assert not commutation_check(P(r"Θ (\y. y (+) x)"), 14, 6).ok
