"""Finite formal sums of expressions with exact nonnegative rational coefficients."""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from .terms import is_term


class FormalSum(Mapping):
    """Immutable map from expression to a positive Fraction.

    Missing keys read as 0; zero coefficients are never stored. Terms and
    monomials may not be mixed inside one sum.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, items: Mapping | Iterable = ()):
        if isinstance(items, FormalSum):
            self._terms = items._terms
            self._hash = items._hash
            return
        if isinstance(items, Mapping):
            items = items.items()
        acc: dict = {}
        for e, c in items:
            acc[e] = acc.get(e, 0) + c
        terms = {}
        kind = None
        for e, c in acc.items():
            c = Fraction(c)
            if c < 0:
                raise ValueError("formal sums have nonnegative coefficients")
            if c == 0:
                continue
            k = is_term(e)
            if kind is None:
                kind = k
            elif kind != k:
                raise ValueError("a formal sum cannot mix terms and monomials")
            terms[e] = c
        self._terms = terms
        self._hash = None

    @classmethod
    def of(cls, e, c=1) -> "FormalSum":
        return cls({e: c})

    @classmethod
    def zero(cls) -> "FormalSum":
        return cls()

    def __getitem__(self, e) -> Fraction:
        return self._terms.get(e, Fraction(0))

    def __contains__(self, e) -> bool:
        return e in self._terms

    def __iter__(self) -> Iterator:
        return iter(sorted(self._terms))

    def __len__(self) -> int:
        return len(self._terms)

    def items(self):
        return [(e, self._terms[e]) for e in sorted(self._terms)]

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, FormalSum):
            return self._terms == other._terms
        if isinstance(other, Mapping):
            return self._terms == FormalSum(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "FormalSum") -> "FormalSum":
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return FormalSum(out)

    def scale(self, c) -> "FormalSum":
        c = Fraction(c)
        return FormalSum({e: c * v for e, v in self._terms.items()})

    __rmul__ = scale

    def map_linear(self, f: Callable[[object], Mapping]) -> "FormalSum":
        """Extend f (expression to sum-like mapping) linearly."""
        out: dict = {}
        for e, c in self._terms.items():
            for e2, c2 in f(e).items():
                out[e2] = out.get(e2, 0) + c * c2
        return FormalSum(out)

    def is_natural(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def __repr__(self) -> str:
        return f"FormalSum({dict(self.items())!r})"
