"""Finite permutations and the symmetric-group combinatorics built on them.

A Perm of size n is an immutable 1-based image table. Products read right to
left: (p * q)(i) = p(q(i)). The left action on sequences puts a[i] at slot
p(i), i.e. (p . a)[p(i)] = a[i].
"""

from __future__ import annotations

from functools import total_ordering
from itertools import permutations, product
from math import factorial
from typing import Iterable, Sequence

from . import kernels


@total_ordering
class Perm:
    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation table: {list(images)}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Perm is immutable")

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(1, n + 1))

    @classmethod
    def _trusted(cls, images: tuple) -> "Perm":
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p

    @property
    def n(self) -> int:
        return len(self.images)

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        if other.n != self.n:
            raise ValueError("composing permutations of different sizes")
        return Perm._trusted(kernels.compose(self.images, other.images))

    def inverse(self) -> "Perm":
        return Perm._trusted(kernels.inverse(self.images))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, 1))

    def act(self, seq: Sequence) -> tuple:
        """The left action: the element at slot i moves to slot self(i)."""
        if len(seq) != self.n:
            raise ValueError("sequence length differs from permutation size")
        out = [None] * self.n
        for i, v in enumerate(self.images):
            out[v - 1] = seq[i]
        return tuple(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other: "Perm") -> bool:
        return (self.n, self.images) < (other.n, other.images)

    def __hash__(self) -> int:
        return hash(("Perm", self.images))

    def __repr__(self) -> str:
        return f"Perm({list(self.images)})"

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"


def symmetric_group(n: int) -> list[Perm]:
    return [Perm._trusted(tuple(i + 1 for i in p)) for p in permutations(range(n))]


def tensor(a: Perm, b: Perm) -> Perm:
    return Perm._trusted(kernels.tensor(a.images, b.images))


def tensor_all(perms: Iterable[Perm]) -> Perm:
    out = Perm.identity(0)
    for p in perms:
        out = tensor(out, p)
    return out


def gamma(parts: Sequence[Iterable[int]]) -> Perm:
    """Send the l-th smallest element of block j to l plus the widths before j."""
    parts = [tuple(sorted(b)) for b in parts]
    k = sum(len(b) for b in parts)
    if sorted(i for b in parts for i in b) != list(range(1, k + 1)):
        raise ValueError("blocks must partition {1..k}")
    return Perm._trusted(kernels.gamma(parts, k))


def multiplex(sigma: Perm, taus: Sequence[Perm]) -> Perm:
    """Move block i to block position sigma(i), permuting inside it by taus[i]."""
    if len(taus) != sigma.n:
        raise ValueError("multiplex needs one permutation per block")
    return Perm._trusted(kernels.multiplex(sigma.images, [t.images for t in taus]))


def decompose_perm(sigma: Perm, widths: Sequence[int]) -> tuple[tuple, tuple]:
    """Inverse of (parts, perms) -> tensor(perms) * gamma(parts)."""
    if sum(widths) != sigma.n or any(w < 0 for w in widths):
        raise ValueError("widths must be naturals summing to the permutation size")
    parts, images = kernels.decompose(sigma.images, list(widths))
    return tuple(frozenset(p) for p in parts), tuple(Perm._trusted(t) for t in images)


def recompose_perm(parts: Sequence[Iterable[int]], perms: Sequence[Perm]) -> Perm:
    return tensor_all(perms) * gamma(parts)


def weak_compositions(k: int, n: int):
    """All k-tuples of disjoint subsets covering {1..n}, one per map {1..n} -> {1..k},
    in the lexicographic order of the map."""
    for f in product(range(k), repeat=n):
        blocks = [[] for _ in range(k)]
        for i, j in enumerate(f, 1):
            blocks[j].append(i)
        yield tuple(frozenset(b) for b in blocks)


def width_compositions(widths: Sequence[int], items: Sequence):
    """Ordered splittings of `items` into consecutive-free blocks of the given widths.

    Yields tuples of index tuples; this is the part of `weak_compositions`
    whose block sizes match `widths`, listed in the same order.
    """
    n = len(items)
    if sum(widths) != n:
        return
    k = len(widths)
    assign = [0] * n
    counts = [0] * k

    def go(i):
        if i == n:
            blocks = [[] for _ in range(k)]
            for idx, j in enumerate(assign):
                blocks[j].append(idx)
            yield tuple(tuple(b) for b in blocks)
            return
        for j in range(k):
            if counts[j] < widths[j]:
                counts[j] += 1
                assign[i] = j
                yield from go(i + 1)
                counts[j] -= 1

    yield from go(0)


def _labels(seq: Sequence) -> tuple:
    table: dict = {}
    return tuple(table.setdefault(v, len(table)) for v in seq)


def stabilizer(seq: Sequence) -> list[Perm]:
    """{p : p . seq = seq}, enumerated element by element."""
    return [Perm._trusted(p) for p in kernels.stabilizer(_labels(seq))]


def orbit(seq: Sequence) -> set:
    """{p . seq : p in S_n}, by brute force over the whole group."""
    seq = tuple(seq)
    values: dict = {}
    for v in seq:
        values.setdefault(v, len(values))
    back = {i: v for v, i in values.items()}
    imgs, _ = kernels.orbit_stabilizer(tuple(values[v] for v in seq))
    return {tuple(back[i] for i in img) for img in imgs}


def orbit_stabilizer_counts(seq: Sequence) -> tuple[int, int, int]:
    """(|orbit|, |stabilizer|, n!) from one pass over S_n."""
    imgs, fixed = kernels.orbit_stabilizer(_labels(seq))
    return len(imgs), fixed, factorial(len(seq))
