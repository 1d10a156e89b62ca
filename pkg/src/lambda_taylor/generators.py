"""Seeded, size-bounded random instances.

Constructor weights are fixed module constants so that runs are reproducible.
Uniform resource expressions are drawn from the Taylor support of a random
lambda-plus "shape". Two draws from one shape differ by monomial widths and
sum branches, which yields coherent pairs. Every draw is post-filtered with
the coherence test it is meant to satisfy.
"""

from __future__ import annotations

import random

from .resource import coherent
from .rigid import enumerate_rigids
from .terms import APP, BVAR, FVAR, INL, INR, LAM, PLUS, bound_occurrences, occurrences, size

FREE = ("x", "y", "z")

# relative weights for lambda-plus shapes
SHAPE_WEIGHTS = {"var": 3, "lam": 3, "app": 4, "redex": 2, "plus": 2}
# relative weights for raw resource terms
RES_WEIGHTS = {"var": 4, "lam": 3, "app": 4, "inj": 2}
MAX_WIDTH = 3
# chance that a sampled redex gets a matching number of arguments
MATCH_REDEX = 0.7
# chance that a uniform draw is rooted at a redex
REDEX_TOP = 0.5
TRIES = 200


def _pick(rng: random.Random, weights: dict) -> str:
    keys = list(weights)
    return rng.choices(keys, [weights[k] for k in keys])[0]


def _var(rng: random.Random, depth: int, free=FREE):
    if depth and (not free or rng.random() < 0.6):
        return (BVAR, rng.randrange(depth))
    return (FVAR, rng.choice(free))


def random_shape(rng: random.Random, budget: int, depth: int = 0, free=FREE):
    """A well-scoped lambda-plus term with at most `budget` constructors."""
    if budget <= 1:
        return _var(rng, depth, free)
    kind = _pick(rng, SHAPE_WEIGHTS)
    if kind == "var":
        return _var(rng, depth, free)
    if kind == "lam":
        return (LAM, random_shape(rng, budget - 1, depth + 1, free))
    if kind == "plus":
        k = rng.randint(1, budget - 2) if budget > 2 else 1
        return (PLUS, random_shape(rng, k, depth, free), random_shape(rng, max(budget - 1 - k, 1), depth, free))
    if kind == "redex" and budget >= 4:
        k = rng.randint(1, budget - 3)
        body = random_shape(rng, k, depth + 1, free)
        return (APP, (LAM, body), random_shape(rng, max(budget - 2 - k, 1), depth, free))
    k = rng.randint(1, max(budget - 2, 1))
    return (APP, random_shape(rng, k, depth, free), random_shape(rng, max(budget - 1 - k, 1), depth, free))


def sample_taylor(rng: random.Random, m, budget: int, max_width: int = MAX_WIDTH):
    """A random element of T(m) of size <= budget, or None."""
    if budget < 1:
        return None
    tag = m[0]
    if tag in (FVAR, BVAR):
        return m
    if tag == LAM:
        s = sample_taylor(rng, m[1], budget - 1, max_width)
        return None if s is None else (LAM, s)
    if tag == PLUS:
        side = rng.random() < 0.5
        s = sample_taylor(rng, m[1] if side else m[2], budget - 1, max_width)
        return None if s is None else ((INL if side else INR), s)
    if tag != APP:
        return None
    f = sample_taylor(rng, m[1], budget - 1, max_width)
    if f is None:
        return None
    room = budget - 1 - size(f)
    items = []
    width = rng.randint(0, max_width)
    if f[0] == LAM and rng.random() < MATCH_REDEX:
        # feed a redex exactly as many arguments as its binder has occurrences
        width = bound_occurrences(f[1])
    for _ in range(width):
        t = sample_taylor(rng, m[2], room, max_width)
        if t is None:
            break
        items.append(t)
        room -= size(t)
    return (APP, f, tuple(sorted(items)))


def random_resource(rng: random.Random, budget: int, depth: int = 0, free=FREE):
    """A raw resource term; not necessarily uniform."""
    if budget <= 1:
        return _var(rng, depth, free)
    kind = _pick(rng, RES_WEIGHTS)
    if kind == "var":
        return _var(rng, depth, free)
    if kind == "lam":
        return (LAM, random_resource(rng, budget - 1, depth + 1, free))
    if kind == "inj":
        return (rng.choice((INL, INR)), random_resource(rng, budget - 1, depth, free))
    f = random_resource(rng, rng.randint(1, budget - 1), depth, free)
    room = budget - 1 - size(f)
    items = []
    while room > 0 and len(items) < MAX_WIDTH and rng.random() < 0.7:
        # reuse an earlier element now and then so that multiplicities show up
        if items and rng.random() < 0.35:
            t = rng.choice(items)
            if size(t) > room:
                break
        else:
            t = random_resource(rng, rng.randint(1, room), depth, free)
        items.append(t)
        room -= size(t)
    return (APP, f, tuple(sorted(items)))


def random_uniform(rng: random.Random, max_size: int, shape_size: int = 8, need=None):
    """A uniform (self-coherent) resource term of size <= max_size."""
    for _ in range(TRIES):
        if rng.random() < 0.85:
            m = random_shape(rng, rng.randint(3, shape_size))
            if rng.random() < REDEX_TOP:
                # a closed body duplicates its argument, so copies collide
                body = random_shape(rng, rng.randint(2, shape_size), 1, free=())
                m = (APP, (LAM, body), random_shape(rng, rng.randint(1, 3)))
            e = sample_taylor(rng, m, max_size)
        else:
            e = random_resource(rng, rng.randint(1, max_size))
        if e is None or size(e) > max_size or not coherent(e, e):
            continue
        if need is None or need(e):
            return e
    raise RuntimeError("could not draw a uniform instance; loosen the constraints")


def random_coherent_pair(rng: random.Random, max_size: int, shape_size: int = 8):
    """(e, e2) with e coherent with e2, sometimes equal, sometimes non-uniform."""
    for _ in range(TRIES):
        r = rng.random()
        if r < 0.1:
            e = random_uniform(rng, max_size, shape_size)
            return e, e
        if r < 0.25:
            # opposite sum branches are coherent whatever they carry
            k = max(max_size - 1, 1)
            e = (INL, random_resource(rng, rng.randint(1, k)))
            e2 = (INR, random_resource(rng, rng.randint(1, k)))
            if rng.random() < 0.5:
                e, e2 = e2, e
            return e, e2
        m = random_shape(rng, rng.randint(3, shape_size))
        e = sample_taylor(rng, m, max_size)
        e2 = sample_taylor(rng, m, max_size)
        if e is None or e2 is None or size(e) > max_size or size(e2) > max_size:
            continue
        if coherent(e, e2) and coherent(e, e) and coherent(e2, e2):
            return e, e2
    raise RuntimeError("could not draw a coherent pair")


def random_monomial(rng: random.Random, width: int, max_size: int, pool_size: int = 2):
    """A monomial of the given width whose elements come from a small pool."""
    per = max(1, max_size // max(width, 1))
    pool = [random_resource(rng, rng.randint(1, per)) for _ in range(pool_size)]
    return tuple(sorted(rng.choice(pool) for _ in range(width)))


def random_uniform_with(rng: random.Random, x: str, max_occ: int, max_size: int):
    """A uniform term with between 1 and max_occ free occurrences of x."""
    return random_uniform(rng, max_size, need=lambda e: 1 <= occurrences(e, x) <= max_occ)


def random_rigid(rng: random.Random, e, cap: int = 64):
    reps = enumerate_rigids_capped(e, cap)
    return rng.choice(reps)


def enumerate_rigids_capped(e, cap: int):
    reps = enumerate_rigids(e)
    return reps if len(reps) <= cap else reps[:cap]


def random_perm_images(rng: random.Random, n: int) -> tuple:
    p = list(range(1, n + 1))
    rng.shuffle(p)
    return tuple(p)
