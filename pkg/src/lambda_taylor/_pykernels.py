"""Pure-Python permutation kernels.

Permutations are 1-based image tables: p[i-1] is the image of i. The compiled
module `_ckernels` exposes the same functions with the same results.
"""

from __future__ import annotations

from itertools import permutations


def compose(a: tuple, b: tuple) -> tuple:
    """(a b)(i) = a(b(i))."""
    return tuple(a[j - 1] for j in b)


def inverse(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, j in enumerate(a, 1):
        out[j - 1] = i
    return tuple(out)


def tensor(a: tuple, b: tuple) -> tuple:
    n = len(a)
    return tuple(a) + tuple(n + j for j in b)


def multiplex(sigma: tuple, taus: list) -> tuple:
    n = len(sigma)
    widths = [len(t) for t in taus]
    inv = inverse(sigma)
    # offset of target block j is the total width of the blocks sent before it
    offset = [0] * (n + 1)
    for j in range(n):
        offset[j + 1] = offset[j] + widths[inv[j] - 1]
    out = []
    for i in range(n):
        base = offset[sigma[i] - 1]
        out.extend(base + v for v in taus[i])
    return tuple(out)


def gamma(parts: list, k: int) -> tuple:
    out = [0] * k
    pos = 1
    for block in parts:
        for i in sorted(block):
            out[i - 1] = pos
            pos += 1
    return tuple(out)


def decompose(sigma: tuple, widths: list) -> tuple:
    starts = [0]
    for w in widths:
        starts.append(starts[-1] + w)
    parts = [[] for _ in widths]
    images = [[] for _ in widths]
    block_of = {}
    for j in range(len(widths)):
        for v in range(starts[j] + 1, starts[j + 1] + 1):
            block_of[v] = j
    for i, v in enumerate(sigma, 1):
        j = block_of[v]
        parts[j].append(i)
        images[j].append(v - starts[j])
    return tuple(tuple(p) for p in parts), tuple(tuple(t) for t in images)


def stabilizer(labels: tuple) -> list:
    """All p with labels[p(i)] == labels[i], by backtracking over equal labels."""
    n = len(labels)
    out = []
    used = [False] * n
    cur = [0] * n

    def go(i):
        if i == n:
            out.append(tuple(cur))
            return
        for j in range(n):
            if not used[j] and labels[j] == labels[i]:
                used[j] = True
                cur[i] = j + 1
                go(i + 1)
                used[j] = False

    go(0)
    return out


def orbit_stabilizer(labels: tuple) -> tuple:
    """Brute force over all of S_n: (sorted orbit, number of fixing elements)."""
    n = len(labels)
    seen = set()
    fixed = 0
    labels = tuple(labels)
    for p in permutations(range(n)):
        img = [None] * n
        for i in range(n):
            img[p[i]] = labels[i]
        img = tuple(img)
        seen.add(img)
        if img == labels:
            fixed += 1
    return sorted(seen), fixed


def permanent(matrix: list) -> int:
    n = len(matrix)
    if n == 0:
        return 1
    dp = {0: 1}
    for i in range(n):
        row = matrix[i]
        nxt = {}
        for mask, val in dp.items():
            for j in range(n):
                c = row[j]
                if c and not mask >> j & 1:
                    m2 = mask | 1 << j
                    nxt[m2] = nxt.get(m2, 0) + val * c
        dp = nxt
        if not dp:
            return 0
    return dp.get((1 << n) - 1, 0)
