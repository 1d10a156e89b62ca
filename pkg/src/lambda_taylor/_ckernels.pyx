# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled permutation kernels, result-for-result equal to _pykernels."""

from libc.stdlib cimport malloc, free, qsort
from libc.stdint cimport uint64_t

from . import _pykernels


def compose(tuple a, tuple b):
    cdef Py_ssize_t n = len(b), i
    out = [0] * n
    for i in range(n):
        out[i] = a[<Py_ssize_t>b[i] - 1]
    return tuple(out)


def inverse(tuple a):
    cdef Py_ssize_t n = len(a), i
    out = [0] * n
    for i in range(n):
        out[<Py_ssize_t>a[i] - 1] = i + 1
    return tuple(out)


def tensor(tuple a, tuple b):
    cdef Py_ssize_t n = len(a)
    return a + tuple([n + j for j in b])


def multiplex(tuple sigma, list taus):
    cdef Py_ssize_t n = len(sigma), i, j, base
    cdef list widths = [len(t) for t in taus]
    inv = inverse(sigma)
    cdef list offset = [0] * (n + 1)
    for j in range(n):
        offset[j + 1] = offset[j] + widths[<Py_ssize_t>inv[j] - 1]
    out = []
    for i in range(n):
        base = offset[<Py_ssize_t>sigma[i] - 1]
        for v in taus[i]:
            out.append(base + v)
    return tuple(out)


def gamma(parts, Py_ssize_t k):
    return _pykernels.gamma(parts, k)


def decompose(tuple sigma, widths):
    return _pykernels.decompose(sigma, widths)


cdef int _count_stab(int *lab, int *used, int *cur, int i, int n, list out):
    cdef int j, total = 0
    if i == n:
        out.append(tuple([cur[j] for j in range(n)]))
        return 1
    for j in range(n):
        if not used[j] and lab[j] == lab[i]:
            used[j] = 1
            cur[i] = j + 1
            total += _count_stab(lab, used, cur, i + 1, n, out)
            used[j] = 0
    return total


def stabilizer(tuple labels):
    cdef int n = len(labels), i
    cdef int *lab = <int *>malloc((3 * n + 1) * sizeof(int))
    cdef list out = []
    try:
        for i in range(n):
            lab[i] = labels[i]
            lab[n + i] = 0
        _count_stab(lab, lab + n, lab + 2 * n, 0, n, out)
    finally:
        free(lab)
    return out


cdef int _cmp_u64(const void *a, const void *b) noexcept nogil:
    cdef uint64_t x = (<uint64_t *>a)[0]
    cdef uint64_t y = (<uint64_t *>b)[0]
    return (x > y) - (x < y)


def orbit_stabilizer(tuple labels):
    cdef int n = len(labels), i, j, tmp
    cdef uint64_t base = 1, key, target = 0, total = 1, idx = 0, fixed = 0
    cdef double bound = 1.0
    for v in labels:
        if v + 1 > base:
            base = v + 1
    for i in range(n):
        bound *= base
        total *= i + 1
    if n > 12 or bound >= 1.8e19:
        return _pykernels.orbit_stabilizer(labels)
    cdef int *lab = <int *>malloc((3 * n + 1) * sizeof(int))
    cdef int *perm = lab + n
    cdef int *c = lab + 2 * n
    cdef uint64_t *keys = <uint64_t *>malloc(total * sizeof(uint64_t))
    cdef uint64_t *pw = <uint64_t *>malloc((n + 1) * sizeof(uint64_t))
    try:
        for i in range(n):
            lab[i] = labels[i]
            perm[i] = i
            c[i] = 0
        pw[0] = 1
        for i in range(1, n + 1):
            pw[i] = pw[i - 1] * base
        for i in range(n):
            target += lab[i] * pw[i]
        # Heap's algorithm; the image of label i lands at position perm[i]
        while True:
            key = 0
            for i in range(n):
                key += lab[i] * pw[perm[i]]
            keys[idx] = key
            idx += 1
            if key == target:
                fixed += 1
            i = 1
            while i < n and c[i] >= i:
                c[i] = 0
                i += 1
            if i >= n:
                break
            j = c[i] if i % 2 else 0
            tmp = perm[j]
            perm[j] = perm[i]
            perm[i] = tmp
            c[i] += 1
        qsort(keys, idx, sizeof(uint64_t), _cmp_u64)
        orbit = []
        for i in range(<int>idx):
            if i and keys[i] == keys[i - 1]:
                continue
            key = keys[i]
            img = []
            for j in range(n):
                img.append(<int>(key % base))
                key //= base
            orbit.append(tuple(img))
    finally:
        free(lab)
        free(keys)
        free(pw)
    orbit.sort()
    return orbit, int(fixed)


def permanent(list matrix):
    cdef int n = len(matrix), i, j
    cdef double bound = 1.0
    if n == 0:
        return 1
    for i in range(n):
        m = max(matrix[i])
        bound *= max(m, 1) * (i + 1)
    if n > 20 or bound >= 4e18:
        return _pykernels.permanent(matrix)
    cdef long long *mat = <long long *>malloc(n * n * sizeof(long long))
    cdef long long *dp = <long long *>malloc((1 << n) * sizeof(long long))
    cdef unsigned int mask, full = (1 << n) - 1, bits
    cdef long long val
    try:
        for i in range(n):
            for j in range(n):
                mat[i * n + j] = matrix[i][j]
        for mask in range(full + 1):
            dp[mask] = 0
        dp[0] = 1
        for mask in range(full):
            val = dp[mask]
            if val == 0:
                continue
            bits = mask
            i = 0
            while bits:
                bits &= bits - 1
                i += 1
            for j in range(n):
                if not (mask >> j) & 1 and mat[i * n + j]:
                    dp[mask | (1 << j)] += val * mat[i * n + j]
        return int(dp[full])
    finally:
        free(mat)
        free(dp)
