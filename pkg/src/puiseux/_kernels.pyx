# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled enumeration kernels.

Contracts are documented once, in the fallback module puiseux._kernels_py;
the two implementations must stay interchangeable (tests compare them).
"""

BACKEND = "compiled"

DEF MAX_GENS = 32


cdef void _fact_rec(long long *g, long long *vec, int k, int i, long long rem, list out):
    cdef long long c, q, bound
    cdef int j
    if i == k - 1:
        q = rem // g[i]
        if q * g[i] == rem:
            vec[i] = q
            out.append(tuple([vec[j] for j in range(k)]))
            vec[i] = 0
        return
    bound = rem // g[i]
    for c in range(bound + 1):
        vec[i] = c
        _fact_rec(g, vec, k, i + 1, rem - c * g[i], out)
    vec[i] = 0


def factorizations_kernel(gens, x):
    """All c in N0^k with sum(c_i * gens_i) = x, ascending lexicographic."""
    cdef int k = len(gens)
    cdef long long g[MAX_GENS]
    cdef long long vec[MAX_GENS]
    cdef long long xx = x
    cdef int i
    if k == 0:
        return [()] if xx == 0 else []
    if k > MAX_GENS:
        raise ValueError("too many generators for the compiled kernel")
    for i in range(k):
        g[i] = gens[i]
        vec[i] = 0
    out = []
    _fact_rec(g, vec, k, 0, xx, out)
    return out


def oracle_grid(gens, x):
    """Factorizations of x by unpruned full-box counting (test oracle)."""
    cdef int k = len(gens)
    cdef long long g[MAX_GENS]
    cdef long long bounds[MAX_GENS]
    cdef long long idx[MAX_GENS]
    cdef long long xx = x
    cdef long long total
    cdef int i, j
    if k == 0:
        return [()] if xx == 0 else []
    if k > MAX_GENS:
        raise ValueError("too many generators for the compiled kernel")
    for i in range(k):
        g[i] = gens[i]
        bounds[i] = xx // g[i]
        idx[i] = 0
    out = []
    while True:
        total = 0
        for i in range(k):
            total += idx[i] * g[i]
        if total == xx:
            out.append(tuple([idx[j] for j in range(k)]))
        j = k - 1
        while j >= 0:
            idx[j] += 1
            if idx[j] <= bounds[j]:
                break
            idx[j] = 0
            j -= 1
        if j < 0:
            return out


def member_table(gens, limit):
    """table[n] = 1 iff n <= limit is a nonnegative combination of gens."""
    cdef long long lim = limit
    table = bytearray(lim + 1)
    cdef unsigned char[:] t = table
    cdef long long g, n
    t[0] = 1
    for g_obj in gens:
        g = g_obj
        for n in range(g, lim + 1):
            if t[n - g]:
                t[n] = 1
    return table
