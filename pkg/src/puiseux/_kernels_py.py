"""Pure-Python fallback for the enumeration kernels.

Same contracts as the compiled module puiseux._kernels; puiseux.kernels
picks whichever is available.  All three functions work on plain machine
integers (generators and targets are small by construction).
"""

from __future__ import annotations

BACKEND = "pure"


def factorizations_kernel(gens: tuple[int, ...], x: int) -> list[tuple[int, ...]]:
    """All c in N0^k with sum(c_i * gens_i) = x, ascending lexicographic.

    gens must be positive; a strictly ascending gens list gives the orders
    the callers document.  Prunes by remaining value.
    """
    k = len(gens)
    if k == 0:
        return [()] if x == 0 else []
    out: list[tuple[int, ...]] = []
    vec = [0] * k

    def rec(i: int, rem: int) -> None:
        if i == k - 1:
            q, r = divmod(rem, gens[i])
            if r == 0:
                vec[i] = q
                out.append(tuple(vec))
                vec[i] = 0
            return
        g = gens[i]
        for c in range(rem // g + 1):
            vec[i] = c
            rec(i + 1, rem - c * g)
        vec[i] = 0

    rec(0, x)
    return out


def oracle_grid(gens: tuple[int, ...], x: int) -> list[tuple[int, ...]]:
    """Factorizations of x by unpruned full-box counting.

    Deliberately independent of factorizations_kernel: walks every vector in
    prod_i [0, x // gens_i] like an odometer and keeps the exact hits.  Used
    only as a test oracle.
    """
    k = len(gens)
    if k == 0:
        return [()] if x == 0 else []
    bounds = [x // g for g in gens]
    idx = [0] * k
    out: list[tuple[int, ...]] = []
    while True:
        total = 0
        for i in range(k):
            total += idx[i] * gens[i]
        if total == x:
            out.append(tuple(idx))
        j = k - 1
        while j >= 0:
            idx[j] += 1
            if idx[j] <= bounds[j]:
                break
            idx[j] = 0
            j -= 1
        if j < 0:
            return out


def member_table(gens: tuple[int, ...], limit: int) -> bytearray:
    """table[n] = 1 iff n <= limit is a nonnegative combination of gens."""
    table = bytearray(limit + 1)
    table[0] = 1
    for g in gens:
        for n in range(g, limit + 1):
            if table[n - g]:
                table[n] = 1
    return table
