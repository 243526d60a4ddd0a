"""Pure-Python kernels.

Fallback implementations of the two hot loops: exact matrix multiplication
and the bounded factorization search.  They work on flat row-major sequences
of Python ints, so results stay exact at any magnitude.  The compiled twins
in ``_core`` implement the same contracts for word-sized inputs; callers
dispatch through :mod:`ssekit._kernels`.
"""

from itertools import product as _product
from operator import mul as _mul


def matmul(a, n, k, b, m):
    """Multiply an n*k by a k*m flat row-major matrix into a flat list."""
    if k == 0:
        return [0] * (n * m)
    bcols = [b[j::m] for j in range(m)]
    out = []
    append = out.append
    for i in range(n):
        row = a[i * k : (i + 1) * k]
        for col in bcols:
            append(sum(map(_mul, row, col)))
    return out


class _Truncated(Exception):
    # unwinds the search once `limit` results have been collected
    pass


def factor_search(a, n, m, max_entry, limit=None):
    """Enumerate pairs (C, D) with C*D equal to the n*n matrix ``a``.

    C is n*m, D is m*n, entries lie in [0, max_entry], and no row or column
    of either factor is zero.  Returns (c_flat, d_flat) tuples of row-major
    ints, ordered lexicographically: ascending by C, then by D.  ``limit``
    truncates the output; None means unbounded.
    """
    e = max_entry
    rows_a = [tuple(a[i * n : (i + 1) * n]) for i in range(n)]
    row_max = [max(r) for r in rows_a]
    col_targets = [tuple(rows_a[i][j] for i in range(n)) for j in range(n)]

    # Candidate rows for C, shared between rows with the same largest target:
    # nonzero vectors in [0, e]^m whose entries can still reach that target.
    cand_cache = {}

    def candidates(target):
        got = cand_cache.get(target)
        if got is None:
            got = [
                v
                for v in _product(range(e + 1), repeat=m)
                if any(v) and sum(v) * e >= target
            ]
            cand_cache[target] = got
        return got

    results = []
    c_rows = [None] * n

    def solve_column(suffix, target):
        # All d in [0, e]^m with C*d == target, ascending lex, zero excluded.
        sols = []
        vec = [0] * m
        sums = [(0,) * n]

        def rec(k):
            base = sums[-1]
            if k == m:
                if base == target and any(vec):
                    sols.append(tuple(vec))
                return
            for d in range(e + 1):
                cur = tuple(base[i] + c_rows[i][k] * d for i in range(n))
                if any(cur[i] > target[i] for i in range(n)):
                    break
                if all(cur[i] + suffix[i][k + 1] >= target[i] for i in range(n)):
                    vec[k] = d
                    sums.append(cur)
                    rec(k + 1)
                    sums.pop()

        rec(0)
        return sols

    def emit_for_c():
        for k in range(m):
            if not any(c_rows[i][k] for i in range(n)):
                return
        # suffix[i][k] bounds what columns k.. of row i can still contribute
        suffix = []
        for i in range(n):
            rem = [0] * (m + 1)
            for k in range(m - 1, -1, -1):
                rem[k] = rem[k + 1] + e * c_rows[i][k]
            suffix.append(rem)
        memo = {}
        per_col = []
        for j in range(n):
            target = col_targets[j]
            sols = memo.get(target)
            if sols is None:
                sols = solve_column(suffix, target)
                memo[target] = sols
            if not sols:
                return
            per_col.append(sols)
        block = []
        full_mask = (1 << m) - 1
        chosen = [None] * n

        def assemble(j, mask):
            if j == n:
                if mask == full_mask:
                    block.append(
                        tuple(chosen[jj][k] for k in range(m) for jj in range(n))
                    )
                return
            for sol in per_col[j]:
                chosen[j] = sol
                bits = mask
                for k in range(m):
                    if sol[k]:
                        bits |= 1 << k
                assemble(j + 1, bits)

        assemble(0, 0)
        if block:
            block.sort()
            c_flat = tuple(x for row in c_rows for x in row)
            for d_flat in block:
                results.append((c_flat, d_flat))
                if limit is not None and len(results) >= limit:
                    raise _Truncated

    def rec_c(i):
        if i == n:
            emit_for_c()
            return
        for v in candidates(row_max[i]):
            c_rows[i] = v
            rec_c(i + 1)

    if limit is not None and limit <= 0:
        return []
    try:
        rec_c(0)
    except _Truncated:
        pass
    return results
