# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for word-sized inputs.

Same contracts as :mod:`ssekit._kernels.pure`.  Callers must guarantee that
every intermediate value fits in a signed 64-bit word; the dispatch layer
checks bounds before choosing this path.
"""

from cpython cimport array

import array

cdef array.array _I64 = array.array('q', [])


def matmul_i64(object a, Py_ssize_t n, Py_ssize_t k, object b, Py_ssize_t m):
    """Multiply an n*k by a k*m flat row-major matrix into a flat list."""
    cdef array.array aa = array.array('q', a)
    cdef array.array bb = array.array('q', b)
    cdef array.array oo = array.clone(_I64, n * m, zero=True)
    cdef long long[::1] av = aa
    cdef long long[::1] bv = bb
    cdef long long[::1] ov = oo
    cdef Py_ssize_t i, j, t
    cdef long long x
    for i in range(n):
        for t in range(k):
            x = av[i * k + t]
            if x == 0:
                continue
            for j in range(m):
                ov[i * m + j] += x * bv[t * m + j]
    return oo.tolist()


cdef tuple _gen_candidates(Py_ssize_t m, long long e, long long target):
    # Nonzero vectors in [0, e]^m with sum*e >= target, ascending lex order.
    cdef list buf = []
    cdef array.array vec_a = array.clone(_I64, m, zero=True)
    cdef long long[::1] vec = vec_a
    cdef long long s = 0
    cdef Py_ssize_t pos, t
    while True:
        if s > 0 and s * e >= target:
            for t in range(m):
                buf.append(vec[t])
        pos = m - 1
        while pos >= 0 and vec[pos] == e:
            s -= e
            vec[pos] = 0
            pos -= 1
        if pos < 0:
            break
        vec[pos] += 1
        s += 1
    return array.array('q', buf), len(buf) // m


cdef int _solve_col(long long* cmat, long long* suffix, long long* target,
                    Py_ssize_t n, Py_ssize_t m, long long e,
                    long long* vec, long long* sums, Py_ssize_t k,
                    list out) except -1:
    # DFS over the entries of one column d of D, ascending, with overshoot
    # and reachability pruning.  sums holds partial row sums per level.
    cdef long long* base = sums + k * n
    cdef long long* cur = sums + (k + 1) * n
    cdef Py_ssize_t i
    cdef long long d, s
    cdef bint over, reach, nz
    if k == m:
        for i in range(n):
            if base[i] != target[i]:
                return 0
        nz = False
        for i in range(m):
            if vec[i] != 0:
                nz = True
                break
        if nz:
            out.append(tuple([vec[i] for i in range(m)]))
        return 0
    for d in range(e + 1):
        over = False
        for i in range(n):
            s = base[i] + cmat[i * m + k] * d
            cur[i] = s
            if s > target[i]:
                over = True
                break
        if over:
            break
        reach = True
        for i in range(n):
            if cur[i] + suffix[i * (m + 1) + k + 1] < target[i]:
                reach = False
                break
        if reach:
            vec[k] = d
            _solve_col(cmat, suffix, target, n, m, e, vec, sums, k + 1, out)
    return 0


def factor_search_i64(object a, Py_ssize_t n, Py_ssize_t m, long long e,
                      object limit):
    """Enumerate (c_flat, d_flat) pairs with C*D == a; see the pure twin."""
    cdef long long lim = -1
    if limit is not None:
        lim = limit
        if lim <= 0:
            return []

    cdef array.array aa = array.array('q', a)
    cdef long long[::1] A = aa
    cdef Py_ssize_t i, j, k, g, level, clevel, base_off
    cdef long long rm
    cdef bint ok, nz, feasible

    # distinct columns of A in first-occurrence order
    cdef list col_keys = []
    cdef dict col_group = {}
    cdef array.array grp_a = array.clone(_I64, n, zero=True)
    cdef long long[::1] grp = grp_a
    for j in range(n):
        key = tuple([A[i * n + j] for i in range(n)])
        gobj = col_group.get(key)
        if gobj is None:
            gobj = len(col_keys)
            col_group[key] = gobj
            col_keys.append(key)
        grp[j] = <long long> gobj
    cdef Py_ssize_t ngroups = len(col_keys)

    cdef array.array tgt_a = array.clone(_I64, ngroups * n, zero=True)
    cdef long long[::1] tgt = tgt_a
    for g in range(ngroups):
        key = col_keys[g]
        for i in range(n):
            tgt[g * n + i] = key[i]

    # candidate row tables, one per distinct row maximum, packed in an arena
    cdef list arena_buf = []
    cdef dict tbl = {}
    cdef array.array cstart_a = array.clone(_I64, n, zero=True)
    cdef array.array ccount_a = array.clone(_I64, n, zero=True)
    cdef long long[::1] cstart = cstart_a
    cdef long long[::1] ccount = ccount_a
    for i in range(n):
        rm = A[i * n]
        for j in range(1, n):
            if A[i * n + j] > rm:
                rm = A[i * n + j]
        got = tbl.get(rm)
        if got is None:
            flat, cnt = _gen_candidates(m, e, rm)
            got = (len(arena_buf), cnt)
            arena_buf.extend(flat)
            tbl[rm] = got
        cstart[i] = <long long> got[0]
        ccount[i] = <long long> got[1]
        if ccount[i] == 0:
            return []
    cdef array.array arena_a = array.array('q', arena_buf)
    cdef long long[::1] arena = arena_a

    cdef array.array cmat_a = array.clone(_I64, n * m, zero=True)
    cdef array.array suffix_a = array.clone(_I64, n * (m + 1), zero=True)
    cdef array.array vec_a = array.clone(_I64, m, zero=True)
    cdef array.array sums_a = array.clone(_I64, (m + 1) * n, zero=True)
    cdef array.array odo_a = array.clone(_I64, n, zero=True)
    cdef array.array sidx_a = array.clone(_I64, n, zero=True)
    cdef long long[::1] cmat = cmat_a
    cdef long long[::1] suffix = suffix_a
    cdef long long[::1] vec = vec_a
    cdef long long[::1] sums = sums_a
    cdef long long[::1] odo = odo_a
    cdef long long[::1] sidx = sidx_a

    cdef list results = []
    cdef list group_sols, gmasks, sols, masks, block, pm, chosen
    cdef object full, bits, c_flat

    level = 0
    odo[0] = -1
    while level >= 0:
        odo[level] += 1
        if odo[level] >= ccount[level]:
            level -= 1
            continue
        base_off = <Py_ssize_t> (cstart[level] + odo[level] * m)
        for k in range(m):
            cmat[level * m + k] = arena[base_off + k]
        if level < n - 1:
            level += 1
            odo[level] = -1
            continue

        # full C assembled: reject a zero column early
        ok = True
        for k in range(m):
            nz = False
            for i in range(n):
                if cmat[i * m + k] != 0:
                    nz = True
                    break
            if not nz:
                ok = False
                break
        if not ok:
            continue

        for i in range(n):
            suffix[i * (m + 1) + m] = 0
            for k in range(m - 1, -1, -1):
                suffix[i * (m + 1) + k] = (
                    suffix[i * (m + 1) + k + 1] + e * cmat[i * m + k]
                )

        feasible = True
        group_sols = []
        for g in range(ngroups):
            sols = []
            for i in range(n):
                sums[i] = 0
            _solve_col(&cmat[0], &suffix[0], &tgt[g * n], n, m, e,
                       &vec[0], &sums[0], 0, sols)
            if not sols:
                feasible = False
                break
            group_sols.append(sols)
        if not feasible:
            continue

        gmasks = []
        for g in range(ngroups):
            sols = <list> group_sols[g]
            masks = []
            for sol in sols:
                bits = 0
                for k in range(m):
                    if sol[k]:
                        bits = bits | (1 << k)
                masks.append(bits)
            gmasks.append(masks)

        block = []
        full = (1 << m) - 1
        pm = [0] * (n + 1)
        clevel = 0
        sidx[0] = -1
        while clevel >= 0:
            sidx[clevel] += 1
            g = <Py_ssize_t> grp[clevel]
            if sidx[clevel] >= <long long> len(<list> group_sols[g]):
                clevel -= 1
                continue
            pm[clevel + 1] = pm[clevel] | (<list> gmasks[g])[sidx[clevel]]
            if clevel < n - 1:
                clevel += 1
                sidx[clevel] = -1
                continue
            if pm[n] == full:
                chosen = [
                    (<list> group_sols[<Py_ssize_t> grp[j]])[sidx[j]]
                    for j in range(n)
                ]
                block.append(
                    tuple([chosen[j][k] for k in range(m) for j in range(n)])
                )

        if block:
            block.sort()
            c_flat = tuple([cmat[i] for i in range(n * m)])
            for d_flat in block:
                results.append((c_flat, d_flat))
                if 0 <= lim <= len(results):
                    return results
    return results
