# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels. Mirrors ``_kernels_py`` exactly, step counts included."""

cdef int COMPLETE = 0
cdef int LIMIT_REACHED = 1
cdef int BUDGET_EXCEEDED = 2


def compose(a, b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [None] * n
    for i in range(n):
        out[i] = b[a[i]]
    return tuple(out)


def search(int n, int nc, const int[:] cand_start, const int[:] cand,
           const int[:] cons_start, const int[:] cons_a, const int[:] cons_m,
           const unsigned char[:] mats, long limit, long max_steps):
    cdef list sols = []
    if n == 0:
        sols.append(())
        return sols, (LIMIT_REACHED if limit <= 1 else COMPLETE)
    cdef long nn = <long>nc * nc
    cdef int[:] assign = _zeros(n)
    cdef int[:] ci = _zeros(n)
    cdef int pos = 0, v, k
    cdef long steps = 0
    cdef bint ok
    ci[0] = cand_start[0] - 1
    while pos >= 0:
        ci[pos] += 1
        if ci[pos] >= cand_start[pos + 1]:
            pos -= 1
            continue
        v = cand[ci[pos]]
        steps += 1
        if steps > max_steps:
            return sols, BUDGET_EXCEEDED
        ok = True
        for k in range(cons_start[pos], cons_start[pos + 1]):
            if not mats[cons_m[k] * nn + assign[cons_a[k]] * nc + v]:
                ok = False
                break
        if not ok:
            continue
        assign[pos] = v
        if pos == n - 1:
            sols.append(tuple([assign[k] for k in range(n)]))
            if len(sols) >= limit:
                return sols, LIMIT_REACHED
        else:
            pos += 1
            ci[pos] = cand_start[pos] - 1
    return sols, COMPLETE


cdef int[:] _zeros(int n):
    import array
    return array.array("i", [0] * n)
