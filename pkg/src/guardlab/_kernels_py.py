"""Pure-Python kernels. Same contract, same step accounting as ``_kernels.pyx``."""

COMPLETE = 0
LIMIT_REACHED = 1
BUDGET_EXCEEDED = 2


def compose(a, b):
    """Table of ``b`` after ``a``: ``c[i] = b[a[i]]``."""
    return tuple([b[i] for i in a])


def search(n, nc, cand_start, cand, cons_start, cons_a, cons_m, mats, limit, max_steps):
    """Depth-first search for maps ``s: range(n) -> range(nc)``.

    Position ``b`` may take the values ``cand[cand_start[b]:cand_start[b+1]]``
    (tried in that order).  Each constraint ``k`` in
    ``cons_start[b]:cons_start[b+1]`` requires
    ``mats[cons_m[k]*nc*nc + s[cons_a[k]]*nc + s[b]]`` to be nonzero, with
    ``cons_a[k] < b``.

    Returns ``(solutions, status)``.  ``status`` is ``COMPLETE`` when the
    whole space was explored, ``LIMIT_REACHED`` when ``limit`` solutions were
    found first, ``BUDGET_EXCEEDED`` when more than ``max_steps`` candidate
    values were tried.
    """
    sols = []
    if n == 0:
        sols.append(())
        return sols, (LIMIT_REACHED if limit <= 1 else COMPLETE)
    nn = nc * nc
    assign = [0] * n
    ci = [0] * n
    pos = 0
    ci[0] = cand_start[0] - 1
    steps = 0
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
            sols.append(tuple(assign))
            if len(sols) >= limit:
                return sols, LIMIT_REACHED
        else:
            pos += 1
            ci[pos] = cand_start[pos] - 1
    return sols, COMPLETE
