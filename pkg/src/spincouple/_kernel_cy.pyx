# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled twin of _kernel_pure, running on raw GMP rationals.

The tableau lives in a malloc'd array of mpq_t and the pivot loop issues
direct libgmp calls, with no Python objects or refcounting in the hot
path.  The extension links the GMP library bundled with gmpy2, so mpq
payloads are copied straight between gmpy2 objects and the pool.

The pivot logic must stay in lockstep with _kernel_pure (same Bland
order, same drive-out and row dropping); tests assert the two kernels
produce identical outcomes, witnesses included.
"""

from libc.stdlib cimport free, malloc

cimport gmpy2 as g

import gmpy2

g.import_gmpy2()

FEASIBLE = 0
INFEASIBLE = 1
UNBOUNDED = 2

cdef extern from "gmp.h":
    void mpq_init(g.mpq_ptr)
    void mpq_clear(g.mpq_ptr)
    void mpq_set_si(g.mpq_ptr, long, unsigned long)
    void mpq_sub(g.mpq_ptr, g.mpq_srcptr, g.mpq_srcptr)
    void mpq_mul(g.mpq_ptr, g.mpq_srcptr, g.mpq_srcptr)
    void mpq_div(g.mpq_ptr, g.mpq_srcptr, g.mpq_srcptr)
    void mpq_inv(g.mpq_ptr, g.mpq_srcptr)
    void mpq_neg(g.mpq_ptr, g.mpq_srcptr)
    int mpq_sgn(g.mpq_srcptr)
    int mpq_cmp(g.mpq_srcptr, g.mpq_srcptr)
    int mpq_cmp_si(g.mpq_srcptr, long, unsigned long)
    int mpq_equal(g.mpq_srcptr, g.mpq_srcptr)


cdef struct Tab:
    g.__mpq_struct *pool    # m tableau rows | reduced-cost row | 3 temporaries
    Py_ssize_t *rowptr      # pool offset of live row i; dropping a row shifts this
    Py_ssize_t *basis       # basis[i] >= n marks a phase-1 artificial
    Py_ssize_t mrows
    Py_ssize_t n
    Py_ssize_t width        # n original columns + rhs
    g.__mpq_struct *d
    g.mpq_ptr fac
    g.mpq_ptr prod
    g.mpq_ptr best


cdef int _load(g.mpq_ptr slot, object v) except -1:
    if not g.MPQ_Check(v):
        v = gmpy2.mpq(v)
    g.mpq_set(slot, (<g.mpq> v).q)
    return 0


cdef void _pivot(Tab *t, Py_ssize_t r, Py_ssize_t e):
    cdef g.__mpq_struct *Tr = t.pool + t.rowptr[r]
    cdef g.__mpq_struct *Ti
    cdef Py_ssize_t i, j
    if mpq_cmp_si(&Tr[e], 1, 1) != 0:
        mpq_inv(t.fac, &Tr[e])
        for j in range(t.width):
            if mpq_sgn(&Tr[j]) != 0:
                mpq_mul(&Tr[j], &Tr[j], t.fac)
    for i in range(t.mrows):
        if i == r:
            continue
        Ti = t.pool + t.rowptr[i]
        if mpq_sgn(&Ti[e]) != 0:
            g.mpq_set(t.fac, &Ti[e])
            for j in range(t.width):
                if mpq_sgn(&Tr[j]) != 0:
                    mpq_mul(t.prod, t.fac, &Tr[j])
                    mpq_sub(&Ti[j], &Ti[j], t.prod)
    if mpq_sgn(&t.d[e]) != 0:
        g.mpq_set(t.fac, &t.d[e])
        for j in range(t.width):
            if mpq_sgn(&Tr[j]) != 0:
                mpq_mul(t.prod, t.fac, &Tr[j])
                mpq_sub(&t.d[j], &t.d[j], t.prod)
    t.basis[r] = e


cdef bint _run(Tab *t):
    # Bland's rule: lowest-index entering, ratio ties broken by lowest
    # basis index.  Returns False when the entering column is unbounded.
    cdef Py_ssize_t enter, leave, i, j
    cdef g.__mpq_struct *Ti
    while True:
        enter = -1
        for j in range(t.n):
            if mpq_sgn(&t.d[j]) < 0:
                enter = j
                break
        if enter < 0:
            return True
        leave = -1
        for i in range(t.mrows):
            Ti = t.pool + t.rowptr[i]
            if mpq_sgn(&Ti[enter]) > 0:
                mpq_div(t.prod, &Ti[t.width - 1], &Ti[enter])
                if leave < 0 or mpq_cmp(t.prod, t.best) < 0 or (
                        mpq_equal(t.prod, t.best) and t.basis[i] < t.basis[leave]):
                    g.mpq_set(t.best, t.prod)
                    leave = i
        if leave < 0:
            return False
        _pivot(t, leave, enter)


cdef list _witness(Tab *t, object zero):
    cdef list x = [zero] * t.n
    cdef Py_ssize_t i
    for i in range(t.mrows):
        x[t.basis[i]] = g.GMPy_MPQ_From_mpq(
            <g.mpq_srcptr> (t.pool + t.rowptr[i] + t.width - 1))
    return x


def solve(rows, rhs, objective, maximize, zero, one):
    """Same contract as _kernel_pure.solve; arithmetic is gmpy2.mpq."""
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t n
    if m:
        n = len(rows[0])
    elif objective is not None:
        n = len(objective)
    else:
        n = 0
    cdef Py_ssize_t width = n + 1
    cdef Py_ssize_t nslots = (m + 1) * width + 3
    cdef Py_ssize_t k, i, j, r, col
    cdef g.__mpq_struct *base
    cdef Tab t
    t.pool = <g.__mpq_struct *> malloc(nslots * sizeof(g.__mpq_struct))
    t.rowptr = <Py_ssize_t *> malloc((m + 1) * sizeof(Py_ssize_t))
    t.basis = <Py_ssize_t *> malloc((m + 1) * sizeof(Py_ssize_t))
    if t.pool == NULL or t.rowptr == NULL or t.basis == NULL:
        free(t.pool)
        free(t.rowptr)
        free(t.basis)
        raise MemoryError()
    for k in range(nslots):
        mpq_init(&t.pool[k])
    t.mrows = m
    t.n = n
    t.width = width
    t.d = t.pool + m * width
    t.fac = &t.pool[(m + 1) * width]
    t.prod = &t.pool[(m + 1) * width + 1]
    t.best = &t.pool[(m + 1) * width + 2]
    try:
        for i in range(m):
            t.rowptr[i] = i * width
            t.basis[i] = n + i
            rowvals = rows[i]
            base = t.pool + i * width
            for j in range(n):
                _load(&base[j], rowvals[j])
            _load(&base[n], rhs[i])
            if mpq_sgn(&base[n]) < 0:
                for j in range(width):
                    if mpq_sgn(&base[j]) != 0:
                        mpq_neg(&base[j], &base[j])
        # phase-1 reduced costs: d = -(column sums), rhs slot included
        for i in range(m):
            base = t.pool + t.rowptr[i]
            for j in range(width):
                if mpq_sgn(&base[j]) != 0:
                    mpq_sub(&t.d[j], &t.d[j], &base[j])
        _run(&t)
        if mpq_sgn(&t.d[width - 1]) != 0:
            return INFEASIBLE, None, None

        # Pivot leftover artificials out of the basis; rows with no nonzero
        # original coefficient are redundant and dropped.
        r = 0
        while r < t.mrows:
            if t.basis[r] >= n:
                base = t.pool + t.rowptr[r]
                col = -1
                for j in range(n):
                    if mpq_sgn(&base[j]) != 0:
                        col = j
                        break
                if col >= 0:
                    _pivot(&t, r, col)
                    r += 1
                else:
                    for i in range(r, t.mrows - 1):
                        t.rowptr[i] = t.rowptr[i + 1]
                        t.basis[i] = t.basis[i + 1]
                    t.mrows -= 1
            else:
                r += 1

        if objective is None:
            return FEASIBLE, _witness(&t, zero), None

        cobj = [-v for v in objective] if maximize else list(objective)
        for j in range(width):
            mpq_set_si(&t.d[j], 0, 1)
        for j in range(n):
            _load(&t.d[j], cobj[j])
        for i in range(t.mrows):
            _load(t.fac, cobj[t.basis[i]])
            if mpq_sgn(t.fac) != 0:
                base = t.pool + t.rowptr[i]
                for j in range(width):
                    if mpq_sgn(&base[j]) != 0:
                        mpq_mul(t.prod, t.fac, &base[j])
                        mpq_sub(&t.d[j], &t.d[j], t.prod)
        if not _run(&t):
            return UNBOUNDED, None, None
        x = _witness(&t, zero)
        opt = zero
        for j in range(n):
            xv = x[j]
            if xv:
                opt = opt + objective[j] * xv
        return FEASIBLE, x, opt
    finally:
        for k in range(nslots):
            mpq_clear(&t.pool[k])
        free(t.pool)
        free(t.rowptr)
        free(t.basis)
