"""Pure-Python two-phase simplex pivot kernel.

Reference implementation of the pivot loop; spincouple.lp selects the
compiled twin (_kernel_cy, GMP-native) when it is built and gmpy2
arithmetic is active.  Both kernels execute the identical pivot sequence:
Bland's rule (lowest-index entering column, lowest-index basic variable on
ratio ties), which guarantees termination without cycling.  Tests assert
the two produce identical outcomes, witnesses included.

The tableau holds only the original columns plus the right-hand side.
Phase 1 starts from one artificial basic variable per row, but artificial
columns are never read: entering candidates are restricted to original
columns (sound, because any solution of the original system is feasible
for the restricted phase-1 problem), ratio tests touch the entering and
rhs columns only, and artificial membership is tracked through the basis
indices alone (index >= n means artificial).

The kernel is arithmetic-agnostic: coefficients may be fractions.Fraction
or gmpy2.mpq, anything supporting +, -, *, /, comparison and truthiness.
No validation happens here; spincouple.lp owns input checking and
presolve.
"""

FEASIBLE = 0
INFEASIBLE = 1
UNBOUNDED = 2


def solve(rows, rhs, objective, maximize, zero, one):
    """Minimize/maximize objective . x subject to rows . x = rhs, x >= 0.

    rows: list of equal-length coefficient lists; rhs: matching list;
    objective: coefficient list or None for a pure feasibility run.
    Returns (status, witness, optimum); witness is a list in the original
    variable order, optimum is in the caller's optimization sense.
    """
    m = len(rows)
    if m:
        n = len(rows[0])
    else:
        n = len(objective) if objective is not None else 0
    width = n + 1  # original columns | rhs

    T = []
    for i in range(m):
        b = rhs[i]
        if b < zero:
            row = [-v for v in rows[i]]
            b = -b
        else:
            row = list(rows[i])
        row.append(b)
        T.append(row)
    basis = list(range(n, n + m))  # index >= n marks a phase-1 artificial

    # Phase-1 reduced costs for minimizing the sum of artificials; d carries
    # the negated objective value in its rhs slot, updated like a tableau row.
    d = [zero] * width
    for i in range(m):
        Ti = T[i]
        for j in range(width):
            v = Ti[j]
            if v:
                d[j] -= v

    def pivot(r, e):
        Tr = T[r]
        p = Tr[e]
        if p != one:
            inv = one / p
            for j in range(width):
                v = Tr[j]
                if v:
                    Tr[j] = v * inv
        for i in range(len(T)):
            if i == r:
                continue
            Ti = T[i]
            f = Ti[e]
            if f:
                for j in range(width):
                    v = Tr[j]
                    if v:
                        Ti[j] -= f * v
        f = d[e]
        if f:
            for j in range(width):
                v = Tr[j]
                if v:
                    d[j] -= f * v
        basis[r] = e

    def run():
        # Bland's rule.  Basic columns have exactly zero reduced cost under
        # exact arithmetic, so they are never selected as entering.
        while True:
            enter = -1
            for j in range(n):
                if d[j] < zero:
                    enter = j
                    break
            if enter < 0:
                return True
            leave = -1
            best = None
            for i in range(len(T)):
                Ti = T[i]
                a = Ti[enter]
                if a > zero:
                    t = Ti[width - 1] / a
                    if leave < 0 or t < best or (t == best and basis[i] < basis[leave]):
                        best = t
                        leave = i
            if leave < 0:
                return False
            pivot(leave, enter)

    run()  # phase 1 cannot be unbounded: its objective is bounded below by 0
    if d[width - 1] != zero:
        return INFEASIBLE, None, None

    # Pivot leftover artificials out of the basis; a row with no nonzero
    # original coefficient is redundant and gets dropped.  Any nonzero
    # original column in such a row is nonbasic (basic columns are unit
    # vectors with their 1 in another row), so it is a legal pivot.
    r = 0
    while r < len(T):
        if basis[r] >= n:
            Tr = T[r]
            col = -1
            for j in range(n):
                if Tr[j]:
                    col = j
                    break
            if col >= 0:
                pivot(r, col)
                r += 1
            else:
                T.pop(r)
                basis.pop(r)
        else:
            r += 1
    m = len(T)

    if objective is None:
        x = [zero] * n
        for i in range(m):
            x[basis[i]] = T[i][width - 1]
        return FEASIBLE, x, None

    # Phase 2 over the same tableau (the basis is now artificial-free).
    c = [-v for v in objective] if maximize else list(objective)
    for j in range(width):
        d[j] = zero
    for j in range(n):
        d[j] = c[j]
    for i in range(m):
        cb = c[basis[i]]
        if cb:
            Ti = T[i]
            for j in range(width):
                v = Ti[j]
                if v:
                    d[j] -= cb * v
    if not run():
        return UNBOUNDED, None, None
    x = [zero] * n
    for i in range(m):
        x[basis[i]] = T[i][width - 1]
    opt = zero
    for j in range(n):
        if x[j]:
            opt += objective[j] * x[j]
    return FEASIBLE, x, opt
