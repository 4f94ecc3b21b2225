"""Linear algebra over Z/p^M.

Z/p^M is a chain ring: every nonzero element is unit * p^v, so Gaussian
elimination works once pivots are chosen by minimal p-valuation.  These
routines back divide_exact on the finite quotient rings and every membership
test on finitely presented modules with a p-power modulus.
"""


def pval(c, p, M):
    """p-valuation of c as a residue mod p^M (valuation of 0 is M)."""
    c %= p**M
    if c == 0:
        return M
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    return v


def solve_mod_pp(rows, rhs, p, M):
    """One solution x (list) of A x = rhs over Z/p^M, or None.

    ``rows`` is the matrix as a list of rows.  Any solution is returned;
    callers treat it as a witness.
    """
    pm = p**M
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    a = [[c % pm for c in row] for row in rows]
    b = [c % pm for c in rhs]
    col_of = list(range(nc))  # column permutation bookkeeping
    pivots = []  # (row index k, valuation v); pivot entry is exactly p^v
    k = 0
    while k < min(nr, nc):
        best = None
        for i in range(k, nr):
            for j in range(k, nc):
                if a[i][j]:
                    v = pval(a[i][j], p, M)
                    if best is None or v < best[0]:
                        best = (v, i, j)
            if best and best[0] == 0:
                break
        if best is None:
            break
        v, bi, bj = best
        a[k], a[bi] = a[bi], a[k]
        b[k], b[bi] = b[bi], b[k]
        for row in a:
            row[k], row[bj] = row[bj], row[k]
        col_of[k], col_of[bj] = col_of[bj], col_of[k]
        unit = a[k][k] // p**v
        inv_unit = pow(unit, -1, pm)
        a[k] = [c * inv_unit % pm for c in a[k]]
        b[k] = b[k] * inv_unit % pm
        # forward elimination only: below the pivot every entry of column k
        # has valuation >= v (the pivot was minimal over the submatrix)
        for i in range(k + 1, nr):
            if a[i][k]:
                w = a[i][k] // p**v
                a[i] = [(c - w * ck) % pm for c, ck in zip(a[i], a[k])]
                b[i] = (b[i] - w * b[k]) % pm
        pivots.append((k, v))
        k += 1
    # rows below the pivot block are identically zero, so b must vanish there
    for i in range(k, nr):
        if b[i] % pm:
            return None
    x = [0] * nc
    for i, v in reversed(pivots):
        c = b[i]
        for j in range(i + 1, nc):
            if a[i][j]:
                c -= a[i][j] * x[col_of[j]]
        c %= pm
        if c % p**v:
            return None
        x[col_of[i]] = c // p**v
    return x


def nullspace_mod_p(rows, p):
    """Basis of the right kernel of A over F_p (list of length-nc vectors)."""
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    a = [[c % p for c in row] for row in rows]
    pivot_col = []
    r = 0
    for j in range(nc):
        piv = None
        for i in range(r, nr):
            if a[i][j]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][j], -1, p)
        a[r] = [c * inv % p for c in a[r]]
        for i in range(nr):
            if i != r and a[i][j]:
                f = a[i][j]
                a[i] = [(c - f * ck) % p for c, ck in zip(a[i], a[r])]
        pivot_col.append(j)
        r += 1
        if r == nr:
            break
    free_cols = [j for j in range(nc) if j not in pivot_col]
    basis = []
    for j in free_cols:
        vec = [0] * nc
        vec[j] = 1
        for i, pc in enumerate(pivot_col):
            vec[pc] = -a[i][j] % p
        basis.append(vec)
    return basis


def solve_mod_p(rows, rhs, p):
    return solve_mod_pp(rows, rhs, p, 1)
