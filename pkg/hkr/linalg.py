"""Dense linear algebra over F_p and Z/p^k on numpy int64 arrays.

Matrices are reduced into [0, q) after every product; the primes and
dimensions used in hkr keep all intermediate sums far below 2^63.

"""
import numpy as np

from sympy import mod_inverse


def mod(A, q):
    return np.mod(np.asarray(A, dtype=np.int64), q)


def zeros(rows, cols):
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n):
    return np.eye(n, dtype=np.int64)


def matmul(A, B, q):
    return np.mod(np.dot(mod(A, q), mod(B, q)), q)


def matpow(A, n, q):
    result = identity(A.shape[0])
    base = mod(A, q)
    while n:
        if n & 1:
            result = matmul(result, base, q)
        n >>= 1
        if n:
            base = matmul(base, base, q)
    return result


def is_zero(A, q):
    return not np.any(mod(A, q))


def row_reduce(A, p):
    """Reduced row echelon form over F_p.

    Returns (R, pivots) where pivots[i] is the pivot column of row i.
    """
    R = mod(A, p).copy()
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = np.mod(R[r] * mod_inverse(int(R[r, c]), p), p)
        for i in range(rows):
            if i != r and R[i, c]:
                R[i] = np.mod(R[i] - R[i, c] * R[r], p)
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A, p):
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(row_reduce(A, p)[1])


def nullspace(A, p):
    """Columns spanning {x : A x = 0} over F_p, shape (cols, dim)."""
    A = mod(A, p)
    rows, cols = A.shape
    if rows == 0:
        return identity(cols)
    R, pivots = row_reduce(A, p)
    free = [c for c in range(cols) if c not in pivots]
    N = zeros(cols, len(free))
    for k, f in enumerate(free):
        N[f, k] = 1
        for i, c in enumerate(pivots):
            N[c, k] = (-R[i, f]) % p
    return N


def column_basis(A, p):
    """An F_p basis of the column space, chosen among the columns of A."""
    A = mod(A, p)
    if A.size == 0:
        return zeros(A.shape[0], 0)
    pivots = row_reduce(A, p)[1]
    return A[:, pivots]


def solve(A, b, p):
    """Some x with A x = b over F_p, or None."""
    A = mod(A, p)
    b = mod(b, p).reshape(-1)
    rows, cols = A.shape
    if cols == 0:
        return np.zeros(0, dtype=np.int64) if not np.any(b) else None
    R, pivots = row_reduce(np.hstack([A, b.reshape(-1, 1)]), p)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = R[i, cols]
    return x


def in_span(B, v, p):
    """True if v is in the column span of B."""
    B = mod(B, p)
    if B.shape[1] == 0:
        return not np.any(mod(v, p))
    return solve(B, v, p) is not None


def complement_basis(W, U, p):
    """Columns of W that, together with the columns of U, form a basis of
    span(U) + span(W) modulo span(U)."""
    W = mod(W, p)
    U = mod(U, p)
    n = W.shape[0]
    if U.shape[1] == 0:
        return column_basis(W, p)
    M = np.hstack([U, W])
    pivots = row_reduce(M, p)[1]
    chosen = [c - U.shape[1] for c in pivots if c >= U.shape[1]]
    return W[:, chosen] if chosen else zeros(n, 0)


def intersection(U, W, p):
    """A basis of span(U) intersect span(W)."""
    U, W = mod(U, p), mod(W, p)
    n = U.shape[0]
    if U.shape[1] == 0 or W.shape[1] == 0:
        return zeros(n, 0)
    N = nullspace(np.hstack([U, -W]), p)
    return column_basis(matmul(U, N[:U.shape[1]], p), p)


def inverse(A, p):
    A = mod(A, p)
    n = A.shape[0]
    R, pivots = row_reduce(np.hstack([A, identity(n)]), p)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError('matrix is singular mod {}'.format(p))
    return R[:, n:]


def smith_valuations(A, p, k):
    """Diagonal of the Smith form of A over Z/p^k, as p-adic valuations.

    The i-th diagonal entry is a unit times p^v_i, with v_i = k meaning
    zero. There are min(rows, cols) entries.
    """
    q = p ** k
    M = mod(A, q).copy()
    rows, cols = M.shape
    vals = []

    def val(x):
        if x == 0:
            return k
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        return v

    for t in range(min(rows, cols)):
        sub = M[t:, t:]
        if not np.any(sub):
            vals.extend([k] * (min(rows, cols) - t))
            break
        best = None
        for (i, j), x in np.ndenumerate(sub):
            if x:
                v = val(int(x))
                if best is None or v < best[0]:
                    best = (v, i + t, j + t)
                    if v == 0:
                        break
        v, i, j = best
        M[[t, i]] = M[[i, t]]
        M[:, [t, j]] = M[:, [j, t]]
        unit = int(M[t, t]) // p ** v
        M[t] = np.mod(M[t] * mod_inverse(unit, q), q)
        # every entry has valuation >= v, so the pivot divides it
        for r in range(t + 1, rows):
            if M[r, t]:
                M[r] = np.mod(M[r] - (int(M[r, t]) // p ** v) * M[t], q)
        for c in range(t + 1, cols):
            if M[t, c]:
                M[:, c] = np.mod(M[:, c] - (int(M[t, c]) // p ** v) *
                                 M[:, t], q)
        vals.append(v)
    return vals


def kernel_invariants(A, p, k):
    """Exponents e with ker(A) = sum of Z/p^e, for A: (Z/p^k)^cols ->
    (Z/p^k)^rows."""
    rows, cols = np.shape(A)
    vals = smith_valuations(A, p, k) if rows and cols else []
    out = [v for v in vals if v > 0] + [k] * (cols - len(vals))
    return sorted(out)


def cokernel_invariants(A, p, k):
    rows, cols = np.shape(A)
    vals = smith_valuations(A, p, k) if rows and cols else []
    out = [v for v in vals if v > 0] + [k] * (rows - len(vals))
    return sorted(out)


def random_matrix(rows, cols, q, rng):
    return rng.randint(0, q, size=(rows, cols)).astype(np.int64)


def random_unitriangular(n, p, rng, allowed=None):
    """A random unipotent upper triangular matrix over F_p.

    allowed(i, j) restricts which strictly upper entries may be nonzero.
    """
    g = identity(n)
    for i in range(n):
        for j in range(i + 1, n):
            if allowed is None or allowed(i, j):
                g[i, j] = rng.randint(0, p)
    return g
