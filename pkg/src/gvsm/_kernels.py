"""Dense float64 kernels behind :mod:`gvsm.linalg`.

Every kernel exists twice: a ``*_loops`` form written as explicit index
loops (compiled with numba when available) and a ``*_numpy`` form that
vectorizes the inner loops.  The public names at the bottom pick one of
them according to :data:`gvsm._accel.NUMBA_ENABLED`.  Both forms perform
the same floating point operations in the same order wherever that is
cheap to guarantee (matmul, LU), so results agree bit for bit there.

Kernels never raise; they report failure through return values so the
compiled and interpreted paths behave identically.
"""
import numpy as np

from gvsm._accel import NUMBA_ENABLED, jit


# ---------------------------------------------------------------- matmul


def matmul_loops(a, b):
    n, m = a.shape
    p = b.shape[1]
    out = np.zeros((n, p))
    for i in range(n):
        for j in range(p):
            s = 0.0
            for k in range(m):
                s += a[i, k] * b[k, j]
            out[i, j] = s
    return out


def matmul_numpy(a, b):
    # accumulate rank-1 updates in k order so every entry sees the same
    # summation sequence as the triple loop
    out = np.zeros((a.shape[0], b.shape[1]))
    for k in range(a.shape[1]):
        out += a[:, k, None] * b[None, k, :]
    return out


# -------------------------------------------------------------------- LU


def lu_loops(a):
    """Doolittle LU with partial pivoting, packed in place.

    Returns ``(lu, perm, sign)`` where ``a[perm] = L @ U`` and ``sign`` is
    the parity of the row exchanges.
    """
    n = a.shape[0]
    lu = a.copy()
    perm = np.arange(n)
    sign = 1.0
    for k in range(n):
        p = k
        best = abs(lu[k, k])
        for i in range(k + 1, n):
            if abs(lu[i, k]) > best:
                best = abs(lu[i, k])
                p = i
        if p != k:
            for j in range(n):
                tmp = lu[k, j]
                lu[k, j] = lu[p, j]
                lu[p, j] = tmp
            t = perm[k]
            perm[k] = perm[p]
            perm[p] = t
            sign = -sign
        piv = lu[k, k]
        if piv == 0.0:
            continue
        for i in range(k + 1, n):
            lu[i, k] /= piv
            f = lu[i, k]
            if f != 0.0:
                for j in range(k + 1, n):
                    lu[i, j] -= f * lu[k, j]
    return lu, perm, sign


def lu_numpy(a):
    n = a.shape[0]
    lu = a.copy()
    perm = np.arange(n)
    sign = 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            sign = -sign
        piv = lu[k, k]
        if piv == 0.0:
            continue
        lu[k + 1:, k] /= piv
        lu[k + 1:, k + 1:] -= lu[k + 1:, k, None] * lu[None, k, k + 1:]
    return lu, perm, sign


def lu_solve_loops(lu, perm, rhs):
    n = lu.shape[0]
    m = rhs.shape[1]
    x = np.empty((n, m))
    for c in range(m):
        for i in range(n):
            s = rhs[perm[i], c]
            for k in range(i):
                s -= lu[i, k] * x[k, c]
            x[i, c] = s
        for i in range(n - 1, -1, -1):
            s = x[i, c]
            for k in range(i + 1, n):
                s -= lu[i, k] * x[k, c]
            x[i, c] = s / lu[i, i]
    return x


def lu_solve_numpy(lu, perm, rhs):
    n = lu.shape[0]
    x = rhs[perm].astype(np.float64)
    for i in range(1, n):
        x[i] -= lu[i, :i] @ x[:i]
    for i in range(n - 1, -1, -1):
        x[i] -= lu[i, i + 1:] @ x[i + 1:]
        x[i] /= lu[i, i]
    return x


# ---------------------------------------------------------------- Jacobi


def _rotation(app, aqq, apq):
    theta = (aqq - app) / (2.0 * apq)
    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
    if theta < 0.0:
        t = -t
    c = 1.0 / np.sqrt(t * t + 1.0)
    return c, t * c


def jacobi_loops(a, tol, max_sweeps):
    """Cyclic Jacobi on a symmetric matrix.

    Returns ``(eigenvalues, vectors, sweeps, converged)``; eigenvalues are
    unsorted, ``vectors[:, j]`` pairs with ``eigenvalues[j]``.
    """
    n = a.shape[0]
    w = a.copy()
    v = np.eye(n)
    sweeps = 0
    while True:
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                if abs(w[p, q]) > off:
                    off = abs(w[p, q])
        if off < tol:
            return np.diag(w).copy(), v, sweeps, True
        if sweeps >= max_sweeps:
            return np.diag(w).copy(), v, sweeps, False
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = w[p, q]
                if apq == 0.0:
                    continue
                theta = (w[q, q] - w[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    wkp = w[k, p]
                    wkq = w[k, q]
                    w[k, p] = c * wkp - s * wkq
                    w[k, q] = s * wkp + c * wkq
                for k in range(n):
                    wpk = w[p, k]
                    wqk = w[q, k]
                    w[p, k] = c * wpk - s * wqk
                    w[q, k] = s * wpk + c * wqk
                w[p, q] = 0.0
                w[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq


def jacobi_numpy(a, tol, max_sweeps):
    n = a.shape[0]
    w = a.copy()
    v = np.eye(n)
    upper = np.triu_indices(n, 1)
    sweeps = 0
    while True:
        off = np.abs(w[upper]).max() if n > 1 else 0.0
        if off < tol:
            return np.diag(w).copy(), v, sweeps, True
        if sweeps >= max_sweeps:
            return np.diag(w).copy(), v, sweeps, False
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = w[p, q]
                if apq == 0.0:
                    continue
                c, s = _rotation(w[p, p], w[q, q], apq)
                cols = w[:, [p, q]].copy()
                w[:, p] = c * cols[:, 0] - s * cols[:, 1]
                w[:, q] = s * cols[:, 0] + c * cols[:, 1]
                rows = w[[p, q], :].copy()
                w[p, :] = c * rows[0] - s * rows[1]
                w[q, :] = s * rows[0] + c * rows[1]
                w[p, q] = w[q, p] = 0.0
                vc = v[:, [p, q]].copy()
                v[:, p] = c * vc[:, 0] - s * vc[:, 1]
                v[:, q] = s * vc[:, 0] + c * vc[:, 1]


# ------------------------------------------------------- row reduction


def rref_loops(a, tol):
    """Reduced row echelon form; returns ``(r, pivot_columns, n_pivots)``."""
    rows, cols = a.shape
    r = a.copy()
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    npiv = 0
    row = 0
    for c in range(cols):
        if row == rows:
            break
        p = row
        best = abs(r[row, c])
        for i in range(row + 1, rows):
            if abs(r[i, c]) > best:
                best = abs(r[i, c])
                p = i
        if best <= tol:
            for i in range(row, rows):
                r[i, c] = 0.0
            continue
        if p != row:
            for j in range(cols):
                tmp = r[row, j]
                r[row, j] = r[p, j]
                r[p, j] = tmp
        piv = r[row, c]
        for j in range(cols):
            r[row, j] /= piv
        for i in range(rows):
            if i != row:
                f = r[i, c]
                if f != 0.0:
                    for j in range(cols):
                        r[i, j] -= f * r[row, j]
        pivots[npiv] = c
        npiv += 1
        row += 1
    return r, pivots, npiv


def rref_numpy(a, tol):
    rows, cols = a.shape
    r = a.copy()
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    npiv = 0
    row = 0
    for c in range(cols):
        if row == rows:
            break
        p = row + int(np.argmax(np.abs(r[row:, c])))
        if abs(r[p, c]) <= tol:
            r[row:, c] = 0.0
            continue
        if p != row:
            r[[row, p]] = r[[p, row]]
        r[row] /= r[row, c]
        f = r[:, c].copy()
        f[row] = 0.0
        r -= f[:, None] * r[None, row]
        pivots[npiv] = c
        npiv += 1
        row += 1
    return r, pivots, npiv


# ------------------------------------------------ Hessenberg + shifted QR


def hessenberg_loops(a):
    """Orthogonal (Householder) similarity reduction to upper Hessenberg."""
    n = a.shape[0]
    h = a.copy()
    v = np.empty(n)
    for k in range(n - 2):
        m = n - k - 1
        norm = 0.0
        for i in range(m):
            norm += h[k + 1 + i, k] * h[k + 1 + i, k]
        norm = np.sqrt(norm)
        if norm == 0.0:
            continue
        alpha = -norm if h[k + 1, k] >= 0.0 else norm
        for i in range(m):
            v[i] = h[k + 1 + i, k]
        v[0] -= alpha
        vn = 0.0
        for i in range(m):
            vn += v[i] * v[i]
        vn = np.sqrt(vn)
        if vn == 0.0:
            continue
        for i in range(m):
            v[i] /= vn
        for j in range(n):
            s = 0.0
            for i in range(m):
                s += v[i] * h[k + 1 + i, j]
            for i in range(m):
                h[k + 1 + i, j] -= 2.0 * v[i] * s
        for i in range(n):
            s = 0.0
            for j in range(m):
                s += h[i, k + 1 + j] * v[j]
            for j in range(m):
                h[i, k + 1 + j] -= 2.0 * s * v[j]
        for i in range(k + 2, n):
            h[i, k] = 0.0
    return h


def hessenberg_numpy(a):
    n = a.shape[0]
    h = a.copy()
    for k in range(n - 2):
        x = h[k + 1:, k]
        norm = np.sqrt(np.sum(x * x))
        if norm == 0.0:
            continue
        alpha = -norm if x[0] >= 0.0 else norm
        v = x.copy()
        v[0] -= alpha
        vn = np.sqrt(np.sum(v * v))
        if vn == 0.0:
            continue
        v /= vn
        h[k + 1:, :] -= 2.0 * np.outer(v, v @ h[k + 1:, :])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ v, v)
        h[k + 2:, k] = 0.0
    return h


def hqr_loops(hess, max_its):
    """Eigenvalues of an upper Hessenberg matrix by Francis double-shift QR.

    Returns ``(re, im, ok)``.  ``ok`` is False when some eigenvalue needed
    more than ``max_its`` iterations.  Indices are 1-based internally.
    """
    n = hess.shape[0]
    a = np.zeros((n + 1, n + 1))
    for i in range(n):
        for j in range(n):
            a[i + 1, j + 1] = hess[i, j]
    wr = np.zeros(n + 1)
    wi = np.zeros(n + 1)
    anorm = 0.0
    for i in range(1, n + 1):
        for j in range(max(i - 1, 1), n + 1):
            anorm += abs(a[i, j])
    nn = n
    t = 0.0
    p = q = r = s = w = x = y = z = 0.0
    while nn >= 1:
        its = 0
        while True:
            ll = nn
            while ll >= 2:
                s = abs(a[ll - 1, ll - 1]) + abs(a[ll, ll])
                if s == 0.0:
                    s = anorm
                if abs(a[ll, ll - 1]) + s == s:
                    a[ll, ll - 1] = 0.0
                    break
                ll -= 1
            x = a[nn, nn]
            if ll == nn:
                wr[nn] = x + t
                wi[nn] = 0.0
                nn -= 1
            else:
                y = a[nn - 1, nn - 1]
                w = a[nn, nn - 1] * a[nn - 1, nn]
                if ll == nn - 1:
                    p = 0.5 * (y - x)
                    q = p * p + w
                    z = np.sqrt(abs(q))
                    x += t
                    if q >= 0.0:
                        z = p + (z if p >= 0.0 else -z)
                        wr[nn - 1] = x + z
                        wr[nn] = x + z
                        if z != 0.0:
                            wr[nn] = x - w / z
                        wi[nn - 1] = 0.0
                        wi[nn] = 0.0
                    else:
                        wr[nn - 1] = x + p
                        wr[nn] = x + p
                        wi[nn - 1] = -z
                        wi[nn] = z
                    nn -= 2
                else:
                    if its == max_its:
                        return wr[1:], wi[1:], False
                    if its == 10 or its == 20:
                        t += x
                        for i in range(1, nn + 1):
                            a[i, i] -= x
                        s = abs(a[nn, nn - 1]) + abs(a[nn - 1, nn - 2])
                        x = 0.75 * s
                        y = x
                        w = -0.4375 * s * s
                    its += 1
                    m = nn - 2
                    while m >= ll:
                        z = a[m, m]
                        r = x - z
                        s = y - z
                        p = (r * s - w) / a[m + 1, m] + a[m, m + 1]
                        q = a[m + 1, m + 1] - z - r - s
                        r = a[m + 2, m + 1]
                        s = abs(p) + abs(q) + abs(r)
                        p /= s
                        q /= s
                        r /= s
                        if m == ll:
                            break
                        u = abs(a[m, m - 1]) * (abs(q) + abs(r))
                        v = abs(p) * (abs(a[m - 1, m - 1]) + abs(z)
                                      + abs(a[m + 1, m + 1]))
                        if u + v == v:
                            break
                        m -= 1
                    for i in range(m + 2, nn + 1):
                        a[i, i - 2] = 0.0
                        if i != m + 2:
                            a[i, i - 3] = 0.0
                    for k in range(m, nn):
                        if k != m:
                            p = a[k, k - 1]
                            q = a[k + 1, k - 1]
                            r = 0.0
                            if k != nn - 1:
                                r = a[k + 2, k - 1]
                            x = abs(p) + abs(q) + abs(r)
                            if x != 0.0:
                                p /= x
                                q /= x
                                r /= x
                        s = np.sqrt(p * p + q * q + r * r)
                        if p < 0.0:
                            s = -s
                        if s != 0.0:
                            if k == m:
                                if ll != m:
                                    a[k, k - 1] = -a[k, k - 1]
                            else:
                                a[k, k - 1] = -s * x
                            p += s
                            x = p / s
                            y = q / s
                            z = r / s
                            q /= p
                            r /= p
                            for j in range(k, nn + 1):
                                p = a[k, j] + q * a[k + 1, j]
                                if k != nn - 1:
                                    p += r * a[k + 2, j]
                                    a[k + 2, j] -= p * z
                                a[k + 1, j] -= p * y
                                a[k, j] -= p * x
                            mmin = nn if nn < k + 3 else k + 3
                            for i in range(ll, mmin + 1):
                                p = x * a[i, k] + y * a[i, k + 1]
                                if k != nn - 1:
                                    p += z * a[i, k + 2]
                                    a[i, k + 2] -= p * r
                                a[i, k + 1] -= p * q
                                a[i, k] -= p
            if nn < 1 or ll >= nn - 1:
                break
    return wr[1:], wi[1:], True


# ------------------------------------------------------------- dispatch

JIT_KERNELS = {}
NUMPY_KERNELS = {
    "matmul": matmul_numpy,
    "lu": lu_numpy,
    "lu_solve": lu_solve_numpy,
    "jacobi": jacobi_numpy,
    "rref": rref_numpy,
    "hessenberg": hessenberg_numpy,
    # no useful vectorization for the bulge chase; runs interpreted
    "hqr": hqr_loops,
}
_LOOPS = {
    "matmul": matmul_loops,
    "lu": lu_loops,
    "lu_solve": lu_solve_loops,
    "jacobi": jacobi_loops,
    "rref": rref_loops,
    "hessenberg": hessenberg_loops,
    "hqr": hqr_loops,
}
for _name, _fn in _LOOPS.items():
    JIT_KERNELS[_name] = jit(_fn)

ACTIVE = JIT_KERNELS if NUMBA_ENABLED else NUMPY_KERNELS

matmul = ACTIVE["matmul"]
lu = ACTIVE["lu"]
lu_solve = ACTIVE["lu_solve"]
jacobi = ACTIVE["jacobi"]
rref = ACTIVE["rref"]
hessenberg = ACTIVE["hessenberg"]
hqr = ACTIVE["hqr"]
