"""Dense real linear algebra on float64 numpy arrays.

Matrices are plain 2-D ``numpy.ndarray`` and vectors 1-D arrays; the
public functions validate shape and finiteness on entry and never mutate
their arguments.  Heavy lifting happens in :mod:`gvsm._kernels`.
"""
from dataclasses import dataclass

import numpy as np

from gvsm import _kernels
from gvsm.errors import (
    ConvergenceError,
    NonFiniteError,
    NotDiagonalizableError,
    PreconditionError,
    ShapeError,
    SingularMatrixError,
)

SYMMETRY_TOL = 1e-9
UNIT_TOL = 1e-9
PIVOT_TOL = 1e-9
SINGULAR_TOL = 1e-12
JACOBI_TOL = 1e-12
# real/complex split and eigenvalue clustering in the general path
EIGEN_TOL = 1e-7

_MAX_SWEEPS = 100
_MAX_QR_ITS = 60


def as_matrix(a, name="matrix"):
    m = np.array(a, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise ShapeError(f"{name} must be a non-empty 2-D array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFiniteError(f"{name} has non-finite entries")
    return m


def as_vector(v, name="vector"):
    x = np.array(v, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] == 0:
        raise ShapeError(f"{name} must be a non-empty 1-D array, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise NonFiniteError(f"{name} has non-finite entries")
    return x


def as_square(a, name="matrix"):
    m = as_matrix(a, name)
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {m.shape}")
    return m


def _frozen(a):
    a.setflags(write=False)
    return a


def _scale(a):
    return max(1.0, float(np.abs(a).max()))


def max_asymmetry(a):
    return float(np.abs(a - a.T).max())


def is_symmetric(a, tol=SYMMETRY_TOL):
    a = as_square(a)
    return max_asymmetry(a) <= tol


def mat_mul(a, b):
    a = as_matrix(a, "left operand")
    b = as_matrix(b, "right operand")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply shapes {a.shape} and {b.shape}")
    return _kernels.matmul(a, b)


def mat_vec(a, v):
    """``a @ v`` for a 1-D ``v``, through the same kernel as :func:`mat_mul`."""
    v = as_vector(v)
    return mat_mul(a, v[:, None])[:, 0]


def determinant(a):
    a = as_square(a)
    lu, _, sign = _kernels.lu(a)
    return float(sign * np.prod(np.diag(lu)))


def inverse(a):
    a = as_square(a)
    lu, perm, sign = _kernels.lu(a)
    det = float(sign * np.prod(np.diag(lu)))
    if abs(det) <= SINGULAR_TOL:
        raise SingularMatrixError(f"matrix is singular (|det| = {abs(det):.3g})")
    return _kernels.lu_solve(lu, perm, np.eye(a.shape[0]))


def solve(a, b):
    """Solve ``a x = b`` for a vector or matrix right-hand side."""
    a = as_square(a)
    b = np.asarray(b, dtype=np.float64)
    rhs = b[:, None] if b.ndim == 1 else b
    if rhs.shape[0] != a.shape[0]:
        raise ShapeError(f"cannot solve {a.shape} system with rhs {b.shape}")
    lu, perm, sign = _kernels.lu(a)
    if abs(sign * np.prod(np.diag(lu))) <= SINGULAR_TOL:
        raise SingularMatrixError("matrix is singular")
    x = _kernels.lu_solve(lu, perm, np.ascontiguousarray(rhs))
    return x[:, 0] if b.ndim == 1 else x


def rank(a, tol=PIVOT_TOL):
    a = as_matrix(a)
    _, _, npiv = _kernels.rref(a, tol)
    return int(npiv)


def nullspace(a, tol=PIVOT_TOL):
    """Basis of the null space read off the reduced row echelon form.

    Columns of the result are the basis vectors (unnormalized).
    """
    a = as_matrix(a)
    r, pivots, npiv = _kernels.rref(a, tol)
    pivots = [int(p) for p in pivots[:npiv]]
    free = [c for c in range(a.shape[1]) if c not in set(pivots)]
    basis = np.zeros((a.shape[1], len(free)))
    for k, f in enumerate(free):
        basis[f, k] = 1.0
        for row, p in enumerate(pivots):
            basis[p, k] = -r[row, f]
    return basis


def _fix_signs(vectors):
    # largest-magnitude component of each column made positive
    out = vectors.copy()
    for j in range(out.shape[1]):
        i = int(np.argmax(np.abs(out[:, j])))
        if out[i, j] < 0:
            out[:, j] = -out[:, j]
    return out


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class Diagonalization:
    """``diagonal == inv(transition) @ A @ transition`` for the source A."""

    transition: np.ndarray
    diagonal: np.ndarray
    eigenvalues: np.ndarray


def symmetric_eigen(a):
    """Eigenpairs of a real symmetric matrix by cyclic Jacobi rotations.

    Eigenvalues come back in descending order; column ``j`` of
    ``eigenvectors`` is the unit eigenvector for eigenvalue ``j`` with its
    largest-magnitude component positive.
    """
    a = as_square(a)
    asym = max_asymmetry(a)
    if asym > SYMMETRY_TOL:
        raise PreconditionError(
            f"matrix is not symmetric: max |a[i,j] - a[j,i]| = {asym:.3g}"
        )
    sym = 0.5 * (a + a.T)
    vals, vecs, _, converged = _kernels.jacobi(sym, JACOBI_TOL * _scale(sym), _MAX_SWEEPS)
    if not converged:
        raise ConvergenceError(f"Jacobi did not converge in {_MAX_SWEEPS} sweeps")
    order = np.argsort(-vals, kind="stable")
    return EigenDecomposition(
        _frozen(vals[order].copy()), _frozen(_fix_signs(vecs[:, order]))
    )


def real_eigenvalues(a):
    """All eigenvalues of a real square matrix via Hessenberg reduction + QR.

    Returns ``(real_parts, imag_parts)``.
    """
    a = as_square(a)
    h = _kernels.hessenberg(a)
    re, im, ok = _kernels.hqr(h, _MAX_QR_ITS)
    if not ok:
        raise ConvergenceError("shifted QR iteration did not converge")
    return re, im


def _cluster(values, tol):
    """Group descending-sorted values whose neighbours differ by <= tol."""
    groups = []
    for v in values:
        if groups and abs(groups[-1][-1] - v) <= tol:
            groups[-1].append(v)
        else:
            groups.append([v])
    return groups


def diagonalize(a):
    """Find P with ``inv(P) @ a @ P`` diagonal, working over the reals.

    Symmetric input goes through :func:`symmetric_eigen` and yields an
    orthogonal P.  Anything else gets its spectrum from shifted QR and its
    eigenvectors from null spaces of ``a - lambda I``.

    Raises NotDiagonalizableError with ``reason`` "complex" or "defective".
    """
    a = as_square(a)
    n = a.shape[0]
    if max_asymmetry(a) <= SYMMETRY_TOL:
        eig = symmetric_eigen(a)
        p = eig.eigenvectors.copy()
        return Diagonalization(
            _frozen(p), _frozen(change_of_basis(a, p)), eig.eigenvalues
        )

    scale = _scale(a)
    re, im = real_eigenvalues(a)
    bad = np.abs(im) > EIGEN_TOL * scale
    if bad.any():
        k = int(np.argmax(np.abs(im)))
        raise NotDiagonalizableError(
            "complex",
            f"complex spectrum: eigenvalue {re[k]:.6g}{im[k]:+.6g}i has no real eigenvector",
        )
    columns = []
    values = []
    for group in _cluster(sorted(re, reverse=True), EIGEN_TOL * scale):
        lam = float(np.mean(group))
        basis = nullspace(a - lam * np.eye(n), PIVOT_TOL * scale)
        if basis.shape[1] < len(group):
            raise NotDiagonalizableError(
                "defective",
                f"defective: eigenvalue {lam:.6g} has algebraic multiplicity "
                f"{len(group)} but only {basis.shape[1]} independent eigenvector(s)",
            )
        for j in range(len(group)):
            col = basis[:, j]
            columns.append(col / np.sqrt(col @ col))
            values.append(lam)
    p = _fix_signs(np.column_stack(columns))
    if rank(p) < n:
        raise NotDiagonalizableError(
            "defective", f"eigenvectors span rank {rank(p)} < {n}"
        )
    return Diagonalization(
        _frozen(p), _frozen(change_of_basis(a, p)), _frozen(np.array(values))
    )


def householder(u):
    """Reflection ``I - 2 u u^T`` through the hyperplane orthogonal to unit ``u``."""
    u = as_vector(u, "u")
    nrm = float(np.sqrt(u @ u))
    if abs(nrm - 1.0) > UNIT_TOL:
        raise PreconditionError(f"u must be a unit vector, got ||u|| = {nrm:.12g}")
    # dividing by u.u (== 1 up to rounding) keeps H exactly orthogonal for
    # rounded inputs such as sqrt(2)/2
    return np.eye(u.shape[0]) - np.outer((2.0 / (u @ u)) * u, u)


def change_of_basis(t_b, s):
    """Matrix of the same operator in the basis whose coordinates S maps back: ``S^-1 T S``."""
    t_b = as_square(t_b, "operator")
    s = as_square(s, "transition")
    if t_b.shape != s.shape:
        raise ShapeError(f"operator {t_b.shape} and transition {s.shape} differ in size")
    return mat_mul(mat_mul(inverse(s), t_b), s)
