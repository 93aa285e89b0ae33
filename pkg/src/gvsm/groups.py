"""Matrix groups acting on term space.

A :class:`GroupElement` is an invertible matrix that has been checked
against the defining predicate of its group.  Elements act on vectors and
on term-by-document matrices by left multiplication.
"""
import dataclasses
from dataclasses import dataclass

import numpy as np

from gvsm import linalg
from gvsm.errors import (
    ClassificationError,
    InvalidPermutationError,
    KindError,
    NotDiagonalizableError,
    ShapeError,
    SingularMatrixError,
    ZeroVectorError,
)
from gvsm.vsm import cosine_similarity, norm

ORTHOGONAL = "orthogonal"
SCALING = "scaling"
BOREL = "borel"
PERMUTATION = "permutation"
GENERAL = "general"
KINDS = (ORTHOGONAL, SCALING, BOREL, PERMUTATION, GENERAL)

# membership is structural, so tighter than any data-driven tolerance
KIND_TOL = 1e-9
ZERO_TOL = 1e-12
INVARIANCE_TOL = 1e-9


@dataclass(frozen=True)
class GroupElement:
    kind: str
    matrix: np.ndarray
    # g(i) for permutation elements: column i has its 1 in row perm[i]
    perm: tuple = None

    @property
    def dim(self):
        return self.matrix.shape[0]


def _below_diagonal(m):
    return np.tril(m, -1)


def _worst(a):
    idx = np.unravel_index(int(np.argmax(np.abs(a))), a.shape)
    return float(abs(a[idx])), (int(idx[0]), int(idx[1]))


def _perm_from_matrix(m):
    n = m.shape[0]
    if not np.all((m == 0.0) | (m == 1.0)):
        bad = np.argwhere((m != 0.0) & (m != 1.0))[0]
        raise ClassificationError(
            f"not a permutation matrix: entry {tuple(int(x) for x in bad)} = "
            f"{m[tuple(bad)]:.6g} is neither 0 nor 1"
        )
    rows = m.sum(axis=1)
    cols = m.sum(axis=0)
    if not (np.all(rows == 1) and np.all(cols == 1)):
        which = ("row", int(np.argmax(rows != 1))) if np.any(rows != 1) else (
            "column", int(np.argmax(cols != 1)))
        raise ClassificationError(
            f"not a permutation matrix: {which[0]} {which[1]} does not hold exactly one 1"
        )
    return tuple(int(np.argmax(m[:, i])) for i in range(n))


def _check_kind(m, kind):
    """Raise ClassificationError if ``m`` violates the predicate of ``kind``."""
    n = m.shape[0]
    if kind == ORTHOGONAL:
        dev, (i, j) = _worst(linalg.mat_mul(m.T, m) - np.eye(n))
        if dev >= KIND_TOL:
            raise ClassificationError(
                f"not orthogonal: |(M^T M - I)[{i},{j}]| = {dev:.3g} >= {KIND_TOL:g}"
            )
    elif kind == SCALING:
        off = m - np.diag(np.diag(m))
        dev, (i, j) = _worst(off)
        if dev > ZERO_TOL:
            raise ClassificationError(
                f"not a scaling matrix: off-diagonal entry [{i},{j}] = {m[i, j]:.6g}"
            )
        if np.any(np.diag(m) == 0.0):
            i = int(np.argmax(np.diag(m) == 0.0))
            raise ClassificationError(f"not a scaling matrix: diagonal entry [{i},{i}] is 0")
    elif kind == BOREL:
        dev, (i, j) = _worst(_below_diagonal(m)) if n > 1 else (0.0, (0, 0))
        if dev > ZERO_TOL:
            raise ClassificationError(
                f"not upper triangular: below-diagonal entry [{i},{j}] = {m[i, j]:.6g}"
            )
        if np.any(np.diag(m) == 0.0):
            i = int(np.argmax(np.diag(m) == 0.0))
            raise ClassificationError(f"not in the Borel subgroup: diagonal entry [{i},{i}] is 0")
    elif kind == PERMUTATION:
        return _perm_from_matrix(m)
    elif kind != GENERAL:
        raise KindError(f"unknown group kind {kind!r}; expected one of {KINDS}")
    return None


def is_member(matrix, kind):
    """Does an invertible ``matrix`` satisfy the predicate of ``kind``?"""
    try:
        _check_kind(linalg.as_square(matrix), kind)
    except ClassificationError:
        return False
    return True


def make_element(matrix, kind):
    """Validate ``matrix`` as a member of the group named by ``kind``."""
    if kind not in KINDS:
        raise KindError(f"unknown group kind {kind!r}; expected one of {KINDS}")
    m = linalg.as_square(matrix)
    det = linalg.determinant(m)
    if abs(det) <= linalg.SINGULAR_TOL:
        raise SingularMatrixError(f"matrix is singular (|det| = {abs(det):.3g})")
    perm = _check_kind(m, kind)
    m.setflags(write=False)
    return GroupElement(kind, m, perm)


def make_permutation(perm):
    """Permutation element sending basis vector e_i to e_{perm[i]}."""
    perm = tuple(int(p) for p in perm)
    n = len(perm)
    if n == 0 or sorted(perm) != list(range(n)):
        raise InvalidPermutationError(
            f"{list(perm)} is not a bijection on 0..{n - 1}"
        )
    m = np.zeros((n, n))
    m[list(perm), list(range(n))] = 1.0
    m.setflags(write=False)
    return GroupElement(PERMUTATION, m, perm)


def identity(n, kind=GENERAL):
    if kind == PERMUTATION:
        return make_permutation(range(n))
    return make_element(np.eye(n), kind)


def act_vector(g, v):
    v = linalg.as_vector(v)
    if v.shape[0] != g.dim:
        raise ShapeError(f"element acts on dimension {g.dim}, vector has {v.shape[0]}")
    if g.kind == PERMUTATION:
        out = np.empty_like(v)
        out[list(g.perm)] = v
        return out
    return linalg.mat_vec(g.matrix, v)


def act_tdm(g, tdm):
    """Transform every document column; vocabulary and df stay as they are."""
    v = len(tdm.vocabulary)
    if g.dim != v:
        raise ShapeError(
            f"element has dimension {g.dim} but the vocabulary has {v} terms; "
            "transformations cannot add or remove terms"
        )
    if g.kind == PERMUTATION:
        w = np.empty_like(tdm.weights)
        w[list(g.perm), :] = tdm.weights
    else:
        w = linalg.mat_mul(g.matrix, tdm.weights)
    return dataclasses.replace(tdm, weights=w, transformed=True, counts=None)


def compose(g, h):
    """``g o h``: act with h first, then g."""
    if g.dim != h.dim:
        raise ShapeError(f"cannot compose dimensions {g.dim} and {h.dim}")
    if g.kind == h.kind == PERMUTATION:
        return make_permutation(g.perm[h.perm[i]] for i in range(g.dim))
    m = linalg.mat_mul(g.matrix, h.matrix)
    kind = g.kind if g.kind == h.kind else GENERAL
    return make_element(m, kind)


def inverse_element(g):
    if g.kind == PERMUTATION:
        inv = [0] * g.dim
        for i, p in enumerate(g.perm):
            inv[p] = i
        return make_permutation(inv)
    if g.kind == SCALING:
        return make_element(np.diag(1.0 / np.diag(g.matrix)), SCALING)
    return make_element(linalg.inverse(g.matrix), g.kind)


@dataclass(frozen=True)
class StandardFlag:
    """The chain 0 < V_1 < ... < V_n with V_i spanned by e_1..e_i."""

    dim: int

    def contains(self, v, i):
        """Is ``v`` in V_i (1-based i)?"""
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.dim,):
            raise ShapeError(f"vector of shape {v.shape} is not in R^{self.dim}")
        if not 0 <= i <= self.dim:
            raise ValueError(f"flag level {i} outside 0..{self.dim}")
        return bool(np.all(np.abs(v[i:]) <= ZERO_TOL))

    def level(self, v):
        """Smallest i with v in V_i."""
        v = np.asarray(v, dtype=np.float64)
        nz = np.nonzero(np.abs(v) > ZERO_TOL)[0]
        return int(nz[-1]) + 1 if nz.size else 0


def stabilizes_flag(g):
    """True iff g maps each V_i of the standard flag into itself."""
    m = g.matrix if isinstance(g, GroupElement) else linalg.as_square(g)
    flag = StandardFlag(m.shape[0])
    # images of e_1..e_i lie in V_i for every i  <=>  column j lies in V_{j+1}
    return all(flag.contains(m[:, j], j + 1) for j in range(m.shape[0]))


@dataclass(frozen=True)
class CosineReport:
    max_deviation: float
    max_norm_deviation: float
    pairs: int
    passed: bool
    tolerance: float = INVARIANCE_TOL


def preserves_cosine(g, vectors, tol=INVARIANCE_TOL):
    """Measure how far g moves pairwise cosine similarities (and norms)."""
    vecs = [linalg.as_vector(v) for v in vectors]
    if len(vecs) < 2:
        raise ValueError("need at least two vectors")
    for k, v in enumerate(vecs):
        if norm(v) == 0.0:
            raise ZeroVectorError(f"vector {k} is zero")
    moved = [act_vector(g, v) for v in vecs]
    dev = 0.0
    pairs = 0
    for a in range(len(vecs)):
        for b in range(a + 1, len(vecs)):
            before = cosine_similarity(vecs[a], vecs[b])
            after = cosine_similarity(moved[a], moved[b])
            dev = max(dev, abs(after - before))
            pairs += 1
    ndev = max(abs(norm(m) - norm(v)) for m, v in zip(moved, vecs))
    return CosineReport(dev, ndev, pairs, dev < tol, tol)


DILATION = "dilation"
CONTRACTION = "contraction"
REFLECTION = "reflection"
IDENTITY = "identity"
OTHER_NEGATIVE = "other-negative"
OTHER = "other"


def classify_factor(s):
    if s > 1.0:
        return DILATION
    if 0.0 < s < 1.0:
        return CONTRACTION
    if s == 1.0:
        return IDENTITY
    if s == -1.0:
        return REFLECTION
    if s < 0.0:
        return OTHER_NEGATIVE
    return OTHER


@dataclass(frozen=True)
class ScalingProfile:
    factors: tuple
    classes: tuple


def scaling_profile(g):
    if g.kind != SCALING:
        raise KindError(f"scaling profile needs a scaling element, got {g.kind}")
    factors = tuple(float(s) for s in np.diag(g.matrix))
    return ScalingProfile(factors, tuple(classify_factor(s) for s in factors))


@dataclass(frozen=True)
class DiagonalizabilityVerdict:
    diagonalizable: bool
    diagonalization: linalg.Diagonalization = None
    reason: str = None


def is_diagonalizable_scaling(matrix):
    """Does ``matrix`` become an invertible scaling matrix in some real basis?

    Symmetric invertible matrices always do.  Otherwise the answer is whether
    a full set of real eigenvectors exists.
    """
    m = linalg.as_square(matrix)
    det = linalg.determinant(m)
    if abs(det) <= linalg.SINGULAR_TOL:
        raise SingularMatrixError(f"matrix is singular (|det| = {abs(det):.3g})")
    try:
        d = linalg.diagonalize(m)
    except NotDiagonalizableError as exc:
        return DiagonalizabilityVerdict(False, None, exc.reason)
    return DiagonalizabilityVerdict(True, d, "symmetric" if linalg.is_symmetric(m) else None)


# -------------------------------------------------------- random elements


def random_householder(n, rng):
    u = rng.normal(size=n)
    return linalg.householder(u / np.sqrt(u @ u))


def random_element(kind, n, rng):
    """A random member of the group ``kind`` in dimension n."""
    if kind == ORTHOGONAL:
        m = np.eye(n)
        for _ in range(int(rng.integers(3, 7))):
            m = linalg.mat_mul(random_householder(n, rng), m)
        m = linalg.mat_mul(make_permutation(rng.permutation(n)).matrix, m)
        return make_element(m, ORTHOGONAL)
    if kind == SCALING:
        d = rng.uniform(0.2, 3.0, size=n) * rng.choice([-1.0, 1.0], size=n)
        return make_element(np.diag(d), SCALING)
    if kind == BOREL:
        m = np.triu(rng.normal(size=(n, n)), 1)
        d = rng.uniform(0.5, 2.0, size=n) * rng.choice([-1.0, 1.0], size=n)
        return make_element(m + np.diag(d), BOREL)
    if kind == PERMUTATION:
        return make_permutation(rng.permutation(n))
    if kind == GENERAL:
        # redraw until comfortably invertible so products stay well conditioned
        while True:
            m = np.eye(n) + 0.4 * rng.normal(size=(n, n))
            if abs(linalg.determinant(m)) > 0.1:
                return make_element(m, GENERAL)
    raise KindError(f"unknown group kind {kind!r}")
