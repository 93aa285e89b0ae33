"""Linear functionals on term space and the dual (contragredient) action.

A functional is stored by its coordinates in the dual of the standard
basis, so pairing with a vector is the coordinate dot product.  The dual
representation ``g -> inv(g)^T`` keeps every pairing unchanged when the
functional and the vector are transformed together.
"""
from dataclasses import dataclass

import numpy as np

from gvsm import groups, linalg
from gvsm.errors import BasisMismatchError, MissingCostError, ShapeError
from gvsm.vsm import FREQUENCY

STANDARD_BASIS = "standard"
PAIRING_TOL = 1e-9


@dataclass(frozen=True)
class LinearFunctional:
    coefficients: np.ndarray
    basis_tag: str = STANDARD_BASIS

    def __post_init__(self):
        c = linalg.as_vector(self.coefficients, "coefficients")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def dim(self):
        return self.coefficients.shape[0]

    def __call__(self, v, basis_tag=STANDARD_BASIS):
        return pair(self, v, basis_tag)


def dual_basis(n, basis_tag=STANDARD_BASIS):
    """The functionals picking out each coordinate: pair(b[i], e_j) == delta_ij."""
    eye = np.eye(n)
    return [LinearFunctional(eye[i], basis_tag) for i in range(n)]


def pair(phi, v, basis_tag=STANDARD_BASIS):
    """<phi, v> where ``v`` holds coordinates in the basis named ``basis_tag``."""
    if phi.basis_tag != basis_tag:
        raise BasisMismatchError(
            f"functional lives on the dual of basis {phi.basis_tag!r} but the "
            f"vector is in basis {basis_tag!r}; change basis explicitly"
        )
    v = linalg.as_vector(v)
    if v.shape[0] != phi.dim:
        raise ShapeError(f"functional has dimension {phi.dim}, vector has {v.shape[0]}")
    return float(phi.coefficients @ v)


@dataclass(frozen=True)
class DualRepresentation:
    primal: groups.GroupElement
    dual: groups.GroupElement


def _dual_kind(kind):
    # the inverse-transpose of an upper triangular matrix is lower triangular
    return groups.GENERAL if kind == groups.BOREL else kind


def dual_representation(g):
    if g.kind == groups.PERMUTATION:
        # inv(P)^T == P for permutation matrices
        d = groups.make_permutation(g.perm)
    else:
        d = groups.make_element(linalg.inverse(g.matrix).T, _dual_kind(g.kind))
    return DualRepresentation(g, d)


def act_functional(dr, phi):
    if phi.dim != dr.dual.dim:
        raise ShapeError(
            f"dual element has dimension {dr.dual.dim}, functional has {phi.dim}"
        )
    return LinearFunctional(groups.act_vector(dr.dual, phi.coefficients), phi.basis_tag)


@dataclass(frozen=True)
class PairingReport:
    before: float
    after: float
    deviation: float
    passed: bool
    tolerance: float = PAIRING_TOL


def verify_pairing_invariance(g, phi, v, tol=PAIRING_TOL, dr=None):
    """Compare <phi, v> with <dual(g) phi, g v>.

    ``dr`` may carry a precomputed ``dual_representation(g)``.
    """
    v = linalg.as_vector(v)
    if v.shape[0] != g.dim or phi.dim != g.dim:
        raise ShapeError(
            f"element dimension {g.dim}, functional {phi.dim}, vector {v.shape[0]}"
        )
    before = pair(phi, v, phi.basis_tag)
    if dr is None:
        dr = dual_representation(g)
    moved_phi = act_functional(dr, phi)
    after = pair(moved_phi, groups.act_vector(g, v), phi.basis_tag)
    dev = abs(after - before)
    return PairingReport(before, after, dev, dev < tol, tol)


# ------------------------------------------------------------------ costs

COUNTS = "counts"
WEIGHTS = "weights"


def cost_functional(costs, vocabulary):
    """Functional whose i-th coefficient is the cost of the i-th term."""
    coef = np.empty(len(vocabulary))
    for i, term in enumerate(vocabulary.terms):
        try:
            coef[i] = float(costs[term])
        except KeyError:
            raise MissingCostError(f"no cost given for term {term!r}") from None
    return LinearFunctional(coef)


def cost_basis(tdm, against="auto"):
    """Which column a cost functional pairs with: raw counts or weights."""
    if against == "auto":
        return COUNTS if tdm.scheme == FREQUENCY and not tdm.transformed else WEIGHTS
    if against not in (COUNTS, WEIGHTS):
        raise ValueError(f"against must be 'auto', 'counts' or 'weights', got {against!r}")
    return against


def _column(tdm, doc_id, basis):
    if not 1 <= doc_id <= tdm.n_docs:
        raise IndexError(f"doc_id {doc_id} outside 1..{tdm.n_docs}")
    if basis == WEIGHTS:
        return tdm.weights[:, doc_id - 1]
    if tdm.counts is not None:
        return tdm.counts[:, doc_id - 1].astype(np.float64)
    if tdm.scheme == FREQUENCY and not tdm.transformed:
        return tdm.weights[:, doc_id - 1]
    raise ValueError("raw term counts are not available for this matrix")


def total_cost(costs, tdm, doc_id, against="auto"):
    """Total cost of one document: costs paired with its count (or weight) column."""
    phi = cost_functional(costs, tdm.vocabulary)
    return pair(phi, _column(tdm, doc_id, cost_basis(tdm, against)))


@dataclass(frozen=True)
class CostReport:
    costs: dict
    paired_with: str


def total_costs(costs, tdm, against="auto"):
    basis = cost_basis(tdm, against)
    phi = cost_functional(costs, tdm.vocabulary)
    return CostReport(
        {d: pair(phi, _column(tdm, d, basis)) for d in tdm.doc_ids}, basis
    )
