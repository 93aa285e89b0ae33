import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import D_SAMPLE, D_SCALED, D_SWAPPED, H_SWAP, H_U, S_SCALE, SAMPLE_QUERY, T_B
from gvsm import groups, linalg, vsm
from gvsm.errors import (
    ClassificationError,
    InvalidPermutationError,
    KindError,
    ShapeError,
    SingularMatrixError,
    ZeroVectorError,
)
from gvsm.groups import BOREL, GENERAL, ORTHOGONAL, PERMUTATION, SCALING

CLOSED_KINDS = (ORTHOGONAL, SCALING, BOREL, PERMUTATION)


# ----------------------------------------------------------- construction


def test_make_element_householder_is_orthogonal():
    g = groups.make_element(linalg.householder(H_U), ORTHOGONAL)
    assert g.kind == ORTHOGONAL
    assert np.array_equal(g.matrix.T @ g.matrix, np.eye(6))


@pytest.mark.parametrize("kind", groups.KINDS)
def test_identity_accepted_for_every_kind(kind):
    g = groups.make_element(np.eye(4), kind)
    assert g.kind == kind
    assert np.array_equal(g.matrix, np.eye(4))


def test_scaling_matrix_classification():
    with pytest.raises(ClassificationError, match="orthogonal"):
        groups.make_element(S_SCALE, ORTHOGONAL)
    assert groups.make_element(S_SCALE, SCALING).kind == SCALING


def test_classification_error_names_worst_entry():
    m = np.eye(3)
    m[2, 0] = 0.5
    m[1, 0] = 0.1
    with pytest.raises(ClassificationError, match=r"\[2,0\]"):
        groups.make_element(m, BOREL)
    with pytest.raises(ClassificationError, match=r"\[2,0\]"):
        groups.make_element(m, SCALING)


def test_make_element_errors():
    with pytest.raises(SingularMatrixError):
        groups.make_element([[1.0, 2.0], [2.0, 4.0]], GENERAL)
    with pytest.raises(KindError):
        groups.make_element(np.eye(2), "affine")
    with pytest.raises(ShapeError):
        groups.make_element(np.ones((2, 3)), GENERAL)
    with pytest.raises(ClassificationError):
        groups.make_element([[0.0, 1.0], [0.5, 0.0]], PERMUTATION)


def test_elements_are_read_only():
    g = groups.make_element(np.eye(2), GENERAL)
    with pytest.raises(ValueError):
        g.matrix[0, 0] = 5.0


def test_permutation_swap_equals_householder():
    g = groups.make_permutation([1, 0, 2, 3, 4, 5])
    assert np.array_equal(g.matrix, H_SWAP)
    assert np.array_equal(g.matrix, linalg.householder(H_U))


def test_identity_permutation():
    assert np.array_equal(groups.make_permutation(range(5)).matrix, np.eye(5))


def test_permutation_sends_basis_vectors(rng):
    perm = rng.permutation(7)
    g = groups.make_permutation(perm)
    eye = np.eye(7)
    for i in range(7):
        assert np.array_equal(groups.act_vector(g, eye[i]), eye[perm[i]])


def test_permutation_from_matrix_recovers_perm(rng):
    perm = tuple(int(p) for p in rng.permutation(6))
    g = groups.make_element(groups.make_permutation(perm).matrix, PERMUTATION)
    assert g.perm == perm


@pytest.mark.parametrize("perm", [[0, 0, 1], [0, 2], [], [1, 2, 3]])
def test_invalid_permutation(perm):
    with pytest.raises(InvalidPermutationError):
        groups.make_permutation(perm)


# ----------------------------------------------------------------- action


def test_act_vector_scaling_on_first_column():
    s = groups.make_element(S_SCALE, SCALING)
    out = groups.act_vector(s, D_SAMPLE[:, 0])
    np.testing.assert_allclose(out, [0.704, 0, 0, 0, 0.954, 0], atol=1e-12)


def test_act_vector_identity_and_shape(rng):
    v = rng.normal(size=4)
    assert np.array_equal(groups.act_vector(groups.identity(4), v), v)
    with pytest.raises(ShapeError):
        groups.act_vector(groups.identity(3), v)


def test_act_tdm_householder_swaps_rows(sample_tfidf):
    h = groups.make_element(linalg.householder(H_U), ORTHOGONAL)
    out = groups.act_tdm(h, sample_tfidf)
    w = sample_tfidf.weights
    assert np.array_equal(out.weights, w[[1, 0, 2, 3, 4, 5]])
    np.testing.assert_allclose(out.weights, D_SWAPPED, atol=1e-3)
    assert out.vocabulary == sample_tfidf.vocabulary
    assert np.array_equal(out.df, sample_tfidf.df)
    assert out.transformed and not sample_tfidf.transformed


def test_act_tdm_scaling(sample_tfidf):
    out = groups.act_tdm(groups.make_element(S_SCALE, SCALING), sample_tfidf)
    np.testing.assert_allclose(out.weights, D_SCALED, atol=1e-3)
    assert out.weights[1, 2] == pytest.approx(1.056, abs=1e-3)


def test_act_tdm_identity_and_shape(sample_tfidf):
    out = groups.act_tdm(groups.identity(6), sample_tfidf)
    assert np.array_equal(out.weights, sample_tfidf.weights)
    with pytest.raises(ShapeError, match="6 terms"):
        groups.act_tdm(groups.identity(5), sample_tfidf)


def test_act_tdm_permutation_moves_rows_exactly(sample_tfidf, rng):
    perm = rng.permutation(6)
    out = groups.act_tdm(groups.make_permutation(perm), sample_tfidf)
    for i in range(6):
        assert np.array_equal(out.weights[perm[i]], sample_tfidf.weights[i])


@pytest.mark.parametrize("kind", groups.KINDS)
def test_action_axiom(rng, kind):
    for _ in range(20):
        g = groups.random_element(kind, 5, rng)
        h = groups.random_element(kind, 5, rng)
        v = rng.normal(size=5)
        lhs = groups.act_vector(groups.compose(g, h), v)
        rhs = groups.act_vector(g, groups.act_vector(h, v))
        np.testing.assert_allclose(lhs, rhs, atol=1e-9)


# ---------------------------------------------------- compose and inverse


def test_householder_squared_is_identity(rng):
    h = groups.make_element(groups.random_householder(5, rng), ORTHOGONAL)
    np.testing.assert_allclose(groups.compose(h, h).matrix, np.eye(5), atol=1e-12)


def test_compose_scaling_multiplies_factors(rng):
    a = groups.random_element(SCALING, 6, rng)
    b = groups.random_element(SCALING, 6, rng)
    c = groups.compose(a, b)
    assert c.kind == SCALING
    assert np.array_equal(np.diag(c.matrix), np.diag(a.matrix) * np.diag(b.matrix))


def test_compose_mixed_kinds_is_general(rng):
    g = groups.compose(groups.random_element(BOREL, 4, rng), groups.random_element(ORTHOGONAL, 4, rng))
    assert g.kind == GENERAL
    with pytest.raises(ShapeError):
        groups.compose(groups.identity(3), groups.identity(4))


def test_compose_permutations_follows_convention():
    g = groups.make_permutation([1, 2, 0])
    h = groups.make_permutation([0, 2, 1])
    c = groups.compose(g, h)
    assert c.perm == (1, 0, 2)
    assert np.array_equal(c.matrix, g.matrix @ h.matrix)


def test_inverse_diag_1_2():
    g = groups.inverse_element(groups.make_element(np.diag([1.0, 2.0]), SCALING))
    assert np.array_equal(g.matrix, np.diag([1.0, 0.5]))


def test_inverse_orthogonal_is_transpose(rng):
    for _ in range(10):
        g = groups.random_element(ORTHOGONAL, 6, rng)
        np.testing.assert_allclose(groups.inverse_element(g).matrix, g.matrix.T, atol=1e-9)


def test_borel_multiply_back(rng):
    for _ in range(20):
        g = groups.random_element(BOREL, 6, rng)
        c = groups.compose(g, groups.inverse_element(g))
        np.testing.assert_allclose(c.matrix, np.eye(6), atol=1e-9)


@pytest.mark.parametrize("kind", groups.KINDS)
def test_group_axioms(rng, kind):
    for n in (1, 3, 6):
        for _ in range(10):
            a, b, c = (groups.random_element(kind, n, rng) for _ in range(3))
            ab_c = groups.compose(groups.compose(a, b), c)
            a_bc = groups.compose(a, groups.compose(b, c))
            np.testing.assert_allclose(ab_c.matrix, a_bc.matrix, atol=1e-9)
            inv = groups.inverse_element(a)
            np.testing.assert_allclose(groups.compose(a, inv).matrix, np.eye(n), atol=1e-9)
            np.testing.assert_allclose(groups.compose(inv, a).matrix, np.eye(n), atol=1e-9)
            assert inv.kind == kind
            assert groups.compose(a, b).kind == kind


# ------------------------------------------------------------------- flag


def test_flag_membership():
    flag = groups.StandardFlag(4)
    assert flag.contains([1.0, 2.0, 0.0, 0.0], 2)
    assert not flag.contains([1.0, 2.0, 1e-6, 0.0], 2)
    assert flag.contains([0.0] * 4, 0)
    assert flag.level([0.0, 3.0, 0.0, 0.0]) == 2
    assert flag.level([0.0] * 4) == 0
    with pytest.raises(ValueError):
        flag.contains([0.0] * 4, 5)


def test_identity_and_borel_stabilize(rng):
    assert groups.stabilizes_flag(groups.identity(6))
    for _ in range(50):
        assert groups.stabilizes_flag(groups.random_element(BOREL, int(rng.integers(1, 9)), rng))


def test_lower_entry_counterexample():
    m = np.eye(6)
    m[2, 0] = 1.0
    g = groups.make_element(m, GENERAL)
    assert not groups.stabilizes_flag(g)
    # e_1 is sent out of V_1
    assert groups.StandardFlag(6).level(groups.act_vector(g, np.eye(6)[0])) == 3


@settings(max_examples=100, deadline=None)
@given(
    st.integers(2, 7).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.integers(1, n - 1),
            st.integers(0, n - 2),
            st.floats(1e-9, 10).map(lambda x: x * 1.0001),
            st.booleans(),
        )
    )
)
def test_any_subdiagonal_entry_breaks_the_flag(args):
    n, r, c, mag, neg = args
    c = min(c, r - 1)
    m = np.triu(np.ones((n, n)))
    m[r, c] = -mag if neg else mag
    assert not groups.stabilizes_flag(m)


# ----------------------------------------------------------------- cosine


def test_householder_preserves_sample_cosines(sample_tfidf):
    h = groups.make_element(linalg.householder(H_U), ORTHOGONAL)
    cols = [sample_tfidf.column(d) for d in sample_tfidf.doc_ids]
    rep = groups.preserves_cosine(h, cols)
    assert rep.passed
    assert rep.max_deviation < 1e-9
    assert rep.pairs == 3


def test_identity_cosine_deviation_zero(rng):
    rep = groups.preserves_cosine(groups.identity(4), list(rng.normal(size=(4, 4))))
    assert rep.max_deviation == 0.0
    assert rep.max_norm_deviation == 0.0


def test_scaling_breaks_cosine(sample_tfidf):
    cols = [sample_tfidf.column(d) for d in sample_tfidf.doc_ids]
    rep = groups.preserves_cosine(groups.make_element(S_SCALE, SCALING), cols)
    assert not rep.passed
    assert rep.max_deviation > 1e-9


def test_preserves_cosine_errors():
    with pytest.raises(ZeroVectorError):
        groups.preserves_cosine(groups.identity(2), [[1.0, 0.0], [0.0, 0.0]])
    with pytest.raises(ValueError):
        groups.preserves_cosine(groups.identity(2), [[1.0, 0.0]])


def test_random_orthogonal_preserves_cosine_and_norm(rng):
    for _ in range(200):
        n = int(rng.integers(2, 9))
        g = groups.random_element(ORTHOGONAL, n, rng)
        rep = groups.preserves_cosine(g, list(rng.normal(size=(2, n))))
        assert rep.max_deviation < 1e-9
        assert rep.max_norm_deviation < 1e-9


def test_orthogonal_action_keeps_sample_ranking(sample_tfidf, rng):
    q = vsm.embed_query_for(SAMPLE_QUERY, sample_tfidf)
    base = vsm.rank(q, sample_tfidf)
    for _ in range(20):
        g = groups.random_element(ORTHOGONAL, 6, rng)
        moved = vsm.rank(groups.act_vector(g, q), groups.act_tdm(g, sample_tfidf))
        assert moved.doc_ids == base.doc_ids
        np.testing.assert_allclose([s for _, s in moved], [s for _, s in base], atol=1e-9)


# ---------------------------------------------------------------- scaling


def test_scaling_profile_sample():
    p = groups.scaling_profile(groups.make_element(S_SCALE, SCALING))
    assert p.factors == (2.0, 3.0, 2.0, 1.0, 1.0, 1.0)
    assert p.classes == ("dilation",) * 3 + ("identity",) * 3


def test_scaling_profile_other_cases():
    assert groups.scaling_profile(groups.identity(3, SCALING)).classes == ("identity",) * 3
    p = groups.scaling_profile(groups.make_element(np.diag([-1.0, 0.5]), SCALING))
    assert p.classes == ("reflection", "contraction")
    assert groups.classify_factor(-3.0) == "other-negative"
    with pytest.raises(KindError):
        groups.scaling_profile(groups.identity(2))


def test_diagonalizable_t_b():
    v = groups.is_diagonalizable_scaling(T_B)
    assert v.diagonalizable
    np.testing.assert_allclose(np.diag(v.diagonalization.diagonal), [4, 2, 1, 1], atol=1e-9)


def test_householders_are_diagonalizable(rng):
    for n in (2, 4, 7):
        v = groups.is_diagonalizable_scaling(groups.random_householder(n, rng))
        assert v.diagonalizable
        assert v.reason == "symmetric"


def test_rotation_not_diagonalizable():
    v = groups.is_diagonalizable_scaling([[0.0, -1.0], [1.0, 0.0]])
    assert not v.diagonalizable
    assert v.reason == "complex"
    assert v.diagonalization is None


def test_shear_not_diagonalizable():
    v = groups.is_diagonalizable_scaling([[1.0, 1.0], [0.0, 1.0]])
    assert not v.diagonalizable
    assert v.reason == "defective"


def test_diagonalizable_singular():
    with pytest.raises(SingularMatrixError):
        groups.is_diagonalizable_scaling([[1.0, 1.0], [1.0, 1.0]])


# ------------------------------------------------------- random elements


@pytest.mark.parametrize("kind", groups.KINDS)
def test_random_elements_have_their_kind(rng, kind):
    for n in range(1, 9):
        g = groups.random_element(kind, n, rng)
        assert g.kind == kind
        assert g.dim == n
        # re-validating the matrix must succeed
        assert groups.make_element(g.matrix, kind).kind == kind
