from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ospbranch.algebra import make_spec
from ospbranch.fock import enumerate_sector
from ospbranch.linalg import Echelon, dot, gram_rank, kernel, linear_combination, primitive, rank, relations
from ospbranch.sparse import BasisMismatch, SparseOperator, graded_commutator


def dense_rank(rows: list[list[Fraction]]) -> int:
    """Textbook Gaussian elimination over Fractions (independent oracle)."""
    m = [list(map(Fraction, r)) for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


def to_dense(vecs, n):
    return [[v.get(i, 0) for i in range(n)] for v in vecs]


sparse_vecs = st.lists(st.dictionaries(st.integers(0, 7), st.integers(-4, 4).filter(bool), max_size=5),
                       min_size=0, max_size=7)


@given(sparse_vecs)
def test_rank_matches_dense_oracle(vecs):
    expect = dense_rank(to_dense(vecs, 8)) if vecs else 0
    assert rank(vecs) == expect


@given(sparse_vecs)
def test_relations_are_relations_and_complete(vecs):
    rels = relations(vecs)
    for r in rels:
        assert not linear_combination(r, vecs)
    assert len(rels) == len(vecs) - rank(vecs)


@given(sparse_vecs, sparse_vecs)
def test_membership_and_reduce(vecs, others):
    ech = Echelon(vecs)
    for v in vecs:
        assert v in ech
    for w in others:
        grown = Echelon(vecs + [w])
        assert (w in ech) == (grown.dim == ech.dim)
        assert (not ech.reduce(w)) == (w in ech)


@given(sparse_vecs)
def test_kernel_of_a_map(vecs):
    srcs = [{j: 1} for j in range(len(vecs))]
    ker = kernel(vecs, srcs)
    assert len(ker) == len(vecs) - rank(vecs)
    for k in ker:
        assert not linear_combination(k, vecs)


def test_primitive_and_dot():
    assert primitive({0: 4, 3: -6}) == {0: 2, 3: -3}
    assert primitive({1: Fraction(1, 2), 2: Fraction(1, 3)}) == {1: 3, 2: 2}
    assert dot({0: 1, 1: 2}, {1: 3, 2: 5}) == 6
    assert dot({0: 1, 1: 2}, {0: 1, 1: 3}, [-1, 2]) == 11


@given(st.lists(st.dictionaries(st.integers(0, 5), st.integers(-3, 3).filter(bool), max_size=4), max_size=5),
       st.lists(st.sampled_from([-2, -1, 1, 3]), min_size=6, max_size=6))
def test_gram_rank_matches_dense(vecs, diag):
    r, rad = gram_rank(vecs, diag)
    G = [[dot(u, v, diag) for v in vecs] for u in vecs]
    assert r == (dense_rank(G) if vecs else 0)
    for rel in rad:
        w = linear_combination(rel, vecs)
        assert all(dot(w, v, diag) == 0 for v in vecs)


@pytest.fixture(scope="module")
def basis():
    return enumerate_sector(make_spec(1, 4), 1, 2)


matrices = st.lists(st.tuples(st.integers(0, 13), st.integers(0, 13), st.integers(-3, 3)), max_size=20)


@given(matrices, matrices, st.sampled_from([0, 1]), st.sampled_from([0, 1]))
@settings(max_examples=40)
def test_sparse_arithmetic_matches_numpy(basis, ea, eb, pa, pb):
    A = SparseOperator.from_entries(basis, basis, ea, parity=pa)
    B = SparseOperator.from_entries(basis, basis, eb, parity=pb)
    da = np.array([[float(x) for x in row] for row in A.to_fraction_dense()])
    db = np.array([[float(x) for x in row] for row in B.to_fraction_dense()])
    assert np.array_equal(np.array((A @ B).to_fraction_dense(), dtype=float), da @ db)
    assert np.array_equal(np.array((A + B).to_fraction_dense(), dtype=float), da + db)
    br = graded_commutator(A, B)
    sign = -1 if pa and pb else 1
    assert br == A @ B - (B @ A).scale(sign)
    # bilinearity in the first slot
    assert graded_commutator(A.scale(3), B) == br.scale(3)


def test_odd_self_bracket_and_identity(basis):
    A = SparseOperator.from_entries(basis, basis, [(0, 1, 2), (3, 2, -1), (1, 1, 1)], parity=1)
    assert graded_commutator(A, A) == (A @ A).scale(2)
    I = SparseOperator.identity(basis)
    assert graded_commutator(I, A).is_zero()


def test_fractions_and_apply(basis):
    A = SparseOperator.from_entries(basis, basis, [(0, 0, Fraction(1, 2)), (1, 0, Fraction(2, 3))])
    assert A.den == 6
    assert A.apply({0: 3}) == {0: Fraction(3, 2), 1: 2}
    assert A.apply_numerator({0: 1}) == {0: 3, 1: 4}
    assert A.entry(1, 0) == Fraction(2, 3)


def test_basis_mismatch(basis):
    other = enumerate_sector(make_spec(1, 4), 1, 1)
    A = SparseOperator.identity(basis)
    B = SparseOperator.identity(other)
    with pytest.raises(BasisMismatch):
        A + B
    with pytest.raises(BasisMismatch):
        A @ B
