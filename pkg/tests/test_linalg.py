import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracle
from recollement import linalg as la
from recollement.errors import InputError
from recollement.linalg import FieldScalar, Matrix


def M(rows, p=2):
    return Matrix(rows, p)


def test_rank_examples():
    assert la.rank(Matrix.identity(2, 2)) == 2
    assert la.rank(Matrix.zeros(3, 4, 2)) == 0
    assert la.rank(M([[1, 1], [1, 1]])) == 1


def test_nullspace_examples():
    assert la.nullspace_basis(Matrix.identity(3, 2)).cols == 0
    z = la.nullspace_basis(Matrix.zeros(1, 2, 2))
    assert z.cols == 2 and la.rank(z) == 2
    assert la.nullspace_basis(M([[1, 1]])).tolist() == [[1], [1]]


def test_column_space_examples():
    assert la.column_space_basis(Matrix.identity(3, 2)) == Matrix.identity(3, 2)
    assert la.column_space_basis(Matrix.zeros(2, 3, 2)).cols == 0
    assert la.column_space_basis(M([[1, 1], [1, 1]])).tolist() == [[1], [1]]


def test_solve_examples():
    b = M([[1], [0], [1]])
    assert la.solve(Matrix.identity(3, 2), b) == b
    assert la.solve(Matrix.zeros(3, 3, 2), b) is None
    x = la.solve(M([[1, 1]]), M([[0]]))
    assert (M([[1, 1]]) @ x).is_zero()


def test_solve_shape_mismatch():
    with pytest.raises(InputError):
        la.solve(Matrix.identity(2, 2), Matrix.zeros(3, 1, 2))


def test_quotient_map_examples():
    assert la.quotient_map(Matrix.zeros(2, 0, 2), 2) == Matrix.identity(2, 2)
    assert la.quotient_map(Matrix.identity(2, 2), 2).shape == (0, 2)
    q = la.quotient_map(M([[1], [0]]), 2)
    assert q.shape == (1, 2) and (q @ M([[1], [0]])).is_zero() and la.rank(q) == 1


def test_quotient_map_rejects_dependent_columns():
    with pytest.raises(InputError):
        la.quotient_map(M([[1, 1], [0, 0]]), 2)


def test_relation_coefficient_reduced():
    assert M([[-1]], 5).tolist() == [[4]]
    assert M([[-1]]).tolist() == [[1]]


def test_field_scalar():
    a = FieldScalar(3, 7)
    assert int(a * a.inverse()) == 1
    assert int(a / 3) == 1
    assert a - 5 == FieldScalar(5, 7)
    with pytest.raises(ZeroDivisionError):
        FieldScalar(0, 7).inverse()


def test_prime_check():
    assert la.is_prime(2) and la.is_prime(13) and not la.is_prime(1) and not la.is_prime(9)
    with pytest.raises(InputError):
        la.check_prime(4)


def test_mixed_fields_rejected():
    with pytest.raises(InputError):
        Matrix.identity(2, 2) @ Matrix.identity(2, 3)


def test_inverse_and_block_ops():
    a = M([[1, 1], [0, 1]], 3)
    assert a @ la.inverse(a) == Matrix.identity(2, 3)
    with pytest.raises(InputError):
        la.inverse(M([[1, 1], [1, 1]]))
    d = la.block_diag([a, Matrix.identity(1, 3)], 3)
    assert d.shape == (3, 3) and la.rank(d) == 3
    assert la.kron(Matrix.identity(2, 2), M([[1, 1]])).shape == (2, 4)


matrices = st.builds(
    lambda r, c, p, seed: la.random_matrix(np.random.default_rng(seed), r, c, p),
    st.integers(0, 5), st.integers(0, 5), st.sampled_from([2, 3, 5]), st.integers(0, 10**6))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_nullity(m):
    n = la.nullspace_basis(m)
    assert la.rank(m) + n.cols == m.cols
    assert (m @ n).is_zero()
    assert la.rank(n) == n.cols


@settings(max_examples=150, deadline=None)
@given(matrices, st.integers(0, 10**6))
def test_solve_consistent(m, seed):
    rng = np.random.default_rng(seed)
    x0 = la.random_matrix(rng, m.cols, 2, m.p)
    b = m @ x0
    x = la.solve(m, b)
    assert x is not None and m @ x == b


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_quotient_map_properties(m):
    basis = la.column_space_basis(m)
    q = la.quotient_map(basis, m.rows)
    assert (q @ basis).is_zero()
    assert la.rank(q) == m.rows - basis.cols
    assert la.same_column_space(basis, m)


def test_rank_against_enumeration_oracle():
    rng = np.random.default_rng(7)
    for _ in range(200):
        r, c = rng.integers(0, 4, size=2)
        m = la.random_matrix(rng, int(r), int(c), 2)
        arr = np.array(m.tolist(), dtype=np.int64).reshape(m.rows, m.cols)
        assert la.rank(m) == oracle.rank(arr)
        assert 2 ** la.nullspace_basis(m).cols == oracle.kernel_size(arr)


def test_solve_against_enumeration_oracle():
    rng = np.random.default_rng(11)
    for _ in range(200):
        a = la.random_matrix(rng, 3, 3, 2)
        b = la.random_matrix(rng, 3, 1, 2)
        arr = np.array(a.tolist(), dtype=np.int64)
        target = np.array(b.tolist(), dtype=np.int64).ravel()
        solvable = any(((arr @ v - target) % 2 == 0).all() for v in oracle.vectors(3))
        assert (la.solve(a, b) is not None) == solvable


def test_immutable():
    m = Matrix.identity(2, 2)
    with pytest.raises(ValueError):
        m.a[0, 0] = 0
