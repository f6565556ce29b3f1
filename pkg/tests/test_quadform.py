import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import family_p3m4_diff, family_p5m3_lp, family_p3m4_even, family_p3m5_any
from spreadseq import (
    ConditionViolation,
    InsufficientFamilyError,
    MatrixFamily,
    QuadMatrix,
    ShapeError,
    psi,
    r_min,
    rank_fp,
    rank_table,
    symplectic_q,
    verify_rank_lower_bound,
)


def test_psi_small_worked_example():
    # the printed matrix (and its expansion 2x1x2 + x2x4 + x4x3 + 2x1^2 + x3^2 + x4^2)
    # has diagonal (2, 0, 1, 1); the stated d = (2, 0, 2, 1) differs in d_3
    printed = [[2, 2, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 0, 1, 1]]
    A = psi([1, 2, 4, 3], (2, 1, 1), (2, 0, 1, 1), 3)
    assert A.matrix.tolist() == printed
    assert A.in_Ap()
    B = psi([1, 2, 4, 3], (2, 1, 1), (2, 0, 2, 1), 3)
    expected = np.array(printed)
    expected[2, 2] = 2
    assert np.array_equal(B.matrix, expected)


def test_psi_zero():
    A = psi([1, 2], (0,), (0, 0), 3)
    assert not A.matrix.any()
    assert not A.in_Ap()


def test_psi_p5_member():
    A = psi([3, 1, 2], (2, 2), (0, 3, 4), 5)
    assert A.matrix.tolist() == [[0, 2, 0], [0, 3, 0], [2, 0, 4]]


def test_psi_reduces_mod_p():
    assert psi([2, 1], (4,), (3, 5), 3) == psi([2, 1], (1,), (0, 2), 3)


@pytest.mark.parametrize("a,d", [((1, 1), (0, 0)), ((1,), (0,)), ((1, 2, 3), (0, 0, 0))])
def test_psi_shape_errors(a, d):
    with pytest.raises(ShapeError):
        psi([1, 2], a, d, 3)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(2, 6), st.integers(0, 2**32 - 1))
def test_psi_structure(p, m, seed):
    rng = np.random.default_rng(seed)
    pi = [int(v) + 1 for v in rng.permutation(m)]
    a = rng.integers(0, p, m - 1)
    d = rng.integers(0, p, m)
    A = psi(pi, a, d, p).matrix
    expected = np.diag(d)
    for k in range(m - 1):
        expected[pi[k] - 1, pi[k + 1] - 1] = a[k]
    assert np.array_equal(A, expected)


def test_symplectic_of_equal_pair_is_zero():
    A = psi([1, 2, 3], (1, 2), (0, 1, 2), 3)
    Q = symplectic_q(A, A)
    assert not Q.matrix.any() and Q.rank == 0


def test_symplectic_ranks_known_pairs():
    f41 = family_p5m3_lp()
    assert symplectic_q(f41[0], f41[1]).rank == 3
    f44 = family_p3m4_even()
    assert symplectic_q(f44[0], f44[3]).rank == 4


def test_symplectic_shape_mismatch():
    with pytest.raises(ShapeError):
        symplectic_q(psi([1, 2], (1,), (0, 0), 3), psi([1, 2, 3], (1, 1), (0, 0, 0), 3))
    with pytest.raises(ShapeError):
        symplectic_q(psi([1, 2], (1,), (0, 0), 3), psi([1, 2], (1,), (0, 0), 5))


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([3, 5]), st.integers(2, 5), st.integers(0, 2**32 - 1))
def test_symplectic_symmetric_and_swap_invariant(p, m, seed):
    rng = np.random.default_rng(seed)
    A = QuadMatrix(rng.integers(0, p, (m, m)), p)
    B = QuadMatrix(rng.integers(0, p, (m, m)), p)
    Q = symplectic_q(A, B)
    assert np.array_equal(Q.matrix, Q.matrix.T)
    assert Q.rank == symplectic_q(B, A).rank == rank_fp(Q.matrix, p)


def test_r_min_known_families():
    assert r_min(family_p5m3_lp()) == 3
    assert r_min(family_p3m5_any()) == 5
    T = rank_table(family_p3m4_diff())
    assert T.shape == (6, 6) and (np.diag(T) == 0).all()
    assert np.array_equal(T, T.T)


def test_r_min_identical_and_too_small():
    A = psi([1, 2], (1,), (0, 0), 3)
    assert r_min(MatrixFamily((A, A))) == 0
    with pytest.raises(InsufficientFamilyError):
        r_min(MatrixFamily((A,)))


def test_diagonal_difference_family():
    # members sharing pi and a differ only on the diagonal: Q = 2 diag(d_i - d_j)
    fam = family_p5m3_lp()
    for i in range(fam.L):
        for j in range(i + 1, fam.L):
            Q = symplectic_q(fam[i], fam[j]).matrix
            assert np.array_equal(Q, np.diag(np.diag(Q)))
            assert np.all(np.diag(Q) != 0)


def test_rank_lower_bound_examples():
    assert verify_rank_lower_bound(psi([1, 2, 4, 3], (2, 1, 1), (2, 0, 2, 1), 3))
    assert verify_rank_lower_bound(psi([1, 2], (1,), (0, 0), 3))


def test_rank_lower_bound_preconditions():
    with pytest.raises(ConditionViolation, match=r"a\[2\] must be nonzero"):
        verify_rank_lower_bound(psi([1, 2, 3], (1, 0), (0, 0, 0), 3))
    with pytest.raises(ConditionViolation):
        verify_rank_lower_bound(QuadMatrix(np.eye(3, dtype=int), 3))


def test_rank_lower_bound_sweep():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        p = int(rng.choice([3, 5, 7]))
        m = int(rng.integers(2, 7))
        pi = [int(v) + 1 for v in rng.permutation(m)]
        A = psi(pi, rng.integers(1, p, m - 1), rng.integers(0, p, m), p)
        assert verify_rank_lower_bound(A)
        assert rank_fp(A.matrix + A.matrix.T, p) in (m - 1, m)
