import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spreadseq import PrimeModulus, bracket_mod, cyclic_shift_perm, digits_of, int_of_digits, rank_fp
from spreadseq.fpcore import check_permutation, digit_table, permutation_matrix


def rowspace_dim(M, p):
    """Brute force: log_p of the number of distinct F_p combinations of the rows."""
    M = np.asarray(M) % p
    seen = set()
    for coeffs in itertools.product(range(p), repeat=M.shape[0]):
        seen.add(tuple((np.array(coeffs) @ M) % p))
    size, r = len(seen), 0
    while p**r < size:
        r += 1
    assert p**r == size
    return r


@pytest.mark.parametrize("p", [3, 5, 7, 251])
def test_prime_modulus_accepts_odd_primes(p):
    assert PrimeModulus(p).p == p


@pytest.mark.parametrize("bad", [2, 4, 9, 1, 0, -3, 257])
def test_prime_modulus_rejects(bad):
    with pytest.raises(ValueError):
        PrimeModulus(bad)


@pytest.mark.parametrize("x,m,p,expected", [
    (0, 2, 3, (0, 0)),
    (5, 2, 3, (2, 1)),
    (4, 4, 3, (1, 1, 0, 0)),
])
def test_digits_of_examples(x, m, p, expected):
    assert digits_of(x, m, p) == expected


def test_digits_out_of_range():
    with pytest.raises(ValueError):
        digits_of(9, 2, 3)
    with pytest.raises(ValueError):
        digits_of(-1, 2, 3)


@pytest.mark.parametrize("p,m", [(3, 4), (5, 3), (7, 2), (3, 10)])
def test_digits_roundtrip_exhaustive(p, m):
    T = digit_table(p, m)
    assert T.shape == (p**m, m)
    weights = p ** np.arange(m)
    assert np.array_equal(T @ weights, np.arange(p**m))
    for x in range(0, p**m, max(1, p**m // 200)):
        assert int_of_digits(digits_of(x, m, p), p) == x
        assert tuple(T[x]) == digits_of(x, m, p)


@pytest.mark.parametrize("k,m,expected", [(4, 4, 4), (5, 4, 1), (3, 4, 3), (8, 4, 4), (1, 1, 1)])
def test_bracket_mod(k, m, expected):
    assert bracket_mod(k, m) == expected


@pytest.mark.parametrize("pi,tau,expected", [
    ([1, 2, 3, 4], 4, (1, 2, 3, 4)),
    ([2, 3, 1, 4], 1, (3, 1, 4, 2)),
    ([1, 2], 1, (2, 1)),
])
def test_cyclic_shift(pi, tau, expected):
    assert cyclic_shift_perm(pi, tau) == expected


def test_cyclic_shift_composes():
    pi = [3, 5, 1, 2, 4]
    assert cyclic_shift_perm(cyclic_shift_perm(pi, 2), 1) == cyclic_shift_perm(pi, 3)


def test_check_permutation_rejects():
    with pytest.raises(ValueError):
        check_permutation([1, 1, 2])
    with pytest.raises(ValueError):
        check_permutation([0, 1, 2])


def test_rank_trivial():
    assert rank_fp(np.zeros((4, 4), dtype=int), 3) == 0
    for m in range(1, 6):
        assert rank_fp(np.eye(m, dtype=int), 3) == m


def test_rank_rectangular_and_reduced():
    M = np.array([[1, 2, 3], [2, 4, 6]])
    assert rank_fp(M, 5) == 1
    assert rank_fp(M, 3) == 1
    assert rank_fp([[3, 0], [0, 3]], 3) == 0
    assert rank_fp(np.array([[1, 0, 0, 1], [0, 1, 1, 0]]), 7) == 2


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_rank_against_rowspace_enumeration(p, m):
    rng = np.random.default_rng(100 * p + m)
    for _ in range(25):
        M = rng.integers(0, p, size=(m, m))
        if rng.random() < 0.3 and m > 1:
            M[-1] = (M[0] * rng.integers(0, p)) % p
        assert rank_fp(M, p) == rowspace_dim(M, p)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(1, 7), st.integers(1, 7), st.integers(0, 2**32 - 1))
def test_rank_transpose_invariant(p, r, c, seed):
    M = np.random.default_rng(seed).integers(0, p, size=(r, c))
    k = rank_fp(M, p)
    assert k == rank_fp(M.T, p)
    assert 0 <= k <= min(r, c)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(2, 7), st.integers(0, 2**32 - 1))
def test_rank_permutation_congruence(p, m, seed):
    rng = np.random.default_rng(seed)
    M = rng.integers(0, p, size=(m, m))
    P = permutation_matrix([int(v) + 1 for v in rng.permutation(m)])
    assert rank_fp(P @ M @ P.T, p) == rank_fp(M, p)


def test_permutation_matrix_convention():
    x = np.array([10, 20, 30])
    assert list(x @ permutation_matrix([3, 1, 2])) == [30, 10, 20]
