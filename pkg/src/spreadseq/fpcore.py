"""
Exact arithmetic over the prime field F_p.

Digits are least-significant first: the integer ``x`` corresponds to the
vector ``(x_1, ..., x_m)`` with ``x = sum_k x_k p**(k-1)``. Permutations are
1-indexed tuples, so ``pi[k-1]`` is pi(k).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import ShapeError

MAX_PRIME = 251


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class PrimeModulus:
    """An odd prime ``3 <= p <= 251``."""

    p: int

    def __post_init__(self):
        p = self.p
        if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
            raise TypeError(f"modulus must be an integer, got {type(p).__name__}")
        if not _is_prime(int(p)):
            raise ValueError(f"p={p} is not prime")
        if p == 2:
            raise ValueError("p must be an odd prime")
        if p > MAX_PRIME:
            raise ValueError(f"p={p} exceeds the supported maximum {MAX_PRIME}")
        object.__setattr__(self, "p", int(p))

    def __int__(self):
        return self.p


def check_prime(p) -> int:
    """Validate ``p`` (int or PrimeModulus) and return it as a plain int."""
    if isinstance(p, PrimeModulus):
        return p.p
    return PrimeModulus(p).p


def digits_of(x: int, m: int, p) -> tuple[int, ...]:
    """Return the m base-p digits of x, least significant first."""
    p = check_prime(p)
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if not 0 <= x < p**m:
        raise ValueError(f"x={x} outside [0, {p}**{m})")
    out = []
    for _ in range(m):
        x, r = divmod(x, p)
        out.append(r)
    return tuple(out)


def int_of_digits(digits: Sequence[int], p) -> int:
    p = check_prime(p)
    x = 0
    for k, v in enumerate(digits):
        if not 0 <= v < p:
            raise ValueError(f"digit {v} at position {k + 1} not in [0, {p})")
        x += int(v) * p**k
    return x


@lru_cache(maxsize=32)
def _digit_table(p: int, m: int) -> np.ndarray:
    idx = np.arange(p**m, dtype=np.int64)
    table = np.stack([(idx // p**k) % p for k in range(m)], axis=1)
    table.setflags(write=False)
    return table


def digit_table(p, m: int) -> np.ndarray:
    """Read-only ``(p**m, m)`` array whose row i is ``digits_of(i, m, p)``."""
    return _digit_table(check_prime(p), int(m))


def check_permutation(pi: Sequence[int], m: int | None = None) -> tuple[int, ...]:
    """Validate a 1-indexed permutation of {1, ..., m}."""
    pi = tuple(int(v) for v in pi)
    if m is not None and len(pi) != m:
        raise ShapeError(f"permutation has length {len(pi)}, expected {m}")
    if sorted(pi) != list(range(1, len(pi) + 1)):
        raise ValueError(f"{list(pi)} is not a permutation of 1..{len(pi)}")
    return pi


def bracket_mod(k: int, m: int) -> int:
    """``[k]_m``: k reduced into {1, ..., m} (m when m divides k)."""
    if k < 1 or m < 1:
        raise ValueError("bracket_mod needs k >= 1 and m >= 1")
    r = k % m
    return m if r == 0 else r


def cyclic_shift_perm(pi: Sequence[int], tau: int) -> tuple[int, ...]:
    """pi^tau with pi^tau(i) = pi([i + tau]_m)."""
    pi = check_permutation(pi)
    if tau < 1:
        raise ValueError(f"shift must be positive, got {tau}")
    m = len(pi)
    return tuple(pi[bracket_mod(i + tau, m) - 1] for i in range(1, m + 1))


def permutation_matrix(pi: Sequence[int]) -> np.ndarray:
    """P with ``x @ P == (x[pi(1)], ..., x[pi(m)])``."""
    pi = check_permutation(pi)
    m = len(pi)
    P = np.zeros((m, m), dtype=np.int64)
    for k, v in enumerate(pi):
        P[v - 1, k] = 1
    return P


def as_fp_matrix(entries, p) -> np.ndarray:
    """Copy ``entries`` into a 2-D int64 array reduced mod p."""
    p = check_prime(p)
    M = np.array(entries, dtype=np.int64)
    if M.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got ndim={M.ndim}")
    return np.mod(M, p)


def rank_fp(M, p) -> int:
    """Rank of M over F_p by row reduction."""
    p = check_prime(p)
    A = as_fp_matrix(M, p)
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        pivot = r + nz[0]
        if pivot != r:
            A[[r, pivot]] = A[[pivot, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        below = np.nonzero(A[r + 1:, c])[0] + r + 1
        if below.size:
            A[below] = (A[below] - np.outer(A[below, c], A[r])) % p
        r += 1
        if r == rows:
            break
    return r
