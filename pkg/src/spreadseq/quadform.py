"""Structured quadratic matrices psi(pi, a, d) and their pairwise symplectic ranks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ConditionViolation, InsufficientFamilyError, ShapeError
from .fpcore import as_fp_matrix, check_permutation, check_prime, rank_fp


@dataclass(frozen=True)
class PsiSpec:
    """Path permutation ``pi`` (1-indexed), path coefficients ``a`` and diagonal ``d``."""

    pi: tuple[int, ...]
    a: tuple[int, ...]
    d: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.pi)

    def to_dict(self) -> dict:
        return {"pi": list(self.pi), "a": list(self.a), "d": list(self.d)}


def _frozen(M: np.ndarray) -> np.ndarray:
    M = np.array(M, dtype=np.int64)
    M.setflags(write=False)
    return M


@dataclass(frozen=True, eq=False)
class QuadMatrix:
    """An m x m matrix over F_p, optionally remembering the psi parameters it came from."""

    matrix: np.ndarray
    p: int
    spec: PsiSpec | None = None

    def __post_init__(self):
        p = check_prime(self.p)
        M = as_fp_matrix(self.matrix, p)
        if M.shape[0] != M.shape[1]:
            raise ShapeError(f"quadratic matrix must be square, got {M.shape}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "matrix", _frozen(M))

    @property
    def m(self) -> int:
        return self.matrix.shape[0]

    def in_Ap(self) -> bool:
        """True when built by psi with every path coefficient nonzero."""
        return self.spec is not None and all(v % self.p for v in self.spec.a)

    def __eq__(self, other):
        if not isinstance(other, QuadMatrix):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash((self.p, self.matrix.tobytes()))

    def __repr__(self):
        rows = "; ".join(" ".join(str(v) for v in r) for r in self.matrix)
        return f"QuadMatrix(p={self.p}, [{rows}])"


def psi(pi: Sequence[int], a: Sequence[int], d: Sequence[int], p) -> QuadMatrix:
    """
    Build psi(pi, a, d) over F_p.

    The diagonal is ``d``; entry ``(pi(k), pi(k+1))`` holds ``a_k``; everything
    else is zero. ``a`` and ``d`` are reduced mod p.
    """
    p = check_prime(p)
    pi = tuple(int(v) for v in pi)
    m = len(pi)
    if len(a) != m - 1 or len(d) != m:
        raise ShapeError(
            f"psi needs |a| = m-1 and |d| = m; got m={m}, |a|={len(a)}, |d|={len(d)}"
        )
    pi = check_permutation(pi, m)
    a = tuple(int(v) % p for v in a)
    d = tuple(int(v) % p for v in d)
    A = np.zeros((m, m), dtype=np.int64)
    A[np.arange(m), np.arange(m)] = d
    for k in range(m - 1):
        A[pi[k] - 1, pi[k + 1] - 1] = a[k]
    return QuadMatrix(A, p, PsiSpec(pi, a, d))


@dataclass(frozen=True, eq=False)
class SymplecticMatrix:
    matrix: np.ndarray
    p: int
    rank: int = field(init=False)

    def __post_init__(self):
        M = as_fp_matrix(self.matrix, self.p)
        if not np.array_equal(M, M.T):
            raise ShapeError("symplectic matrix must be symmetric")
        object.__setattr__(self, "matrix", _frozen(M))
        object.__setattr__(self, "rank", rank_fp(M, self.p))


def symplectic_q(Ai: QuadMatrix, Aj: QuadMatrix) -> SymplecticMatrix:
    """Q = (Ai - Aj) + (Ai - Aj)^T with its F_p-rank."""
    if Ai.p != Aj.p or Ai.m != Aj.m:
        raise ShapeError(
            f"cannot compare a {Ai.m}x{Ai.m} matrix over F_{Ai.p} "
            f"with a {Aj.m}x{Aj.m} matrix over F_{Aj.p}"
        )
    C = Ai.matrix - Aj.matrix
    return SymplecticMatrix((C + C.T) % Ai.p, Ai.p)


@dataclass(frozen=True)
class MatrixFamily:
    """An ordered set of quadratic matrices {A_1, ..., A_L} plus how it was built."""

    members: tuple[QuadMatrix, ...]
    provenance: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise InsufficientFamilyError("a matrix family needs at least one member")
        p, m = members[0].p, members[0].m
        for k, A in enumerate(members):
            if A.p != p or A.m != m:
                raise ShapeError(f"member {k + 1} does not match F_{p}, m={m}")
        object.__setattr__(self, "members", members)

    @property
    def p(self) -> int:
        return self.members[0].p

    @property
    def m(self) -> int:
        return self.members[0].m

    @property
    def L(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, k):
        return self.members[k]


def rank_table(family: MatrixFamily) -> np.ndarray:
    """L x L table of rank_p(Q_ij); the diagonal is 0."""
    L = family.L
    T = np.zeros((L, L), dtype=np.int64)
    for i, j in itertools.combinations(range(L), 2):
        T[i, j] = T[j, i] = symplectic_q(family[i], family[j]).rank
    return T


def r_min(family: MatrixFamily) -> int:
    """Minimum symplectic rank over all unordered pairs of distinct members."""
    if family.L < 2:
        raise InsufficientFamilyError(f"r_min needs at least 2 matrices, got {family.L}")
    T = rank_table(family)
    iu = np.triu_indices(family.L, k=1)
    return int(T[iu].min())


def verify_rank_lower_bound(A: QuadMatrix) -> bool:
    """Check rank_p(A + A^T) >= m - 1 for a psi matrix with nonzero path coefficients."""
    if A.spec is None:
        raise ConditionViolation("rank lower bound needs psi provenance")
    for k, v in enumerate(A.spec.a, start=1):
        if v % A.p == 0:
            raise ConditionViolation(f"a[{k}] must be nonzero")
    return rank_fp(A.matrix + A.matrix.T, A.p) >= A.m - 1
