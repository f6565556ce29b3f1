"""Spreading matrices Phi = [Phi_A1, ..., Phi_AL] stored as integer phase arrays."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, ConditionViolation, ShapeError
from .ebf import PhaseSequence, linear_form_table
from .fpcore import digit_table
from .quadform import MatrixFamily, QuadMatrix

DEFAULT_MEM_BUDGET = 2**22


def mem_budget() -> int:
    """Maximum number of phase entries to materialize (env SPREADSEQ_MEM_BUDGET)."""
    raw = os.environ.get("SPREADSEQ_MEM_BUDGET")
    if raw is None or not raw.strip():
        return DEFAULT_MEM_BUDGET
    try:
        value = int(float(raw))
    except ValueError:
        raise ValueError(f"SPREADSEQ_MEM_BUDGET={raw!r} is not a number") from None
    if value <= 0:
        raise ValueError("SPREADSEQ_MEM_BUDGET must be positive")
    return value


def quadratic_phases(A: QuadMatrix, h: int = 1) -> np.ndarray:
    """(q/p) * (x A x^T mod p) for every x, as a length p**m vector mod q."""
    X = digit_table(A.p, A.m)
    quad = np.einsum("xi,ij,xj->x", X, A.matrix, X) % A.p
    return quad * A.p ** (h - 1)


def block_phases(A: QuadMatrix, h: int = 1) -> np.ndarray:
    """Phase matrix of Phi_A: column c holds f_A^(c) evaluated at every x."""
    q = A.p**h
    return (quadratic_phases(A, h)[:, None] + linear_form_table(A.p, A.m, h)) % q


@dataclass(frozen=True, eq=False)
class SpreadingMatrix:
    """
    Columns are ordered block by block, and by c = 0, ..., M-1 inside a block.

    ``phases`` has shape (M, N) with M = p**m rows and N = L * M columns,
    entries in [0, q) with q = p**h.
    """

    blocks: tuple[QuadMatrix, ...]
    h: int
    phases: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if not blocks:
            raise ShapeError("a spreading matrix needs at least one block")
        p, m = blocks[0].p, blocks[0].m
        if any(A.p != p or A.m != m for A in blocks):
            raise ShapeError("all blocks must share p and m")
        ph = np.asarray(self.phases)
        M = p**m
        if ph.shape != (M, len(blocks) * M):
            raise ShapeError(f"phase array has shape {ph.shape}, expected {(M, len(blocks) * M)}")
        ph = np.mod(ph.astype(np.int64), p**self.h)
        ph.setflags(write=False)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "phases", ph)

    @property
    def p(self) -> int:
        return self.blocks[0].p

    @property
    def m(self) -> int:
        return self.blocks[0].m

    @property
    def q(self) -> int:
        return self.p**self.h

    @property
    def L(self) -> int:
        return len(self.blocks)

    @property
    def M(self) -> int:
        return self.phases.shape[0]

    @property
    def N(self) -> int:
        return self.phases.shape[1]

    def block(self, i: int) -> np.ndarray:
        return self.phases[:, i * self.M:(i + 1) * self.M]

    def column(self, j: int) -> PhaseSequence:
        return PhaseSequence(self.phases[:, j], self.q)

    def column_index(self, block: int, c: int) -> int:
        return block * self.M + c

    def complex(self, normalize: bool = False) -> np.ndarray:
        Z = np.exp(2j * np.pi * self.phases / self.q)
        return Z / np.sqrt(self.M) if normalize else Z


def build_spreading_matrix(family: MatrixFamily, h: int = 1, budget: int | None = None) -> SpreadingMatrix:
    """Materialize every column of the (possibly q-ary lifted) matrix for ``family``."""
    if not 1 <= h <= family.m:
        raise ConditionViolation(f"h={h} must lie in [1, m={family.m}]")
    budget = mem_budget() if budget is None else budget
    M = family.p**family.m
    total = M * M * family.L
    if total > budget:
        raise CapacityError(
            f"Phi would hold {total} phase entries, above the budget of {budget}; "
            "raise SPREADSEQ_MEM_BUDGET or stream blocks with block_phases()"
        )
    phases = np.concatenate([block_phases(A, h) for A in family], axis=1)
    return SpreadingMatrix(family.members, h, phases, dict(family.provenance))
