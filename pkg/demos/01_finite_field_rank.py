"""
Demo 1: structured quadratic matrices and their ranks over F_p

This demo shows:
- building psi(pi, a, d) from a permutation path and a diagonal
- the symplectic difference of two such matrices
- why the rank of that difference never drops below m - 1
"""

import numpy as np

from _common import banner, step
from spreadseq import psi, rank_fp, symplectic_q


def main():
    banner("Demo 1: psi matrices and F_p rank")

    step(1, "One matrix: path 1 -> 2 -> 4 -> 3 with weights a = (2,1,1), p = 3")
    A = psi([1, 2, 4, 3], (2, 1, 1), (2, 0, 1, 1), 3)
    print(A.matrix)

    step(2, "Two matrices sharing the path but with different diagonals")
    B = psi([1, 2, 4, 3], (2, 1, 1), (0, 1, 2, 2), 3)
    Q = symplectic_q(A, B)
    print("Q = (A-B) + (A-B)^T =")
    print(Q.matrix)
    print(f"rank over F_3: {Q.rank}")

    step(3, "Random sweep: rank of Q for same-path pairs, p = 5, m = 5")
    rng = np.random.default_rng(1)
    seen = {}
    for _ in range(2000):
        pi = [int(v) + 1 for v in rng.permutation(5)]
        a1 = rng.integers(1, 5, 4)
        a2 = (a1 + rng.integers(1, 4, 4) - 1) % 4 + 1  # nonzero and a2 != a1 on every edge
        d1, d2 = rng.integers(0, 5, 5), rng.integers(0, 5, 5)
        r = symplectic_q(psi(pi, a1, d1, 5), psi(pi, a2, d2, 5)).rank
        seen[r] = seen.get(r, 0) + 1
    for r in sorted(seen):
        print(f"    rank {r}: {seen[r]} pairs")
    print("    (a_k != b_k on every edge keeps the path in the difference, so rank >= m - 1)")

    step(4, "rank_fp works on any integer matrix")
    M = np.array([[1, 2, 0], [2, 4, 0], [0, 0, 3]])
    print(f"    rank over F_3: {rank_fp(M, 3)}, over F_5: {rank_fp(M, 5)}, over F_7: {rank_fp(M, 7)}")


if __name__ == "__main__":
    main()
