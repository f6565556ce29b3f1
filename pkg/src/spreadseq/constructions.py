"""
Matrix families with guaranteed minimum symplectic rank.

Every builder checks its side conditions and raises ConditionViolation with
the failing index (1-indexed) instead of producing a family.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConditionViolation, ShapeError
from .fpcore import bracket_mod, check_permutation, check_prime, cyclic_shift_perm
from .quadform import MatrixFamily, psi, r_min
from .spreading import SpreadingMatrix, build_spreading_matrix


class Variant(str, enum.Enum):
    THM_LP = "thm-lp"
    THM_2P_DIFF = "thm-2p-diff"
    THM_2P_SHIFT = "thm-2p-shift"
    THM_P3_EVEN = "thm-p3-even"
    THM_P3_ANY = "thm-p3-any"

    def __str__(self):
        return self.value


def _vec(v, p: int, n: int, name: str) -> tuple[int, ...]:
    v = tuple(int(x) % p for x in v)
    if len(v) != n:
        raise ShapeError(f"{name} must have {n} entries, got {len(v)}")
    return v


def _nonzero(v: Sequence[int], name: str, p: int):
    for k, x in enumerate(v, start=1):
        if x % p == 0:
            raise ConditionViolation(f"{name}[{k}] must be nonzero")


def _distinct_coords(d_list, p: int, m: int, name: str = "d") -> tuple[tuple[int, ...], ...]:
    if len(d_list) != p:
        raise ConditionViolation(f"need exactly p={p} {name}-vectors, got {len(d_list)}")
    ds = tuple(_vec(d, p, m, f"{name}[{i + 1}]") for i, d in enumerate(d_list))
    for k in range(m):
        seen = {}
        for i, d in enumerate(ds):
            if d[k] in seen:
                raise ConditionViolation(
                    f"{name}-vectors {seen[d[k]] + 1} and {i + 1} agree at coordinate {k + 1}"
                )
            seen[d[k]] = i
    return ds


def _prep(pi, p, m_hint=None):
    p = check_prime(p)
    pi = check_permutation(pi, m_hint)
    if len(pi) < 2:
        raise ConditionViolation("m must be at least 2")
    return pi, p, len(pi)


def build_thm_lp(pi, a, d_list, p) -> MatrixFamily:
    """p matrices psi(pi, a, d_i) with coordinatewise distinct d_i; r_min = m."""
    pi, p, m = _prep(pi, p)
    a = _vec(a, p, m - 1, "a")
    _nonzero(a, "a", p)
    ds = _distinct_coords(d_list, p, m)
    members = tuple(psi(pi, a, d, p) for d in ds)
    prov = {"construction": Variant.THM_LP.value, "p": p, "m": m, "pi": list(pi),
            "a": list(a), "d": [list(d) for d in ds]}
    return MatrixFamily(members, prov)


def build_thm_2p_diff(pi, a, b, d_list_a, d_list_b, p) -> MatrixFamily:
    """2p matrices sharing pi, path coefficients a then b with a_i != b_i; r_min >= m-1."""
    pi, p, m = _prep(pi, p)
    a = _vec(a, p, m - 1, "a")
    b = _vec(b, p, m - 1, "b")
    _nonzero(a, "a", p)
    _nonzero(b, "b", p)
    for k in range(m - 1):
        if a[k] == b[k]:
            raise ConditionViolation(f"a[{k + 1}] - b[{k + 1}] must be nonzero")
    da = _distinct_coords(d_list_a, p, m, "d")
    db = _distinct_coords(d_list_b, p, m, "d'")
    members = tuple(psi(pi, a, d, p) for d in da) + tuple(psi(pi, b, d, p) for d in db)
    prov = {"construction": Variant.THM_2P_DIFF.value, "p": p, "m": m, "pi": list(pi),
            "a": list(a), "b": list(b), "d": [list(d) for d in da + db]}
    return MatrixFamily(members, prov)


def shift_condition_index(a: Sequence[int], b: Sequence[int], tau: int, p: int) -> int:
    """
    The unique t in {1..m-1} minus {m - tau} with b_t = a_[t+tau]_m while
    b_i != a_[i+tau]_m for every other admissible i.
    """
    m = len(a) + 1
    tau_r = tau % m
    if tau_r == 0:
        raise ConditionViolation(f"tau={tau} is a full cycle of m={m}; the shifted family degenerates")
    admissible = [i for i in range(1, m) if i != m - tau_r]
    zeros = [i for i in admissible if (b[i - 1] - a[bracket_mod(i + tau_r, m) - 1]) % p == 0]
    if not zeros:
        raise ConditionViolation(
            f"no t satisfies b[t] = a[[t+tau]_m] (checked t in {admissible})"
        )
    if len(zeros) > 1:
        raise ConditionViolation(
            f"b[i] - a[[i+tau]_m] vanishes at i={zeros[1]} as well as t={zeros[0]}"
        )
    return zeros[0]


def build_thm_2p_shift(pi, tau, a, b, d_list_a, d_list_b, p) -> MatrixFamily:
    """p matrices along pi with a, then p along the cyclic shift pi^tau with b; r_min >= m-1."""
    pi, p, m = _prep(pi, p)
    if tau < 1:
        raise ConditionViolation(f"tau must be positive, got {tau}")
    a = _vec(a, p, m - 1, "a")
    b = _vec(b, p, m - 1, "b")
    _nonzero(a, "a", p)
    _nonzero(b, "b", p)
    t = shift_condition_index(a, b, tau, p)
    da = _distinct_coords(d_list_a, p, m, "d")
    db = _distinct_coords(d_list_b, p, m, "d'")
    pit = cyclic_shift_perm(pi, tau)
    members = tuple(psi(pi, a, d, p) for d in da) + tuple(psi(pit, b, d, p) for d in db)
    prov = {"construction": Variant.THM_2P_SHIFT.value, "p": p, "m": m, "pi": list(pi),
            "tau": int(tau), "t": t, "a": list(a), "b": list(b), "d": [list(d) for d in da + db]}
    return MatrixFamily(members, prov)


def _ternary_checks(a, b, m):
    a = _vec(a, 3, m - 1, "a")
    b = _vec(b, 3, m - 1, "b")
    _nonzero(a, "a", 3)
    _nonzero(b, "b", 3)
    for k in range(m - 1):
        if a[k] == b[k]:
            raise ConditionViolation(f"a[{k + 1}] - b[{k + 1}] must be nonzero")
    return a, b


def _shifted_triple(d1, m):
    d1 = _vec(d1, 3, m, "d1")
    return tuple(tuple((x + i) % 3 for x in d1) for i in range(3))


def build_thm_p3_even(pi, a, b, d1, second=None) -> MatrixFamily:
    """
    Six ternary matrices with r_min = m for even m >= 4, m != 2 (mod 3).

    The b-branch reuses d_1, d_2, d_3 unless ``second`` supplies another
    triple; that triple must differ from the first by one common vector
    delta * e_j and the family must still reach r_min = m.
    """
    pi, p, m = _prep(pi, 3)
    if m % 2 or m < 4:
        raise ConditionViolation(f"m={m} must be even and at least 4")
    if m % 3 == 2:
        raise ConditionViolation(f"m={m} is congruent to 2 mod 3")
    a, b = _ternary_checks(a, b, m)
    first = _shifted_triple(d1, m)
    if second is None:
        dsec = first
    else:
        if len(second) != 3:
            raise ConditionViolation(f"second d-triple must hold 3 vectors, got {len(second)}")
        dsec = tuple(_vec(d, 3, m, f"d{i + 4}") for i, d in enumerate(second))
        deltas = {tuple((x - y) % 3 for x, y in zip(dn, do)) for dn, do in zip(dsec, first)}
        if len(deltas) != 1 or sum(1 for x in next(iter(deltas)) if x) > 1:
            raise ConditionViolation("second d-triple must equal d_i + delta * e_j for one fixed delta, j")
    members = tuple(psi(pi, a, d, 3) for d in first) + tuple(psi(pi, b, d, 3) for d in dsec)
    prov = {"construction": Variant.THM_P3_EVEN.value, "p": 3, "m": m, "pi": list(pi),
            "a": list(a), "b": list(b), "d": [list(d) for d in first + dsec]}
    family = MatrixFamily(members, prov)
    if dsec != first and r_min(family) != m:
        raise ConditionViolation("second d-triple breaks the full-rank guarantee (r_min < m)")
    return family


@dataclass(frozen=True)
class IndexSetU:
    members: frozenset[int]
    m: int

    @property
    def u(self) -> int:
        return self.m % 3

    @property
    def parity(self) -> str:
        return "even" if self.m % 2 == 0 else "odd"

    def __contains__(self, s):
        return s in self.members

    def sorted(self) -> list[int]:
        return sorted(self.members)


def compute_index_set_u(m: int) -> IndexSetU:
    """Admissible shift positions s for the ternary construction with any m >= 2."""
    if m < 2:
        raise ValueError(f"m must be at least 2, got {m}")

    def part(i):
        return {l for l in range(1, m + 1) if l % 3 == i and (m % 2 == 0 or l % 2 == 1)}

    pick = {0: (0, 1), 1: (0, 2), 2: (1, 2)}[m % 3]
    return IndexSetU(frozenset(part(pick[0]) | part(pick[1])), m)


def build_thm_p3_any(pi, a, b, d1, s: int, e: int) -> MatrixFamily:
    """
    Six ternary matrices with r_min = m for any m >= 2.

    The b-branch diagonals equal d_1, d_2, d_3 except at coordinate pi(s),
    where e is added.
    """
    pi, p, m = _prep(pi, 3)
    U = compute_index_set_u(m)
    if s not in U:
        raise ConditionViolation(f"s={s} is not in U={U.sorted()} for m={m}")
    if e % 3 == 0:
        raise ConditionViolation("e must be nonzero mod 3")
    a, b = _ternary_checks(a, b, m)
    first = _shifted_triple(d1, m)
    sp = pi[s - 1]
    dsec = tuple(tuple((x + e) % 3 if k == sp - 1 else x for k, x in enumerate(d)) for d in first)
    members = tuple(psi(pi, a, d, 3) for d in first) + tuple(psi(pi, b, d, 3) for d in dsec)
    prov = {"construction": Variant.THM_P3_ANY.value, "p": 3, "m": m, "pi": list(pi),
            "a": list(a), "b": list(b), "s": int(s), "e": int(e) % 3,
            "d": [list(d) for d in first + dsec]}
    return MatrixFamily(members, prov)


GUARANTEED_RMIN = {
    Variant.THM_LP: lambda m: m,
    Variant.THM_2P_DIFF: lambda m: m - 1,
    Variant.THM_2P_SHIFT: lambda m: m - 1,
    Variant.THM_P3_EVEN: lambda m: m,
    Variant.THM_P3_ANY: lambda m: m,
}


def guaranteed_rmin(variant, m: int) -> int:
    """Lower bound on r_min promised by a construction (exact for the optimal ones)."""
    return GUARANTEED_RMIN[Variant(variant)](m)


def count_configs(variant, p, m: int) -> int:
    """Number of admissible d-vector choices for fixed pi, a (and b)."""
    variant = Variant(variant)
    p = check_prime(p)
    if variant == Variant.THM_LP:
        return math.factorial(p) ** (m - 1)
    if variant in (Variant.THM_2P_DIFF, Variant.THM_2P_SHIFT):
        return math.factorial(p) ** (2 * m - 2)
    raise ValueError(f"no configuration count for {variant}")


def materialize_phi(family: MatrixFamily, h: int = 1, budget: int | None = None) -> SpreadingMatrix:
    """All L * p**m columns of Phi (q = p**h), blocks in family order, then by c."""
    return build_spreading_matrix(family, h, budget)


def lift_family_q(base: MatrixFamily, h: int, budget: int | None = None) -> SpreadingMatrix:
    """The p**h-ary matrix Phi' whose columns use (q/p) x A x^T + L_c(x)."""
    if not 1 <= h <= base.m:
        raise ConditionViolation(f"h={h} must lie in [1, m={base.m}]")
    return build_spreading_matrix(base, h, budget)


def random_parameters(variant, p, m: int, rng: np.random.Generator, max_tries: int = 10000) -> tuple[dict, int]:
    """
    Draw valid construction parameters.

    pi is uniform, a and b come from F_p^* with rejection until the variant's
    conditions hold, and d-lists are coordinatewise random permutations of
    F_p. Returns ``(params, rejections)``.
    """
    variant = Variant(variant)
    if variant in (Variant.THM_P3_EVEN, Variant.THM_P3_ANY):
        p = 3
    p = check_prime(p)

    def perm():
        return [int(v) + 1 for v in rng.permutation(m)]

    def units(n):
        return [int(v) for v in rng.integers(1, p, size=n)]

    def dlist():
        cols = [rng.permutation(p) for _ in range(m)]
        return [[int(cols[k][i]) for k in range(m)] for i in range(p)]

    rejections = 0
    for _ in range(max_tries):
        params = {"p": p, "pi": perm(), "a": units(m - 1)}
        if variant == Variant.THM_LP:
            params["d_list"] = dlist()
        elif variant == Variant.THM_2P_DIFF:
            params.update(b=units(m - 1), d_list_a=dlist(), d_list_b=dlist())
        elif variant == Variant.THM_2P_SHIFT:
            params.update(tau=int(rng.integers(1, m)) if m > 1 else 1, b=units(m - 1),
                          d_list_a=dlist(), d_list_b=dlist())
        elif variant == Variant.THM_P3_EVEN:
            params.update(b=units(m - 1), d1=[int(v) for v in rng.integers(0, 3, size=m)])
        else:
            U = compute_index_set_u(m).sorted()
            params.update(b=units(m - 1), d1=[int(v) for v in rng.integers(0, 3, size=m)],
                          s=int(rng.choice(U)), e=int(rng.integers(1, 3)))
        try:
            build(variant, **params)
        except ConditionViolation:
            rejections += 1
            continue
        return params, rejections
    raise ConditionViolation(f"no valid {variant} parameters found for p={p}, m={m}")


def build(variant, **params) -> MatrixFamily:
    """Dispatch to the builder named by ``variant``."""
    variant = Variant(variant)
    if variant == Variant.THM_LP:
        return build_thm_lp(params["pi"], params["a"], params["d_list"], params["p"])
    if variant == Variant.THM_2P_DIFF:
        return build_thm_2p_diff(params["pi"], params["a"], params["b"],
                                 params["d_list_a"], params["d_list_b"], params["p"])
    if variant == Variant.THM_2P_SHIFT:
        return build_thm_2p_shift(params["pi"], params["tau"], params["a"], params["b"],
                                  params["d_list_a"], params["d_list_b"], params["p"])
    if variant == Variant.THM_P3_EVEN:
        return build_thm_p3_even(params["pi"], params["a"], params["b"], params["d1"],
                                 params.get("second"))
    return build_thm_p3_any(params["pi"], params["a"], params["b"], params["d1"],
                            params["s"], params["e"])
