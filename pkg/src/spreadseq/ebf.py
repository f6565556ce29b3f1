"""
Extended Boolean functions F_p^m -> Z_q and the phase sequences they generate.

A function is a map from exponent vectors ``b`` (entries below p) to
coefficients in Z_q, evaluated on integer digits ``x_i`` in ``[0, p)``.
With q = p this is the usual p-ary EBF; with q = p**h it covers the lifted
form ``(q/p) x A x^T + L_c(x)`` as long as the quadratic coefficients are
stored pre-multiplied by q/p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import ConditionViolation, ShapeError
from .fpcore import check_permutation, check_prime, digit_table, digits_of
from .quadform import QuadMatrix


def _check_q(p: int, q: int) -> int:
    h, r = 0, q
    while r % p == 0:
        r //= p
        h += 1
    if r != 1 or h < 1:
        raise ValueError(f"phase modulus q={q} is not a positive power of p={p}")
    return h


@dataclass(frozen=True)
class PhaseSequence:
    """Sequence of exponents of omega_q; entry k stands for exp(2 pi i phases[k] / q)."""

    phases: np.ndarray
    q: int
    normalization: float | None = None

    def __post_init__(self):
        ph = np.mod(np.asarray(self.phases, dtype=np.int64).reshape(-1), self.q)
        ph.setflags(write=False)
        object.__setattr__(self, "phases", ph)

    def __len__(self):
        return self.phases.size

    def complex(self) -> np.ndarray:
        z = np.exp(2j * np.pi * self.phases / self.q)
        if self.normalization is not None:
            z = z * self.normalization
        return z

    def __eq__(self, other):
        if not isinstance(other, PhaseSequence):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.phases, other.phases)

    def __hash__(self):
        return hash((self.q, self.phases.tobytes()))


@dataclass(frozen=True)
class Ebf:
    """Polynomial in m variables with exponents below p and coefficients in Z_q."""

    m: int
    p: int
    q: int
    terms: Mapping[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        p = check_prime(self.p)
        q = p if self.q is None else int(self.q)
        _check_q(p, q)
        clean: dict[tuple[int, ...], int] = {}
        for b, coef in dict(self.terms).items():
            b = tuple(int(v) for v in b)
            if len(b) != self.m or any(not 0 <= v < p for v in b):
                raise ShapeError(f"exponent vector {b} invalid for m={self.m}, p={p}")
            c = (clean.get(b, 0) + int(coef)) % q
            if c:
                clean[b] = c
            else:
                clean.pop(b, None)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "terms", clean)

    def __add__(self, other: "Ebf") -> "Ebf":
        if (self.m, self.p, self.q) != (other.m, other.p, other.q):
            raise ShapeError("cannot add functions over different domains")
        terms = dict(self.terms)
        for b, c in other.terms.items():
            terms[b] = terms.get(b, 0) + c
        return Ebf(self.m, self.p, self.q, terms)

    def degree(self) -> int:
        return max((sum(b) for b in self.terms), default=0)

    def __call__(self, x: Sequence[int]) -> int:
        return evaluate(self, x)


def monomial(m: int, *powers: tuple[int, int]) -> tuple[int, ...]:
    """Exponent vector from (variable, power) pairs, variables 1-indexed."""
    b = [0] * m
    for var, e in powers:
        b[var - 1] += e
    return tuple(b)


def evaluate(f: Ebf, x: Sequence[int]) -> int:
    """f(x) in Z_q for a digit vector x."""
    if len(x) != f.m:
        raise ShapeError(f"expected {f.m} digits, got {len(x)}")
    total = 0
    for b, c in f.terms.items():
        t = c
        for xi, bi in zip(x, b):
            if bi:
                t = t * pow(int(xi), bi, f.q) % f.q
        total += t
    return total % f.q


def sequence_of(f: Ebf) -> PhaseSequence:
    """Phases f(digits_of(i)) for i = 0, ..., p**m - 1."""
    X = digit_table(f.p, f.m)
    q = f.q
    powtab = np.array([[pow(x, e, q) for x in range(f.p)] for e in range(f.p)], dtype=np.int64)
    out = np.zeros(X.shape[0], dtype=np.int64)
    for b, c in f.terms.items():
        t = np.full(X.shape[0], c, dtype=np.int64)
        for i, e in enumerate(b):
            if e:
                t = t * powtab[e][X[:, i]] % q
        out += t
    return PhaseSequence(out % q, q)


@dataclass(frozen=True)
class LinearFormQ:
    """
    The linear form L_c over Z_q, q = p**h.

    ``c`` splits as ``d_lin + sum_{i>h} v_i p**(i-1)`` with ``d_lin`` in Z_q and
    ``v_i`` in Z_p, and
    ``L_c(x) = (q/p) sum_{i>h} v_i x_i + d_lin sum_{i<=h} x_i p**(i-1)  (mod q)``.
    For h = 1 this is the ordinary ``c . x`` over F_p.
    """

    p: int
    m: int
    h: int
    c: int

    def __post_init__(self):
        p = check_prime(self.p)
        if not 1 <= self.h <= self.m:
            raise ConditionViolation(f"h={self.h} must lie in [1, m={self.m}]")
        if not 0 <= self.c < p**self.m:
            raise ValueError(f"c={self.c} outside [0, {p}**{self.m})")
        object.__setattr__(self, "p", p)

    @property
    def q(self) -> int:
        return self.p**self.h

    @property
    def d_lin(self) -> int:
        return self.c % self.q

    @property
    def v(self) -> tuple[int, ...]:
        """Digits v_{h+1}, ..., v_m."""
        return digits_of(self.c, self.m, self.p)[self.h:]

    def coefficients(self) -> tuple[int, ...]:
        """Coefficient of each x_i in Z_q."""
        p, q, h = self.p, self.q, self.h
        low = tuple(self.d_lin * p**i % q for i in range(h))
        high = tuple(q // p * v % q for v in self.v)
        return low + high

    def __call__(self, x: Sequence[int]) -> int:
        return sum(int(c) * int(xi) for c, xi in zip(self.coefficients(), x)) % self.q

    def as_ebf(self) -> Ebf:
        terms = {monomial(self.m, (i + 1, 1)): c for i, c in enumerate(self.coefficients())}
        return Ebf(self.m, self.p, self.q, terms)


def linear_form_table(p, m: int, h: int = 1) -> np.ndarray:
    """``T[x, c] = L_c(x)`` for all x, c in [0, p**m)."""
    p = check_prime(p)
    if not 1 <= h <= m:
        raise ConditionViolation(f"h={h} must lie in [1, m={m}]")
    X = digit_table(p, m)
    q = p**h
    idx = np.arange(p**m, dtype=np.int64)
    low_x = X[:, :h] @ (p ** np.arange(h, dtype=np.int64))
    T = np.outer(low_x, idx % q)
    if h < m:
        T += (q // p) * (X[:, h:] @ X[:, h:].T)
    return T % q


@dataclass(frozen=True)
class QuadraticEbfSpec:
    """x A x^T + c x^T (+ constant) with an optional q-ary lift."""

    A: QuadMatrix
    linear: LinearFormQ | Sequence[int] = ()
    constant: int = 0

    @property
    def q(self) -> int:
        return self.linear.q if isinstance(self.linear, LinearFormQ) else self.A.p

    def linear_coefficients(self) -> tuple[int, ...]:
        if isinstance(self.linear, LinearFormQ):
            return self.linear.coefficients()
        lin = tuple(int(v) % self.A.p for v in self.linear) or (0,) * self.A.m
        if len(lin) != self.A.m:
            raise ShapeError(f"linear part has {len(lin)} entries, expected {self.A.m}")
        return lin

    def to_ebf(self) -> Ebf:
        A, m, q = self.A.matrix, self.A.m, self.q
        scale = q // self.A.p
        terms: dict[tuple[int, ...], int] = {}

        def add(b, c):
            terms[b] = terms.get(b, 0) + c

        for i in range(m):
            for j in range(m):
                if A[i, j]:
                    b = monomial(m, (i + 1, 1), (j + 1, 1))
                    add(b, scale * int(A[i, j]))
        for i, c in enumerate(self.linear_coefficients()):
            add(monomial(m, (i + 1, 1)), c)
        if self.constant:
            add((0,) * m, self.constant)
        return Ebf(m, self.A.p, q, terms)

    def evaluate_direct(self, x: Sequence[int]) -> int:
        """(q/p)(x A x^T mod p) + linear(x) + constant, computed with matrix products."""
        x = np.asarray(x, dtype=np.int64)
        quad = int(x @ self.A.matrix @ x) % self.A.p
        lin = int(np.dot(self.linear_coefficients(), x))
        return (self.q // self.A.p * quad + lin + self.constant) % self.q


def quadratic_ebf(A: QuadMatrix, c: int = 0, h: int = 1) -> Ebf:
    """f_A^(c) with the column index c mapped through L_c."""
    return QuadraticEbfSpec(A, LinearFormQ(A.p, A.m, h, c)).to_ebf()


def cs_family_pary(pi: Sequence[int], a: Sequence[int], c_coeffs, p) -> list[Ebf]:
    """
    The p functions f_0, ..., f_{p-1} with

        f_n = sum_i a_i x_pi(i) x_pi(i+1) + sum_{t,k} c[t-1][k-1] x_k**t + n x_pi(1)

    ``c_coeffs`` has shape (p-1, m); row t-1 holds the coefficients of x_k**t.
    Their sequences form a (p, p**m) complementary set.
    """
    p = check_prime(p)
    pi = check_permutation(pi)
    m = len(pi)
    if len(a) != m - 1:
        raise ShapeError(f"|a| must be m-1={m - 1}, got {len(a)}")
    for k, v in enumerate(a, start=1):
        if v % p == 0:
            raise ConditionViolation(f"a[{k}] must be nonzero")
    C = np.zeros((p - 1, m), dtype=np.int64) if c_coeffs is None else np.asarray(c_coeffs)
    if C.shape != (p - 1, m):
        raise ShapeError(f"c_coeffs must have shape ({p - 1}, {m}), got {C.shape}")
    terms: dict[tuple[int, ...], int] = {}
    for k in range(m - 1):
        b = monomial(m, (pi[k], 1), (pi[k + 1], 1))
        terms[b] = terms.get(b, 0) + int(a[k])
    for t in range(1, p):
        for k in range(m):
            if C[t - 1, k] % p:
                b = monomial(m, (k + 1, t))
                terms[b] = terms.get(b, 0) + int(C[t - 1, k])
    base = Ebf(m, p, p, terms)
    lead = monomial(m, (pi[0], 1))
    return [base + Ebf(m, p, p, {lead: n}) for n in range(p)]


def cs_family_qary(A: QuadMatrix, L: LinearFormQ) -> list[Ebf]:
    """f_n = (q/p) x A x^T + L_c(x) + (q/p) n x_pi(1), n = 0, ..., p-1."""
    if not A.in_Ap():
        raise ConditionViolation("A must be a psi matrix with nonzero path coefficients")
    if L.p != A.p or L.m != A.m:
        raise ShapeError("linear form does not match the matrix")
    p, m, q = A.p, A.m, L.q
    base = QuadraticEbfSpec(A, L).to_ebf()
    lead = monomial(m, (A.spec.pi[0], 1))
    return [base + Ebf(m, p, q, {lead: q // p * n}) for n in range(p)]
