"""
Correlation, coherence and PAPR of phase sequences.

Sums of roots of unity are kept as exponent histograms: ``counts[j]`` is the
number of terms equal to omega_q**j. For q a prime power, such a sum vanishes
exactly when ``counts[j]`` only depends on ``j mod q/p``, so orthogonality and
complementarity are decided without floating point. Squared magnitudes are
reduced to the integral basis of Z[omega_q]; when the result is a rational
integer it is reported exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .ebf import PhaseSequence, linear_form_table
from .errors import InsufficientFamilyError, ShapeError
from .fpcore import digit_table
from .quadform import MatrixFamily, r_min as family_r_min
from .spreading import SpreadingMatrix, quadratic_phases


def _prime_of(q: int) -> int:
    if q < 2:
        raise ValueError(f"q={q} is not a prime power")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    r = q
    while r % p == 0:
        r //= p
    if r != 1:
        raise ValueError(f"q={q} is not a prime power")
    return p


def _roots(q: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(q) / q)


def _zero_sum_rows(counts: np.ndarray, q: int) -> np.ndarray:
    p = _prime_of(q)
    blocks = counts.reshape(counts.shape[:-1] + (p, q // p))
    return np.all(blocks == blocks[..., :1, :], axis=(-2, -1))


def _abs2_batch(counts: np.ndarray, q: int) -> tuple[np.ndarray, np.ndarray]:
    """
    Exact |sum_j counts[j] omega**j|**2 for each row of ``counts``.

    Returns float ``(value, exact)``; where ``exact`` is False the sum has
    an irrational squared magnitude and ``value`` is its float estimate.
    """
    p = _prime_of(q)
    n = np.asarray(counts, dtype=np.int64)
    auto = np.stack([np.sum(np.roll(n, -d, axis=-1) * n, axis=-1) for d in range(q)], axis=-1)
    t = q // p
    red = auto.reshape(auto.shape[:-1] + (p, t))
    red = red - red[..., p - 1:p, :]
    red = red.reshape(auto.shape)
    exact = ~np.any(red[..., 1:], axis=-1)
    value = red[..., 0].astype(np.float64)
    if not exact.all():
        approx = np.abs(n @ _roots(q)) ** 2
        value = np.where(exact, value, approx)
    return value, exact


@dataclass(frozen=True)
class ExponentHistogram:
    """Exact representation of sum_j counts[j] * omega_q**j."""

    counts: np.ndarray
    q: int

    def __post_init__(self):
        c = np.asarray(self.counts, dtype=np.int64).reshape(-1)
        if c.size != self.q:
            raise ShapeError(f"histogram needs {self.q} bins, got {c.size}")
        if (c < 0).any():
            raise ValueError("histogram counts must be nonnegative")
        c.setflags(write=False)
        object.__setattr__(self, "counts", c)

    @classmethod
    def of_phases(cls, phases, q: int) -> "ExponentHistogram":
        ph = np.mod(np.asarray(phases, dtype=np.int64).reshape(-1), q)
        return cls(np.bincount(ph, minlength=q), q)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def value(self) -> complex:
        return complex(self.counts @ _roots(self.q))

    def abs2(self) -> float:
        return abs(self.value()) ** 2

    def abs2_exact(self) -> int | None:
        """|value|**2 as an int when it is a rational integer, else None."""
        v, ok = _abs2_batch(self.counts[None, :], self.q)
        return int(v[0]) if ok[0] else None

    def is_zero(self) -> bool:
        return is_zero_sum(self)

    def conjugate(self) -> "ExponentHistogram":
        return ExponentHistogram(self.counts[(-np.arange(self.q)) % self.q], self.q)

    def __add__(self, other: "ExponentHistogram") -> "ExponentHistogram":
        if self.q != other.q:
            raise ShapeError("cannot add histograms with different moduli")
        return ExponentHistogram(self.counts + other.counts, self.q)

    def __eq__(self, other):
        if not isinstance(other, ExponentHistogram):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.counts, other.counts)

    def __hash__(self):
        return hash((self.q, self.counts.tobytes()))


def is_zero_sum(hist: ExponentHistogram) -> bool:
    """Exact test for a vanishing sum of q-th roots of unity (q a prime power)."""
    return bool(_zero_sum_rows(hist.counts, hist.q))


def _check_pair(s1: PhaseSequence, s2: PhaseSequence):
    if s1.q != s2.q:
        raise ShapeError(f"phase moduli differ: {s1.q} vs {s2.q}")
    if len(s1) != len(s2):
        raise ShapeError(f"lengths differ: {len(s1)} vs {len(s2)}")


def inner_product_exact(s1: PhaseSequence, s2: PhaseSequence) -> ExponentHistogram:
    """<s1, s2> = sum_k s1[k] conj(s2[k]) as a histogram of s1 - s2."""
    _check_pair(s1, s2)
    return ExponentHistogram.of_phases(s1.phases - s2.phases, s1.q)


def aperiodic_correlation(a: PhaseSequence, b: PhaseSequence, tau: int) -> ExponentHistogram:
    """R_{a,b}(tau) = sum_k a[k] conj(b[k + tau]) (shifted on ``a`` for tau < 0)."""
    _check_pair(a, b)
    M = len(a)
    if abs(tau) >= M:
        return ExponentHistogram(np.zeros(a.q, dtype=np.int64), a.q)
    if tau >= 0:
        diff = a.phases[: M - tau] - b.phases[tau:]
    else:
        diff = a.phases[-tau:] - b.phases[: M + tau]
    return ExponentHistogram.of_phases(diff, a.q)


def pooled_autocorrelation(family: Sequence[PhaseSequence]) -> np.ndarray:
    """
    Row tau-1 holds the histogram of sum_n R_{s_n}(tau) for tau = 1, ..., M-1.
    """
    if not family:
        raise ShapeError("empty family")
    q, M = family[0].q, len(family[0])
    for s in family:
        _check_pair(family[0], s)
    k, l = np.triu_indices(M, k=1)
    shift = l - k
    counts = np.zeros((M - 1) * q, dtype=np.int64)
    for s in family:
        ph = s.phases
        diff = (ph[k] - ph[l]) % q
        counts += np.bincount((shift - 1) * q + diff, minlength=(M - 1) * q)
    return counts.reshape(M - 1, q)


def cs_check(family: Sequence[PhaseSequence]) -> bool:
    """True iff the autocorrelations of the family sum to zero at every shift 1..M-1."""
    if not family:
        return False
    if len(family[0]) < 2:
        return True
    pooled = pooled_autocorrelation(family)
    return bool(_zero_sum_rows(pooled, family[0].q).all())


@dataclass(frozen=True)
class CoherenceReport:
    """
    ``worst_pair`` is ``(block_i, c1, block_j, c2)``; for unstructured phase
    matrices the blocks are 0 and c1, c2 are column indices.
    """

    mu: float
    mu_squared: Fraction | None
    r_min: int | None
    method: str
    worst_pair: tuple[int, int, int, int] | None
    M: int

    @property
    def max_abs2(self) -> int | None:
        """Largest |<s_i, s_j>|**2 as an exact integer when known."""
        if self.mu_squared is None:
            return None
        return int(self.mu_squared * self.M * self.M)

    def to_dict(self) -> dict:
        return {
            "mu": self.mu,
            "mu_squared": None if self.mu_squared is None else str(self.mu_squared),
            "r_min": self.r_min,
            "method": self.method,
            "worst_pair": None if self.worst_pair is None else list(self.worst_pair),
        }


def _pair_counts(gdiff: np.ndarray, lin: np.ndarray, q: int) -> np.ndarray:
    """counts[delta, r] = #{x : gdiff[x] + lin[x, delta] = r (mod q)}."""
    M = lin.shape[1]
    vals = (gdiff[:, None] + lin) % q + q * np.arange(M)[None, :]
    return np.bincount(vals.ravel(), minlength=M * q).reshape(M, q)


def _max_from_counts(counts: np.ndarray, q: int, skip: np.ndarray | None = None):
    """
    Index and value of the largest |.|**2 among histogram rows, plus whether
    that value is an exact integer (else it is a float).
    """
    approx = np.abs(counts @ _roots(q)) ** 2
    if skip is not None:
        approx = np.where(skip, -1.0, approx)
    top = approx.max()
    cand = np.nonzero(approx >= top - 1e-6 * max(top, 1.0))[0]
    vals, ok = _abs2_batch(counts[cand], q)
    best = int(np.argmax(vals))
    if ok[best]:
        return int(cand[best]), int(vals[best]), True
    return int(cand[best]), float(vals[best]), False


def block_pair_abs2(Ai, Aj, h: int = 1, same_block: bool = False) -> tuple[int | float, int, bool]:
    """
    Largest |<s_Ai^(c1), s_Aj^(c2)>|**2 over all column pairs.

    Returns ``(value, c1, exact)`` with c2 = 0; ``value`` is an int when
    ``exact``. For h > 1 the cross sums are in general not rational. With ``same_block`` the
    pairs c1 = c2 are left out.
    """
    p, m = Ai.p, Ai.m
    q = p**h
    lin = linear_form_table(p, m, h)
    g = (quadratic_phases(Ai, h) - quadratic_phases(Aj, h)) % q
    counts = _pair_counts(g, lin, q)
    skip = None
    if same_block:
        skip = np.zeros(counts.shape[0], dtype=bool)
        skip[0] = True
    c1, val, ok = _max_from_counts(counts, q, skip)
    return val, c1, ok


def coherence_bruteforce(phi: SpreadingMatrix) -> CoherenceReport:
    """
    Exact max |<s, t>| / M over all pairs of distinct columns of phi.

    For blocks i, j the inner product of columns c1, c2 only depends on the
    group difference of c1 and c2, so each block pair needs M histograms
    rather than M**2.
    """
    if phi.N < 2:
        raise ShapeError("coherence needs at least two columns")
    q, M = phi.q, phi.M
    lin = linear_form_table(phi.p, phi.m, phi.h)
    quads = [quadratic_phases(A, phi.h) for A in phi.blocks]
    best = (-1, None, True)
    for i, j in itertools.combinations_with_replacement(range(phi.L), 2):
        counts = _pair_counts((quads[i] - quads[j]) % q, lin, q)
        skip = None
        if i == j:
            skip = np.zeros(M, dtype=bool)
            skip[0] = True
        c1, val, ok = _max_from_counts(counts, q, skip)
        if val > best[0]:
            best = (val, (i, c1, j, 0), ok)
    val, pair, ok = best
    return CoherenceReport(
        mu=math.sqrt(val) / M,
        mu_squared=Fraction(val, M * M) if ok else None,
        r_min=None,
        method="brute-force",
        worst_pair=pair,
        M=M,
    )


def _indicator_stack(P: np.ndarray, q: int) -> np.ndarray:
    return np.stack([(P == s).astype(np.float64) for s in range(q)])


def pairwise_histograms(P: np.ndarray, q: int, rows: slice | None = None) -> np.ndarray:
    """
    counts[i, j, r] = #{k : P[k, i] - P[k, j] = r (mod q)} for columns i in ``rows``.
    """
    P = np.mod(np.asarray(P, dtype=np.int64), q)
    E = _indicator_stack(P, q)
    Er = E if rows is None else E[:, :, rows]
    ni, nj = Er.shape[2], P.shape[1]
    out = np.zeros((ni, nj, q), dtype=np.int64)
    for s in range(q):
        for r in range(q):
            out[:, :, r] += np.rint(Er[s].T @ E[(s - r) % q]).astype(np.int64)
    return out


def coherence_naive(P: np.ndarray, q: int, chunk: int = 256) -> CoherenceReport:
    """Exact coherence of an arbitrary phase matrix by comparing every pair of columns."""
    P = np.mod(np.asarray(P, dtype=np.int64), q)
    M, N = P.shape
    if N < 2:
        raise ShapeError("coherence needs at least two columns")
    best = (-1, None, True)
    for start in range(0, N, chunk):
        stop = min(N, start + chunk)
        H = pairwise_histograms(P, q, slice(start, stop))
        flat = H.reshape(-1, q)
        skip = np.zeros((stop - start, N), dtype=bool)
        skip[np.arange(stop - start), np.arange(start, stop)] = True
        idx, val, ok = _max_from_counts(flat, q, skip.ravel())
        if val > best[0]:
            i, j = divmod(idx, N)
            best = (val, (0, start + i, 0, j), ok)
    val, pair, ok = best
    return CoherenceReport(
        mu=math.sqrt(val) / M,
        mu_squared=Fraction(val, M * M) if ok else None,
        r_min=None,
        method="brute-force",
        worst_pair=pair,
        M=M,
    )


def coherence_by_rank(family: MatrixFamily) -> CoherenceReport:
    """mu = p**(-r_min/2) from the symplectic ranks of the family."""
    if family.L < 2:
        raise InsufficientFamilyError(f"coherence needs at least 2 matrices, got {family.L}")
    r = family_r_min(family)
    p, M = family.p, family.p**family.m
    return CoherenceReport(
        mu=p ** (-r / 2),
        mu_squared=Fraction(1, p**r),
        r_min=r,
        method="rank-formula",
        worst_pair=None,
        M=M,
    )


def block_orthogonality_violations(phi: SpreadingMatrix, limit: int = 10) -> list[tuple[int, int, int]]:
    """Pairs (block, c1, c2), c1 < c2, whose inner product is not exactly zero."""
    found = []
    for b in range(phi.L):
        H = pairwise_histograms(phi.block(b), phi.q)
        bad = ~_zero_sum_rows(H, phi.q)
        np.fill_diagonal(bad, False)
        for c1, c2 in zip(*np.nonzero(np.triu(bad))):
            found.append((b, int(c1), int(c2)))
            if len(found) >= limit:
                return found
    return found


def cs_partners(phi: SpreadingMatrix, column: int) -> list[PhaseSequence] | None:
    """
    The p sequences f + (q/p) n x_pi(1) around a column, or None when the
    block carries no permutation.
    """
    b = column // phi.M
    spec = phi.blocks[b].spec
    if spec is None:
        return None
    lead = digit_table(phi.p, phi.m)[:, spec.pi[0] - 1]
    base = phi.phases[:, column]
    step = phi.q // phi.p
    return [PhaseSequence(base + step * n * lead, phi.q) for n in range(phi.p)]


def cs_violations(phi: SpreadingMatrix, columns: Iterable[int] | None = None, limit: int = 10) -> list[int]:
    """Columns whose complementary partners fail cs_check."""
    cols = range(phi.N) if columns is None else columns
    found = []
    for j in cols:
        fam = cs_partners(phi, j)
        if fam is None or not cs_check(fam):
            found.append(int(j))
            if len(found) >= limit:
                break
    return found


def _as_complex_columns(s) -> np.ndarray:
    if isinstance(s, PhaseSequence):
        return s.complex()[:, None]
    Z = np.asarray(s)
    if Z.ndim == 1:
        Z = Z[:, None]
    return Z.astype(np.complex128)


def _papr_grid(Z: np.ndarray, oversample: int) -> tuple[np.ndarray, np.ndarray]:
    M = Z.shape[0]
    n = oversample * M
    F = np.fft.ifft(Z, n=n, axis=0) * n
    power = np.abs(F) ** 2
    j = power.argmax(axis=0)
    return power[j, np.arange(Z.shape[1])], j / n


def _signal_power(Z: np.ndarray, t: np.ndarray) -> np.ndarray:
    k = np.arange(Z.shape[0])[:, None]
    return np.abs(np.sum(Z * np.exp(2j * np.pi * k * t[None, :]), axis=0)) ** 2


def papr_columns(
    phases: np.ndarray,
    q: int,
    oversample: int = 128,
    iterations: int = 40,
    chunk: int | None = None,
) -> np.ndarray:
    """
    PAPR of every column of a phase matrix.

    The signal power |sum_k s_k exp(2 pi i k t)|**2 is sampled on the grid
    t = j / (oversample * M); the best grid point of each column is refined by
    ternary search over the neighbouring grid cells. ``iterations=0`` skips
    refinement. Values are peak power over total sequence energy.
    """
    if oversample < 1:
        raise ValueError("oversample must be >= 1")
    P = np.asarray(phases)
    if P.ndim == 1:
        P = P[:, None]
    M, N = P.shape
    out = np.empty(N)
    if chunk is None:
        chunk = max(1, 2**21 // (oversample * M))
    for start in range(0, N, chunk):
        Z = np.exp(2j * np.pi * P[:, start:start + chunk] / q)
        out[start:start + chunk] = _papr_of(Z, oversample, iterations)
    return out


def _papr_of(Z: np.ndarray, oversample: int, iterations: int) -> np.ndarray:
    M = Z.shape[0]
    energy = np.sum(np.abs(Z) ** 2, axis=0)
    peak, t0 = _papr_grid(Z, oversample)
    if iterations > 0:
        step = 1.0 / (oversample * M)
        lo, hi = t0 - step, t0 + step
        for _ in range(iterations):
            m1 = lo + (hi - lo) / 3
            m2 = hi - (hi - lo) / 3
            left = _signal_power(Z, m1) < _signal_power(Z, m2)
            lo = np.where(left, m1, lo)
            hi = np.where(left, hi, m2)
        peak = np.maximum(peak, _signal_power(Z, (lo + hi) / 2))
    return peak / energy


def papr_estimate(s, oversample: int = 128, iterations: int = 40) -> float:
    """PAPR of one sequence (PhaseSequence or complex vector); oversample >= 4."""
    if oversample < 4:
        raise ValueError(f"oversample must be >= 4, got {oversample}")
    Z = _as_complex_columns(s)
    return float(_papr_of(Z, oversample, iterations)[0])


def papr_grid(s, oversample: int) -> float:
    """Grid-only PAPR (no refinement) of one sequence."""
    Z = _as_complex_columns(s)
    peak, _ = _papr_grid(Z, oversample)
    return float(peak[0] / np.sum(np.abs(Z[:, 0]) ** 2))


def papr_dft(s) -> float:
    """PAPR sampled only at t = j/M, the M points of the length-M DFT."""
    return papr_grid(s, 1)


def papr_set(phi: SpreadingMatrix, oversample: int = 128, iterations: int = 40) -> float:
    """Largest column PAPR of phi."""
    if oversample < 4:
        raise ValueError(f"oversample must be >= 4, got {oversample}")
    return float(papr_columns(phi.phases, phi.q, oversample, iterations).max())


def papr_set_dft(phi: SpreadingMatrix) -> float:
    """Largest critically sampled column PAPR of phi."""
    return float(papr_columns(phi.phases, phi.q, 1, 0).max())


def overloading_factor(phi) -> int:
    """ceil(N / M) for a SpreadingMatrix or an (M, N) shape."""
    M, N = (phi.M, phi.N) if isinstance(phi, SpreadingMatrix) else phi
    return -(-N // M)
