"""
Acceptance gate. Each test records its criterion id and a one-line detail;
the terminal summary prints a PASS/FAIL line per criterion.

    pytest tests/test_acceptance.py -v
"""

import itertools
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import FAMILIES, diff_columns
from spreadseq import (
    ConditionViolation,
    Ebf,
    LinearFormQ,
    Variant,
    coherence_bruteforce,
    coherence_by_rank,
    count_configs,
    cs_check,
    cs_family_pary,
    cs_family_qary,
    materialize_phi,
    psi,
    rank_table,
    sequence_of,
    symplectic_q,
)
from spreadseq.analysis import block_pair_abs2, papr_columns
from spreadseq.constructions import build, random_parameters
from spreadseq.spreading import block_phases

PAPR_TOL = 0.005
OVERSAMPLE = 128

# Families whose columns feed the PAPR bound check (criterion 7).
_papr_pool: list[tuple[str, np.ndarray, int, int]] = []


@pytest.fixture
def crit(record_property):
    def rec(cid, detail):
        record_property("criterion", cid)
        record_property("detail", detail)
    return rec


@pytest.fixture(scope="module")
def phis():
    return {name: materialize_phi(make()) for name, make in FAMILIES.items()}


def _papr_set(phi):
    vals = papr_columns(phi.phases, phi.q, OVERSAMPLE)
    _papr_pool.append(("phi", vals, phi.p, phi.N))
    return float(vals.max())


# --- 1 -------------------------------------------------------------------------

def test_c1_golden_sequence(crit):
    f = Ebf(2, 3, 3, {(0, 0): 1, (1, 1): 2, (2, 0): 1})
    sequence_of(f)
    t0 = time.perf_counter()
    seq = sequence_of(f).phases.tolist()
    dt = time.perf_counter() - t0
    crit("1", f"1 + 2x1x2 + x1^2 -> {tuple(seq)} in {dt * 1e3:.3f} ms")
    assert seq == [1, 2, 2, 1, 1, 0, 1, 0, 1]
    assert dt < 1e-3


# --- 2 -------------------------------------------------------------------------

def test_c2_columns_and_coherence(crit):
    t0 = time.perf_counter()
    fam = FAMILIES["p3m4_diff"]()
    phi = materialize_phi(fam)
    cols = diff_columns()
    match = all(phi.phases[:, phi.column_index(b, c)].tolist() == v for (b, c), v in cols.items())
    rep = coherence_bruteforce(phi)
    dt = time.perf_counter() - t0
    crit("2.a", f"{len(cols)} listed columns match={match}; brute mu^2={rep.mu_squared}; {dt:.2f} s")
    assert match
    assert rep.mu_squared == Fraction(1, 81)
    assert dt < 30


def test_c2_papr(crit, phis):
    val = _papr_set(phis["p3m4_diff"])
    crit("2.b", f"set PAPR {val:.4f} (oversample {OVERSAMPLE}) vs 2.8738 +- {PAPR_TOL}")
    assert abs(val - 2.8738) <= PAPR_TOL


# --- 3 -------------------------------------------------------------------------

def test_c3_ranks_and_coherence(crit):
    t0 = time.perf_counter()
    fam = FAMILIES["p5m3_lp"]()
    T = rank_table(fam)
    off = T[~np.eye(fam.L, dtype=bool)]
    bf = coherence_bruteforce(materialize_phi(fam))
    rk = coherence_by_rank(fam)
    dt = time.perf_counter() - t0
    crit("3.a", f"pairwise ranks {sorted(set(off.tolist()))}; mu^2 brute {bf.mu_squared}, rank {rk.mu_squared}; {dt:.2f} s")
    assert np.all(off == 3)
    assert bf.mu_squared == rk.mu_squared == Fraction(1, 125)
    assert math.isclose(bf.mu, 5 ** -1.5) and math.isclose(rk.mu, 5 ** -1.5)
    assert dt < 10


def test_c3_papr(crit, phis):
    val = _papr_set(phis["p5m3_lp"])
    crit("3.b", f"set PAPR {val:.4f} (oversample {OVERSAMPLE}) vs 3.5223 +- {PAPR_TOL}")
    assert abs(val - 3.5223) <= PAPR_TOL


# --- 4 -------------------------------------------------------------------------

# (family, rank, mu^2, set PAPR target, criterion id of the PAPR sub-check)
CASES4 = [("p3m4_shift", 4, Fraction(1, 81), 2.8795, "4.b"),
          ("p3m4_even", 4, Fraction(1, 81), 2.8931, "4.c"),
          ("p3m5_any", 5, Fraction(1, 243), 3.000, "4.d")]


def test_c4_ranks_and_coherence(crit):
    t0 = time.perf_counter()
    details, ok = [], True
    for name, r, mu2, _, _ in CASES4:
        fam = FAMILIES[name]()
        T = rank_table(fam)
        off = T[~np.eye(fam.L, dtype=bool)]
        bf = coherence_bruteforce(materialize_phi(fam))
        rk = coherence_by_rank(fam)
        ok &= bool(np.all(off == r)) and bf.mu_squared == rk.mu_squared == mu2
        details.append(f"{name}: ranks {sorted(set(off.tolist()))} mu^2 {bf.mu_squared}")
    dt = time.perf_counter() - t0
    crit("4.a", "; ".join(details) + f"; {dt:.2f} s")
    assert ok
    assert dt < 60


@pytest.mark.parametrize("name,target,cid", [(n, t, c) for n, _, _, t, c in CASES4])
def test_c4_papr(crit, phis, name, target, cid):
    t0 = time.perf_counter()
    val = _papr_set(phis[name])
    crit(cid, f"{name} set PAPR {val:.4f} (oversample {OVERSAMPLE}) vs {target:.4f} +- {PAPR_TOL}; "
                          f"{time.perf_counter() - t0:.2f} s")
    assert abs(val - target) <= PAPR_TOL


# --- 5 -------------------------------------------------------------------------

def test_c5_cs_property(crit):
    rng = np.random.default_rng(20240605)
    t0 = time.perf_counter()
    failures, done = 0, 0
    configs = [(p, m, h) for p in (3, 5) for m in (2, 3, 4) for h in (1, 2) if h <= m]
    while done < 200:
        p, m, h = configs[done % len(configs)]
        pi = [int(v) + 1 for v in rng.permutation(m)]
        a = rng.integers(1, p, m - 1)
        if h == 1:
            fam = cs_family_pary(pi, a, rng.integers(0, p, (p - 1, m)), p)
        else:
            A = psi(pi, a, rng.integers(0, p, m), p)
            fam = cs_family_qary(A, LinearFormQ(p, m, h, int(rng.integers(0, p**m))))
        seqs = [sequence_of(f) for f in fam]
        failures += not cs_check(seqs)
        P = np.stack([s.phases for s in seqs], axis=1)
        _papr_pool.append(("cs", papr_columns(P, seqs[0].q, OVERSAMPLE), p, P.shape[1]))
        done += 1
    dt = time.perf_counter() - t0
    crit("5", f"{done} random families, {failures} failed the exact zero-sum test; {dt:.2f} s")
    assert failures == 0
    assert dt < 60


# --- 6 -------------------------------------------------------------------------

def test_c6_rank_vs_cross_correlation(crit):
    rng = np.random.default_rng(6)
    t0 = time.perf_counter()
    mismatches, ranks = 0, []
    for k in range(100):
        p = (3, 5)[k % 2]
        m = int(rng.integers(2, 5))
        pi1, pi2 = ([int(v) + 1 for v in rng.permutation(m)] for _ in range(2))
        A1 = psi(pi1, rng.integers(1, p, m - 1), rng.integers(0, p, m), p)
        A2 = psi(pi2, rng.integers(1, p, m - 1), rng.integers(0, p, m), p)
        r = symplectic_q(A1, A2).rank
        ranks.append(r)
        val, _, exact = block_pair_abs2(A1, A2)
        Z1 = np.exp(2j * np.pi * block_phases(A1) / p)
        Z2 = np.exp(2j * np.pi * block_phases(A2) / p)
        gram = int(np.rint((np.abs(Z1.T @ Z2.conj()) ** 2).max()))
        mismatches += not (exact and val == gram == p ** (2 * m - r))
    dt = time.perf_counter() - t0
    crit("6", f"100 pairs (ranks seen {sorted(set(ranks))}), {mismatches} mismatches vs p^(2m-r); {dt:.2f} s")
    assert mismatches == 0
    assert dt < 120


# --- 7 -------------------------------------------------------------------------

def test_c7_papr_bound(crit, phis):
    # make sure every family of criteria 2-5 is covered even when run alone
    covered = sum(1 for kind, *_ in _papr_pool if kind == "phi")
    if covered < len(FAMILIES):
        for phi in phis.values():
            _papr_set(phi)
    if not any(kind == "cs" for kind, *_ in _papr_pool):
        test_c5_cs_property(lambda *a: None)
    worst = max(float(vals.max()) - p for _, vals, p, _ in _papr_pool)
    n = sum(len(vals) for _, vals, _, _ in _papr_pool)
    crit("7", f"{n} columns checked; max(PAPR - p) = {worst:.2e}")
    assert worst <= 1e-6


# --- 8 -------------------------------------------------------------------------

def _invalid_draw(variant, rng):
    """A parameter set violating exactly one documented precondition."""
    p = 3 if variant in (Variant.THM_P3_EVEN, Variant.THM_P3_ANY) else int(rng.choice([3, 5, 7]))
    m = {Variant.THM_P3_EVEN: 4, Variant.THM_2P_SHIFT: int(rng.integers(3, 6))}.get(variant, int(rng.integers(2, 6)))
    params, _ = random_parameters(variant, p, m, rng)
    kinds = ["a_zero"]
    if "b" in params:
        kinds += ["b_zero"]
    if variant in (Variant.THM_2P_DIFF, Variant.THM_P3_EVEN, Variant.THM_P3_ANY):
        kinds += ["a_eq_b"]
    if "d_list" in params or "d_list_a" in params:
        kinds += ["dup_d"]
    if variant == Variant.THM_2P_SHIFT:
        kinds += ["no_t"]
    if variant == Variant.THM_P3_EVEN:
        kinds += ["bad_m"]
    if variant == Variant.THM_P3_ANY:
        kinds += ["s_out", "e_zero"]
    kind = kinds[int(rng.integers(0, len(kinds)))]
    i = int(rng.integers(0, m - 1))
    if kind == "a_zero":
        params["a"][i] = 0
    elif kind == "b_zero":
        params["b"][i] = p * int(rng.integers(0, 2))
    elif kind == "a_eq_b":
        params["b"][i] = params["a"][i]
    elif kind == "dup_d":
        key = "d_list" if "d_list" in params else ("d_list_a", "d_list_b")[int(rng.integers(0, 2))]
        dl = params[key]
        j1, j2 = rng.choice(p, 2, replace=False)
        k = int(rng.integers(0, m))
        dl[j2][k] = dl[j1][k]
    elif kind == "no_t":
        # make every admissible b_i - a_[i+tau] nonzero, or two of them zero
        from spreadseq import bracket_mod
        tau = params["tau"] % m or 1
        params["tau"] = tau
        adm = [t for t in range(1, m) if t != m - tau]
        want_two = len(adm) >= 2 and rng.random() < 0.5
        zeros = set(rng.choice(adm, 2, replace=False).tolist()) if want_two else set()
        for t in adm:
            target = params["a"][bracket_mod(t + tau, m) - 1]
            if t in zeros:
                params["b"][t - 1] = target
            else:
                params["b"][t - 1] = next(v for v in range(1, p) if v != target)
    elif kind == "bad_m":
        mm = int(rng.choice([2, 3, 5, 7, 8, 11, 14]))
        params.update(pi=list(range(1, mm + 1)), a=[1] * (mm - 1), b=[2] * (mm - 1), d1=[0] * mm)
    elif kind == "s_out":
        from spreadseq import compute_index_set_u
        U = compute_index_set_u(m)
        outside = [s for s in range(1, m + 1) if s not in U] + [0, m + 1]
        params["s"] = int(rng.choice(outside))
    elif kind == "e_zero":
        params["e"] = 3 * int(rng.integers(0, 2))
    return params, kind


def test_c8_condition_fuzzing(crit):
    rng = np.random.default_rng(8)
    t0 = time.perf_counter()
    silent, wrong_class, kinds = [], [], {}
    for variant in Variant:
        for _ in range(1000):
            params, kind = _invalid_draw(variant, rng)
            kinds[kind] = kinds.get(kind, 0) + 1
            try:
                build(variant, **params)
            except ConditionViolation:
                continue
            except Exception as exc:  # noqa: BLE001
                wrong_class.append((variant.value, kind, type(exc).__name__))
                continue
            silent.append((variant.value, kind, params))
    dt = time.perf_counter() - t0
    crit("8", f"{1000 * len(Variant)} invalid draws over {sorted(kinds)}; silent={len(silent)}, "
              f"other errors={len(wrong_class)}; {dt:.2f} s")
    assert not silent, silent[:3]
    assert not wrong_class, wrong_class[:3]
    assert dt < 10


# --- 9 -------------------------------------------------------------------------

def test_c9_counting(crit):
    t0 = time.perf_counter()
    got = {}
    for m in (2, 3):
        vecs = list(itertools.product(range(3), repeat=m))
        n = sum(all(len({v[k] for v in combo}) == 3 for k in range(m)) for combo in itertools.combinations(vecs, 3))
        got[m] = (count_configs(Variant.THM_LP, 3, m), n)
    dt = time.perf_counter() - t0
    crit("9", f"(formula, enumeration): m=2 {got[2]}, m=3 {got[3]}; {dt * 1e3:.1f} ms")
    assert got == {2: (6, 6), 3: (36, 36)}
    assert dt < 1
