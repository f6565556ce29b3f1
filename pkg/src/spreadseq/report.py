"""Analysis reports mirroring the coherence / overloading / PAPR columns of a comparison table."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import analysis as an
from .quadform import MatrixFamily, rank_table
from .spreading import SpreadingMatrix


@dataclass
class AnalysisReport:
    construction: dict
    N: int
    M: int
    overloading: int
    q: int
    mu_rank: float | None = None
    mu_rank_squared: str | None = None
    mu_bruteforce: float | None = None
    mu_bruteforce_squared: str | None = None
    worst_pair: list[int] | None = None
    r_min: int | None = None
    rank_formula_applies: bool = True
    ranks: list[list[int]] | None = None
    papr: float | None = None
    papr_blocks: list[float] | None = None
    papr_dft: float | None = None
    oversample: int | None = None
    orthogonal: bool | None = None
    orthogonality_violations: list[list[int]] = field(default_factory=list)
    complementary: bool | None = None
    cs_violations: list[int] = field(default_factory=list)
    papr_bound_ok: bool | None = None
    timings: dict | None = None

    @property
    def mu_agree(self) -> bool | None:
        if not self.rank_formula_applies or self.mu_rank is None or self.mu_bruteforce is None:
            return None
        if self.mu_rank_squared is None or self.mu_bruteforce_squared is None:
            return False
        return self.mu_rank_squared == self.mu_bruteforce_squared

    @property
    def ok(self) -> bool:
        checks = [self.orthogonal, self.complementary, self.papr_bound_ok, self.mu_agree]
        return all(c is not False for c in checks)

    def to_dict(self) -> dict:
        d = {k: v for k, v in self.__dict__.items() if v is not None}
        d["mu_agree"] = self.mu_agree
        d["ok"] = self.ok
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        f4 = "{:.4f}".format
        c = self.construction
        lines = [f"construction: {c.get('construction') or 'unknown'}"]
        params = {k: v for k, v in c.items() if k != "construction"}
        if params:
            lines.append("parameters:   " + json.dumps(params, sort_keys=True))
        lines.append(f"M x N:        {self.M} x {self.N}   overloading {self.overloading}   q = {self.q}")
        if self.r_min is not None:
            lines.append(f"r_min:        {self.r_min}")
        if self.ranks is not None:
            lines.append("rank table:")
            lines.extend("  " + " ".join(f"{v:2d}" for v in row) for row in self.ranks)
        if self.mu_rank is not None:
            note = "" if self.rank_formula_applies else "   (p-ary base family; not a bound for q > p)"
            lines.append(f"mu (rank):    {f4(self.mu_rank)}   mu^2 = {self.mu_rank_squared}{note}")
        if self.mu_bruteforce is not None:
            sq = self.mu_bruteforce_squared or "irrational"
            lines.append(f"mu (brute):   {f4(self.mu_bruteforce)}   mu^2 = {sq}"
                         f"   worst pair {tuple(self.worst_pair or ())}")
        if self.mu_agree is not None:
            lines.append(f"mu agree:     {'yes' if self.mu_agree else 'NO'}")
        if self.papr is not None:
            lines.append(f"PAPR (set):   {f4(self.papr)}   oversample {self.oversample}, grid + refinement")
            lines.append("PAPR blocks:  " + " ".join(f4(v) for v in self.papr_blocks or []))
            lines.append(f"PAPR (DFT):   {f4(self.papr_dft)}   samples t = j/M only")
            lines.append(f"PAPR <= p:    {'yes' if self.papr_bound_ok else 'NO'}")
        if self.orthogonal is not None:
            text = "yes" if self.orthogonal else "NO, first violations " + str(self.orthogonality_violations)
            lines.append(f"orthogonal:   {text}")
        if self.complementary is not None:
            text = "yes" if self.complementary else "NO, columns " + str(self.cs_violations)
            lines.append(f"CS partners:  {text}")
        if self.timings:
            lines.append("timings (s):  " + ", ".join(f"{k} {f4(v)}" for k, v in sorted(self.timings.items())))
        return "\n".join(lines) + "\n"


class _Clock:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.times: dict[str, float] = {}

    def run(self, name, fn, *args, **kw):
        t0 = time.perf_counter()
        out = fn(*args, **kw)
        if self.enabled:
            self.times[name] = time.perf_counter() - t0
        return out


def analyze(
    phi: SpreadingMatrix,
    family: MatrixFamily | None = None,
    *,
    oversample: int = 128,
    brute_force: bool = False,
    naive: bool = False,
    papr: bool = True,
    verify: bool = True,
    timings: bool = False,
) -> AnalysisReport:
    """
    Build a report for ``phi``.

    ``family`` enables the rank formula. ``naive`` computes the brute-force
    coherence from the stored phases column by column (use it for loaded
    files, whose phases need not follow their declared blocks).
    """
    clock = _Clock(timings)
    rep = AnalysisReport(
        construction=dict(phi.provenance),
        N=phi.N,
        M=phi.M,
        overloading=an.overloading_factor(phi),
        q=phi.q,
        rank_formula_applies=phi.h == 1,
    )
    if family is not None and family.L >= 2:
        T = clock.run("ranks", rank_table, family)
        rep.ranks = T.tolist()
        cr = an.coherence_by_rank(family)
        rep.r_min, rep.mu_rank, rep.mu_rank_squared = cr.r_min, cr.mu, str(cr.mu_squared)
    if brute_force or naive:
        if naive:
            cb = clock.run("coherence", an.coherence_naive, phi.phases, phi.q)
        else:
            cb = clock.run("coherence", an.coherence_bruteforce, phi)
        rep.mu_bruteforce = cb.mu
        rep.mu_bruteforce_squared = None if cb.mu_squared is None else str(cb.mu_squared)
        pair = list(cb.worst_pair)
        if naive:
            # naive sweep reports global column indices
            pair = [*divmod(pair[1], phi.M), *divmod(pair[3], phi.M)]
        rep.worst_pair = pair
    if papr:
        vals = clock.run("papr", an.papr_columns, phi.phases, phi.q, oversample)
        dft = an.papr_columns(phi.phases, phi.q, 1, 0)
        rep.papr = float(vals.max())
        rep.papr_blocks = [float(v) for v in vals.reshape(phi.L, phi.M).max(axis=1)]
        rep.papr_dft = float(dft.max())
        rep.oversample = oversample
        rep.papr_bound_ok = bool(np.all(vals <= phi.p + 1e-6))
    if verify:
        viol = clock.run("orthogonality", an.block_orthogonality_violations, phi)
        rep.orthogonal = not viol
        rep.orthogonality_violations = [list(v) for v in viol]
        csv_ = clock.run("cs", an.cs_violations, phi)
        rep.complementary = not csv_
        rep.cs_violations = csv_
    if timings:
        rep.timings = clock.times
    return rep
