"""
Command line front end.

    spreadseq generate --variant thm-lp --p 5 --m 3 --pi 3,1,2 --a 2,2 \
        --d "0,3,4;1,0,1;2,1,2;3,2,0;4,4,3" --out lp5.json

Exit codes: 0 success, 1 verification failed, 2 condition violated, 3 parse error, 4 capacity.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import constructions as cons
from . import io as sio
from .errors import CapacityError, ConditionViolation, ParseError, ShapeError, SpreadSeqError
from .analysis import coherence_by_rank
from .quadform import MatrixFamily, r_min, rank_table
from .report import AnalysisReport, analyze

EXIT_OK = 0
EXIT_CONDITION = 2
EXIT_PARSE = 3
EXIT_CAPACITY = 4
EXIT_FAILED = 1


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; we reserve 2 for condition violations."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: parse error: {message}\n")


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v != ""]
    except ValueError:
        raise ParseError(f"--{what}: expected comma separated integers, got {text!r}") from None


def _vectors(text: str, what: str = "d") -> list[list[int]]:
    return [_ints(chunk, what) for chunk in text.split(";") if chunk.strip()]


def family_from_args(args) -> tuple[MatrixFamily, dict]:
    """Build the requested family, drawing missing parameters from --seed."""
    variant = cons.Variant(args.variant)
    if args.seed is not None:
        rng = np.random.default_rng(args.seed)
        params, rejections = cons.random_parameters(variant, args.p, args.m, rng)
        params["rejections"] = rejections
        fam = cons.build(variant, **{k: v for k, v in params.items() if k != "rejections"})
        return fam, params
    missing = [f for f in ("pi", "a", "d") if getattr(args, f) is None]
    if variant != cons.Variant.THM_LP and args.b is None:
        missing.append("b")
    if missing:
        raise ParseError("missing " + ", ".join("--" + f for f in missing) + " (or pass --seed)")
    pi = _ints(args.pi, "pi")
    a = _ints(args.a, "a")
    ds = _vectors(args.d)
    if args.m is not None and len(pi) != args.m:
        raise ShapeError(f"--pi has {len(pi)} entries but --m is {args.m}")
    params = {"p": args.p, "pi": pi, "a": a}
    if variant == cons.Variant.THM_LP:
        params["d_list"] = ds
    elif variant in (cons.Variant.THM_2P_DIFF, cons.Variant.THM_2P_SHIFT):
        p = args.p
        if len(ds) != 2 * p:
            raise ConditionViolation(f"need 2p={2 * p} d-vectors (first p for a, next p for b), got {len(ds)}")
        params.update(b=_ints(args.b, "b"), d_list_a=ds[:p], d_list_b=ds[p:])
        if variant == cons.Variant.THM_2P_SHIFT:
            if args.tau is None:
                raise ParseError("missing --tau")
            params["tau"] = args.tau
    elif variant == cons.Variant.THM_P3_EVEN:
        if len(ds) not in (1, 4):
            raise ConditionViolation("--d takes d1, or d1 followed by the second triple d4;d5;d6")
        params.update(b=_ints(args.b, "b"), d1=ds[0], second=ds[1:] or None)
    else:
        if args.s is None or args.e is None:
            raise ParseError("missing --s/--e")
        if len(ds) != 1:
            raise ConditionViolation("--d takes the single vector d1")
        params.update(b=_ints(args.b, "b"), d1=ds[0], s=args.s, e=args.e)
    return cons.build(variant, **params), params


def _out_paths(out: str, fmt: str) -> tuple[Path, Path]:
    path = Path(out)
    if path.suffix.lower() not in (".json", ".csv"):
        path = path.with_suffix("." + fmt)
    return path, path.with_name(path.stem + ".report.json")


def cmd_generate(args) -> int:
    fam, params = family_from_args(args)
    phi = cons.materialize_phi(fam, args.h)
    rep = analyze(phi, fam, oversample=args.oversample, brute_force=args.brute_force,
                  timings=args.timings)
    if args.seed is not None:
        rep.construction.update(seed=args.seed, rejections=params["rejections"])
    if args.out:
        data, rpath = _out_paths(args.out, args.format)
        sio.save(phi, data, args.format)
        rpath.write_text(rep.to_json())
        print(f"wrote {data} and {rpath}")
    sys.stdout.write(rep.to_text())
    return EXIT_OK if rep.ok else EXIT_FAILED


def cmd_verify(args) -> int:
    phi = sio.load(args.input)
    fam = MatrixFamily(phi.blocks, dict(phi.provenance))
    rep = analyze(phi, fam, oversample=args.oversample, naive=True, timings=args.timings)
    sys.stdout.write(rep.to_text())
    if rep.orthogonality_violations:
        b, c1, c2 = rep.orthogonality_violations[0]
        print(f"block orthogonality violated: block {b}, columns {c1} and {c2} "
              f"(global columns {b * phi.M + c1} and {b * phi.M + c2})")
    if rep.ok:
        print("verify: all properties hold")
        return EXIT_OK
    print("verify: FAILED")
    return EXIT_FAILED


def cmd_coherence(args) -> int:
    if args.input:
        phi = sio.load(args.input)
        fam = MatrixFamily(phi.blocks, dict(phi.provenance))
        rep = analyze(phi, fam, naive=True, papr=False, verify=False, timings=args.timings)
    else:
        fam, _ = family_from_args(args)
        if args.brute_force:
            phi = cons.materialize_phi(fam, args.h)
            rep = analyze(phi, fam, brute_force=True, papr=False, verify=False, timings=args.timings)
        else:
            M = fam.p**fam.m
            cr = coherence_by_rank(fam)
            rep = AnalysisReport(dict(fam.provenance), fam.L * M, M, fam.L, fam.p**args.h, mu_rank=cr.mu,
                                 mu_rank_squared=str(cr.mu_squared), r_min=cr.r_min,
                                 ranks=rank_table(fam).tolist(), rank_formula_applies=args.h == 1)
    sys.stdout.write(rep.to_text())
    return EXIT_OK if rep.ok else EXIT_FAILED


def cmd_papr(args) -> int:
    if args.input:
        phi = sio.load(args.input)
    else:
        fam, _ = family_from_args(args)
        phi = cons.materialize_phi(fam, args.h)
    rep = analyze(phi, None, oversample=args.oversample, verify=False, timings=args.timings)
    sys.stdout.write(rep.to_text())
    return EXIT_OK if rep.ok else EXIT_FAILED


TABLE_ROWS = [
    # variant, constraint, coherence, overloading(p)
    (cons.Variant.THM_LP, "m >= 2", "1/sqrt(M)", lambda p: p),
    (cons.Variant.THM_2P_DIFF, "m >= 2", "<= sqrt(p/M)", lambda p: 2 * p),
    (cons.Variant.THM_2P_SHIFT, "m >= 3", "<= sqrt(p/M)", lambda p: 2 * p),
    (cons.Variant.THM_P3_EVEN, "m even, m >= 4, m != 2 mod 3", "1/sqrt(M)", lambda p: 6),
    (cons.Variant.THM_P3_ANY, "m >= 2", "1/sqrt(M)", lambda p: 6),
]


def _m_ok(variant, p, m) -> bool:
    if variant in (cons.Variant.THM_P3_EVEN, cons.Variant.THM_P3_ANY) and p != 3:
        return False
    if variant == cons.Variant.THM_P3_EVEN:
        return m % 2 == 0 and m >= 4 and m % 3 != 2
    if variant == cons.Variant.THM_2P_SHIFT:
        return m >= 3
    return m >= 2


def cmd_table(args) -> int:
    ps = _ints(args.p_list, "p")
    ms = _ints(args.m_list, "m")
    rng = np.random.default_rng(args.seed)
    head = f"{'variant':14} {'constraint':30} {'alphabet':>8} {'coherence':>13} {'overload':>8} {'PAPR':>6}"
    print(head)
    print("-" * len(head))
    for variant, constraint, coh, over in TABLE_ROWS:
        for p in ps:
            if variant in (cons.Variant.THM_P3_EVEN, cons.Variant.THM_P3_ANY) and p != 3:
                continue
            alpha = f"{p}^h" if args.h != 1 else str(p)
            print(f"{variant.value:14} {constraint:30} {alpha:>8} {coh:>13} {over(p):>8} {'<= ' + str(p):>6}")
            for m in ms:
                if not _m_ok(variant, p, m):
                    continue
                params, _ = cons.random_parameters(variant, p, m, rng)
                fam = cons.build(variant, **params)
                r = r_min(fam)
                M = p**m
                bound = 1 / math.sqrt(M) if coh == "1/sqrt(M)" else math.sqrt(p / M)
                print(f"{'':14}   m={m}: M={M}, N={fam.L * M}, r_min={r}, "
                      f"mu={p ** (-r / 2):.4f} (bound {bound:.4f}), overloading {fam.L}")
    return EXIT_OK


def _add_construction(sp):
    g = sp.add_argument_group("construction")
    g.add_argument("--variant", choices=[v.value for v in cons.Variant], default="thm-lp")
    g.add_argument("--p", type=int, default=3)
    g.add_argument("--m", type=int, default=None)
    g.add_argument("--h", type=int, default=1, help="phase alphabet q = p**h")
    g.add_argument("--pi", help="permutation, 1-indexed, e.g. 3,1,2")
    g.add_argument("--a", help="path coefficients a_1..a_{m-1}")
    g.add_argument("--b", help="second path coefficients b_1..b_{m-1}")
    g.add_argument("--d", help="diagonal vectors separated by ';'")
    g.add_argument("--tau", type=int, help="cyclic shift (thm-2p-shift)")
    g.add_argument("--s", type=int, help="shift position in U (thm-p3-any)")
    g.add_argument("--e", type=int, help="shift amount 1 or 2 (thm-p3-any)")
    g.add_argument("--seed", type=int, help="draw valid random parameters instead")


def _add_common(sp, oversample=True):
    if oversample:
        sp.add_argument("--oversample", type=int, default=128)
    sp.add_argument("--timings", action="store_true", help="include wall-clock timings")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="spreadseq", description="Spreading sequence sets from quadratic extended Boolean functions.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="construct, analyze and export a sequence set")
    _add_construction(g)
    _add_common(g)
    g.add_argument("--out")
    g.add_argument("--format", choices=sio.FORMATS, default="json")
    g.add_argument("--brute-force", action="store_true", help="exact coherence over all column pairs")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="check an exported matrix file")
    v.add_argument("input")
    _add_common(v)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("coherence", help="coherence by rank formula (and brute force)")
    _add_construction(c)
    c.add_argument("--input")
    c.add_argument("--brute-force", action="store_true")
    _add_common(c, oversample=False)
    c.set_defaults(func=cmd_coherence)

    pp = sub.add_parser("papr", help="set PAPR of a construction or file")
    _add_construction(pp)
    pp.add_argument("--input")
    _add_common(pp)
    pp.set_defaults(func=cmd_papr)

    t = sub.add_parser("table", help="parameter comparison of all constructions")
    t.add_argument("--p-list", default="3,5")
    t.add_argument("--m-list", default="2,3,4")
    t.add_argument("--h", type=int, default=1)
    t.add_argument("--seed", type=int, default=0)
    t.set_defaults(func=cmd_table)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "oversample", 128) < 4:
            raise ParseError(f"--oversample must be >= 4, got {args.oversample}")
        return args.func(args)
    except ConditionViolation as exc:
        print(f"condition violated: {exc}", file=sys.stderr)
        return EXIT_CONDITION
    except ShapeError as exc:
        print(f"condition violated: {exc}", file=sys.stderr)
        return EXIT_CONDITION
    except (ParseError, json.JSONDecodeError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (SpreadSeqError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONDITION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
