import json
from pathlib import Path

import pytest

from spreadseq import (
    build_thm_2p_diff,
    build_thm_2p_shift,
    build_thm_lp,
    build_thm_p3_any,
    build_thm_p3_even,
)

DATA = Path(__file__).parent / "data"
CONST3 = lambda m: [[i] * m for i in range(3)]  # noqa: E731


def family_p3m4_diff():
    return build_thm_2p_diff([1, 2, 3, 4], (1, 2, 2), (2, 1, 1), CONST3(4), CONST3(4), 3)


def family_p5m3_lp():
    ds = [(0, 3, 4), (1, 0, 1), (2, 1, 2), (3, 2, 0), (4, 4, 3)]
    return build_thm_lp([3, 1, 2], (2, 2), ds, 5)


def family_p3m4_shift():
    da = [(0, 2, 1, 2), (1, 1, 0, 0), (2, 0, 2, 1)]
    return build_thm_2p_shift([2, 3, 1, 4], 1, (1, 1, 2), (1, 1, 1), da, CONST3(4), 3)


def family_p3m4_even():
    second = [(0, 0, 1, 0), (1, 1, 2, 1), (2, 2, 0, 2)]
    return build_thm_p3_even([1, 4, 3, 2], (2, 2, 2), (1, 1, 1), (0, 0, 0, 0), second)


def family_p3m5_any():
    return build_thm_p3_any([1, 2, 3, 4, 5], (2, 1, 2, 2), (1, 2, 1, 1), (0,) * 5, 5, 1)


FAMILIES = {
    "p3m4_diff": family_p3m4_diff,
    "p5m3_lp": family_p5m3_lp,
    "p3m4_shift": family_p3m4_shift,
    "p3m4_even": family_p3m4_even,
    "p3m5_any": family_p3m5_any,
}


def diff_columns() -> dict[tuple[int, int], list[int]]:
    raw = json.loads((DATA / "p3m4_diff_columns.json").read_text())
    out = {}
    for key, digits in raw.items():
        b, c = key.split("_")
        out[(int(b[5:]), int(c[1:]))] = [int(ch) for ch in digits]
    return out


@pytest.fixture(params=sorted(FAMILIES))
def named_family(request):
    return request.param, FAMILIES[request.param]()


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance" not in getattr(rep, "nodeid", "") or rep.when != "call":
                continue
            props = dict(rep.user_properties)
            if "criterion" in props:
                rows.append((props["criterion"], outcome, props.get("detail", "")))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for crit, outcome, detail in sorted(rows, key=lambda r: [(0, int(t), "") if t.isdigit() else (1, 0, t) for t in r[0].split(".")]):
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  criterion {crit:<5} {detail}")
