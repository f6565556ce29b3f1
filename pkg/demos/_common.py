"""Shared printing helpers and the worked families used by the demos."""

from spreadseq import build_thm_2p_diff, build_thm_lp, build_thm_p3_any


def banner(title: str) -> None:
    print("\n" + "=" * 70)
    print(title)
    print("=" * 70)


def step(n: int, text: str) -> None:
    print(f"\n[{n}] {text}")


def ternary_2p_family():
    """p=3, m=4, six blocks: a=(1,2,2), b=(2,1,1), constant d-vectors."""
    const = [[i] * 4 for i in range(3)]
    return build_thm_2p_diff([1, 2, 3, 4], (1, 2, 2), (2, 1, 1), const, const, 3)


def quinary_lp_family():
    """p=5, m=3, five blocks with pairwise rank 3."""
    ds = [(0, 3, 4), (1, 0, 1), (2, 1, 2), (3, 2, 0), (4, 4, 3)]
    return build_thm_lp([3, 1, 2], (2, 2), ds, 5)


def ternary_optimal_family():
    """p=3, m=5, six blocks reaching r_min = m."""
    return build_thm_p3_any([1, 2, 3, 4, 5], (2, 1, 2, 2), (1, 2, 1, 1), (0,) * 5, 5, 1)
