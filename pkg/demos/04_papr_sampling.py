"""
Demo 4: PAPR, critically sampled versus continuous

This demo shows:
- the PAPR of every column is bounded by p (complementary-set members)
- sampling only at t = j/M underestimates the continuous peak
- the oversampled estimate converges as the grid gets finer
"""

from _common import banner, quinary_lp_family, step, ternary_2p_family
from spreadseq import materialize_phi
from spreadseq.analysis import papr_set, papr_set_dft


def main():
    banner("Demo 4: PAPR sampling")
    for n, (label, make) in enumerate([("p=3, m=4", ternary_2p_family), ("p=5, m=3", quinary_lp_family)], 1):
        phi = materialize_phi(make())
        step(n, f"{label}: {phi.N} columns, bound p = {phi.p}")
        print(f"    critically sampled (DFT): {papr_set_dft(phi):.4f}")
        for ov in (4, 16, 128):
            print(f"    oversample {ov:>3} + refine:  {papr_set(phi, ov):.4f}")


if __name__ == "__main__":
    main()
