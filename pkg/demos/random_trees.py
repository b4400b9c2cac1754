"""Run the main checks on seeded random trees and print one row per seed."""
import sys

from gbt import Field, build_algebra, build_quiver, random_tree, root_tree
from gbt.tilting import TiltingData, generic_vs_explicit, perversity_of_F, y_suite
from gbt.twosided import SliceData, slice_report, two_sided_criterion


def main(seeds):
    for seed in seeds:
        rt = root_tree(random_tree(seed, 8, 3))
        A = build_algebra(build_quiver(rt), Field())
        td, sd = TiltingData(A, rt), SliceData(A, rt)
        row = {
            "T": generic_vs_explicit(td)["status"],
            "F": perversity_of_F(td)["status"],
            "Y": y_suite(td)["status"],
            "slices": slice_report(sd)["status"],
            "Ext": two_sided_criterion(sd)["status"],
        }
        print(f"seed {seed:>3}  edges {len(rt.edges)}  r {rt.height}  dim A {A.dim:>3}  "
              f"dim End {td.end.dim:>3}  " + "  ".join(f"{k} {v}" for k, v in row.items()))


if __name__ == "__main__":
    main([int(s) for s in sys.argv[1:]] or range(1, 11))
