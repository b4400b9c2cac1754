"""End(T) against the star algebra over Q and over GF(101).

Over Q the relation theta^m = cycle^m0 holds only up to (-1)^(d-1), and on the
running example no rescaling fixes it.  GF(101) has a square root of -1.
"""
from gbt import Field, build_algebra, build_quiver, parse_tree, root_tree
from gbt.data import tree_text
from gbt.tilting import TiltingData, relation_suite, star_compare


def main():
    rt = root_tree(parse_tree(tree_text("T_ex")))
    for field in (Field(), Field(101)):
        td = TiltingData(build_algebra(build_quiver(rt), field), rt)
        print(f"-- {field.name}")
        for row in relation_suite(td):
            print(f"  edge {row['edge']} depth {rt.depth(row['edge'])}: scalar {row['scalar']}")
        rep = star_compare(td)
        print("  star_compare:", rep["status"], rep.get("reason", ""))


if __name__ == "__main__":
    main()
