"""Walk through the six-edge running example: projectives, L_n, T, Y_n, slices."""
from gbt import Field, build_algebra, build_quiver, parse_tree, root_tree
from gbt.complexes import cohomology
from gbt.data import tree_text
from gbt.modules import L_module, loewy_layers, proj_module
from gbt.tilting import TiltingData, build_T_explicit, build_Y_generic, depth_filtration
from gbt.twosided import SliceData, c_term_table


def show_layers(layers):
    return " / ".join("+".join(sorted(l)) for l in layers)


def main():
    rt = root_tree(parse_tree(tree_text("T_ex")))
    A = build_algebra(build_quiver(rt), Field())
    verts, edges, mults = rt.preorder_traversals()
    print("preorder:", verts, edges, mults)
    print("dim A =", A.dim)
    for n in rt.edges:
        print(f"P{n}: {show_layers(loewy_layers(proj_module(A, n)))}")
    for n in rt.edges:
        print(f"L{n}: {show_layers(loewy_layers(L_module(A, rt, n)))}")

    print("\ntree-to-star complex")
    for n in rt.edges:
        T = build_T_explicit(A, rt, n)
        print(f"T{n}:", {l: T.term(l).summands for l in T.degrees()})

    td = TiltingData(A, rt)
    print("dim End(T) =", td.end.dim)
    filt = depth_filtration(rt)
    print("filtration:", [sorted(s) for s in filt.chain()])

    print("\npreimages of the star simples")
    for n in rt.edges:
        i = filt.stratum[n]
        Y = build_Y_generic(A, rt, n)
        print(f"Y{n} = [{show_layers(loewy_layers(cohomology(Y, -i)))}][{i}]")

    print("\nterms of the two-sided complex")
    table = c_term_table(SliceData(A, rt))
    for t in sorted(table["C"]):
        print(f"degree -{t}:", [(e["edge"], e["projective"]) for e in table["C"][t]])


if __name__ == "__main__":
    main()
