"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run ``python tests/test_acceptance.py`` for the eleven lines alone.
"""
import functools
import os
import sys
import time

sys.path.insert(0, os.path.dirname(__file__))

from gbt import Field  # noqa: E402
from gbt.complexes import cohomology  # noqa: E402
from gbt.data import names  # noqa: E402
from gbt.modules import (  # noqa: E402
    L_module,
    direct_sum,
    is_isomorphic,
    loewy_layers,
    proj_module,
    quotient,
    rad,
    soc,
    uniserial_minus,
    uniserial_plus,
)
from gbt.report import cartan_agreement  # noqa: E402
from gbt.tilting import (  # noqa: E402
    TiltingData,
    T_differential_path,
    build_T_explicit,
    build_Y_generic,
    generic_vs_explicit,
    perversity_of_F,
    relation_suite,
    star_compare,
    y_suite,
)
from gbt.tree import preorder_traversals  # noqa: E402
from gbt.twosided import (  # noqa: E402
    SliceData,
    c_term_table,
    cover_hull_identifications,
    perversity_of_G,
    slice_report,
    two_sided_criterion,
    verify_essentialproj,
    verify_slice,
    verify_well_defined,
)

from conftest import RANDOM_SEEDS, algebra_of, random_rooted, rooted  # noqa: E402

# Loewy columns read off the worked example: top, the two legs of rad/soc, socle
PROJECTIVES = {
    "1": [["6"], ["2", "3", "5"]],
    "2": [["3", "5", "1"], []],
    "3": [["5", "1", "2"], ["4", "3", "4"]],
    "4": [["3", "4", "3"], []],
    "5": [["1", "2", "3"], ["5", "5"]],
    "6": [["1"], ["6"]],
}
L_LIST = {"1": ["2", "3", "5", "1"], "2": ["2"], "3": ["4", "3"], "4": ["4"], "5": ["5"], "6": ["6"]}
T_TABLE = {
    "1": ({-2: ["1"]}, []),
    "2": ({-2: ["1"], -1: ["2"]}, ["[gamma[v1,2]:3]"]),
    "3": ({-2: ["1"], -1: ["3"]}, ["[gamma[v1,3]:2]"]),
    "4": ({-2: ["1"], -1: ["3"], 0: ["4"]}, ["[gamma[v1,3]:2]", "[gamma[v3,2]:1]"]),
    "5": ({-2: ["1"], -1: ["5"]}, ["[gamma[v1,4]:1]"]),
    "6": ({-2: ["6"]}, []),
}
# F^{-1}(V_n) = (uniserial module)[shift]
F_INVERSE = {"1": (["2", "3", "5", "1"], 2), "2": (["2"], 1), "3": (["4", "3"], 1),
             "4": (["4"], 0), "5": (["5"], 1), "6": (["6"], 2)}

GF101 = Field(101)


@functools.lru_cache(maxsize=None)
def fixture(key, field=None):
    """(rt, A, td, sd) for a named tree or a random seed."""
    rt = random_rooted(key) if isinstance(key, int) else rooted(key)
    A = algebra_of(rt, field)
    return rt, A, TiltingData(A, rt), SliceData(A, rt)


def tex_and_random():
    return ["T_ex", *RANDOM_SEEDS]


def all_fixtures():
    return [*names(), *RANDOM_SEEDS]


def layers_of(column):
    return [{s: 1} for s in column]


def merge_legs(a, b):
    out = []
    for k in range(max(len(a), len(b))):
        layer = {}
        for leg in (a, b):
            if k < len(leg):
                layer[leg[k]] = layer.get(leg[k], 0) + 1
        out.append(layer)
    return out


def line(k, ok, detail):
    text = f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(text)
    return ok


# -- the criteria ---------------------------------------------------------------------------

def criterion_1():
    rt, A, _, _ = fixture("T_ex")
    bad = []
    for n, legs in PROJECTIVES.items():
        P = proj_module(A, n)
        got = sorted([[next(iter(l)) for l in loewy_layers(uniserial_plus(A, rt, n))],
                      [next(iter(l)) for l in loewy_layers(uniserial_minus(A, rt, n))]])
        if got != sorted(legs):
            bad.append(f"legs of P{n}")
        if loewy_layers(P) != [{n: 1}, *merge_legs(*legs), {n: 1}]:
            bad.append(f"layers of P{n}")
        R, _ = rad(P)
        # soc(rad P) = soc P, since the socle of P is simple
        middle, _ = quotient(R, soc(R)[1].mats)
        both = direct_sum([uniserial_plus(A, rt, n), uniserial_minus(A, rt, n)])
        if is_isomorphic(middle, both) is None:
            bad.append(f"rad/soc of P{n}")
    if A.dim != 35:
        bad.append(f"dim A = {A.dim}")
    for n, col in L_LIST.items():
        if loewy_layers(L_module(A, rt, n)) != layers_of(col):
            bad.append(f"L{n}")
    for n, (terms, paths) in T_TABLE.items():
        T = build_T_explicit(A, rt, n)
        got_terms = {l: T.term(l).summands for l in T.degrees()}
        got_paths = [A.path_name(T_differential_path(A, rt, n, k)) for k in range(rt.depth(n) - 1, 0, -1)]
        if (got_terms, got_paths) != (terms, paths):
            bad.append(f"T{n}")
    return line(1, not bad, "example projectives, dim 35, L list, T table" + (f"; mismatches {bad}" if bad else ""))


def criterion_2():
    rt, _, _, _ = fixture("T_ex")
    got = preorder_traversals(rt)
    want = ([f"v{i}" for i in range(7)], [str(i) for i in range(1, 7)], [1, 1, 1, 2, 1, 3, 2])
    return line(2, tuple(got) == want, f"preorder {got[0]} / {got[1]} / {got[2]}")


def criterion_3():
    rt, _, td, _ = fixture("T_ex")
    homs = td.shift_homs()
    rng = {n for n in range(-(rt.height + 1), rt.height + 2) if n}
    ok = set(homs) == rng and not any(homs.values()) and td.end.dim == 46
    return line(3, ok, f"Hom(T, T[n]) = 0 for 0 < |n| <= {rt.height + 1}, dim End(T) = {td.end.dim}")


def criterion_4():
    bad = [k for k in tex_and_random() if generic_vs_explicit(fixture(k)[2])["status"] != "PASS"]
    return line(4, not bad, f"generic = explicit on T_ex and {len(RANDOM_SEEDS)} random trees" +
                (f"; failing {bad}" if bad else ""))


def relations_and_star(td):
    rows = relation_suite(td)
    rel_ok = all(all(dict(r["checks"]).values()) for r in rows)
    sharp = all(dict(r["checks"])["theta^m != 0"] and dict(r["checks"])["theta^(m+1) = 0"] for r in rows)
    star = star_compare(td)["status"] == "PASS"
    return rel_ok, sharp, star


def criterion_5():
    failing = {}
    for k in tex_and_random():
        rel_ok, sharp, star = relations_and_star(fixture(k)[2])
        why = [w for w, ok in (("relations", rel_ok), ("sharpness", sharp), ("star_compare", star)) if not ok]
        if why:
            failing[k] = why
    ok = not failing
    detail = "relations, sharpness, star_compare over Q"
    if failing:
        counts = {w: sum(w in v for v in failing.values()) for w in ("relations", "sharpness", "star_compare")}
        detail += f"; of {len(tex_and_random())} trees failing {counts}, T_ex: {failing.get('T_ex')}"
    line(5, ok, detail)
    # informational: the same check where a square root of -1 exists
    prime = [k for k in tex_and_random() if not all(relations_and_star(fixture(k, GF101)[2])[1:])]
    print(f"   info: over GF(101), sharpness or star_compare fails on {prime or 'no fixture'}")
    return ok


def criterion_6():
    bad = []
    for k in tex_and_random():
        rt, _, td, sd = fixture(k)
        f, g = perversity_of_F(td), perversity_of_G(sd)
        want = {i: -i for i in f["perversity"]}
        ok = (f["status"] == g["status"] == "PASS" and f["perversity"] == want
              and set(f["perversity"]) == set(range(rt.height))
              and all(f["perversity"][i] + g["perversity"][i] == 0 for i in g["perversity"])
              and f["bijection"] == {n: n for n in rt.edges})
        if not ok:
            bad.append(k)
    return line(6, not bad, "F perverse with p(i) = -i, F + G = 0, bijection n -> V_n" +
                (f"; failing {bad}" if bad else ""))


def criterion_7():
    bad = [k for k in tex_and_random() if y_suite(fixture(k)[2])["status"] != "PASS"]
    rt, A, _, _ = fixture("T_ex")
    for n, (col, i) in F_INVERSE.items():
        Y = build_Y_generic(A, rt, n)
        dims = {l: sum(Y.cohomology_dims(l).values()) for l in Y.terms}
        if any(d and l != -i for l, d in dims.items()) or loewy_layers(cohomology(Y, -i)) != layers_of(col):
            bad.append(f"F^-1(V{n})")
    return line(7, not bad, "Y_n = L_n[r - d(n)] on all trees, six example values" +
                (f"; failing {bad}" if bad else ""))


def criterion_8():
    bad = []
    for k in tex_and_random():
        rt, _, td, sd = fixture(k)
        dim_Q = {n: sum(td.end.block_dim(a, b) for a in range(td.N)) for b, n in enumerate(td.edges)}
        table = c_term_table(sd, dim_Q)
        rep = slice_report(sd, table)
        ok = (all(verify_slice(sd, n) for n in rt.edges) and rep["status"] == "PASS"
              and all(r["terms_match_table"] for r in rep["slices"])
              and cover_hull_identifications(sd)["status"] == "PASS")
        if not ok:
            bad.append(k)
    return line(8, not bad, "slices, term table, P(Omega L) = I(Omega L) identifications" +
                (f"; failing {bad}" if bad else ""))


def criterion_9():
    bad = []
    for k in tex_and_random():
        rep = two_sided_criterion(fixture(k)[3], 10)
        if rep["status"] != "PASS" or rep["u_range"] != [0, 10] or not rep["note"]:
            bad.append(k)
    return line(9, not bad, "Ext table is the identity pattern, checked for 0 <= u <= 10" +
                (f"; failing {bad}" if bad else ""))


def criterion_10():
    bad = []
    for k in all_fixtures():
        rt = random_rooted(k) if isinstance(k, int) else rooted(k)
        if cartan_agreement(algebra_of(rt), rt)["status"] != "PASS":
            bad.append(k)
    return line(10, not bad, f"cartan = formula = hom_space on {len(all_fixtures())} fixtures" +
                (f"; failing {bad}" if bad else ""))


def criterion_11():
    wd_bad, ep_bad = [], {}
    u0 = []
    for k in all_fixtures():
        sd = fixture(k)[3]
        if verify_well_defined(sd)["status"] != "PASS":
            wd_bad.append(k)
        ep = verify_essentialproj(sd)
        if ep["status"] != "PASS":
            ep_bad[k] = ep["literal_failures"]
        if k == "T_ex":
            u0 = [(x["edge"], x["literal"], x["shifted"]) for x in ep["rows"] if x["u"] == 0]
    ok = not wd_bad and not ep_bad
    detail = f"well-defined {'PASS' if not wd_bad else 'FAIL'}, essentialproj literal " \
             f"{'PASS' if not ep_bad else 'FAIL'} on {len(ep_bad)} fixtures"
    if ep_bad:
        detail += f", T_ex failures {ep_bad.get('T_ex')}"
    line(11, ok, detail)
    print("   info: T_ex u = 0 rows (edge, literal, shifted): " +
          ", ".join(f"({e},{'P' if a else 'F'},{'P' if b else 'F'})" for e, a, b in u0))
    return ok


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


# -- pytest entry points --------------------------------------------------------------------

def _run(capsys, k):
    with capsys.disabled():
        print()
        return CRITERIA[k - 1]()


def test_criterion_1_example_reproduction(capsys):
    assert _run(capsys, 1)


def test_criterion_2_traversals(capsys):
    assert _run(capsys, 2)


def test_criterion_3_orthogonality(capsys):
    assert _run(capsys, 3)


def test_criterion_4_generic_vs_explicit(capsys):
    assert _run(capsys, 4)


def test_criterion_5_endomorphism_relations(capsys):
    assert _run(capsys, 5)


def test_criterion_6_perversity(capsys):
    assert _run(capsys, 6)


def test_criterion_7_y_suite(capsys):
    assert _run(capsys, 7)


def test_criterion_8_slices(capsys):
    assert _run(capsys, 8)


def test_criterion_9_two_sided(capsys):
    assert _run(capsys, 9)


def test_criterion_10_formula_consistency(capsys):
    assert _run(capsys, 10)


def test_criterion_11_well_defined_and_essentialproj(capsys):
    assert _run(capsys, 11)


if __name__ == "__main__":
    start = time.time()
    results = [c() for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria PASS in {time.time() - start:.1f}s")
    sys.exit(0 if all(results) else 1)
