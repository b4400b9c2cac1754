"""The full verification report for one rooted tree."""
from __future__ import annotations

from .algebra import build_algebra, build_quiver, cartan_matrix, dim_hom_formula, is_symmetric_algebra
from .field import Field
from .modules import hom_dim, proj_module
from .tilting import (
    TiltingData,
    generic_vs_explicit,
    perversity_of_F,
    relation_suite,
    star_compare,
    theta_chain_map,
    y_suite,
)
from .tree import RootedTree
from .twosided import (
    SliceData,
    c_term_table,
    cover_hull_identifications,
    perversity_of_G,
    resolution_consistency,
    slice_report,
    two_sided_criterion,
    verify_essentialproj,
    verify_well_defined,
)

PASS, FAIL, RECORDED = "PASS", "FAIL", "RECORDED"


def _check(name: str, status: str, anchor: str, **witness) -> dict:
    return {"name": name, "status": status, "anchor": anchor, "witness": witness}


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def cartan_agreement(A, rt: RootedTree) -> dict:
    """cartan_matrix, the dimHom formula and hom_space dimensions on all pairs."""
    nodes = A.quiver.nodes
    C = cartan_matrix(A)
    P = {n: proj_module(A, n) for n in nodes}
    bad = []
    for a, i in enumerate(nodes):
        for b, j in enumerate(nodes):
            f = dim_hom_formula(rt, i, j)
            h = hom_dim(P[i], P[j])
            if not C[a][b] == f == h:
                bad.append({"pair": [i, j], "cartan": C[a][b], "formula": f, "hom_space": h})
    return {"status": _status(not bad), "cartan": C, "disagreements": bad}


def orthogonality(td: TiltingData) -> dict:
    homs = td.shift_homs()
    nonzero = {n: d for n, d in homs.items() if d}
    return {"status": _status(not nonzero), "range": [-(td.rt.height + 1), td.rt.height + 1],
            "nonzero_shifts": nonzero, "dim_end": td.end.dim}


def theta_readings(td: TiltingData) -> dict:
    """Which theta_{e_t} are chain maps under the identity-below reading."""
    broken = [td.edges[t - 1] for t in range(1, td.N + 1)
              if not theta_chain_map(td.A, td.rt, td.parts, t, identity_below=True).is_chain_map()]
    return {"identity_below_not_chain_map": broken, "zero_below_chain_maps": all(
        td.theta(t).is_chain_map() for t in range(1, td.N + 1))}


def full_report(rt: RootedTree, field: Field | None = None, u_max: int = 10) -> dict:
    field = field or Field.from_env()
    A = build_algebra(build_quiver(rt), field)
    checks = []
    checks.append(_check("validate", PASS, "plumbing", vertices=len(rt.tree.vertices), edges=len(rt.edges)))

    checks.append(_check("algebra symmetric", _status(is_symmetric_algebra(A)), "plumbing", dim=A.dim))
    ca = cartan_agreement(A, rt)
    checks.append(_check("cartan = dimHom formula = hom_space", ca["status"], "dimension of Hom between projectives",
                         disagreements=ca["disagreements"]))

    td = TiltingData(A, rt)
    gve = generic_vs_explicit(td)
    checks.append(_check("T generic = T explicit", gve["status"], "tree-to-star complex is decreasing perverse",
                         rows=gve["rows"]))
    orth = orthogonality(td)
    checks.append(_check("T orthogonality", orth["status"], "tilting complex definition",
                         nonzero=orth["nonzero_shifts"], range=orth["range"]))

    rels = relation_suite(td)
    literal = all(r["ok"] for r in rels)
    checks.append(_check("endomorphism relations", _status(literal), "endomorphism remark relations",
                         failing=[{"edge": r["edge"], "failed": [k for k, v in r["checks"].items() if not v]}
                                  for r in rels if not r["ok"]],
                         theta_power_scalars={r["edge"]: str(r["scalar"]) for r in rels}))
    readings = theta_readings(td)
    checks.append(_check("theta reading", RECORDED, "endomorphism remark theta definition", **readings,
                         relation_failures=[r["edge"] for r in rels if not r["ok"]]))
    sc = star_compare(td)
    checks.append(_check("End(T) = star algebra", sc["status"], "endomorphism remark star identification",
                         **{k: v for k, v in sc.items() if k != "status"}))

    pf = perversity_of_F(td)
    checks.append(_check("F perverse, p(i) = -i", pf["status"], "tree-to-star complex is decreasing perverse",
                         failures=pf["failures"], bijection=pf["bijection"]))
    ys = y_suite(td)
    checks.append(_check("Y_n = L_n[i]", ys["status"], "images of simple modules", rows=ys["rows"]))

    sd = SliceData(A, rt)
    dim_Q = {n: sum(td.end.block_dim(a, b) for a in range(td.N))
             for b, n in enumerate(td.edges)}
    table = c_term_table(sd, dim_Q)
    sl = slice_report(sd, table)
    checks.append(_check("slices V_n C = L_n[r-d(n)]", sl["status"], "where simple modules move under C",
                         slices=sl["slices"]))
    chi = cover_hull_identifications(sd)
    checks.append(_check("P(Omega^(k-1) L) = I(Omega^k L)", chi["status"], "well-definedness of C",
                         failures=[x for x in chi["rows"] if not x["ok"]]))
    rc = resolution_consistency(sd, table)
    checks.append(_check("C + D = resolution terms", rc["status"], "projective resolution of M",
                         failures=rc["failures"]))
    ep = verify_essentialproj(sd)
    checks.append(_check("essentialproj (literal)", ep["status"], "lemma on projective covers of syzygies of L",
                         failures=ep["literal_failures"]))
    checks.append(_check("essentialproj (shifted bound)", RECORDED, "lemma on projective covers of syzygies of L",
                         result=ep["readings"]["shifted"]))
    wd = verify_well_defined(sd)
    checks.append(_check("C well defined", wd["status"], "well-definedness of C",
                         checked_range=wd["checked_range"],
                         nonzero=[x for x in wd["rows"] if x["hom_from_P"] or x["hom_from_I"]]))
    crit = two_sided_criterion(sd, u_max)
    checks.append(_check("two-sided criterion", crit["status"], "two-sided tilting criterion",
                         u_range=crit["u_range"], note=crit["note"], failures=crit["failures"]))
    pg = perversity_of_G(sd)
    sums = {i: pf["perversity"][i] + pg["perversity"][i] for i in pf["perversity"]}
    ok = pg["status"] == PASS and pf["status"] == PASS and not any(sums.values())
    checks.append(_check("G perverse, p_F + p_G = 0", _status(ok), "perversity of G", sums=sums,
                         failures=pg["failures"]))
    ingredients = [sl["status"], pf["status"], pg["status"], sc["status"]]
    checks.append(_check("restriction of C is T (by ingredients)", _status(all(s == PASS for s in ingredients)),
                         "restriction of C", ingredients=ingredients))

    failed = [c["name"] for c in checks if c["status"] == FAIL]
    return {
        "fingerprint": rt.tree.fingerprint(),
        "field": field.name,
        "dims": {"A": A.dim, "B": td.end.dim, "N": td.N, "r": rt.height},
        "checks": checks,
        "failed": failed,
        "status": PASS if not failed else FAIL,
        "c_table": {"0": table["0"],
                    "C": {t: [(e["edge"], e["omega"], e["projective"], e.get("dim_Q")) for e in v]
                          for t, v in table["C"].items()},
                    "D": {t: [(e["edge"], e["omega"], e["projective"], e.get("dim_Q")) for e in v]
                          for t, v in table["D"].items()}},
    }


def summary_lines(report: dict) -> list[str]:
    d = report["dims"]
    out = [f"tree {report['fingerprint']}  field {report['field']}  "
           f"dim A = {d['A']}  dim B = {d['B']}  N = {d['N']}  r = {d['r']}"]
    width = max(len(c["name"]) for c in report["checks"])
    for c in report["checks"]:
        out.append(f"  {c['name']:<{width}}  {c['status']}")
    out.append(f"overall: {report['status']}")
    return out
