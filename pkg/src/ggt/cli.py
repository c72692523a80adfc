"""Command-line interface: one subcommand per analysis, deterministic
reports in text, JSON, or DOT.

Exit status: 0 success, 1 input error, 2 internal invariant violation.
"""

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import actions, cylinders, foliation, gog, graphs, lattices, rips
from .errors import GGTError, InputError, InternalError
from .reports import base_report, foliation_dot, render


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _read(path):
    p = Path(path)
    if not p.is_file():
        raise InputError(f"no such file: {path}")
    return p.read_text()


def _load_graph(path):
    return graphs.parse_graph(_read(path))


def _load_action(path):
    return actions.parse_action(_read(path), graph_loader=_load_graph)


def build_parser():
    top = _Parser(prog="ggt", description="exact geometric group theory toolkit")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    sub = top.add_subparsers(dest="cmd")

    def add(name, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        return p

    p = add("delta")
    p.add_argument("--graph", required=True)
    p = add("geodesics")
    p.add_argument("--graph", required=True)
    p.add_argument("--pair", nargs=2, type=int, required=True)
    p.add_argument("--cap", type=int, default=graphs.DEFAULT_GEODESIC_CAP)
    for name in ("cylinder", "slices"):
        p = add(name)
        p.add_argument("--graph", required=True)
        p.add_argument("--pair", nargs=2, type=int, required=True)
    p = add("stability")
    p.add_argument("--graph", required=True)
    p.add_argument("--triple", nargs=3, type=int, required=True)
    p.add_argument("--kind", choices=("triangle", "tau"), default="triangle")
    for name in ("rips", "homology"):
        p = add(name)
        p.add_argument("--graph", required=True)
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--dim-cap", type=int, default=3)
    p = add("foliate")
    p.add_argument("--presentation", required=True)
    p.add_argument("--action", required=True)
    p.add_argument("--basepoint", type=int, default=0)
    p = add("census")
    p.add_argument("--action", required=True)
    p.add_argument("--subgroup", nargs="*", help="generator names of a subgroup")
    p.add_argument("--h", nargs="*", help="generator names of H for double cosets")
    p.add_argument("--k", nargs="*", help="generator names of K for double cosets")
    p = add("chi")
    p.add_argument("--gog", required=True)
    p = add("cover")
    p.add_argument("--gog", required=True)
    p.add_argument("--sheets", type=int, required=True)
    p.add_argument("--voltages", required=True)
    for name in ("comm-tower", "comm-search"):
        p = add(name)
        p.add_argument("--phi", required=True)
        p.add_argument("--A", dest="a", required=True)
        p.add_argument("--B", dest="b", required=True)
        if name == "comm-tower":
            p.add_argument("--depth", type=int, default=8)
        else:
            p.add_argument("--lambda", dest="lam", required=True)
            p.add_argument("--depth-cap", type=int, default=32)
    add("selftest")
    return top


def _pair_report(args, cmd):
    g = _load_graph(args.graph)
    m = graphs.all_pairs_distances(g)
    x, y = args.pair
    rep = base_report(
        cmd, {"graph": args.graph}, {"pair": f"{x} {y}"}, args.seed
    )
    if cmd == "geodesics":
        gs = graphs.enumerate_geodesics(g, m, x, y, args.cap)
        rep["params"]["cap"] = args.cap
        rep["distance"] = m.d(x, y)
        rep["count"] = len(gs.geodesics)
        rep["truncated"] = gs.truncated
        rep["geodesics"] = [list(p) for p in gs.geodesics]
        return rep
    c = cylinders.cylinder_for_pair(g, m, x, y)
    rep["support"] = list(c.support)
    rep["theta"] = c.theta
    if cmd == "slices":
        dec = cylinders.decompose_slices(c)
        rep["n_slices"] = len(dec.slices)
        rep["slices"] = [sorted(s) for s in dec.slices]
    return rep


def dispatch(args):
    cmd = args.cmd
    if cmd is None:
        raise InputError("missing subcommand")
    fmt = args.format
    if fmt == "dot" and cmd != "foliate":
        raise InputError("dot output is only available for foliate")

    if cmd == "delta":
        g = _load_graph(args.graph)
        m = graphs.all_pairs_distances(g)
        rep = base_report(cmd, {"graph": args.graph}, {}, args.seed)
        rep["n"] = g.n
        rep["diameter"] = m.diameter
        rep["delta4"] = graphs.four_point_delta(m).delta4
        return render(rep, fmt)

    if cmd in ("geodesics", "cylinder", "slices"):
        return render(_pair_report(args, cmd), fmt)

    if cmd == "stability":
        g = _load_graph(args.graph)
        x, y, z = args.triple
        ca = cylinders.CylinderAssignment.all_pairs(g)
        rep = base_report(
            cmd,
            {"graph": args.graph},
            {"triple": f"{x} {y} {z}", "kind": args.kind},
            args.seed,
        )
        if args.kind == "triangle":
            sr = cylinders.triangle_stability(ca, ca.metric, x, y, z)
            rep["k_split"] = sr.k_split
            rep["epsilon_observed"] = sr.epsilon_observed
            rep["unmatched_slices"] = [list(s) for s in sr.witnesses]
        else:
            sr = cylinders.measure_tau_stability(ca, ca.metric, x, y, z)
            rep["tau_observed"] = sr.tau_observed
            rep["symmetric_difference"] = list(sr.witnesses)
        return render(rep, fmt)

    if cmd in ("rips", "homology"):
        g = _load_graph(args.graph)
        m = graphs.all_pairs_distances(g)
        sc = rips.rips_complex(m, args.d, args.dim_cap)
        rep = base_report(
            cmd,
            {"graph": args.graph},
            {"d": args.d, "dim_cap": args.dim_cap},
            args.seed,
        )
        rep["counts"] = {str(k): sc.count(k) for k in sorted(sc.simplices)}
        rep["euler_characteristic"] = sc.euler_characteristic()
        if cmd == "homology":
            hr = rips.homology(sc, min(args.dim_cap, max(sc.simplices)))
            rep["betti"] = {str(k): hr.betti[k] for k in sorted(hr.betti)}
            rep["torsion"] = {
                str(k): list(hr.torsion[k]) for k in sorted(hr.torsion)
            }
            rep["acyclic"] = rips.is_acyclic(hr)
        return render(rep, fmt)

    if cmd == "foliate":
        pres = foliation.parse_presentation(_read(args.presentation))
        if not pres.triangular:
            pres = foliation.triangulate_presentation(pres)
        act = _load_action(args.action)
        pc = foliation.cayley_complex(pres, act)
        rep = base_report(
            cmd,
            {"presentation": args.presentation, "action": args.action},
            {"basepoint": args.basepoint},
            args.seed,
        )
        rep["complex"] = {
            "vertices": pc.n_vertices,
            "edges": len(pc.edges),
            "cells": len(pc.cells),
        }
        betti1, torsion = foliation.complex_first_homology(pc)
        rep["cover_first_homology"] = {"betti": betti1, "torsion": list(torsion)}
        best, best_len = foliation.optimize_basepoint(pc, act)
        results = {}
        for label, bp in (("given", args.basepoint), ("optimized", best)):
            f = foliation.build_foliation(pc, act, bp)
            cen = foliation.classify_leaves(f)
            diag = foliation.leaf_bound_diagnostics(f, cen)
            results[label] = {
                "basepoint": bp,
                "max_edge_length": cen.max_edge_length,
                "marked_points_per_edge": list(cen.per_edge_marked),
                "leaves": {
                    "I": cen.type_i,
                    "II": cen.type_ii,
                    "III": cen.type_iii,
                    "total": cen.total,
                },
                "epsilon_observed": cen.epsilon_observed,
                "unmatched_per_cell": list(cen.per_cell_unmatched),
                "type_iii_bound": list(diag.type_iii_bound),
                "per_edge_bound": list(diag.per_edge_bound),
                "leaf_ratio": diag.leaf_ratio,
            }
            if label == "given":
                given_f, given_cen = f, cen
        rep["optimized_basepoint"] = best
        rep["optimized_max_edge_length"] = best_len
        rep["census"] = results
        if fmt == "dot":
            return foliation_dot(given_f, given_cen)
        return render(rep, fmt)

    if cmd == "census":
        act = _load_action(args.action)
        rep = base_report(cmd, {"action": args.action}, {}, args.seed)
        rep["order"] = act.order
        fr = actions.verify_free_action(act)
        rep["free_on_vertices"] = fr.free_on_vertices
        rep["edge_inversions"] = len(fr.edge_inversions)
        orb = actions.orbit_volume(act)
        rep["volume"] = {str(k): v for k, v in sorted(orb.volume.items())}
        rep["vertex_stabilizer_orders"] = list(orb.vertex_stabilizer_orders)
        rep["v_invariant"] = orb.v_invariant
        if args.subgroup is not None:
            sub = [act.generator(n) for n in args.subgroup]
            mr = actions.check_v_multiplicativity(act, sub)
            rep["subgroup"] = {
                "index": mr.index,
                "v_group": mr.v_group,
                "v_subgroup": mr.v_subgroup,
                "equal": mr.equal,
            }
        if args.h is not None and args.k is not None:
            dc = actions.double_coset_check(
                act,
                [act.generator(n) for n in args.h],
                [act.generator(n) for n in args.k],
            )
            rep["double_cosets"] = {
                "count": dc.num_double_cosets,
                "rhs": dc.rhs,
                "index": dc.index,
                "equal": dc.equal,
                "chain_ok": dc.chain_ok,
            }
        return render(rep, fmt)

    if cmd == "chi":
        g = gog.parse_gog(_read(args.gog))
        rep = base_report(cmd, {"gog": args.gog}, {}, args.seed)
        rep["chi"] = gog.chi(g)
        shares = gog.chi_plus_all(g)
        rep["chi_plus"] = {v: shares[v] for v in g.vertex_names}
        red = gog.is_reduced(g)
        rep["reduced"] = red.reduced
        rep["violations"] = [list(v) for v in red.violations]
        if red.reduced:
            sa = gog.sign_analysis(g)
            rep["zero_cases"] = dict(sorted(sa.zero_cases.items()))
            rep["nonpositive_deg2"] = sa.nonpositive_deg2
        return render(rep, fmt)

    if cmd == "cover":
        g = gog.parse_gog(_read(args.gog))
        volt = {}
        for lineno, raw in enumerate(_read(args.voltages).splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            try:
                volt[parts[0]] = tuple(int(t) for t in parts[1:])
            except ValueError:
                raise InputError(f"voltages line {lineno}: bad image") from None
        cov = gog.build_cover(g, volt, args.sheets)
        rep = base_report(
            cmd,
            {"gog": args.gog, "voltages": args.voltages},
            {"sheets": args.sheets},
            args.seed,
        )
        rep["base_chi"] = gog.chi(g)
        rep["total_chi"] = gog.chi(cov.total)
        rep["connected"] = cov.connected
        rep["multiplicative"] = gog.chi(cov.total) == args.sheets * gog.chi(g)
        rep["total_vertices"] = len(cov.total.vertex_names)
        rep["total_edges"] = len(cov.total.edges)
        return render(rep, fmt)

    if cmd in ("comm-tower", "comm-search"):
        phi = lattices.parse_matrix(_read(args.phi))
        la = lattices.parse_lattice(_read(args.a))
        lb = lattices.parse_lattice(_read(args.b))
        inputs = {"phi": args.phi, "A": args.a, "B": args.b}
        if cmd == "comm-tower":
            seq = lattices.power_sequence(phi, la, lb, args.depth)
            rep = base_report(cmd, inputs, {"depth": args.depth}, args.seed)
            rep["levels"] = [
                {
                    "i": i + 1,
                    "a": seq.a[i],
                    "b": seq.b[i],
                    "abar": seq.abar[i],
                    "bbar": seq.bbar[i],
                    "A_basis": [list(r) for r in seq.a_lattices[i].basis],
                    "B_basis": [list(r) for r in seq.b_lattices[i].basis],
                }
                for i in range(args.depth)
            ]
            return render(rep, fmt)
        lam = Fraction(args.lam)
        res = lattices.ratio_search(phi, la, lb, lam, args.depth_cap)
        rep = base_report(
            cmd, inputs, {"lambda": lam, "depth_cap": args.depth_cap}, args.seed
        )
        rep["status"] = res.status
        rep["n"] = res.n
        rep["abar"] = res.abar
        rep["bbar"] = res.bbar
        rep["inverted"] = res.inverted
        return render(rep, fmt)

    if cmd == "selftest":
        return render(_selftest(args.seed), fmt)

    raise InputError(f"unknown subcommand {cmd!r}")


def _selftest(seed):
    """A quick built-in invariant sweep over the worked examples; any
    failure raises InternalError."""
    checks = {}

    def check(name, cond):
        checks[name] = bool(cond)
        if not cond:
            raise InternalError(f"selftest failed: {name}")

    c4 = graphs.cycle_graph(4)
    m4 = graphs.all_pairs_distances(c4)
    check("c4 delta", graphs.four_point_delta(m4).delta4 == Fraction(1))
    c = cylinders.cylinder_for_pair(c4, m4, 0, 2)
    check("c4 cylinder", c.support == (0, 1, 2, 3) and c.theta == 1)
    check("c4 one slice", len(cylinders.decompose_slices(c).slices) == 1)
    p10 = graphs.path_graph(11)
    mp = graphs.all_pairs_distances(p10)
    cp = cylinders.cylinder_for_pair(p10, mp, 0, 10)
    check("path diff", cylinders.difference(cp, 2, 5) == -6)
    check("path slices", len(cylinders.decompose_slices(cp).slices) == 11)
    c6 = graphs.cycle_graph(6)
    m6 = graphs.all_pairs_distances(c6)
    hr = rips.homology(rips.rips_complex(m6, 1, 2), 2)
    check("c6 homology", hr.betti[0] == 1 and hr.betti[1] == 1)
    s3 = actions.generate_group([(1, 2, 0), (1, 0, 2)], set_size=3)
    check("s3 volume", actions.orbit_volume(s3).v_invariant == Fraction(1, 2))
    check(
        "s3 multiplicativity",
        actions.check_v_multiplicativity(s3, [(1, 2, 0)]).equal,
    )
    check(
        "s3 double cosets",
        actions.double_coset_check(s3, [(1, 2, 0)], [(1, 0, 2)]).equal,
    )
    g2 = gog.parse_gog("vertex p 2\nvertex q 3\nedge e p q 1\n")
    check("gog chi", gog.chi(g2) == Fraction(-1, 6))
    check(
        "gog additivity",
        sum(gog.chi_plus_all(g2).values(), Fraction(0)) == gog.chi(g2),
    )
    z1 = lattices.IntegerLattice.standard(1)
    l2 = lattices.IntegerLattice.from_rows([[2]])
    seq = lattices.power_sequence([[Fraction(1, 2)]], l2, z1, 4)
    check("tower doubling", seq.abar == (2, 4, 8, 16) and seq.b == (1, 1, 1, 1))
    res = lattices.ratio_search([[2]], z1, l2, 7)
    check("ratio search", res.status == "found" and res.n == 3)
    act = actions.generate_group([(1, 2, 0)], graph=graphs.cycle_graph(3), names=("a",))
    pres = foliation.parse_presentation("gens a\nrel aaa\n")
    pc = foliation.cayley_complex(pres, act)
    f = foliation.build_foliation(pc, act, 0)
    cen = foliation.classify_leaves(f)
    check("foliation z3c3", cen.total == 1 and cen.type_iii == 0)
    check("foliation conservation", foliation.check_marked_point_conservation(f))
    act6 = actions.generate_group(
        [(2, 3, 4, 5, 0, 1)], graph=graphs.cycle_graph(6), names=("a",)
    )
    pc6 = foliation.cayley_complex(pres, act6)
    cen6 = foliation.classify_leaves(foliation.build_foliation(pc6, act6, 0))
    check("foliation z3c6", cen6.total == 2 and cen6.type_iii == 1)
    rep = base_report("selftest", {}, {}, seed)
    rep["checks"] = checks
    rep["passed"] = len(checks)
    return rep


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        sys.stdout.write(dispatch(args))
        return 0
    except InputError as e:
        sys.stderr.write(f"error: {e}\n")
        return 1
    except (InternalError, GGTError) as e:
        sys.stderr.write(f"internal error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
