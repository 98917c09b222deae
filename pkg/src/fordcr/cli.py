"""Command line driver: parameter reports, certificates, and exports.

Every subcommand prints a human readable report; --json switches the
stdout payload to a deterministic JSON document (sorted keys, stable
decimals), and --out writes the same document plus any SVG pictures
into a directory.  The exit status is 0 exactly when every certificate
in the produced report passes.
"""

import argparse
import json
import os
import sys
import time

from .algebra.rationals import QQ
from .algebra.torus import torus_region_constant_sign
from .boundary import (cylinder_check, gluing_pattern, hexagon_tiling,
                       manifold_check)
from .certify import (facet_lattice, ridge_cycle_relations, run_checklist,
                      six_bisector_identity, six_bisector_membership,
                      stability_scan, verify_side_pairings,
                      vertex_transversality)
from .facets import compute_side
from .giraud import GiraudChart
from .group import ParameterError, Representation, bisector_word, parse_word, \
    word_name
from .heisenberg import BoundaryModel, CORE_WORDS
from .tables import CLASSIFICATION_TABLES, FINITE_VERTEX_TABLES

SCHEMA = "fordcr-certificate/1"

DEFAULT_SCAN = ("1/100", "-1/100", "1/50", "-1/50")


# ---------------------------------------------------------------------------
# deterministic JSON encoding of exact values


def _qq_str(q):
    return "%d/%d" % (q.numerator, q.denominator) \
        if q.denominator != 1 else str(q.numerator)


def _dec(x, eps):
    lo, hi = x.interval(eps)
    return float((lo + hi) / 2)


def _elem_json(e, eps):
    return {"coeffs": [_qq_str(QQ(c)) for c in e.c], "dec": _dec(e, eps)}


def _cx_json(z, eps):
    return {"re": _elem_json(z.re, eps), "im": _elem_json(z.im, eps)}


def _mat_json(m, eps):
    return [[_cx_json(e, eps) for e in row] for row in m.rows]


def _jsonable(obj):
    """Best effort plain-data conversion for report structures."""
    if isinstance(obj, dict):
        return {_key(k): _jsonable(v) for k, v in sorted(
            obj.items(), key=lambda kv: _key(kv[0]))}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj, key=repr) if isinstance(obj, (set, frozenset)) \
            else obj
        return [_jsonable(v) for v in items]
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    if hasattr(obj, "numerator") and hasattr(obj, "denominator"):
        return _qq_str(obj)
    return repr(obj)


def _key(k):
    if isinstance(k, tuple):
        return ",".join(str(x) for x in k)
    return str(k)


def _dump(doc):
    return json.dumps(doc, sort_keys=True, indent=1)


# ---------------------------------------------------------------------------
# report builders


def params_report(rep, eps):
    return {
        "s": _qq_str(rep.s),
        "kappa": _qq_str(rep.kappa),
        "lambda": _cx_json(rep.lam, eps),
        "a": _cx_json(rep.a, eps),
        "b": _cx_json(rep.b, eps),
        "d": _cx_json(rep.d, eps),
        "e": _cx_json(rep.e, eps),
        "defining equations residuals zero":
            all(r.is_zero() for r in rep.system_residuals()),
    }


def params_text(rep, eps):
    lines = ["twist parameter s = %s" % _qq_str(rep.s),
             "kappa = %s" % _qq_str(rep.kappa)]
    for name in ("lam", "a", "b", "d", "e"):
        z = getattr(rep, name)
        lines.append("%-6s = %r  ~  %.12f %+.12fi"
                     % (name if name != "lam" else "lambda", z,
                        _dec(z.re, eps), _dec(z.im, eps)))
    ok = all(r.is_zero() for r in rep.system_residuals())
    lines.append("defining equations: %s" % ("all zero" if ok else "FAILED"))
    return "\n".join(lines), ok


def rep_report(rep, word, eps):
    m = rep.matrix(parse_word(word))
    tr = m.trace()
    return {
        "word": word,
        "matrix": _mat_json(m, eps),
        "trace": _cx_json(tr, eps),
        "preserves form": rep.preserves_form(m),
    }


def spheres_report(model, eps):
    spheres = []
    for idx, word in CORE_WORDS:
        s = model.spinal_sphere(word)
        spheres.append({
            "index": idx,
            "word": word,
            "center z": _cx_json(s.center.z, eps),
            "center t": _elem_json(s.center.t, eps),
            "radius^4": _elem_json(s.radius4, eps),
            "radius dec": s.radius_float(),
        })
    table = model.disjointness_table()
    return {
        "core spheres": spheres,
        "k ranges": {_key(k): list(v) for k, v in sorted(table.items())},
    }


def chart_report(rep, pair, restrict, trace, eps):
    j, k = (int(t) for t in pair.split(","))
    chart = GiraudChart.from_indices(rep, j, k)
    out = {"pair": [j, k],
           "words": [word_name(bisector_word(j)),
                     word_name(bisector_word(k))]}
    if restrict is not None:
        fn = chart.restrict(restrict)
        out["restrict"] = {
            "index": restrict,
            "c": _elem_json(fn.c, eps),
            "a": _cx_json(fn.a, eps),
            "b": _cx_json(fn.b, eps),
            "d": _cx_json(fn.d, eps),
            "form": "c + Re(a z1) + Re(b z2) + Re(d z1 conj(z2))",
        }
        if trace:
            from .plots import curve_trace
            out["trace"] = {
                "branch +1": [[u, v] for u, v in curve_trace(fn, +1)],
                "branch -1": [[u, v] for u, v in curve_trace(fn, -1)],
            }
    return out


def face_report(sc, key=None):
    out = {
        "side": sc.side,
        "word": word_name(bisector_word(sc.side)),
        "classification": {kind: list(idxs) for kind, idxs
                           in sc.classification_rows().items()},
        "positivity witnesses": {
            str(k): list(c.witnesses)
            for k, c in sorted(sc.classifications.items()) if c.witnesses},
        "finite vertices": [
            {"word": w, "indices": list(inc)} for w, inc in sc.vertex_table()],
        "ideal vertices": [sorted(v.incidence) for v in sc.ideal_vertices],
    }
    if key is not None:
        kidx = int(key)
        cls = sc.classifications[kidx]
        cell = {"kind": cls.kind, "witnesses": list(cls.witnesses)}
        if cls.face is not None:
            cell["K"] = list(cls.face.K)
            cell["arcs"] = [
                {"carrier": a.carrier, "axis": a.axis, "branch": a.branch,
                 "loop": a.is_loop(),
                 "endpoints": [list(map(float, r.floats()))
                               for r in a.endpoints()]}
                for a in cls.face.arcs]
        if cls.closure:
            cell["closure"] = [list(map(float, r.floats()))
                               for r in cls.closure]
        out["cell %d" % kidx] = cell
    return out


def check_tables(complexes):
    """Diff computed side combinatorics against the frozen tables."""
    out = {}
    ok = True
    for side, rows in FINITE_VERTEX_TABLES.items():
        got = complexes[side].vertex_table()
        want = [(w, tuple(inc)) for w, inc in rows]
        match = sorted(got) == sorted(want)
        ok = ok and match
        out["finite vertices side %d" % side] = match
        if not match:
            out["finite vertices side %d diff" % side] = {
                "expected": _jsonable(want), "got": _jsonable(got)}
    for side, table in CLASSIFICATION_TABLES.items():
        rows = complexes[side].classification_rows()
        for kind in ("strip", "vertex", "face", "ball"):
            got = tuple(rows.get(kind, ()))
            want = tuple(sorted(table[kind]))
            match = got == want
            ok = ok and match
            out["side %d %s" % (side, kind)] = match
            if not match:
                out["side %d %s diff" % (side, kind)] = {
                    "expected": list(want), "got": list(got)}
        # The reference "positive" rows carry witness indices l whose
        # bisector the Giraud disk avoids entirely.  The engine only
        # records a witness when its sign is positive (which by itself
        # proves the pair empty); for a row it decided by refinement
        # instead, accept the row when every listed index certifies a
        # constant nonzero sign on the disk, and expect the pair among
        # the computed empties.
        rep = complexes[side].rep
        match = True
        displaced = []
        for k, ws in sorted(table["positive"].items()):
            cls = complexes[side].classifications[k]
            if cls.kind not in ("positive", "empty"):
                match = False
                continue
            if cls.kind == "empty":
                displaced.append(k)
            chart = GiraudChart.from_indices(rep, side, k)
            g0 = chart.restrict(0)
            for l in sorted(set(ws) - set(cls.witnesses)):
                match = match and bool(
                    torus_region_constant_sign(chart.restrict(l), g0))
        got_pos = tuple(rows.get("positive", ()))
        want_pos = tuple(sorted(set(table["positive"]) - set(displaced)))
        match = match and got_pos == want_pos
        got_empty = tuple(rows.get("empty", ()))
        want_empty = tuple(sorted(set(table["empty"]) | set(displaced)))
        match = match and got_empty == want_empty
        ok = ok and match
        out["side %d positive" % side] = match
        if not match:
            out["side %d positive diff" % side] = {
                "expected": list(sorted(table["positive"])),
                "got positive": list(got_pos),
                "got empty": list(got_empty)}
    out["all tables match"] = ok
    return out, ok


def boundary_report(rep, complexes=None):
    keyed = {sc.side: sc for sc in complexes} if complexes else None
    tiling = hexagon_tiling(rep, complexes=keyed)
    pattern = gluing_pattern(rep, tiling=tiling)
    verdict = manifold_check(pattern)
    cyl = cylinder_check(rep)
    ok = (verdict["torus"] and verdict["matches spine fixture"]
          and cyl["inside at samples"] and cyl["certified segment"])
    return {
        "tiling": tiling.summary(),
        "gluing": pattern.summary(),
        "quotient": _jsonable(verdict),
        "cylinder": _jsonable(cyl),
        "pass": ok,
    }, ok, tiling


def checklist_json(res):
    pairings = [{"pairing": c.pairing, "source": c.source,
                 "target": c.target, "power": c.power, "valid": c.valid}
                for c in res["pairings"]]
    cycles = [{"ridge": list(c.ridge), "power": c.power, "order": c.order,
               "relation": word_name(c.relation) if c.relation else None,
               "valid": c.valid}
              for c in res["cycles"]]
    tr = res["transversality"]
    return {
        "relations": _jsonable(res["relations"]),
        "membership": _jsonable(res["membership"]),
        "pairings": pairings,
        "cycles": cycles,
        "presentation": _jsonable(res["presentation"]),
        "transversality": {
            "indices": list(tr.indices),
            "non transverse quadruples": [list(q) for q in
                                          tr.non_transverse],
            "exits": {_key(q): [list(e[0]), list(e[1])]
                      for q, e in sorted(tr.exits.items())},
            "valid": tr.valid,
        },
        "ideal transversality": [[word_name(tuple()) if not w else _key(w),
                                  _key(inc), bool(ok)]
                                 for w, inc, ok in _ideal_rows(res)],
        "sides": {str(sc.side): face_report(sc) for sc in res["complexes"]},
    }


def _ideal_rows(res):
    for side, inc, ok in res["ideal"]:
        yield side, tuple(sorted(inc)), ok


def checklist_pass(res):
    return (all(res["relations"].values())
            and all(res["membership"].values())
            and all(c.valid for c in res["pairings"])
            and all(c.valid for c in res["cycles"])
            and all(res["presentation"].values())
            and res["transversality"].valid
            and all(ok for _, _, ok in res["ideal"]))


def certify_bundle(samples, eps, with_symbolic=True):
    """The full certificate bundle: baseline plus optional scan."""
    t0 = time.time()
    rep = Representation(0)
    res = run_checklist(rep)
    base_ok = checklist_pass(res)
    tables, tables_ok = check_tables(
        {sc.side: sc for sc in res["complexes"]})
    bnd, bnd_ok, _ = boundary_report(rep, complexes=res["complexes"])
    doc = {
        "schema": SCHEMA,
        "parameters": params_report(rep, eps),
        "checklist": checklist_json(res),
        "tables": tables,
        "boundary": bnd,
    }
    ok = base_ok and tables_ok and bnd_ok
    if with_symbolic:
        sym = six_bisector_identity()
        doc["symbolic identities"] = _jsonable(sym)
        ok = ok and all(sym.values())
    if samples:
        reports = stability_scan([QQ(s) for s in samples], baseline=res)
        doc["scan"] = [
            {"s": _qq_str(r.s), "admissible": r.admissible,
             "verdict": r.verdict or r.reason, "pass": r.passed()}
            for r in reports]
        ok = ok and all(r.passed() for r in reports)
    doc["verdict"] = "pass" if ok else "fail"
    doc["timing"] = {"seconds": round(time.time() - t0, 3)}
    return doc, ok


# ---------------------------------------------------------------------------
# argument handling


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=64,
                        help="decimal interval budget in bits (>= 64)")
    common.add_argument("--s", action="append", default=None,
                        help="rational twist parameter (repeatable)")
    common.add_argument("--out", default=None, help="output directory")
    common.add_argument("--json", action="store_true",
                        help="print JSON instead of text")
    common.add_argument("--svg", action="store_true",
                        help="also render SVG pictures (needs --out)")
    p = argparse.ArgumentParser(
        prog="fordcr",
        description="exact Ford domain certificates for the twist "
                    "parabolic family")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("params", parents=[common],
                   help="exact parameter block")
    q = sub.add_parser("rep", parents=[common], help="matrix of a word")
    q.add_argument("--word", required=True)
    sub.add_parser("spheres", parents=[common],
                   help="core spinal spheres and k ranges")
    q = sub.add_parser("chart", parents=[common],
                       help="restriction to a Giraud chart")
    q.add_argument("--pair", required=True, metavar="J,K")
    q.add_argument("--restrict", type=int, default=None)
    q.add_argument("--trace", action="store_true")
    q = sub.add_parser("face", parents=[common],
                       help="combinatorics of a core side")
    q.add_argument("--side", default="2")
    q.add_argument("--key", default=None)
    q.add_argument("--check-tables", action="store_true")
    q = sub.add_parser("certify", parents=[common],
                       help="full certificate bundle")
    q.add_argument("--all", action="store_true")
    q = sub.add_parser("boundary", parents=[common],
                       help="boundary tiling and gluing")
    q.add_argument("--check", action="store_true")
    sub.add_parser("scan", parents=[common],
                   help="stability scan over --s samples")
    sub.add_parser("export", parents=[common],
                   help="write bundle and pictures to --out")
    return p


def _samples(args, default=()):
    if args.s:
        return [QQ(*(int(x) for x in s.split("/"))) if "/" in s else QQ(s)
                for s in args.s]
    return [QQ(*(int(x) for x in s.split("/"))) for s in default]


def _emit(args, doc, text=None, files=()):
    payload = _dump(doc)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, "%s.json" % args.command)
        with open(path, "w") as fh:
            fh.write(payload + "\n")
        files = (path,) + tuple(files)
    if args.json or text is None:
        print(payload)
    else:
        print(text)
    for f in files:
        print("wrote %s" % f, file=sys.stderr)


def main(argv=None):
    args = _parser().parse_args(argv)
    if args.precision < 64:
        print("precision must be at least 64 bits", file=sys.stderr)
        return 2
    eps = QQ(1, 1 << args.precision)
    if args.svg and not args.out:
        print("--svg needs --out", file=sys.stderr)
        return 2
    try:
        return _run(args, eps)
    except ParameterError as exc:
        print("inadmissible parameter: %s" % exc, file=sys.stderr)
        return 2


def _single_s(args):
    vals = _samples(args, default=("0",))
    if len(vals) > 1:
        raise SystemExit("this command takes a single --s")
    return Representation(vals[0])


def _run(args, eps):
    cmd = args.command
    if cmd == "params":
        rep = _single_s(args)
        text, ok = params_text(rep, eps)
        _emit(args, params_report(rep, eps), text)
        return 0 if ok else 1
    if cmd == "rep":
        rep = _single_s(args)
        doc = rep_report(rep, args.word, eps)
        _emit(args, doc, _dump(doc))
        return 0 if doc["preserves form"] else 1
    if cmd == "spheres":
        rep = _single_s(args)
        doc = spheres_report(BoundaryModel(rep), eps)
        _emit(args, doc)
        return 0
    if cmd == "chart":
        rep = _single_s(args)
        doc = chart_report(rep, args.pair, args.restrict, args.trace, eps)
        _emit(args, doc)
        return 0
    if cmd == "face":
        return _run_face(args, eps)
    if cmd == "boundary":
        return _run_boundary(args)
    if cmd == "scan":
        reports = stability_scan(_samples(args, DEFAULT_SCAN))
        doc = [{"s": _qq_str(r.s), "admissible": r.admissible,
                "verdict": r.verdict or r.reason, "pass": r.passed()}
               for r in reports]
        text = "\n".join("s = %-8s %s" % (d["s"],
                                          "pass" if d["pass"] else d["verdict"])
                         for d in doc)
        _emit(args, doc, text)
        return 0 if all(d["pass"] for d in doc) else 1
    if cmd in ("certify", "export"):
        samples = _samples(args) if args.s else \
            (_samples(args, DEFAULT_SCAN) if cmd == "export" else [])
        doc, ok = certify_bundle(samples, eps)
        files = []
        if args.out and (args.svg or cmd == "export"):
            files = _render_all(args.out)
        text = _bundle_text(doc)
        _emit(args, doc, text, files)
        return 0 if ok else 1
    raise SystemExit("unknown command %s" % cmd)


def _run_face(args, eps):
    rep = _single_s(args)
    if args.check_tables:
        complexes = {i: compute_side(rep, i) for i in (1, 2, 3)}
        doc, ok = check_tables(complexes)
        text = "\n".join("%-32s %s" % (k, v) for k, v in sorted(doc.items())
                         if isinstance(v, bool))
        _emit(args, doc, text)
        return 0 if ok else 1
    sc = compute_side(rep, args.side)
    doc = face_report(sc, key=args.key)
    files = []
    if args.svg:
        from .plots import face_figure
        path = os.path.join(args.out, "face_%s.svg" % sc.side)
        files.append(face_figure(sc, path))
    _emit(args, doc, files=files)
    return 0


def _run_boundary(args):
    rep = _single_s(args)
    doc, ok, tiling = boundary_report(rep)
    files = []
    if args.svg:
        from .plots import boundary_figure
        path = os.path.join(args.out, "boundary.svg")
        files.append(boundary_figure(tiling, path))
    text = "\n".join("%-28s %s" % (k, v)
                     for k, v in sorted(doc["quotient"].items()))
    text += "\nboundary check: %s" % ("pass" if ok else "fail")
    _emit(args, doc, text, files)
    return 0 if ok else 1


def _render_all(out):
    from .plots import boundary_figure, face_figure
    rep = Representation(0)
    model = BoundaryModel(rep)
    files = []
    complexes = []
    for side in (1, 2, 3, 4):
        sc = compute_side(rep, side, model=model)
        complexes.append(sc)
        files.append(face_figure(sc, os.path.join(out,
                                                  "face_%d.svg" % side)))
    tiling = hexagon_tiling(rep, complexes={sc.side: sc
                                            for sc in complexes})
    files.append(boundary_figure(tiling, os.path.join(out, "boundary.svg")))
    return files


def _bundle_text(doc):
    lines = ["certificate bundle (%s)" % doc["schema"]]
    lines.append("parameters: s = %s" % doc["parameters"]["s"])
    cl = doc["checklist"]
    lines.append("relations: %s" % all(cl["relations"].values()))
    lines.append("membership: %s" % all(cl["membership"].values()))
    lines.append("pairings: %d, all valid: %s"
                 % (len(cl["pairings"]),
                    all(c["valid"] for c in cl["pairings"])))
    lines.append("cycles: %d, all valid: %s"
                 % (len(cl["cycles"]), all(c["valid"] for c in cl["cycles"])))
    lines.append("transversality: %s" % cl["transversality"]["valid"])
    lines.append("tables: %s" % doc["tables"]["all tables match"])
    lines.append("boundary: %s" % doc["boundary"]["pass"])
    if "symbolic identities" in doc:
        lines.append("symbolic identities: %s"
                     % all(doc["symbolic identities"].values()))
    for r in doc.get("scan", ()):
        lines.append("scan s = %-8s %s"
                     % (r["s"], "pass" if r["pass"] else r["verdict"]))
    lines.append("verdict: %s" % doc["verdict"])
    return "\n".join(lines)


if __name__ == "__main__":
    sys.exit(main())
