"""Command line entry point and JSON serialization.

Subcommands: build, verify, cells, decompose.  All output is
deterministic JSON (sorted keys, lexicographic weight order, rationals
as reduced fraction strings), so identical invocations are
byte-identical.

Exit codes: 0 success, 1 verification failure, 2 bad input, 3 dimension
cap exceeded.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from . import atoms, cells, satake, verify
from .rootdata import Coweight, InvalidDescriptorError, build_root_datum
from .satake import DimensionCapExceeded, GradedModule, WeightedOperator


def _frac_str(x):
    return str(Fraction(x))


def _coords(c):
    return list(c.coords)


def module_to_doc(module):
    """Serializable dictionary form of a GradedModule."""
    weights = sorted(module.spaces)
    doc = {
        "cartan": [list(row) for row in module.datum.cartan],
        "weights": [{"coords": _coords(mu), "dim": module.dim(mu),
                     "degree": module.degree(mu)} for mu in weights],
        "operators": {},
    }
    for fam, ops in (("e", module.e), ("f", module.f)):
        fam_doc = []
        for op in ops:
            blocks = []
            for mu in sorted(op.blocks):
                mat = op.blocks[mu]
                entries = [[r, c, _frac_str(mat[r][c])]
                           for r in range(len(mat))
                           for c in range(len(mat[0])) if mat[r][c]]
                blocks.append({"from": _coords(mu), "entries": entries})
            fam_doc.append({"shift": _coords(op.shift), "blocks": blocks})
        doc["operators"][fam] = fam_doc
    return doc


def doc_to_module(doc):
    """Inverse of module_to_doc (exact round trip)."""
    datum = build_root_datum([list(row) for row in doc["cartan"]])
    spaces = {Coweight(tuple(w["coords"])): w["dim"] for w in doc["weights"]}
    ops = {}
    for fam in ("e", "f"):
        fam_ops = []
        for op_doc in doc["operators"][fam]:
            shift = Coweight(tuple(op_doc["shift"]))
            blocks = {}
            for blk in op_doc["blocks"]:
                mu = Coweight(tuple(blk["from"]))
                src = spaces[mu]
                tgt = spaces[mu + shift]
                mat = [[Fraction(0)] * src for _ in range(tgt)]
                for r, c, v in blk["entries"]:
                    mat[r][c] = Fraction(v)
                blocks[mu] = mat
            fam_ops.append(WeightedOperator(shift, blocks))
        ops[fam] = fam_ops
    return GradedModule(datum, spaces, ops["e"], ops["f"])


def _dump(doc, out):
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_doc(report):
    return {"passed": report.passed,
            "checks": [{"name": c.name, "passed": c.passed,
                        "witness": c.witness} for c in report.checks]}


def _parse_coweight(datum, text):
    try:
        coords = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InvalidDescriptorError("coweight must be comma-separated "
                                     "integers, got %r" % text)
    if len(coords) != datum.rank:
        raise InvalidDescriptorError(
            "coweight has %d coordinates, rank is %d"
            % (len(coords), datum.rank))
    return Coweight(coords)


def cmd_build(args):
    datum = build_root_datum(args.type)
    lam = _parse_coweight(datum, args.coweight)
    if not datum.is_dominant(lam):
        raise InvalidDescriptorError("coweight %s is not dominant"
                                     % (lam.coords,))
    module = satake.build_ic_module(datum, lam, cap=args.cap)
    _dump(module_to_doc(module), args.out)
    return 0


def cmd_verify(args):
    if args.infile:
        with open(args.infile) as fh:
            module = doc_to_module(json.load(fh))
        lam = max(module.spaces, key=lambda w: (
            sum(module.datum.coroot_coordinates(w)), w.coords))
    else:
        datum = build_root_datum(args.type)
        lam = _parse_coweight(datum, args.coweight)
        module = satake.build_ic_module(datum, lam, cap=args.cap)
    report = verify.verify_module(module)
    report.merge(verify.compare_characters(module, lam))
    _dump(_report_doc(report), args.out)
    return 0 if report.passed else 1


def cmd_cells(args):
    datum = build_root_datum(args.type)
    lam = _parse_coweight(datum, args.coweight)
    kind = atoms.classify_coweight(datum, lam)
    if kind is None:
        raise InvalidDescriptorError(
            "%s is neither minuscule nor quasi-minuscule" % (lam.coords,))
    orbit = sorted(atoms.omega_set(datum, lam))
    support = sorted(set(orbit) | {datum.zero_coweight()}
                     if kind is atoms.AtomKind.QUASI_MINUSCULE else orbit)
    doc = {"type": args.type, "top": _coords(lam), "kind": kind.value,
           "cases": [], "words": []}
    for mu in orbit:
        for i in range(datum.rank):
            rep = cells.cell_report(datum, lam, mu, i)
            doc["cases"].append({
                "mu": _coords(mu), "index": i + 1,
                "pairing": rep.case.pairing, "tag": rep.case.tag,
                "reflected": rep.case.reflected,
                "stratum": rep.case.stratum,
                "degree": cells.mv_degree(datum, mu)})
    for i in range(datum.rank):
        for j in range(datum.rank):
            if i == j:
                continue
            word = [("e", i), ("f", j)]
            verdicts = []
            for mu in support:
                f = cells.support_feasible(datum, lam, mu, word)
                verdicts.append({
                    "start": _coords(mu), "feasible": f.feasible,
                    "violated": f.violated, "note": f.note,
                    "required_pairing":
                        {"index": f.required_pairing[0] + 1,
                         "value": f.required_pairing[1]}
                        if f.required_pairing else None,
                    "chain": [_coords(c) for c in f.chain]})
            doc["words"].append({
                "word": ["e%d" % (i + 1), "f%d" % (j + 1)],
                "all_infeasible": all(not v["feasible"] for v in verdicts),
                "verdicts": verdicts})
    _dump(doc, args.out)
    return 0


def cmd_decompose(args):
    datum = build_root_datum(args.type)
    lam1 = _parse_coweight(datum, args.coweight)
    lam2 = _parse_coweight(datum, args.coweight2)
    m1 = satake.build_ic_module(datum, lam1, cap=args.cap)
    m2 = satake.build_ic_module(datum, lam2, cap=args.cap)
    t = satake.tensor_module(m1, m2)
    comps = []
    for nu in sorted(t.spaces):
        if not datum.is_dominant(nu):
            continue
        k = len(satake.highest_vectors(t, nu))
        if k:
            comps.append({"coords": _coords(nu), "multiplicity": k})
    _dump({"type": args.type, "factors": [_coords(lam1), _coords(lam2)],
           "components": comps}, args.out)
    return 0


def _build_parser():
    cap_default = int(os.environ.get("SATAKE_CAP", satake.DEFAULT_CAP))
    p = argparse.ArgumentParser(
        prog="grsatake",
        description="exact weight-graded modules from orbit combinatorics")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, coweight=True):
        sp.add_argument("--type", required=True,
                        help="type label (e.g. A2, G2, A1xA1) ")
        if coweight:
            sp.add_argument("--coweight", required=True,
                            help="comma-separated fundamental-coweight "
                                 "coordinates")
        sp.add_argument("--cap", type=int, default=cap_default)
        sp.add_argument("--out", default=None)
        sp.add_argument("--format", choices=["json"], default="json")

    sp = sub.add_parser("build", help="build a module and print it")
    common(sp)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("verify", help="run the full relation suite")
    sp.add_argument("--in", dest="infile", default=None,
                    help="verify a previously serialized module instead "
                         "of building one")
    sp.add_argument("--type", required=False)
    sp.add_argument("--coweight", required=False)
    sp.add_argument("--cap", type=int, default=cap_default)
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", choices=["json"], default="json")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("cells", help="case tables and word feasibility")
    common(sp)
    sp.set_defaults(func=cmd_cells)

    sp = sub.add_parser("decompose", help="tensor two modules and report "
                                          "isotypic multiplicities")
    common(sp)
    sp.add_argument("--coweight2", required=True)
    sp.set_defaults(func=cmd_decompose)
    return p


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and not args.infile and (
            not args.type or not args.coweight):
        parser.error("verify needs either --in or --type/--coweight")
    if args.cap < 1:
        print("cap must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except DimensionCapExceeded as exc:
        print(str(exc), file=sys.stderr)
        return 3
    except (InvalidDescriptorError, ValueError, OSError,
            json.JSONDecodeError, KeyError) as exc:
        print(str(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
