"""Command line front end: ideals from camera files, bases, Hilbert values,
decompositions, tangent dimensions, degeneration certificates, toric
enumeration, the census, and the full acceptance suite."""

from __future__ import annotations

import argparse
import itertools
import json
import os
import re
import sys
import warnings
from fractions import Fraction

from . import checks
from . import degeneration as deg
from . import groebner as gb
from . import hilbscheme as hs
from . import monomial as mono
from . import tangent as tan
from . import toric
from .cameras import (
    CameraConfig, collinear_cameras, minimal_multiview_generators,
    multiview_generators, multiview_ideal,
)
from .polyring import (
    LexOrder, Ring, WeightOrder, canonical_string,
    format_monomial, format_polynomial, parse_polynomial,
)

SCHEMA_VERSION = 1


class InputError(Exception):
    pass


def _emit(payload, out=None):
    text = json.dumps(payload, indent=2, sort_keys=True, default=str)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    print(text)


# ---------------------------------------------------------------------------
# file formats

def _parse_entry(v):
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise InputError("camera entries must be integers or 'p/q' strings")


def load_cameras(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError("cannot read camera file: %s" % exc) from None
    try:
        n = data["n"]
        mats = [[[_parse_entry(e) for e in row] for row in camera]
                for camera in data["cameras"]]
    except (KeyError, TypeError) as exc:
        raise InputError("malformed camera file: %s" % exc) from None
    if len(mats) != n:
        raise InputError("camera count does not match n")
    try:
        return CameraConfig(mats)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def load_ideal(path, n=None):
    try:
        with open(path) as fh:
            lines = [ln.strip() for ln in fh]
    except OSError as exc:
        raise InputError(str(exc)) from None
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InputError("no polynomials in %s" % path)
    if n is None:
        n = 0
        extended = False
        for ln in lines:
            for letter, cam in re.findall(r"([wxyz])(\d+)", ln):
                n = max(n, int(cam))
                extended = extended or letter == "w"
        if n < 1:
            raise InputError("cannot infer the ring from %s" % path)
    else:
        extended = any("w" in ln for ln in lines)
    ring = Ring(max(n, 2), extended=extended)
    try:
        polys = [parse_polynomial(ring, ln) for ln in lines]
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return gb.ideal(ring, polys)


def _monomial_ideal_of(I):
    monos = []
    for p in I.generators:
        if len(p.terms) != 1:
            raise InputError("expected a monomial ideal")
        monos.append(next(iter(p.terms)))
    return mono.MonomialIdeal(I.ring, monos)


def parse_order(ring, spec):
    """Order grammar: 'lex:x1>x2>...' or 'weight:[w,...];tiebreak:lex:...'."""
    if spec is None:
        return LexOrder(ring)
    if spec.startswith("lex:"):
        names = [s.strip() for s in spec[4:].split(">")]
        try:
            perm = tuple(ring.index(s) for s in names)
        except KeyError as exc:
            raise InputError("unknown variable %s" % exc) from None
        if sorted(perm) != list(range(ring.nvars)):
            raise InputError("lex order must list every variable once")
        return LexOrder(ring, perm)
    if spec.startswith("weight:"):
        body = spec[len("weight:"):]
        tiebreak = None
        if ";tiebreak:" in body:
            body, tb = body.split(";tiebreak:", 1)
            tiebreak = parse_order(ring, tb)
        body = body.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise InputError("weights must be a bracketed list")
        weights = [Fraction(w.strip()) for w in body[1:-1].split(",")]
        if len(weights) != ring.nvars:
            raise InputError("need one weight per variable")
        return WeightOrder(ring, weights, tiebreak)
    raise InputError("unknown order spec %r" % spec)


# ---------------------------------------------------------------------------
# subcommands

def cmd_ideal_from_cameras(args):
    config = load_cameras(args.file)
    gens = (minimal_multiview_generators(config) if args.minimal
            else multiview_generators(config))
    lines = [canonical_string(p) for p in gens]
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    _emit({"schema_version": SCHEMA_VERSION, "n": config.n,
           "generators": len(lines),
           "out": args.out or None,
           "polynomials": lines if not args.out else None})
    return 0


def cmd_gb(args):
    I = load_ideal(args.file, args.n)
    order = parse_order(I.ring, args.order)
    basis = gb.reduced_groebner_basis(I, order)
    _emit({"schema_version": SCHEMA_VERSION,
           "basis": [format_polynomial(p) for p in basis],
           "initial_ideal": [format_monomial(I.ring, m) for m in
                             gb.initial_ideal(I, order).gens]},
          args.out)
    return 0


def cmd_nf(args):
    I = load_ideal(args.file, args.n)
    order = parse_order(I.ring, args.order)
    basis = gb.reduced_groebner_basis(I, order)
    p = parse_polynomial(I.ring, args.poly)
    r = gb.normal_form(p, basis, order)
    _emit({"schema_version": SCHEMA_VERSION,
           "normal_form": format_polynomial(r)})
    return 0


def cmd_elim(args):
    I = load_ideal(args.file, args.n)
    try:
        keep = [I.ring.index(s.strip()) for s in args.keep.split(",")]
    except KeyError as exc:
        raise InputError("unknown variable %s" % exc) from None
    result = gb.eliminate(I, keep)
    _emit({"schema_version": SCHEMA_VERSION,
           "generators": [format_polynomial(p) for p in result.generators]},
          args.out)
    return 0


def cmd_hilb(args):
    I = load_ideal(args.file, args.n)
    n = I.ring.n
    if args.u:
        u = tuple(int(x) for x in args.u.split(","))
        if len(u) != n:
            raise InputError("multidegree length must be %d" % n)
        _emit({"schema_version": SCHEMA_VERSION, "u": list(u),
               "value": gb.hilbert_value(I, u)})
        return 0
    bound = args.box
    init = gb.initial_ideal(I)
    if init.is_squarefree():
        table = mono.standard_count_box(init, bound)
    else:
        table = {u: mono.standard_monomial_count(init, u)
                 for u in itertools.product(range(bound + 1), repeat=n)}
    _emit({"schema_version": SCHEMA_VERSION, "box": bound,
           "values": {",".join(map(str, u)): v
                      for u, v in sorted(table.items())}})
    return 0


def cmd_decompose(args):
    I = _monomial_ideal_of(load_ideal(args.file, args.n))
    primes = mono.minimal_primes(I)
    payload = {"schema_version": SCHEMA_VERSION,
               "primes": [sorted(I.ring.name(v) for v in p) for p in primes],
               "borel_fixed": mono.is_borel_fixed(I)[0],
               "multidegree": {",".join(map(str, k)): v for k, v in
                               sorted(mono.multidegree_support(I).items())}}
    if args.complex:
        fc = mono.stanley_reisner_complex(I)
        with open(args.complex, "w") as fh:
            json.dump(fc.as_json(), fh, indent=2, sort_keys=True)
        payload["complex"] = args.complex
    _emit(payload)
    return 0


def cmd_tangent(args):
    path = args.ideal or args.file
    if not path:
        raise InputError("need an ideal file")
    I = _monomial_ideal_of(load_ideal(path, args.n))
    _emit({"schema_version": SCHEMA_VERSION,
           "tangent_dimension": tan.tangent_dimension(I)})
    return 0


def cmd_degeneration(args):
    if args.action == "verify":
        report = deg.verify_collinear_degeneration(args.n)
        report["schema_version"] = SCHEMA_VERSION
        _emit(report, args.out)
        return 0 if report["pass"] else 1
    # exploratory: the lex initial ideal of a specialization
    if args.eps is None:
        raise InputError("initial needs --eps")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        cfg = collinear_cameras(args.n, Fraction(args.eps))
        init = gb.initial_ideal(multiview_ideal(cfg))
    _emit({"schema_version": SCHEMA_VERSION, "eps": args.eps,
           "initial_ideal": [format_monomial(init.ring, m)
                             for m in init.gens]})
    return 0


def cmd_toric(args):
    cm = toric.cayley_matrix(args.n)
    I = toric.toric_ideal(cm)
    nodes = toric.enumerate_initial_ideals(
        I, kernel_rows=toric.variable_kernel_rows(cm))
    payload = {"schema_version": SCHEMA_VERSION,
               "initial_ideals": len(nodes)}
    classes = None
    if args.classes or args.dual_graphs:
        classes = toric.symmetry_classes([n.initial for n in nodes])
        payload["classes"] = len(classes)
        payload["class_table"] = toric.class_invariant_table(classes)
        payload["representatives"] = [
            [format_monomial(rep.ring, g) for g in rep.gens]
            for rep, _ in classes]
    else:
        payload["classes"] = len(
            toric.symmetry_classes([n.initial for n in nodes]))
    if args.dual_graphs:
        graphs = []
        for rep, members in classes:
            fc, graph = toric.mixed_subdivision(rep)
            graphs.append({"representative":
                           [format_monomial(rep.ring, g) for g in rep.gens],
                           "size": len(members),
                           "complex": fc.as_json(), "dual_graph": graph})
        with open(args.dual_graphs, "w") as fh:
            json.dump({"schema_version": SCHEMA_VERSION, "graphs": graphs},
                      fh, indent=2, sort_keys=True, default=str)
        payload["dual_graphs"] = args.dual_graphs
    _emit(payload, args.out)
    return 0


def cmd_census(args):
    res = hs.census(args.n, tangent=args.tangent)
    os.makedirs(args.out, exist_ok=True)
    with open(os.path.join(args.out, "ideals.txt"), "w") as fh:
        for I in res.ideals:
            fh.write(", ".join(mono.ideal_lines(I)) + "\n")
    classes = [{"representative": mono.ideal_lines(rep), "size": len(members)}
               for rep, members in res.orbits]
    with open(os.path.join(args.out, "classes.json"), "w") as fh:
        json.dump({"schema_version": SCHEMA_VERSION, "classes": classes},
                  fh, indent=2, sort_keys=True)
    if args.tangent:
        with open(os.path.join(args.out, "tangent.json"), "w") as fh:
            json.dump({"schema_version": SCHEMA_VERSION,
                       "tangent_dimensions": {str(k): v for k, v in
                                              res.tangent.items()}},
                      fh, indent=2, sort_keys=True)
    _emit({"schema_version": SCHEMA_VERSION, "ideals": len(res.ideals),
           "classes": len(res.orbits), "hash": hs.census_hash(res.ideals),
           "out": args.out})
    return 0


def cmd_check(args):
    only = None
    if args.criteria:
        only = [int(s) for s in args.criteria.split(",")]
    try:
        report = checks.run_all(only=only, n_max=args.n_max, jobs=args.jobs)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    for entry in report["criteria"]:
        status = "PASS" if entry["pass"] else "FAIL"
        print("criterion %2d %s: %s (%.2f s)" % (
            entry["id"], status, entry["name"], entry["seconds"]),
            file=sys.stderr)
    _emit(report, args.out)
    return 0 if report["pass"] else 1


# ---------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(
        prog="mvgb",
        description="exact multiview ideals, their degenerations and censuses")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ideal", help="camera file operations")
    isub = p.add_subparsers(dest="action", required=True)
    pfc = isub.add_parser("from-cameras",
                          help="multiview generators of a camera file")
    pfc.add_argument("file")
    pfc.add_argument("--out")
    pfc.add_argument("--minimal", action="store_true")
    pfc.set_defaults(fn=cmd_ideal_from_cameras)

    pgb = sub.add_parser("gb", help="reduced basis of an ideal file")
    pgb.add_argument("file")
    pgb.add_argument("--order")
    pgb.add_argument("--n", type=int)
    pgb.add_argument("--out")
    pgb.set_defaults(fn=cmd_gb)

    pnf = sub.add_parser("nf", help="normal form of a polynomial")
    pnf.add_argument("file")
    pnf.add_argument("--poly", required=True)
    pnf.add_argument("--order")
    pnf.add_argument("--n", type=int)
    pnf.set_defaults(fn=cmd_nf)

    pel = sub.add_parser("elim", help="eliminate all variables not kept")
    pel.add_argument("file")
    pel.add_argument("--keep", required=True,
                     help="comma separated variables to keep")
    pel.add_argument("--n", type=int)
    pel.add_argument("--out")
    pel.set_defaults(fn=cmd_elim)

    ph = sub.add_parser("hilb", help="multigraded Hilbert values")
    ph.add_argument("file")
    ph.add_argument("--u", help="one multidegree, e.g. 1,1")
    ph.add_argument("--box", type=int, default=3)
    ph.add_argument("--n", type=int)
    ph.set_defaults(fn=cmd_hilb)

    pd = sub.add_parser("decompose", help="minimal primes of a monomial ideal")
    pd.add_argument("file")
    pd.add_argument("--complex", help="write the facet complex JSON here")
    pd.add_argument("--n", type=int)
    pd.set_defaults(fn=cmd_decompose)

    pt = sub.add_parser("tangent", help="tangent dimension at a monomial ideal")
    pt.add_argument("file", nargs="?")
    pt.add_argument("--ideal")
    pt.add_argument("--n", type=int)
    pt.set_defaults(fn=cmd_tangent)

    pdg = sub.add_parser("degeneration", help="collinear degeneration tools")
    dsub = pdg.add_subparsers(dest="action", required=True)
    pv = dsub.add_parser("verify", help="certificate report")
    pv.add_argument("--n", type=int, required=True)
    pv.add_argument("--out")
    pv.set_defaults(fn=cmd_degeneration, action="verify")
    pi = dsub.add_parser("initial",
                         help="lex initial ideal of a specialization")
    pi.add_argument("--n", type=int, required=True)
    pi.add_argument("--eps", required=True)
    pi.set_defaults(fn=cmd_degeneration, action="initial")

    ptc = sub.add_parser("toric", help="torus-fixed enumeration")
    tsub = ptc.add_subparsers(dest="action", required=True)
    pe = tsub.add_parser("enumerate")
    pe.add_argument("--n", type=int, choices=(3, 4), required=True)
    pe.add_argument("--classes", action="store_true")
    pe.add_argument("--dual-graphs", dest="dual_graphs")
    pe.add_argument("--out")
    pe.set_defaults(fn=cmd_toric)

    phs = sub.add_parser("hilbscheme", help="census of monomial ideals")
    hsub = phs.add_subparsers(dest="action", required=True)
    pc = hsub.add_parser("census")
    pc.add_argument("--n", type=int, choices=(2, 3), required=True)
    pc.add_argument("--tangent", action="store_true")
    pc.add_argument("--out", required=True)
    pc.set_defaults(fn=cmd_census)

    pck = sub.add_parser("check", help="run the acceptance suite")
    pck.add_argument("what", choices=["all"])
    pck.add_argument("--criteria", help="comma separated criterion numbers")
    pck.add_argument("--n-max", dest="n_max", type=int,
                     help="cap the camera counts exercised")
    pck.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                     help="worker processes where supported")
    pck.add_argument("--out")
    pck.set_defaults(fn=cmd_check)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
