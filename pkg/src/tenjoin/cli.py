"""Command-line interface: ``tenjoin <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .closedform import ClosedFormError, JoinSpec, join_charpoly
from .cospectral import (
    CospectralError,
    cospectral_join_family,
    enumerate_hypergraphs,
    find_cospectral_pairs,
    search,
    verify,
    write_certificate,
)
from .eigen import charpoly_exact, eig_sym
from .hgr import HgrError, format_fraction, parse_hgr, serialize_hgr
from .hypercore import (
    Edge,
    Hypergraph,
    HypergraphError,
    WeightTable,
    complete,
    complete_uniform,
    is_regular,
)
from .matrices import MatrixError, MatrixKind, float_matrix_of, matrix_of
from .tensorjoin import (
    ClassSequence,
    ConstituentKind,
    EdgeFamily,
    FamilyError,
    FamilyKind,
    KCopyOp,
    backbone_join,
    decompose,
    family_aligned,
    family_b_spanning,
    family_backbone,
    family_explicit,
    family_full,
    family_identity,
    family_uniform_max,
    k_copy_join,
    lexicographic_product,
    strong_partite,
    tensor_join,
    two_copy_join,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- argument helpers ---------------------------------------------------------


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _weight_table(specs: Optional[Sequence[str]], default: str = "0") -> WeightTable:
    """``--wc 2=1,3=1/2`` (repeatable); ``*=w`` sets the default weight."""
    weights: dict[int, Fraction] = {}
    dflt = Fraction(default)
    for spec in specs or []:
        for item in spec.split(","):
            if not item.strip():
                continue
            if "=" not in item:
                raise UsageError(f"bad --wc item {item!r}; expected c=weight")
            c, w = item.split("=", 1)
            try:
                val = Fraction(w.strip())
            except (ValueError, ZeroDivisionError):
                raise UsageError(f"bad weight {w!r}") from None
            if c.strip() == "*":
                dflt = val
            else:
                try:
                    weights[int(c)] = val
                except ValueError:
                    raise UsageError(f"bad cardinality {c!r}") from None
    try:
        return WeightTable(weights, dflt)
    except HypergraphError as e:
        raise UsageError(str(e)) from None


def _read(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_hgr(fh.read())
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}") from None
    except HgrError as e:
        raise UsageError(f"{path}: {e}") from None


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _drop_zero(h: Hypergraph, keep: bool) -> Hypergraph:
    if keep:
        return h
    return Hypergraph(h.n, tuple(e for e in h.edges if e.weight != 0))


def _g12(x: float) -> str:
    return f"{x:.12g}"


def _file_table(w: WeightTable) -> Optional[WeightTable]:
    return WeightTable(w.weights) if w.weights else None


# -- family construction ------------------------------------------------------


def _family(args, cs: ClassSequence) -> EdgeFamily:
    kind = FamilyKind(args.family)
    allow = args.allow_huge
    if kind is FamilyKind.FULL:
        return family_full(cs, allow)
    if kind is FamilyKind.B_SPANNING:
        if not args.B:
            raise UsageError("--family bspan needs --B")
        return family_b_spanning(cs, _ints(args.B), allow)
    if kind is FamilyKind.UNIFORM_MAX:
        if args.m is None:
            raise UsageError("--family uniform needs --m")
        return family_uniform_max(cs, args.m, allow)
    if kind is FamilyKind.ALIGNED:
        return family_aligned(cs, args.r)
    if kind is FamilyKind.IDENTITY:
        return family_identity(cs)
    if kind is FamilyKind.BACKBONE:
        if not args.backbone:
            raise UsageError("--family backbone needs --backbone FILE")
        return family_backbone(cs, _read(args.backbone).h)
    if kind is FamilyKind.EXPLICIT:
        if not args.members:
            raise UsageError("--family explicit needs --members '1,4;2,5'")
        return family_explicit(cs, [_ints(m) for m in args.members.split(";") if m.strip()])
    raise UsageError(f"family {kind.value} is not available here")


# -- subcommands ----------------------------------------------------------------


def cmd_build(args) -> int:
    w = _weight_table(args.wc, "1")
    kind = args.kind
    if kind == "empty":
        h = Hypergraph(args.n)
    elif kind == "complete":
        h = complete(args.n, w)
    elif kind == "uniform":
        h = complete_uniform(args.n, args.m)
    elif kind == "cycle":
        if args.n < 3:
            raise UsageError("a cycle needs n >= 3")
        h = Hypergraph(args.n, tuple(Edge(tuple(sorted((i, i % args.n + 1))), Fraction(1)) for i in range(1, args.n + 1)))
    elif kind == "two-copy":
        base = _need_input(args, 1)[0]
        h = two_copy_join(base, ConstituentKind(args.g1), ConstituentKind(args.g2), FamilyKind(args.family), w, args.r)
    elif kind == "k-copy":
        base = _need_input(args, 1)[0]
        h = k_copy_join(base, args.k, KCopyOp(args.op), args.l, w, args.r)
    elif kind == "lexicographic":
        back, inner = _need_input(args, 2)
        h = lexicographic_product(back, inner, w)
    elif kind == "strong-partite":
        if not args.classes:
            raise UsageError("strong-partite needs --classes")
        h = strong_partite(_ints(args.classes), args.m, w)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(kind)
    _emit(serialize_hgr(_drop_zero(h, args.keep_zero)), args.out)
    return EXIT_OK


def _need_input(args, count: int) -> list[Hypergraph]:
    if len(args.inputs) != count:
        raise UsageError(f"{args.kind} needs {count} input file(s)")
    return [_read(p).h for p in args.inputs]


def _partition(h: Hypergraph, classes: str) -> list[list[int]]:
    if ";" in classes:
        return [_ints(part) for part in classes.split(";") if part.strip()]
    sizes = _ints(classes)
    if sum(sizes) != h.n:
        raise UsageError(f"class sizes {sizes} do not add up to {h.n}")
    return [list(c) for c in ClassSequence.consecutive(sizes).classes]


def _closed(h: Hypergraph, kind: MatrixKind, classes: str):
    gs, fam, w = decompose(h, _partition(h, classes))
    return join_charpoly(JoinSpec.from_join(gs, fam, w, kind))


def cmd_spectrum(args) -> int:
    kind = MatrixKind.parse(args.matrix)
    rc = EXIT_OK
    reports = []
    for path in sorted(args.inputs):
        h = _read(path).h
        report = {"input": path, "matrix": kind.value, "method": args.method}
        direct = closed = None
        if args.method in ("direct", "both"):
            direct = eig_sym(float_matrix_of(h, kind), tol=min(args.tol, 1e-12))
            report["charpoly"] = [format_fraction(c) for c in charpoly_exact(matrix_of(h, kind)).descending()]
        if args.method in ("closed", "both"):
            if not args.classes:
                raise UsageError("--method closed/both needs --classes")
            fac = _closed(h, kind, args.classes)
            closed = fac.spectrum()
            poly = fac.expand()
            report.setdefault("charpoly", [format_fraction(c) for c in poly.descending()])
            report["closed_charpoly"] = [format_fraction(c) for c in poly.descending()]
        spec = direct if direct is not None else closed
        report["spectrum"] = [float(_g12(x)) for x in spec]
        if direct is not None and closed is not None:
            ok = len(direct) == len(closed) and bool(np.all(np.abs(direct - closed) <= args.tol))
            report["agreement"] = ok
            report["exact_agreement"] = report["charpoly"] == report["closed_charpoly"]
            if not ok:
                rc = EXIT_FAIL
        else:
            report["agreement"] = True
        reports.append(report)
    if args.json:
        print(json.dumps(reports if len(reports) > 1 else reports[0], indent=2))
    else:
        for r in reports:
            print(f"{r['input']}: {r['matrix']} via {r['method']}")
            print("  charpoly: " + " ".join(r["charpoly"]))
            print("  spectrum: " + " ".join(_g12(x) for x in r["spectrum"]))
            if r["method"] == "both":
                print(f"  agreement: {'yes' if r['agreement'] else 'NO'} (tol {args.tol:g}), "
                      f"exact: {'yes' if r['exact_agreement'] else 'NO'}")
    return rc


def cmd_join(args) -> int:
    gs = [_read(p).h for p in args.inputs]
    sizes = _ints(args.classes) if args.classes else [g.n for g in gs]
    if sizes != [g.n for g in gs]:
        raise UsageError(f"--classes {sizes} do not match the inputs' vertex counts {[g.n for g in gs]}")
    cs = ClassSequence.consecutive(sizes)
    fam = _family(args, cs)
    w = _weight_table(args.wc)
    h = _drop_zero(tensor_join(gs, fam, w), args.keep_zero)
    _emit(serialize_hgr(h, _file_table(w)), args.out)
    return EXIT_OK


def cmd_backbone_join(args) -> int:
    back = _read(args.backbone).h
    gs = [_read(p).h for p in args.inputs]
    if back.n != len(gs):
        raise UsageError(f"backbone has {back.n} vertices but {len(gs)} constituents were given")
    cs = ClassSequence.consecutive([g.n for g in gs])
    fams = []
    for e in back.edges:
        sub = cs.restrict([i - 1 for i in e.vertices])
        fams.append(EdgeFamily(cs, _family(args, sub).members))
    w = _weight_table(args.wc)
    h = _drop_zero(backbone_join(back, gs, fams, w), args.keep_zero)
    _emit(serialize_hgr(h, _file_table(w)), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    a, b = _read(args.first).h, _read(args.second).h
    rep = verify(a, b)
    fields = {"adjacency": rep.adjacency, "laplacian": rep.laplacian, "normalized": rep.normalized}
    if args.json:
        out = dict(fields)
        out["polys"] = {
            k: [[format_fraction(c) for c in p.descending()] for p in pair] for k, pair in rep.polys.items()
        }
        out["note"] = rep.note
        print(json.dumps(out, indent=2))
    else:
        for k, v in fields.items():
            print(f"{k}: {'undefined' if v is None else ('cospectral' if v else 'not cospectral')}")
        if rep.note:
            print(rep.note)
    required = [MatrixKind.parse(x).name.lower() for x in args.require.split(",") if x]
    return EXIT_OK if all(fields[k] for k in required) else EXIT_FAIL


def cmd_cospectral(args) -> int:
    if args.n is not None:
        lo = hi = args.n
    else:
        lo, hi = args.min_n, args.max_n
    m = args.uniform
    if m is None:
        raise UsageError("--uniform m is required")
    regular = True if args.regular else None
    if regular:
        rep = search(m, max_n=hi, min_n=lo)
        pairs, found = rep.pairs, rep.found_at
        print(rep.summary())
    else:
        pairs, found = [], None
        for n in range(lo, hi + 1):
            pairs = find_cospectral_pairs(enumerate_hypergraphs(n, {m}, uniform_m=m))
            if pairs:
                found = n
                break
        print(f"{len(pairs)} pair(s) at n={found}" if pairs else f"none found up to n={hi}")
    if not pairs:
        if lo == hi:
            print(f"none found at n={lo}")
        return EXIT_OK
    rc = EXIT_OK
    w = _weight_table(args.wc, "1")
    for idx, (a, b) in enumerate(pairs[: args.limit], start=1):
        stem = f"n{found}_m{m}_pair{idx:03d}"
        if args.out:
            write_certificate(args.out, stem, a, b)
        if is_regular(a) is not None:
            # join each side with the first member through a full two-class family
            fam = family_full(ClassSequence.consecutive([a.n, a.n]), allow_huge=True) if 2 * a.n <= 10 else \
                family_b_spanning(ClassSequence.consecutive([a.n, a.n]), {2})
            ja, jb = cospectral_join_family([(a, b), (a, a)], fam, w)
            jrep = verify(ja, jb)
            ok = jrep.all_true
            print(f"{stem}: constituents A-cospectral; join pair A/L/nL "
                  f"{jrep.adjacency}/{jrep.laplacian}/{jrep.normalized}")
            if args.out:
                write_certificate(args.out, stem + "_join", ja, jb, _file_table(w))
            if not ok:
                rc = EXIT_FAIL
    return rc


def cmd_decompose(args) -> int:
    h = _read(args.input).h
    gs, fam, w = decompose(h, _partition(h, args.classes))
    out = []
    for i, (g, cls) in enumerate(zip(gs, fam.classes.classes), start=1):
        out.append(f"# constituent {i} on vertices {','.join(map(str, cls))}")
        out.append(serialize_hgr(g).rstrip("\n"))
    out.append(f"# family: {len(fam)} crossing member(s)")
    for m in fam.members:
        out.append("member " + " ".join(map(str, m)))
    for c, x in w.weights.items():
        out.append(f"wc {c} {format_fraction(x)}")
    _emit("\n".join(out) + "\n", args.out)
    return EXIT_OK


# -- parser -----------------------------------------------------------------------


def _family_options(p: argparse.ArgumentParser, choices: Sequence[str]) -> None:
    p.add_argument("--family", choices=choices, default="full")
    p.add_argument("--B", help="cardinalities for bspan, e.g. 2,3")
    p.add_argument("--m", type=int, help="cardinality for uniform")
    p.add_argument("--r", type=int, default=1, help="alignment size for aligned")
    p.add_argument("--members", help="explicit members, e.g. '1,4;2,5'")
    p.add_argument("--backbone-file", dest="backbone", help="backbone hgr for --family backbone")
    p.add_argument("--wc", action="append", help="join weights c=w (repeatable, comma-separated)")
    p.add_argument("--allow-huge", action="store_true", help="lift the family size guard")
    p.add_argument("--keep-zero", action="store_true", help="keep new edges of weight 0")
    p.add_argument("-o", "--out", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tenjoin", description="Tensor joins of weighted hypergraphs and their spectra.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    b = sub.add_parser("build", help="write a standard or composite hypergraph")
    b.add_argument("kind", choices=["empty", "complete", "uniform", "cycle", "two-copy", "k-copy", "lexicographic", "strong-partite"])
    b.add_argument("inputs", nargs="*", help="base hgr file(s) for composite kinds")
    b.add_argument("--n", type=int, default=0)
    b.add_argument("--m", type=int)
    b.add_argument("--k", type=int, default=2)
    b.add_argument("--l", type=int, default=2)
    b.add_argument("--r", type=int, default=1)
    b.add_argument("--g1", choices=[c.value for c in ConstituentKind], default="H")
    b.add_argument("--g2", choices=[c.value for c in ConstituentKind], default="H")
    b.add_argument("--family", choices=["aligned", "identity", "full", "full-minus-aligned", "full-minus-identity"], default="identity")
    b.add_argument("--op", choices=[o.value for o in KCopyOp], default="mirror")
    b.add_argument("--classes", help="class sizes for strong-partite")
    b.add_argument("--wc", action="append", help="weights c=w; default weight 1, '*=w' changes it")
    b.add_argument("--keep-zero", action="store_true")
    b.add_argument("-o", "--out")
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("spectrum", help="spectrum and characteristic polynomial")
    s.add_argument("inputs", nargs="+")
    s.add_argument("--matrix", choices=["adj", "lap", "nlap"], default="adj")
    s.add_argument("--method", choices=["direct", "closed", "both"], default="direct")
    s.add_argument("--tol", type=float, default=1e-9)
    s.add_argument("--classes", help="class sizes '3,3' or explicit '1,2,3;4,5,6' for the closed form")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_spectrum)

    j = sub.add_parser("join", help="tensor join of constituent files")
    j.add_argument("inputs", nargs="+")
    j.add_argument("--classes", help="class sizes; must match the inputs")
    _family_options(j, [k.value for k in (FamilyKind.FULL, FamilyKind.B_SPANNING, FamilyKind.UNIFORM_MAX,
                                          FamilyKind.ALIGNED, FamilyKind.IDENTITY, FamilyKind.BACKBONE,
                                          FamilyKind.EXPLICIT)])
    j.set_defaults(func=cmd_join)

    bj = sub.add_parser("backbone-join", help="join guided by a backbone hypergraph")
    bj.add_argument("backbone_path", metavar="BACKBONE")
    bj.add_argument("inputs", nargs="+")
    _family_options(bj, [k.value for k in (FamilyKind.FULL, FamilyKind.B_SPANNING, FamilyKind.UNIFORM_MAX,
                                           FamilyKind.ALIGNED, FamilyKind.IDENTITY)])
    bj.set_defaults(func=cmd_backbone_join)

    v = sub.add_parser("verify", help="exact cospectrality certificate for two hypergraphs")
    v.add_argument("first")
    v.add_argument("second")
    v.add_argument("--require", default="adj,lap,nlap", help="matrices that must be cospectral for exit 0")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("cospectral", help="search small uniform hypergraphs for cospectral pairs")
    c.add_argument("--n", type=int, help="a single vertex count")
    c.add_argument("--min-n", type=int, default=2)
    c.add_argument("--max-n", type=int, default=8)
    c.add_argument("--uniform", type=int, help="edge cardinality m")
    c.add_argument("--regular", action="store_true")
    c.add_argument("--limit", type=int, default=5, help="pairs to certify")
    c.add_argument("--wc", action="append", help="join weights for the certified join pairs (default 1)")
    c.add_argument("--out", help="directory for certificate files")
    c.set_defaults(func=cmd_cospectral)

    d = sub.add_parser("decompose", help="split a hypergraph into constituents and a family")
    d.add_argument("input")
    d.add_argument("--classes", required=True, help="class sizes '3,3' or explicit '1,4;2,3'")
    d.add_argument("-o", "--out")
    d.set_defaults(func=cmd_decompose)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    if getattr(args, "backbone_path", None):
        args.backbone = args.backbone_path
    try:
        return args.func(args)
    except UsageError as e:
        print(f"tenjoin: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (HypergraphError, FamilyError, MatrixError, ClosedFormError, CospectralError, HgrError, ValueError) as e:
        print(f"tenjoin: error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
