"""Command-line interface.

Exit codes: 0 on success, 1 on domain failures (an operation rejects a
structurally valid input), 2 on usage or parse errors.  All diagnostics
go to stderr; stdout is deterministic for fixed input and flags.
"""

import argparse
import sys

from .bounds import (
    HeegaardData,
    heegaard_bound,
    matveev_relation,
    parse_gauss_code,
    surgery_bound,
)
from .census import enumerate_cubulations, render_census
from .complexes import (
    GluingError,
    ParseError,
    parse_cubulation,
    parse_triangulation,
    serialize_cubulation,
    serialize_triangulation,
)
from .convert import cubulation_to_triangulation, triangulation_to_cubulation
from .duality import dual_dehn_surface, render_report, verify_duality_counts
from .homology import homology_groups
from .loops import enumerate_dehn_loops, verify_lc
from .signature import canonical_signature, canonical_signature_triangulation
from .validate import cone_subdivision, validate_closed_3manifold, validate_cubulation


class UsageError(Exception):
    pass


def _read_input(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="ascii") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from None


def _detect_format(path, fmt):
    if fmt:
        return fmt
    if path.endswith(".cub"):
        return "cub"
    if path.endswith(".tri"):
        return "tri"
    raise UsageError(f"cannot infer format of {path!r}; pass --format cub|tri")


def _load_complex(path, fmt):
    fmt = _detect_format(path, fmt)
    text = _read_input(path)
    if fmt == "cub":
        return "cub", parse_cubulation(text)
    return "tri", parse_triangulation(text)


def _bool(x):
    return "true" if x else "false"


def _cmd_validate(args, out):
    kind, cx = _load_complex(args.input, args.format)
    rep = validate_cubulation(cx) if kind == "cub" else validate_closed_3manifold(cx)
    c = rep.counts
    top = "c" if kind == "cub" else "t"
    orient = "n/a" if rep.orientable is None else _bool(rep.orientable)
    line = (
        f"closed={_bool(rep.is_closed_manifold)} orientable={orient} "
        f"chi={c.euler} pseudo={_bool(rep.is_pseudo_manifold)} "
        f"v={c.vertices} e={c.edges} f={c.faces} {top}={c.top_cells}"
    )
    print(line, file=out)
    if rep.failure_witness:
        print(f"witness: {rep.failure_witness}", file=out)
    return 0


def _cmd_homology(args, out):
    kind, cx = _load_complex(args.input, args.format)
    T = cone_subdivision(cx) if kind == "cub" else cx
    H = homology_groups(T)
    for name, group in zip(("H0", "H1", "H2", "H3"), H.groups()):
        print(f"{name}: {group.render()}", file=out)
    return 0


def _cmd_dual(args, out):
    kind, cx = _load_complex(args.input, args.format or "cub")
    if kind != "cub":
        raise UsageError("dual expects a cubulation (.cub)")
    rep = dual_dehn_surface(cx)
    print(render_report(rep), file=out)
    print(f"duality_counts_ok={_bool(verify_duality_counts(cx, rep))}", file=out)
    return 0


def _cmd_signature(args, out):
    kind, cx = _load_complex(args.input, args.format)
    if kind == "cub":
        print(canonical_signature(cx), file=out)
    else:
        print(canonical_signature_triangulation(cx), file=out)
    return 0


def _cmd_convert(args, out):
    if args.to == "cub":
        kind, cx = _load_complex(args.input, args.format or "tri")
        if kind != "tri":
            raise UsageError("convert --to cub expects a triangulation")
        C, stats = triangulation_to_cubulation(cx)
        print(f"# {stats.render()}", file=out)
        out.write(serialize_cubulation(C))
    else:
        kind, cx = _load_complex(args.input, args.format or "cub")
        if kind != "cub":
            raise UsageError("convert --to tri expects a cubulation")
        T, stats = cubulation_to_triangulation(cx, args.strategy)
        print(f"# {stats.render()}", file=out)
        out.write(serialize_triangulation(T))
    return 0


def _cmd_census(args, out):
    records = enumerate_cubulations(args.cubes, workers=args.workers)
    text = render_census(records, args.cubes)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def _parse_heegaard_matrix(text):
    rows = []
    for raw in text.splitlines():
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        try:
            rows.append(tuple(int(tok) for tok in body.split()))
        except ValueError:
            raise ParseError(f"bad matrix row {body!r}") from None
    if not rows:
        raise ParseError("empty intersection matrix")
    return rows


def _cmd_bound(args, out):
    modes = [bool(args.heegaard), bool(args.surgery), args.matveev]
    if sum(modes) != 1:
        raise UsageError("choose exactly one of --heegaard, --surgery, --matveev")
    if args.heegaard:
        rows = _parse_heegaard_matrix(_read_input(args.heegaard))
        data = HeegaardData(
            len(rows), tuple(rows), m=args.m, assume_p2_irreducible=args.assume_p2
        )
        base, refined = heegaard_bound(data)
        print(base.render(), file=out)
        if refined is not None:
            print(refined.render(), file=out)
        return 0
    if args.surgery:
        try:
            link = parse_gauss_code(_read_input(args.surgery))
        except ValueError as e:
            raise ParseError(str(e)) from None
        mode = "explicit" if args.explicit else "blackboard"
        print(surgery_bound(link, mode).render(), file=out)
        return 0
    if args.c is None and args.sc is None and not args.special:
        raise UsageError("--matveev needs --c or --sc (or --special)")
    rel = matveev_relation(c=args.c, sc=args.sc, flag=args.special)
    print(rel.render(), file=out)
    return 0


def _cmd_loops(args, out):
    records = enumerate_dehn_loops(args.max_crossings)
    for rec in records:
        print(rec.render(), file=out)
    if args.verify:
        rows = verify_lc(args.max_crossings)
        all_ok = True
        for surface, formula, min_v, ok in rows:
            all_ok = all_ok and ok
            print(
                f"surface={surface.render()} lc={formula} minV={min_v} "
                f"match={1 if ok else 0}",
                file=out,
            )
        print(f"all_match={1 if all_ok else 0}", file=out)
        if not all_ok:
            return 1
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="dehnsurf",
        description="Cubulations of closed 3-manifolds, dual filling surfaces, "
        "homology fingerprints, census enumeration and complexity bounds.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("input", help="input file, or '-' for standard input")
        p.add_argument("--format", choices=("cub", "tri"), default=None)

    p = sub.add_parser("validate", help="closed-manifold validation report")
    add_input(p)
    p = sub.add_parser("homology", help="integer homology fingerprint")
    add_input(p)
    p = sub.add_parser("dual", help="dual filling-surface report of a cubulation")
    add_input(p)
    p = sub.add_parser("signature", help="canonical isomorphism signature")
    add_input(p)

    p = sub.add_parser("convert", help="convert between cubulations and triangulations")
    p.add_argument("--to", choices=("cub", "tri"), required=True)
    p.add_argument("--strategy", choices=("exhaustive", "greedy"), default="exhaustive")
    add_input(p)

    p = sub.add_parser("census", help="enumerate cubulations up to isomorphism")
    p.add_argument("--cubes", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None)

    p = sub.add_parser("bound", help="upper bounds from presentations")
    p.add_argument("--heegaard", metavar="MATRIX_FILE")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--assume-p2", action="store_true")
    p.add_argument("--surgery", metavar="GAUSS_FILE")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--blackboard", action="store_true")
    group.add_argument("--explicit", action="store_true")
    p.add_argument("--matveev", action="store_true")
    p.add_argument("--c", type=int, default=None)
    p.add_argument("--sc", type=int, default=None)
    p.add_argument("--special", choices=("L31", "L41"), default=None)

    p = sub.add_parser("loops", help="enumerate loop structures on surfaces")
    p.add_argument("--max-crossings", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    handlers = {
        "validate": _cmd_validate,
        "homology": _cmd_homology,
        "dual": _cmd_dual,
        "signature": _cmd_signature,
        "convert": _cmd_convert,
        "census": _cmd_census,
        "bound": _cmd_bound,
        "loops": _cmd_loops,
    }
    try:
        return handlers[args.command](args, sys.stdout)
    except (ParseError, GluingError, UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
