"""Command line interface.

Exit statuses:

    0  success
    2  usage error
    3  triangulation or vector parse error
    4  invariant violation (bad input structure, failed additivity check)
    5  incomplete enumeration (coordinate cap reached)
    6  incompatible Haken sum operands
    7  a hyperbolic certificate failed
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .enumeration import DEFAULT_CAP, enumerate_fundamentals, fundamental_report
from .errors import (
    IncompatibleVectors,
    IncompleteEnumeration,
    InvariantViolation,
    TriangulationSyntaxError,
)
from .hyperbolic_check import sweep
from .normal_coords import format_vector, haken_sum, parse_vector
from .surface_builder import invariants
from .triangulation import (
    check_closed_manifold,
    compute_skeleton,
    is_orientable,
    parse_triangulation,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_INVARIANT = 4
EXIT_INCOMPLETE = 5
EXIT_INCOMPATIBLE = 6
EXIT_CHECK_FAILED = 7


def fraction_text(x):
    return None if x is None else f"{x.numerator}/{x.denominator}"


def _g_range(text):
    try:
        lo, hi = (int(part) for part in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    if lo < 2 or hi < lo:
        raise argparse.ArgumentTypeError(f"need 2 <= A <= B, got {text!r}")
    return lo, hi


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _genus(text):
    g = int(text)
    if g < 2:
        raise argparse.ArgumentTypeError("genus must be at least 2")
    return g


def build_parser():
    parser = argparse.ArgumentParser(
        prog="normsurf",
        description="Fundamental normal surfaces and weak reducibility bounds.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, type=Path, help="triangulation file")
        p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("validate", help="check a triangulation and print skeleton counts")
    common(p)
    for name in ("enumerate", "report"):
        p = sub.add_parser(name, help=f"{name} fundamental normal surfaces")
        common(p)
        p.add_argument("--cap", type=_positive, default=DEFAULT_CAP,
                       help="coordinate-sum ceiling per Hilbert basis run")
        p.add_argument("--workers", type=_positive, default=1)
        if name == "report":
            p.add_argument("--genus", type=_genus, help="fibre genus for the periodicity bound")
    p = sub.add_parser("sum", help="Haken sum of two normal vectors")
    common(p)
    p.add_argument("--a", required=True, help="'v [...]' or a file holding one")
    p.add_argument("--b", required=True, help="'v [...]' or a file holding one")
    p = sub.add_parser("check-hyperbolic", help="certify the rotation bound for each genus")
    common(p, needs_input=False)
    p.add_argument("--g-range", type=_g_range, default=(2, 64), metavar="A..B")
    return parser


def _dump(doc):
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _table(headers, rows):
    cells = [list(map(str, headers))] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"


def _load(path):
    return parse_triangulation(Path(path).read_text(encoding="utf-8"))


def _read_vector(arg):
    text = arg if arg.lstrip().startswith("v [") else Path(arg).read_text(encoding="utf-8")
    return parse_vector(text)


def _fundamental_doc(n, f):
    s = f.surface
    return {
        "index": n,
        "coordinates": format_vector(f.vector),
        "euler_characteristic": s.euler_characteristic,
        "orientable": s.orientable,
        "genus": s.genus,
        "crosscaps": s.crosscaps,
        "weight": s.weight,
        "sign_class": f.sign_class,
    }


def _fundamental_rows(fs):
    rows = []
    for n, f in enumerate(fs):
        s = f.surface
        rows.append([n, format_vector(f.vector), s.euler_characteristic,
                     "yes" if s.orientable else "no",
                     s.genus if s.orientable else f"{s.crosscaps}c",
                     s.weight, f.sign_class])
    return rows


_HEADERS = ["index", "coordinates", "chi", "orientable", "genus", "weight", "sign"]


def cmd_validate(args, out):
    tri = _load(args.input)
    sk = compute_skeleton(tri)
    doc = {
        "triangulation_digest": tri.digest(),
        "tet_count": tri.tet_count,
        "vertices": len(sk.vertex_orbits),
        "edges": len(sk.edge_orbits),
        "faces": sk.face_count,
        "euler_characteristic": sk.euler_characteristic,
        "orientable": is_orientable(tri),
    }
    if args.format == "json":
        out.write(_dump(doc))
    else:
        out.write(_table(["field", "value"], sorted(doc.items())))
    check_closed_manifold(tri, sk)
    return EXIT_OK


def cmd_enumerate(args, out):
    tri = _load(args.input)
    fs = enumerate_fundamentals(tri, cap=args.cap, workers=args.workers)
    if args.format == "json":
        out.write(_dump({
            "triangulation_digest": fs.digest,
            "tet_count": tri.tet_count,
            "fundamentals": [_fundamental_doc(n, f) for n, f in enumerate(fs)],
        }))
    else:
        out.write(f"# triangulation {fs.digest}\n")
        out.write(_table(_HEADERS, _fundamental_rows(fs)))
    return EXIT_OK


def cmd_report(args, out):
    tri = _load(args.input)
    report = fundamental_report(tri, cap=args.cap, workers=args.workers)
    fs = report.fundamentals
    doc = {
        "triangulation_digest": fs.digest,
        "tet_count": tri.tet_count,
        "fundamentals": [_fundamental_doc(n, f) for n, f in enumerate(fs)],
        "K": report.K,
        "P": report.P,
        "c": fraction_text(report.c),
        "vacuous": report.vacuous,
    }
    if args.genus is not None:
        doc["genus"] = args.genus
        doc["bound"] = {
            "scaled": fraction_text(report.scaled_bound(args.genus)),
            "floor": report.bound(args.genus),
            "vacuous": report.bound_vacuous(args.genus),
        }
    if args.format == "json":
        out.write(_dump(doc))
        return EXIT_OK
    out.write(f"# triangulation {fs.digest}\n")
    out.write(_table(_HEADERS, _fundamental_rows(fs)))
    out.write(f"K = {report.K}\n")
    out.write(f"P = {report.P if report.P is not None else '-'}\n")
    out.write(f"c(M,T) = {fraction_text(report.c) or 'undefined'}\n")
    if report.vacuous:
        out.write("vacuous: no fundamental surface has negative Euler characteristic\n")
    if args.genus is not None:
        b = doc["bound"]
        out.write(f"genus {args.genus}: c*(2g-2) = {b['scaled'] or 'undefined'}, "
                  f"h^i weakly reducible for 1 <= i <= {b['floor']}\n")
        if b["vacuous"]:
            out.write(f"vacuous for genus {args.genus}\n")
    return EXIT_OK


def cmd_sum(args, out):
    tri = _load(args.input)
    try:
        a, b = _read_vector(args.a), _read_vector(args.b)
    except ValueError as e:
        raise _ParseFailure(str(e))
    total = haken_sum(a, b)
    ia, ib, it = invariants(tri, a), invariants(tri, b), invariants(tri, total)
    doc = {
        "triangulation_digest": tri.digest(),
        "a": format_vector(a),
        "b": format_vector(b),
        "sum": format_vector(total),
        "euler_characteristic": {"a": ia.euler_characteristic, "b": ib.euler_characteristic,
                                 "sum": it.euler_characteristic},
        "weight": {"a": ia.weight, "b": ib.weight, "sum": it.weight},
    }
    doc["chi_additive"] = it.euler_characteristic == ia.euler_characteristic + ib.euler_characteristic
    doc["weight_additive"] = it.weight == ia.weight + ib.weight
    if args.format == "json":
        out.write(_dump(doc))
    else:
        out.write(f"sum = {doc['sum']}\n")
        out.write(_table(["", "a", "b", "sum", "additive"], [
            ["chi", ia.euler_characteristic, ib.euler_characteristic, it.euler_characteristic,
             doc["chi_additive"]],
            ["weight", ia.weight, ib.weight, it.weight, doc["weight_additive"]],
        ]))
    if not (doc["chi_additive"] and doc["weight_additive"]):
        raise InvariantViolation("Euler characteristic or weight is not additive")
    return EXIT_OK


def cmd_check_hyperbolic(args, out):
    lo, hi = args.g_range
    certs = sweep(lo, hi, min_margin=1e-9)
    if args.format == "json":
        out.write(_dump({"certificates": [
            {"g": c.g, "R": c.R, "theta_at_half_R": c.theta_at_half_R,
             "threshold": c.threshold, "margin": c.margin, "pass": c.passed}
            for c in certs]}))
    else:
        for c in certs:
            out.write(c.line() + "\n")
    return EXIT_OK if all(c.passed for c in certs) else EXIT_CHECK_FAILED


class _ParseFailure(Exception):
    pass


COMMANDS = {
    "validate": cmd_validate,
    "enumerate": cmd_enumerate,
    "report": cmd_report,
    "sum": cmd_sum,
    "check-hyperbolic": cmd_check_hyperbolic,
}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except (TriangulationSyntaxError, _ParseFailure) as e:
        err.write(f"parse error: {e}\n")
        return EXIT_PARSE
    except IncompatibleVectors as e:
        err.write(f"incompatible operands: {e}\n")
        return EXIT_INCOMPATIBLE
    except IncompleteEnumeration as e:
        err.write(f"incomplete enumeration: {e}\n")
        return EXIT_INCOMPLETE
    except InvariantViolation as e:
        err.write(f"invariant violation: {e}\n")
        return EXIT_INVARIANT
    except ValueError as e:
        err.write(f"invalid input: {e}\n")
        return EXIT_INVARIANT
    except OSError as e:
        err.write(f"cannot read input: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
