import argparse
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import pandas as pd

# --- Make the Geometry and Complex packages importable from any working directory ---
BASE = os.path.dirname(os.path.abspath(__file__))
if BASE not in sys.path:
    sys.path.insert(0, BASE)

from Complex import document, realization, simplicial
from Geometry import affine, simplex
from Geometry.errors import GeometryError, ParseError
from Geometry.linalg import Vector, format_scalar, format_vector, parse_point

logger = logging.getLogger("launcher")

DEFAULT_METHOD = "both"
DEFAULT_FORMAT = "table"
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


@dataclass
class Outcome:
    """
    What a subcommand produced: an exit code, scalar fields, optional table
    rows and, for commands that yield a complex, the canonical document text
    used by --format structured.
    """
    code: int
    fields: dict
    rows: list = field(default_factory=list)
    document: str = None


class UsageError(Exception):
    pass


# --- Value formatting shared by table and structured output ---
def show(value):
    if isinstance(value, Vector):
        return format_vector(value)
    if isinstance(value, (affine.BarycentricCoords, tuple)) and all(not isinstance(v, str) for v in value):
        return "(" + ", ".join(str(show(v)) for v in value) + ")"
    if isinstance(value, simplicial.AbstractSimplex):
        return str(value)
    if isinstance(value, (bool, int)) or value is None:
        return value
    if isinstance(value, Fraction):
        return format_scalar(value)
    return value


def render_table(outcome):
    if outcome.document is not None and not (outcome.fields or outcome.rows):
        return outcome.document
    parts = []
    if outcome.fields:
        frame = pd.DataFrame({"field": list(outcome.fields), "value": [show(v) for v in outcome.fields.values()]})
        parts.append(frame.to_string(index=False))
    if outcome.rows:
        frame = pd.DataFrame([{k: show(v) for k, v in row.items()} for row in outcome.rows])
        parts.append(frame.to_string(index=False))
    return "\n\n".join(parts) + "\n"


def render_structured(outcome):
    if outcome.document is not None:
        return outcome.document
    payload = {k: show(v) for k, v in outcome.fields.items()}
    if outcome.rows:
        payload["rows"] = [{k: show(v) for k, v in row.items()} for row in outcome.rows]
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


# --- Input helpers ---
def read_points(args):
    points = [parse_point(text, f"point argument {i + 1}") for i, text in enumerate(args.points)]
    if args.points_file:
        points.extend(document.read_points_file(args.points_file))
    if not points:
        raise UsageError("no points given (pass them as arguments or with --points-file)")
    return affine.PointSet(tuple(points))


def read_point(text, name="--point"):
    return parse_point(text, name)


def read_complex(path):
    return document.to_complex(document.load_document(path))


def simplex_rows(simplices):
    return [{"dim": s.dim, "simplex": s} for s in simplicial.sorted_simplices(simplices)]


# --- Point-set and simplex subcommands ---
def cmd_independent(args):
    points = read_points(args)
    witness = affine.is_geometrically_independent(points)
    fields = {
        "points": len(points),
        "ambient_dim": points.ambient_dim,
        "rank": witness.rank,
        "independent": witness.independent,
        "linearly_independent": affine.is_linearly_independent(points),
    }
    if witness.dependence is not None:
        fields["dependence"] = witness.dependence
    return Outcome(EXIT_OK if witness else EXIT_NEGATIVE, fields)


def cmd_plane_member(args):
    plane = affine.plane_spanned_by(read_points(args))
    result = affine.plane_membership(plane, read_point(args.point))
    if isinstance(result, affine.OffPlane):
        return Outcome(EXIT_NEGATIVE, {"member": False})
    return Outcome(EXIT_OK, {"member": True, "coefficients": result.coords})


def cmd_extend(args):
    result = affine.extend_independent(read_points(args), read_point(args.point))
    fields = {
        "extended": isinstance(result, affine.Extended),
        "rank_before": result.rank_before,
        "rank_after": result.rank_after,
    }
    return Outcome(EXIT_OK if fields["extended"] else EXIT_NEGATIVE, fields)


def cmd_barycentric(args):
    s = simplex.make_simplex(read_points(args))
    result = simplex.barycentric(s, read_point(args.point))
    if isinstance(result, affine.OffPlane):
        return Outcome(EXIT_NEGATIVE, {"in_plane": False})
    return Outcome(EXIT_OK, {"in_plane": True, "coords": result.coords})


def cmd_classify(args):
    s = simplex.make_simplex(read_points(args))
    found = simplex.classify_point(s, read_point(args.point))
    fields = {"position": found.position.value}
    if found.carrier is not None:
        fields["carrier"] = found.carrier
    if found.coords is not None:
        fields["coords"] = found.coords
    return Outcome(EXIT_NEGATIVE if found.position is simplex.Position.OUTSIDE else EXIT_OK, fields)


def cmd_faces(args):
    s = simplex.make_simplex(read_points(args))
    dims = [args.k] if args.k is not None else range(s.dim + 1)
    rows = [
        {"dim": k, "indices": indices, "vertices": ", ".join(format_vector(s.vertices[i]) for i in indices)}
        for k in dims
        for indices in simplex.face_indices(s.dim, k)
    ]
    return Outcome(EXIT_OK, {"dim": s.dim, "proper_faces": len(simplex.proper_faces(s))}, rows)


def cmd_cone(args):
    s = simplex.make_simplex(read_points(args))
    cone = simplex.cone_decompose(s, read_point(args.point))
    fields = {"apex_weight": cone.apex_weight}
    if cone.base_point is not None:
        fields["base_point"] = cone.base_point
        fields["base_coords"] = cone.base_coords
    return Outcome(EXIT_OK, fields)


def cmd_ray(args):
    s = simplex.make_simplex(read_points(args))
    ray = simplex.Ray(read_point(args.origin, "--origin"), read_point(args.direction, "--direction"))
    hit = simplex.ray_boundary_hit(s, ray)
    if isinstance(hit, simplex.LeavesPlane):
        return Outcome(EXIT_NEGATIVE, {"leaves_plane": True})
    return Outcome(EXIT_OK, {"t_star": hit.t_star, "hit": hit.point, "face": hit.face})


def cmd_ball(args):
    s = simplex.make_simplex(read_points(args))
    u = simplex.ball_map(s, read_point(args.point))
    exact = u.to_vector()
    fields = {
        "radius": u.radius,
        "squared_norm": u.squared_norm(),
        "direction": u.direction,
        "on_sphere": u.squared_norm() == 1,
    }
    if exact is not None:
        fields["coords"] = exact
    else:
        fields["approx_coords"] = "(" + ", ".join(f"{c:.6f}" for c in u.approx()) + ")"
    return Outcome(EXIT_OK, fields)


# --- Complex subcommands ---
def _report_rows(path, report):
    rows = []
    for s, f in report.missing_faces:
        rows.append({"file": path, "method": report.method, "issue": "missing-face", "simplex": s, "other": f, "detail": ""})
    for s in report.dependent_simplices:
        rows.append({"file": path, "method": report.method, "issue": "dependent", "simplex": s, "other": "", "detail": ""})
    for bad in report.bad_intersections:
        detail = bad.reason if bad.witness is None else f"{bad.reason} at {format_vector(bad.witness)}"
        rows.append({"file": path, "method": report.method, "issue": "bad-intersection", "simplex": bad.first, "other": bad.second, "detail": detail})
    return rows


def validate_file(path, method):
    k = read_complex(path)
    methods = [simplicial.DEFINITIONAL, simplicial.DISJOINT_INTERIORS] if method == "both" else [method]
    reports = [simplicial.validate(k, m) for m in methods]
    agree = len({r.ok for r in reports}) == 1
    if not agree:
        logger.error("validators disagree on %s", path)
    return path, reports, agree


def expand_paths(paths):
    """
    Replace each directory argument by the .scx documents directly inside it,
    in name order.
    Args:
        paths: File or directory paths as given on the command line.
    """
    files = []
    for path in paths:
        if os.path.isdir(path):
            found = sorted(name for name in os.listdir(path) if name.endswith(document.SCX_SUFFIX))
            if not found:
                raise UsageError(f"no {document.SCX_SUFFIX} files in directory {path}")
            files.extend(os.path.join(path, name) for name in found)
        else:
            files.append(path)
    return files


def cmd_validate(args):
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    files = expand_paths(args.files)
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        results = list(pool.map(lambda path: validate_file(path, args.method), files))
    rows = []
    all_ok = True
    for path, reports, agree in results:
        all_ok = all_ok and agree and all(r.ok for r in reports)
        for report in reports:
            rows.extend(_report_rows(path, report))
    fields = {"files": len(results), "method": args.method, "ok": all_ok}
    if args.method == "both":
        fields["methods_agree"] = all(agree for _, _, agree in results)
    return Outcome(EXIT_OK if all_ok else EXIT_NEGATIVE, fields, rows)


def cmd_skeleton(args):
    k = read_complex(args.file)
    sk = simplicial.skeleton(k, args.p)
    return Outcome(EXIT_OK, {"p": args.p, "simplices": len(sk)}, simplex_rows(sk.simplices),
                   document.serialize_document(document.from_complex(sk)))


def cmd_star(args):
    st = simplicial.star(read_complex(args.file), args.vertex)
    return Outcome(EXIT_OK, {"vertex": args.vertex, "simplices": len(st)}, simplex_rows(st))


def cmd_closed_star(args):
    cl = simplicial.closed_star(read_complex(args.file), args.vertex)
    return Outcome(EXIT_OK, {"vertex": args.vertex, "simplices": len(cl)}, simplex_rows(cl.simplices),
                   document.serialize_document(document.from_complex(cl)))


def cmd_link(args):
    lk = simplicial.link(read_complex(args.file), args.vertex)
    return Outcome(EXIT_OK, {"vertex": args.vertex, "simplices": len(lk)}, simplex_rows(lk))


def cmd_locate(args):
    carrier = realization.locate(read_complex(args.file), read_point(args.point))
    if carrier is None:
        return Outcome(EXIT_NEGATIVE, {"in_realization": False})
    return Outcome(EXIT_OK, {"in_realization": True, "carrier": carrier.simplex, "coords": carrier.coords})


def cmd_lambda(args):
    value = realization.lambda_(read_complex(args.file), args.vertex, read_point(args.point))
    return Outcome(EXIT_OK, {"vertex": args.vertex, "lambda": value})


def cmd_eval(args):
    doc = document.load_document(args.file)
    value = realization.eval_pl(document.to_complex(doc), document.pl_map(doc), read_point(args.point))
    return Outcome(EXIT_OK, {"value": value})


def cmd_summary(args):
    k = read_complex(args.file)
    summary = realization.realization_summary(k)
    fields = {
        "ambient_dim": k.ambient_dim,
        "lower": summary.lower,
        "upper": summary.upper,
        "is_compact": summary.is_compact,
        "locally_finite": bool(simplicial.is_locally_finite(k)),
    }
    rows = [{"dim": d, "count": c} for d, c in sorted(summary.counts.items())]
    return Outcome(EXIT_OK, fields, rows)


def cmd_format(args):
    text = document.serialize_document(document.load_document(args.file))
    return Outcome(EXIT_OK, {}, document=text)


# --- Argument parsing ---
def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "structured"), default=DEFAULT_FORMAT)

    points = argparse.ArgumentParser(add_help=False, parents=[common])
    points.add_argument(
        "points", nargs="*",
        help="comma separated rational coordinates, e.g. 1/2,0; put -- before the points when one starts with a minus sign",
    )
    points.add_argument("--points-file", help="CSV table with one point per row")

    complex_file = argparse.ArgumentParser(add_help=False, parents=[common])
    complex_file.add_argument("file", help="complex document (.scx)")

    parser = argparse.ArgumentParser(
        prog="launcher.py", description="Exact simplicial geometry toolkit.",
        epilog="Options go before a -- separator; everything after it is read as a point, so "
               "negative coordinates work: launcher.py independent --format structured -- -1,0 0,0 0,1",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("independent", parents=[points]).set_defaults(handler=cmd_independent)
    for name, handler in (("plane-member", cmd_plane_member), ("extend", cmd_extend),
                          ("barycentric", cmd_barycentric), ("classify", cmd_classify),
                          ("cone", cmd_cone), ("ball", cmd_ball)):
        p = sub.add_parser(name, parents=[points])
        p.add_argument("--point", required=True)
        p.set_defaults(handler=handler)

    p = sub.add_parser("faces", parents=[points])
    p.add_argument("-k", type=int, help="face dimension (default: all)")
    p.set_defaults(handler=cmd_faces)

    p = sub.add_parser("ray", parents=[points])
    p.add_argument("--origin", required=True)
    p.add_argument("--direction", required=True)
    p.set_defaults(handler=cmd_ray)

    p = sub.add_parser("validate", parents=[common])
    p.add_argument("files", nargs="+", help="complex documents, or directories of .scx files")
    p.add_argument("--method", choices=("definitional", "disjoint-interiors", "both"), default=DEFAULT_METHOD)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("skeleton", parents=[complex_file])
    p.add_argument("-p", type=int, required=True)
    p.set_defaults(handler=cmd_skeleton)

    for name, handler in (("star", cmd_star), ("closed-star", cmd_closed_star), ("link", cmd_link)):
        p = sub.add_parser(name, parents=[complex_file])
        p.add_argument("-v", "--vertex", required=True)
        p.set_defaults(handler=handler)

    p = sub.add_parser("locate", parents=[complex_file])
    p.add_argument("--point", required=True)
    p.set_defaults(handler=cmd_locate)

    p = sub.add_parser("lambda", parents=[complex_file])
    p.add_argument("-v", "--vertex", required=True)
    p.add_argument("--point", required=True)
    p.set_defaults(handler=cmd_lambda)

    p = sub.add_parser("eval", parents=[complex_file])
    p.add_argument("--point", required=True)
    p.set_defaults(handler=cmd_eval)

    sub.add_parser("summary", parents=[complex_file]).set_defaults(handler=cmd_summary)
    sub.add_parser("format", parents=[complex_file]).set_defaults(handler=cmd_format)
    return parser


# --- Logging and entry point ---
def configure_logging(verbosity):
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(level)


def run(argv=None):
    """
    Parse arguments, run one subcommand and print its report.
    Returns the exit code: 0 success, 1 negative result or domain error,
    2 usage or parse error.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    configure_logging(args.verbose)
    try:
        outcome = args.handler(args)
    except (UsageError, ParseError) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except GeometryError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_NEGATIVE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    text = render_structured(outcome) if args.format == "structured" else render_table(outcome)
    sys.stdout.write(text)
    return outcome.code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
