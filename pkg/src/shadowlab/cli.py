"""Command-line driver.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error,
3 genericity or degeneracy error.
"""

import argparse
import sys
from fractions import Fraction

from . import km_cube, polytope, render, verify
from .errors import GenericityError, ShadowlabError
from .exact_linalg import DEFAULT_DIGITS, dot, parse_rational, parse_vector
from .parametric import gass_saaty_path
from .shadow import ProjectionPair, box_corners, shadow_of_vertices

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GENERICITY = 0, 1, 2, 3


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _parse_bounds(text: str, dim: int):
    vals = parse_vector(text)
    if len(vals) != 2 * dim:
        raise ShadowlabError(f"--bounds needs 2*dim = {2 * dim} values (l1,u1,l2,u2,...), got {len(vals)}")
    return polytope.Box(vals[0::2], vals[1::2])


def cmd_gen(args, out):
    if args.kind == "km":
        P = polytope.make_klee_minty(args.dim, args.eps)
    else:
        if args.bounds is None:
            box = polytope.Box([0] * args.dim, [1] * args.dim)
        else:
            box = _parse_bounds(args.bounds, args.dim)
        P = polytope.make_box(box)
    text = polytope.dumps(P)
    summary = f"rows: {P.n_rows}\ndim: {P.dim}\nsparsity: {polytope.sparsity(P)}\n"
    if args.out:
        _write(args.out, text)
        out.write(summary)
    else:
        out.write(text)
        sys.stderr.write(summary)
    return EXIT_OK


def _objectives(args, P):
    if args.km_objectives:
        p = km_cube.params_of(P)
        return km_cube.objective_c(p), km_cube.projection_d(p)
    if args.c is None or args.d is None:
        raise ShadowlabError("give --c and --d, or --km-objectives")
    return parse_vector(args.c), parse_vector(args.d)


def polytope_vertices(P, force_enumerate=False):
    """(vertex, label) pairs; closed forms for generator output, brute force otherwise.

    Closed-form vertices are still checked to be feasible with exactly
    their basis rows tight.
    """
    if not force_enumerate and P.tag == "klee-minty":
        listed = [(B, x, km_cube.format_code(u)) for B, x, u in km_cube.km_vertices(km_cube.params_of(P))]
    elif not force_enumerate and P.tag == "box":
        listed = [
            (tuple(2 * i + b for i, b in enumerate(bits)), x, km_cube.format_code(bits))
            for bits, x in box_corners(polytope.box_of(P))
        ]
    else:
        return [(x, "+".join(map(str, B))) for B, x in polytope.enumerate_vertices(P)]
    for B, x, label in listed:
        if polytope.tight_rows(P, x) != B or not polytope.is_feasible(P, x):
            raise ShadowlabError(f"closed-form vertex {label} does not match the inequality system")
    return [(x, label) for _, x, label in listed]


def cmd_shadow(args, out):
    P = polytope.read_hpoly(args.polytope)
    c, d = _objectives(args, P)
    pp = ProjectionPair(c, d)
    listed = polytope_vertices(P, args.enumerate)
    shadow = shadow_of_vertices(pp, [x for x, _ in listed])
    out.write(f"vertices: {len(listed)}\nhull_vertices: {shadow.size}\n")
    if args.csv:
        _write(args.csv, render.polygon_csv(shadow, lambda i: listed[i][1], args.digits))
    if args.svg:
        overlay = None
        if args.path_overlay:
            path = gass_saaty_path(P, c, d, _start_basis(args, P))
            overlay = [(dot(c, x), dot(d, x)) for x in path.vertices]
        _write(args.svg, render.polygon_svg(shadow, overlay))
    return EXIT_OK


def _start_basis(args, P):
    if args.km_start:
        return km_cube.code_to_basis(km_cube.km_start_code(km_cube.params_of(P)))
    if args.start is None:
        raise ShadowlabError("give --start ROWS or --km-start")
    return tuple(int(t) for t in args.start.split(",") if t.strip())


def cmd_path(args, out):
    P = polytope.read_hpoly(args.polytope)
    c, d = _objectives(args, P)
    path = gass_saaty_path(P, c, d, _start_basis(args, P))
    out.write(f"M: {path.M}\nbreakpoints: {len(path.breakpoints)}\n")
    if path.codes:
        out.write(f"first: {km_cube.format_code(path.codes[0])}\nlast: {km_cube.format_code(path.codes[-1])}\n")
    if args.csv:
        _write(args.csv, render.path_csv(path, args.digits))
    return EXIT_OK


def cmd_verify(args, out):
    report = verify.run(args.suite, args.dim, args.eps, args.trials, args.seed)
    out.write(report.render())
    return EXIT_OK if report.ok else EXIT_FAIL


def _rational(text):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser():
    parser = argparse.ArgumentParser(prog="shadowlab", description="Exact shadows of sparse polytopes.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a box or Klee-Minty polytope in .hpoly format")
    g.add_argument("kind", choices=["box", "km"])
    g.add_argument("--dim", type=int, required=True)
    g.add_argument("--eps", type=_rational, default=Fraction(1, 4))
    g.add_argument("--bounds", help="box bounds l1,u1,l2,u2,... (default: unit cube)")
    g.add_argument("-o", "--out")
    g.set_defaults(func=cmd_gen)

    def objective_flags(p):
        p.add_argument("polytope")
        p.add_argument("--c", help="comma-separated rationals")
        p.add_argument("--d", help="comma-separated rationals")
        p.add_argument("--km-objectives", action="store_true",
                       help="use the Klee-Minty shadow vectors c and (0,...,0,1)")
        p.add_argument("--digits", type=int, default=DEFAULT_DIGITS)

    def start_flags(p):
        p.add_argument("--start", help="comma-separated basis row indices (0-based)")
        p.add_argument("--km-start", action="store_true", help="start at the minimiser of x_d")

    s = sub.add_parser("shadow", help="hull of the projected vertices")
    objective_flags(s)
    start_flags(s)
    s.add_argument("--csv")
    s.add_argument("--svg")
    s.add_argument("--path-overlay", action="store_true", help="draw the parametric path in the SVG")
    s.add_argument("--enumerate", action="store_true", help="brute-force vertices even for generators")
    s.set_defaults(func=cmd_shadow)

    p = sub.add_parser("path", help="parametric simplex sweep")
    objective_flags(p)
    start_flags(p)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_path)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=verify.SUITES)
    v.add_argument("--dim", type=int, default=3)
    v.add_argument("--eps", type=_rational, default=Fraction(1, 4))
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except GenericityError as exc:
        sys.stderr.write(f"error: {exc}\n")
        if exc.witnesses:
            sys.stderr.write(f"witnesses: {' '.join(map(str, exc.witnesses))}\n")
        return exc.exit_code
    except ShadowlabError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

