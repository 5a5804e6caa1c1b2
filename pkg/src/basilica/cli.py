"""Command-line interface.

Exit codes: 0 success, 1 invalid input, 2 an internal invariant broke.
Set BASILICA_COLOR=1 (or 0) to force ANSI colour in diagnostics on (or off).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import acceptance, approx, element, formats, fullgroup, theta
from .diagram import PerfectDiagram, is_diagram, is_perfect, missing_path_edges, perfect_complete
from .germ import PartialAutomorphism
from .lamination import DIAM, edge_endpoints, leaves_up_to, parent, parse_leaf, parse_vertex, sides, tree_path
from .svg import render_svg
from .triadic import TriadicAngle, format_angle, from_fraction, parse_angle


class Invalid(ValueError):
    pass


def _color() -> bool:
    env = os.environ.get("BASILICA_COLOR")
    if env is not None:
        return env == "1"
    return sys.stderr.isatty()


def _diag(kind: str, msg: str) -> None:
    if _color():
        code = "31" if kind == "error" else "35"
        print(f"\x1b[1;{code}m{kind}:\x1b[0m {msg}", file=sys.stderr)
    else:
        print(f"{kind}: {msg}", file=sys.stderr)


def _emit(text: str, out: str | None) -> None:
    if out:
        formats.write(out, text)
    else:
        sys.stdout.write(text)


def _load_element(path: str):
    text = formats.read(path)
    if "[intervals]" in text:
        return formats.parse_general(text)
    return formats.parse_element(text)


def _emit_element(g) -> str:
    if isinstance(g, element.ThompsonElement):
        return formats.emit_element(g)
    return formats.emit_general(g)


def _angle(text: str) -> TriadicAngle:
    try:
        return parse_angle(text)
    except ValueError as exc:
        raise Invalid(f"bad angle {text!r}: {exc}") from None


# lam ----------------------------------------------------------------------


def cmd_lam_gen(args) -> int:
    if args.model == "ternary":
        chords = leaves_up_to(args.depth)
        for leaf in chords:
            print(leaf)
        pairs = [(l.left.value, l.right.value) for l in chords]
        period = 2
    else:
        chords = theta.binary_lamination(args.depth)
        for c in chords:
            print(c)
        pairs = [(c.a.value, c.b.value) for c in chords]
        period = 3
    if args.svg:
        render_svg(pairs, period=period, out=args.svg)
    return 0


# tree ---------------------------------------------------------------------


def cmd_tree_parent(args) -> int:
    leaf = parse_leaf(args.leaf)
    if leaf == DIAM:
        raise Invalid("the diameter has no parent")
    print(parent(leaf))
    return 0


def cmd_tree_sides(args) -> int:
    v = parse_vertex(args.vertex)
    print(" ".join(str(s) for s in sides(v, args.max_level)))
    return 0


def cmd_tree_path(args) -> int:
    print(" ".join(str(s) for s in tree_path(parse_leaf(args.a), parse_leaf(args.b))))
    return 0


# diagram ------------------------------------------------------------------


def cmd_diagram_check(args) -> int:
    leaves = formats.parse_diagram(formats.read(args.file))
    if DIAM not in leaves:
        raise Invalid("not a diagram: the diameter 0:0 is missing")
    if not is_diagram(leaves):
        missing = " ".join(str(l) for l in missing_path_edges(leaves))
        raise Invalid(f"not a diagram: missing path edge(s) {missing}")
    print("perfect diagram" if is_perfect(leaves) else "diagram (not perfect)")
    return 0


def cmd_diagram_complete(args) -> int:
    leaves = formats.parse_diagram(formats.read(args.file))
    _emit(formats.emit_diagram(perfect_complete(leaves).leaves), args.out)
    return 0


def cmd_diagram_intervals(args) -> int:
    leaves = formats.parse_diagram(formats.read(args.file))
    for i, (node, form) in enumerate(PerfectDiagram(leaves).intervals()):
        a, b = (format_angle(from_fraction(x % 2)) for x in (node.start, node.end))
        print(f"{i} [{a}, {b}] {form.tag}")
    return 0


# elem ---------------------------------------------------------------------


def cmd_elem_apply(args) -> int:
    g = _load_element(args.file)
    x = _angle(args.angle)
    y = fullgroup.apply(g, x) if isinstance(g, fullgroup.GeneralElement) else element.apply(g, x)
    print(format_angle(y))
    return 0


def cmd_elem_compose(args) -> int:
    gs = [_load_element(p) for p in args.files]
    if all(isinstance(g, element.ThompsonElement) for g in gs):
        out = gs[-1]
        for g in reversed(gs[:-1]):
            out = element.compose(g, out)
    else:
        out = fullgroup.compose(*gs)
    _emit(_emit_element(out), args.out)
    return 0


def cmd_elem_invert(args) -> int:
    g = _load_element(args.file)
    inv = element.invert(g) if isinstance(g, element.ThompsonElement) else fullgroup.invert(g)
    _emit(_emit_element(inv), args.out)
    return 0


def cmd_elem_reduce(args) -> int:
    g = _load_element(args.file)
    if not isinstance(g, element.ThompsonElement):
        raise Invalid("reduce works on Thompson elements only")
    _emit(formats.emit_element(element.reduce(g)), args.out)
    return 0


def cmd_elem_eq(args) -> int:
    g, h = _load_element(args.a), _load_element(args.b)
    same = fullgroup.equals(g, h)
    print("equal" if same else "different")
    return 0 if same else 1


def cmd_elem_pi(args) -> int:
    g = _load_element(args.file)
    edges = formats.parse_diagram(formats.read(args.edges)) if args.edges else {parse_leaf(l) for l in args.leaf}
    edges = sorted(edges, key=formats.leaf_order)
    pa = fullgroup.pi_full(g, edges) if isinstance(g, fullgroup.GeneralElement) else element.pi_restrict(g, edges)
    _emit(formats.emit_germ(pa), args.out)
    return 0


# approx -------------------------------------------------------------------


def cmd_approx_run(args) -> int:
    pa = formats.parse_germ(formats.read(args.map))
    if args.full and pa.signs is None:
        pa = PartialAutomorphism(pa.edges, pa.vertices, {v: 1 for v in pa.vertices})
    pa = approx.extend_to_cover_diam(pa)
    g = approx.approximate_full(pa) if args.full else approx.approximate(pa)
    _emit(_emit_element(g), args.out)
    return 0


# theta --------------------------------------------------------------------


def cmd_theta_eval(args) -> int:
    print(theta.theta(_angle(args.angle)).value)
    return 0


def cmd_theta_leaf(args) -> int:
    print(theta.theta_leaf(parse_leaf(args.leaf)))
    return 0


# selftest / fuzz -----------------------------------------------------------


def cmd_selftest(args) -> int:
    results = acceptance.run_all(args.only, report=lambda r: print(r.line(), flush=True))
    return 0 if all(r.passed for r in results) else 2


def _fuzz_case(pa, full: bool) -> str | None:
    try:
        if full:
            g = approx.approximate_full(pa)
            got = fullgroup.pi_full(g, pa.edges)
            if got.signs != {v: pa.sign(v) for v in pa.vertices}:
                return "vertex signs differ"
        else:
            g = approx.approximate(pa)
            got = element.pi_restrict(g, pa.edges)
        if got.edges != pa.edges or got.vertices != pa.vertices:
            return "tree action differs from the germ"
    except (ArithmeticError, AssertionError, ValueError) as exc:
        return f"{type(exc).__name__}: {exc}"
    return None


def shrink(pa, full: bool):
    """Drop pendant edges while the failure persists."""
    while True:
        for e in sorted(pa.edges, key=lambda l: (-l.n, l.k)):
            if e == DIAM or any(parent(f) == e for f in pa.edges if f != DIAM):
                continue
            edges = {k: v for k, v in pa.edges.items() if k != e}
            verts = {v: w for v, w in pa.vertices.items() if any(v in edge_endpoints(k) for k in edges)}
            signs = None if pa.signs is None else {v: s for v, s in pa.signs.items() if v in verts}
            smaller = PartialAutomorphism(edges, verts, signs)
            if approx.is_valid(smaller) and _fuzz_case(smaller, full):
                pa = smaller
                break
        else:
            return pa


def cmd_fuzz(args) -> int:
    out_dir = Path(args.out)
    failures = 0
    for i in range(args.iters):
        seed = args.seed + i
        pa = approx.random_partial_automorphism(args.radius, seed, signed=args.full)
        problem = _fuzz_case(pa, args.full)
        if problem is None:
            continue
        failures += 1
        small = shrink(pa, args.full)
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / f"counterexample-{seed}.germ"
        formats.write(str(path), formats.emit_germ(small))
        _diag("counterexample", f"seed {seed}: {problem}; minimal germ saved to {path}")
    print(f"fuzz: {args.iters} cases, radius {args.radius}, seeds {args.seed}..{args.seed + args.iters - 1}, {failures} failures")
    return 2 if failures else 0


# parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="basilica", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    lam = sub.add_parser("lam", help="laminations").add_subparsers(dest="sub", required=True)
    q = lam.add_parser("gen", help="list chords through a depth")
    q.add_argument("--model", choices=("ternary", "binary"), default="ternary")
    q.add_argument("--depth", type=int, required=True)
    q.add_argument("--svg")
    q.set_defaults(fn=cmd_lam_gen)

    tree = sub.add_parser("tree", help="the dual tree").add_subparsers(dest="sub", required=True)
    q = tree.add_parser("parent")
    q.add_argument("leaf")
    q.set_defaults(fn=cmd_tree_parent)
    q = tree.add_parser("sides")
    q.add_argument("vertex")
    q.add_argument("--max-level", type=int, default=3)
    q.set_defaults(fn=cmd_tree_sides)
    q = tree.add_parser("path")
    q.add_argument("a")
    q.add_argument("b")
    q.set_defaults(fn=cmd_tree_path)

    dia = sub.add_parser("diagram", help="diagram files").add_subparsers(dest="sub", required=True)
    for name, fn in (("check", cmd_diagram_check), ("complete", cmd_diagram_complete), ("intervals", cmd_diagram_intervals)):
        q = dia.add_parser(name)
        q.add_argument("file")
        q.add_argument("-o", "--out")
        q.set_defaults(fn=fn)

    el = sub.add_parser("elem", help="group elements").add_subparsers(dest="sub", required=True)
    q = el.add_parser("apply")
    q.add_argument("file")
    q.add_argument("angle")
    q.set_defaults(fn=cmd_elem_apply)
    q = el.add_parser("compose", help="compose FILES; the last one acts first")
    q.add_argument("files", nargs="+")
    q.add_argument("-o", "--out")
    q.set_defaults(fn=cmd_elem_compose)
    for name, fn in (("invert", cmd_elem_invert), ("reduce", cmd_elem_reduce)):
        q = el.add_parser(name)
        q.add_argument("file")
        q.add_argument("-o", "--out")
        q.set_defaults(fn=fn)
    q = el.add_parser("eq")
    q.add_argument("a")
    q.add_argument("b")
    q.set_defaults(fn=cmd_elem_eq)
    q = el.add_parser("pi", help="restrict the tree action to a set of edges")
    q.add_argument("file")
    q.add_argument("--edges", help="diagram file listing the edges")
    q.add_argument("--leaf", action="append", default=[])
    q.add_argument("-o", "--out")
    q.set_defaults(fn=cmd_elem_pi)

    ap = sub.add_parser("approx", help="approximate a germ").add_subparsers(dest="sub", required=True)
    q = ap.add_parser("run")
    q.add_argument("--map", required=True)
    q.add_argument("--full", action="store_true", help="allow branch flips (signed germs)")
    q.add_argument("-o", "--out")
    q.set_defaults(fn=cmd_approx_run)

    th = sub.add_parser("theta", help="the conjugacy to the binary model").add_subparsers(dest="sub", required=True)
    q = th.add_parser("eval")
    q.add_argument("--angle", required=True)
    q.set_defaults(fn=cmd_theta_eval)
    q = th.add_parser("leaf")
    q.add_argument("--leaf", required=True)
    q.set_defaults(fn=cmd_theta_leaf)

    q = sub.add_parser("selftest", help="run the acceptance suite")
    q.add_argument("--only", type=int, action="append")
    q.set_defaults(fn=cmd_selftest)

    q = sub.add_parser("fuzz", help="random germs through the approximation")
    q.add_argument("--iters", type=int, default=100)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--radius", type=int, default=3)
    q.add_argument("--full", action="store_true")
    q.add_argument("--out", default="fuzz-out")
    q.set_defaults(fn=cmd_fuzz)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except OSError as exc:
        _diag("error", str(exc))
        return 1
    except ValueError as exc:
        _diag("error", f"{type(exc).__name__}: {exc}")
        return 1
    except (AssertionError, ArithmeticError) as exc:
        _diag("internal", f"{type(exc).__name__}: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
