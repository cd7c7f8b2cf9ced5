"""Command-line front end.

Subcommands wrap the library: ``dist`` for stretching factors, ``displace``
for the displacement at a point, ``minimize`` for the exact minimisation
over a simplex, ``explore`` for the Min-set census with its orbit quotient,
and ``verify-fixed-point`` for the finite-order models.  Identical inputs
produce byte-identical reports.  Exit codes: 0 success, 1 verification
failure, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .displace import displacement_at, min_displacement_on_simplex, segment_profile
from .explore import (census_is_connected, explore_min_set, quotient_by_power,
                      shared_simplex_pairs)
from .formats import (WorkspaceError, builtin_workspace, fraction,
                      parse_workspace, show_fraction, show_lengths, show_word)
from .metric import stretch
from .models import build_Xp, build_Xpq, sigma, unique_isometry_representative, \
    verify_unique_fixed_point
from .words import compose, is_inner, outer_equal


class Report:
    """Accumulates text or machine (key=value) lines."""

    def __init__(self, machine: bool):
        self.machine = machine
        self.lines: list[str] = []

    def emit(self, key: str, value, text: str | None = None):
        if self.machine:
            self.lines.append(f"{key}={value}")
        else:
            self.lines.append(text if text is not None else f"{key}: {value}")

    def say(self, text: str):
        if not self.machine:
            self.lines.append(text)

    def print(self):
        for line in self.lines:
            print(line)


def _load_workspace(args) -> object:
    ws = builtin_workspace()
    for path in args.workspace or []:
        with open(path) as fh:
            parse_workspace(fh.read(), ws)
    return ws


def cmd_dist(args) -> int:
    ws = _load_workspace(args)
    x = ws.point(args.x)
    y = ws.point(args.y)
    fwd = stretch(x, y)
    bwd = stretch(y, x)
    rep = Report(args.format == "machine")
    rep.emit("stretch_xy", show_fraction(fwd.value),
             f"Lambda(x,y) = {show_fraction(fwd.value)}  witness {show_word(fwd.witness)}")
    rep.emit("witness_xy", show_word(fwd.witness))
    rep.emit("stretch_yx", show_fraction(bwd.value),
             f"Lambda(y,x) = {show_fraction(bwd.value)}  witness {show_word(bwd.witness)}")
    rep.emit("witness_yx", show_word(bwd.witness))
    product = fwd.value * bwd.value
    rep.emit("symmetric", show_fraction(product),
             f"symmetric product = {show_fraction(product)}")
    rep.print()
    return 0


def cmd_displace(args) -> int:
    ws = _load_workspace(args)
    x = ws.point(args.point)
    phi = ws.auto(args.auto)
    value = displacement_at(x, phi)
    witness = stretch(x, x.act(phi)).witness
    rep = Report(args.format == "machine")
    rep.emit("displacement", show_fraction(value),
             f"displacement = {show_fraction(value)}  witness {show_word(witness)}")
    rep.emit("witness", show_word(witness))
    rep.print()
    return 0


def cmd_minimize(args) -> int:
    ws = _load_workspace(args)
    simplex = ws.simplex(args.simplex)
    phi = ws.auto(args.auto)
    result = min_displacement_on_simplex(simplex, phi, fraction(args.tol))
    rep = Report(args.format == "machine")
    rep.emit("lower", show_fraction(result.lower),
             f"bracket lower = {show_fraction(result.lower)} "
             f"(~{float(result.lower):.12f})")
    rep.emit("upper", show_fraction(result.upper),
             f"bracket upper = {show_fraction(result.upper)} "
             f"(~{float(result.upper):.12f})")
    rep.emit("argmin", show_lengths(result.argmin),
             f"argmin lengths = {show_lengths(result.argmin)}")
    rep.emit("interior", result.interior,
             f"attained in interior: {result.interior}")
    rep.emit("active", " ".join(show_word(a) for a in result.active),
             "active candidates: "
             + " ".join(show_word(a) for a in result.active))
    rep.print()
    return 0


def cmd_explore(args) -> int:
    ws = _load_workspace(args)
    phi = ws.auto(args.auto)
    simplex = ws.simplex(args.simplex)
    tol = fraction(args.tol)
    seed_result = min_displacement_on_simplex(simplex, phi, tol)
    from .marked import CVPoint
    seed = CVPoint(simplex.marked, seed_result.argmin)
    census = explore_min_set(seed, phi, tol, args.limit_simplices,
                             args.limit_steps)
    classes = quotient_by_power(census.entries, phi, args.kmax)
    rep = Report(args.format == "machine")
    for i, e in enumerate(census.entries):
        key = (f"entry_{i}")
        summary = (f"edges={e.simplex.graph.ne} depth={e.depth} "
                   f"lower={show_fraction(e.result.lower)} "
                   f"upper={show_fraction(e.result.upper)} "
                   f"interior={e.result.interior}")
        rep.emit(key, summary, f"simplex {i}: {summary}")
    rep.emit("count", len(census.entries),
             f"census size = {len(census.entries)}")
    rep.emit("partial", census.partial, f"hit limits: {census.partial}")
    rep.emit("connected", census_is_connected(census),
             f"census connected: {census_is_connected(census)}")
    rep.emit("orbit_count", len(classes),
             f"orbit classes under the automorphism: {len(classes)}")
    rep.emit("orbit_sizes", " ".join(str(len(c.members)) for c in classes),
             "orbit sizes: "
             + " ".join(str(len(c.members)) for c in sorted(
                 classes, key=lambda c: len(c.members))))
    rep.print()
    return 0


def cmd_verify_fixed_point(args) -> int:
    model = build_Xp(args.p) if args.q is None else build_Xpq(args.p, args.q)
    report = verify_unique_fixed_point(model, fraction(args.tol))
    rep = Report(args.format == "machine")
    rep.emit("model", model.label, f"model {model.label}")
    for i, line in enumerate(report.lines):
        rep.emit(f"check_{i}", line.replace(" ", "_") if args.format == "machine" else line,
                 f"  {line}")
    sig = sigma(model)
    sigma_ok = (compose(sig, sig).is_identity()
                and outer_equal(compose(sig, model.induced),
                                compose(model.induced, sig)))
    from .marked import marked_graph_equal
    sigma_fixes = marked_graph_equal(model.point, model.point.act(sig))
    rep.emit("sigma_involution", sigma_ok,
             f"  sigma^2 = 1 and sigma commutes with the map: {sigma_ok}")
    rep.emit("sigma_fixes_point", sigma_fixes,
             f"  sigma fixes the model point: {sigma_fixes}")
    power = model.induced.power(model.order)
    power_ok = is_inner(power) is not None
    rep.emit("power_inner", power_ok,
             f"  map^order is inner-trivial: {power_ok}")
    count, _ = unique_isometry_representative(model)
    rep.emit("isometry_count", count,
             f"  isometries inducing the map: {count}")
    passed = (report.passed and sigma_ok and sigma_fixes and power_ok
              and count == 1)
    rep.emit("verdict", "PASS" if passed else "FAIL",
             f"{model.label}: {'PASS' if passed else 'FAIL'}")
    rep.print()
    return 0 if passed else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="outerspace",
        description="Exact stretching factors, displacement minimisation "
                    "and Min-set censuses for marked metric graphs.")
    parser.add_argument("--workspace", action="append", metavar="FILE",
                        help="workspace file with named blocks (repeatable)")
    parser.add_argument("--format", choices=("text", "machine"),
                        default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="stretching factors between two points")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("displace", help="displacement of an automorphism at a point")
    p.add_argument("--point", required=True)
    p.add_argument("--auto", required=True)
    p.set_defaults(func=cmd_displace)

    p = sub.add_parser("minimize", help="minimal displacement over a closed simplex")
    p.add_argument("--auto", required=True)
    p.add_argument("--simplex", required=True)
    p.add_argument("--tol", default="1e-9")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("explore", help="Min-set census and orbit quotient")
    p.add_argument("--auto", required=True)
    p.add_argument("--simplex", required=True,
                   help="seed simplex; its argmin starts the search")
    p.add_argument("--tol", default="1e-6")
    p.add_argument("--limit-simplices", type=int, default=500)
    p.add_argument("--limit-steps", type=int, default=10)
    p.add_argument("--kmax", type=int, default=None)
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("verify-fixed-point",
                       help="unique fixed point checks for the model graphs")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--tol", default="1e-6")
    p.set_defaults(func=cmd_verify_fixed_point)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except WorkspaceError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
