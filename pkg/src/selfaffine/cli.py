"""Command-line interface.

Exit codes: 0 when every check passes, 1 for a mathematical failure or a
failing verdict, 2 for unusable input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import __version__, svg
from . import fieldlinalg as fl
from .addressmap import DEFAULT_K_MAX, address_report, expansion_on_J, stabilized_address_map, verify_M_properties
from .boundary import boundary_curve, check_compatibility
from .errors import (
    DomainError,
    InputError,
    NotInvariantError,
    NotStabilizedError,
    SelfAffineError,
)
from .expansion import Spectrum, check_theorem_condition, eigen_data, witness_for
from .numbers import abs_exceeds_one, embed
from .specfile import BoundarySpec, load, load_boundary, load_rule
from .substitution import (
    SubstitutionRule,
    check_control_identity,
    control_points,
    expand_patch,
    is_primitive,
    patch_to_json,
    seed_patch,
    subdivision_matrix,
    volume_consistency,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class Output:
    def __init__(self, args):
        self.as_json = args.json
        self.quiet = args.quiet
        self.bits = args.precision

    def line(self, text: str = "") -> None:
        if not self.quiet and not self.as_json:
            print(text)

    def verdict(self, text: str) -> None:
        if not self.as_json:
            print(text)

    def report(self, data) -> None:
        if self.as_json:
            print(json.dumps(data, indent=2))

    def number(self, z: complex) -> str:
        digits = max(6, min(30, int(self.bits * math.log10(2)) - 2))
        if z.imag == 0:
            return f"{z.real:.{min(digits, 15)}g}"
        return f"{z.real:.{min(digits, 15)}g}{z.imag:+.{min(digits, 15)}g}i"


def _describe(a, out: Output) -> str:
    return f"{out.number(a.to_complex())} (root of {a.min_poly})"


def _spectrum_for_file(path) -> Spectrum:
    """Eigenvalues of the expansion in an expansion file or a rule file."""
    obj = load(path)
    if isinstance(obj, BoundarySpec):
        raise InputError(f"{path}: a boundary file has no expansion to check")
    if not isinstance(obj, SubstitutionRule):
        return eigen_data(obj)
    spec = obj.spectrum()
    for a in spec:
        if not abs_exceeds_one(a):
            raise DomainError(f"map is not expanding: eigenvalue {a!r} has modulus <= 1")
    return spec


# commands ----------------------------------------------------------------------


def _print_verdict(verdict, out: Output) -> None:
    for r in verdict.reports:
        kind = "algebraic integer" if r.algebraic_integer else "NOT an algebraic integer"
        out.line(f"eigenvalue {_describe(r.eigenvalue, out)}, multiplicity {r.multiplicity}, {kind}")
        for c in r.conjugates:
            rel = ["smaller", "equal", "larger"][c.comparison + 1]
            flag = "ok" if c.ok else "VIOLATION"
            out.line(f"  conjugate {out.number(c.conjugate.to_complex())}: {rel} modulus, "
                     f"multiplicity {c.multiplicity}  {flag}")
    for f in verdict.failures:
        out.line(f"failure: {f}")


def cmd_check_expansion(args, out: Output) -> int:
    spec = _spectrum_for_file(args.file)
    verdict = check_theorem_condition(spec)
    _print_verdict(verdict, out)
    out.verdict("PASS" if verdict.passed else "FAIL")
    out.report(verdict.to_json())
    return EXIT_PASS if verdict.passed else EXIT_FAIL


def cmd_witness(args, out: Output) -> int:
    spec = _spectrum_for_file(args.file)
    if spec.non_integral():
        bad = ", ".join(_describe(a, out) for a in spec.non_integral())
        out.verdict(f"FAIL: no integer witness, eigenvalues {bad} are not algebraic integers")
        out.report({"M": None, "strict_max": False, "non_integral": [a.min_poly.to_json() for a in spec.non_integral()]})
        return EXIT_FAIL
    rep = witness_for(spec)
    out.line("companion witness M:")
    for row in rep.M:
        out.line("  " + " ".join(f"{v:4d}" for v in row))
    out.line(f"target growth {rep.growth:.10g}")
    for c in rep.competitors:
        rel = ["smaller", "equal", "larger"][c.comparison + 1]
        members = ", ".join(out.number(a.to_complex()) for a in c.multiset.elements())
        out.line(f"  competitor {{{members}}}: growth {c.growth:.10g} ({rel})")
    out.verdict(f"strict_max {'true' if rep.strict_max else 'false'}")
    out.report(rep.to_json())
    return EXIT_PASS if rep.strict_max else EXIT_FAIL


def _tiling_check(rule: SubstitutionRule, args, out: Output) -> int:
    sm = subdivision_matrix(rule)
    prim = is_primitive(sm)
    out.line(f"tile types: {', '.join(sm.types)}")
    out.line("subdivision matrix:")
    for row in sm.m:
        out.line("  " + " ".join(f"{v:3d}" for v in row))
    out.line(f"primitive: {'yes' if prim else 'no'}")
    report = {"types": list(sm.types), "subdivision_matrix": sm.as_list(), "primitive": prim}
    ok = prim
    if prim:
        vol = volume_consistency(rule)
        out.line(f"Perron-Frobenius eigenvalue {vol.pf_eigenvalue:.12g}, |det phi| {vol.abs_det:.12g}, "
                 f"difference {vol.difference:.2g}: {'consistent' if vol.consistent else 'INCONSISTENT'}")
        report["volume"] = vol.to_json()
        ok = ok and vol.consistent
    spec = rule.spectrum()
    verdict = check_theorem_condition(spec)
    _print_verdict(verdict, out)
    report["eigenvalue_condition"] = verdict.to_json()
    cps = control_points(rule)
    ident = check_control_identity(rule, cps)
    out.line(f"control point identity: {'holds' if ident else 'FAILS'}")
    report["control_identity"] = ident
    ok = ok and verdict.passed and ident
    out.verdict("PASS" if ok else "FAIL")
    out.report(report)
    return EXIT_PASS if ok else EXIT_FAIL


def _tile_outlines(path, rule: SubstitutionRule, iters: int) -> dict:
    outlines = {}
    try:
        b = load_boundary(path)
    except SelfAffineError:
        b = None
    for t in rule.tiles:
        if b is not None and t.name in b.words:
            outlines[t.name] = boundary_curve(b.assignment, b.endomorphism, b.words[t.name], iters).points
        elif t.seed_polygon:
            outlines[t.name] = np.array(t.seed_polygon)
    return outlines


def _tiling_expand(rule: SubstitutionRule, args, out: Output) -> int:
    seed = args.seed or rule.type_names[0]
    if seed not in rule.type_names:
        raise InputError(f"unknown tile type {seed!r}; types are {', '.join(rule.type_names)}")
    if args.levels < 0:
        raise InputError("--levels must be nonnegative")
    patch = expand_patch(rule, seed_patch(rule, seed), args.levels)
    counts = patch.counts()
    out.line(f"level {patch.level} patch from {seed}: {len(patch)} tiles "
             f"({', '.join(f'{n}: {counts[n]}' for n in rule.type_names)})")
    if args.svg:
        if rule.real_dimension != 2:
            raise DomainError("SVG output needs a two-dimensional rule")
        outlines = _tile_outlines(args.file, rule, args.iters)
        phi = fl.real_matrix(rule.field_spec, rule.expansion)
        back = np.linalg.matrix_power(np.linalg.inv(phi), patch.level)
        names = rule.type_names
        paths = []
        for name, v in patch.tiles:
            shift = np.array(rule.numeric(v))
            if name in outlines:
                pts = (outlines[name] + shift) @ back.T
            else:
                pts = np.array([shift]) @ back.T
            color = svg.PALETTE[names.index(name) % len(svg.PALETTE)]
            paths.append((pts, {"stroke": "#222222", "fill": color, "label": name}))
        svg.write(args.svg, paths)
        out.line(f"wrote {args.svg}")
    out.report(patch_to_json(rule, patch))
    return EXIT_PASS


def _tiling_controlpoints(rule: SubstitutionRule, args, out: Output) -> int:
    cps = control_points(rule)
    ident = check_control_identity(rule, cps)
    prec = Fraction(1, 2 ** args.precision)
    report = []
    for name, v in cps.items():
        nums = []
        for i, x in enumerate(v):
            nums.append(embed(x, rule.field_spec.axis_root(i), prec).to_complex())
        exact = ", ".join(str(x) for x in v)
        out.line(f"{name}: ({exact})  ~ ({', '.join(out.number(z) for z in nums)})")
        numeric = [float(f"{x:.15g}") for x in rule.numeric(v)]
        report.append({"type": name, "exact": fl.vector_json(v), "numeric": numeric})
    out.line(f"identity phi c_i = c_s(i) + d_i: {'holds' if ident else 'FAILS'}")
    out.verdict("PASS" if ident else "FAIL")
    out.report({"control_points": report, "identity": ident})
    return EXIT_PASS if ident else EXIT_FAIL


def _tiling_addressmap(rule: SubstitutionRule, args, out: Output) -> int:
    try:
        amap = stabilized_address_map(rule, args.k_max)
    except NotStabilizedError as exc:
        out.verdict(f"FAIL: {exc}")
        out.report({"error": str(exc), "last_normal_forms": [[[str(x) for x in row] for row in f]
                                                             for f in exc.last_forms]})
        return EXIT_FAIL
    try:
        e = expansion_on_J(amap)
    except NotInvariantError as exc:
        out.verdict(f"FAIL: {exc}")
        out.report({"error": str(exc)})
        return EXIT_FAIL
    rep = verify_M_properties(e)
    data = address_report(e, rep)
    out.line(f"module stabilized at level {amap.level}, rank N = {amap.rank}")
    out.line("generators (columns of V):")
    for v in amap.basis.generators:
        out.line("  (" + ", ".join(str(x) for x in v) + ")")
    out.line("M:")
    for row in e.M:
        out.line("  " + " ".join(f"{x:4d}" for x in row))
    out.line(f"char poly of M: {rep.char_poly}")
    out.line(f"phi V = V M: {e.phi_v_equals_v_m}; a(phi x) = M a(x): {e.address_equivariant}")
    out.line(f"diagonalizable: {rep.diagonalizable}")
    for poly, ok in rep.divisibility.items():
        out.line(f"divisible by {poly}: {ok}")
    out.line("Lipschitz diagnostic: " + ", ".join(f"level {k}: {v:.4g}" for k, v in rep.lipschitz.items()))
    ok = rep.passed and e.phi_v_equals_v_m and e.address_equivariant
    out.verdict("PASS" if ok else "FAIL")
    out.report(data)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_tiling(args, out: Output) -> int:
    rule = load_rule(args.file)
    return {
        "check": _tiling_check,
        "expand": _tiling_expand,
        "controlpoints": _tiling_controlpoints,
        "addressmap": _tiling_addressmap,
    }[args.action](rule, args, out)


def cmd_boundary(args, out: Output) -> int:
    b = load_boundary(args.file)
    compatible = check_compatibility(b.assignment, b.endomorphism)
    out.line(f"vectors compatible with the endomorphism: {'yes' if compatible else 'NO'}")
    if args.word:
        words = [(w, w) for w in args.word]
    else:
        words = list(b.words.items())
    if not words:
        raise DomainError("no words given and none listed in the file")
    curves = []
    for label, w in words:
        c = boundary_curve(b.assignment, b.endomorphism, w, args.iters)
        name = c.word if label == c.word else f"{label} = {c.word}"
        out.line(f"{name}: {c.letters} letters after {c.iterations} iterations, "
                 f"{'closed exactly' if c.closed else 'NOT closed'}")
        curves.append((label, c))
    ok = compatible and all(c.closed for _, c in curves)
    if args.svg:
        if curves[0][1].points.shape[1] != 2:
            raise DomainError("SVG output needs two-dimensional vectors")
        svg.write(args.svg, [(c.points, {"label": label}) for label, c in curves])
        out.line(f"wrote {args.svg}")
    if args.polyline:
        with open(args.polyline, "w", encoding="utf-8") as f:
            json.dump({label: c.to_json() for label, c in curves}, f, indent=2)
            f.write("\n")
        out.line(f"wrote {args.polyline}")
    out.verdict("PASS" if ok else "FAIL")
    out.report({"compatible": compatible,
                "curves": [{"label": label, "word": c.word, "iterations": c.iterations,
                            "letters": c.letters, "closed_exact": c.closed} for label, c in curves]})
    return EXIT_PASS if ok else EXIT_FAIL


# parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=argparse.SUPPRESS, metavar="BITS",
                        help="bits of certified precision for printed numbers (default 128)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print a JSON report instead of text")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="print only the verdict")

    p = argparse.ArgumentParser(prog="selfaffine", parents=[common],
                                description="Checks and figures for self-affine tilings.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check-expansion", parents=[common], help="check the eigenvalue condition for an expansion")
    c.add_argument("file")
    c.set_defaults(func=cmd_check_expansion)

    w = sub.add_parser("witness", parents=[common], help="companion-matrix witness and growth comparison")
    w.add_argument("file")
    w.set_defaults(func=cmd_witness)

    t = sub.add_parser("tiling", parents=[common], help="substitution rule tools")
    t.add_argument("action", choices=["check", "expand", "controlpoints", "addressmap"])
    t.add_argument("file")
    t.add_argument("--levels", type=int, default=1, help="subdivision levels for expand (default 1)")
    t.add_argument("--seed", help="tile type to expand (default: first type)")
    t.add_argument("--svg", metavar="OUT", help="write the expanded patch as SVG")
    t.add_argument("--iters", type=int, default=6, help="boundary iterations for tile outlines (default 6)")
    t.add_argument("--k-max", type=int, default=DEFAULT_K_MAX, help="largest level for addressmap")
    t.set_defaults(func=cmd_tiling)

    b = sub.add_parser("boundary", parents=[common], help="render boundary curves of tiles")
    b.add_argument("file")
    b.add_argument("--word", action="append", help="word such as '[a,c]' (repeatable; default: words in the file)")
    b.add_argument("--iters", type=int, default=6, help="iterations of the endomorphism (default 6)")
    b.add_argument("--svg", metavar="OUT", help="write the curves as SVG")
    b.add_argument("--polyline", metavar="OUT", help="write the curves as JSON polylines")
    b.set_defaults(func=cmd_boundary)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    for name, default in (("precision", 128), ("json", False), ("quiet", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    if args.precision < 16:
        print("error: --precision must be at least 16 bits", file=sys.stderr)
        return EXIT_INPUT
    out = Output(args)
    try:
        return args.func(args, out)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        out.verdict("FAIL")
        return EXIT_FAIL
    except (SelfAffineError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
