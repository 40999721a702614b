"""Command line: hh, bracket, verify and export-resolution.

Reports are JSON on stdout (or --out); a one-line summary goes to stderr.
Exit status: 0 when every check matched, 1 on a mismatch, 2 on bad input.
"""

import argparse
import json
import os
import sys

from .algebra import builtin_algebra, load_algebra
from .connes import ConnesContraction, bracket_via_bv
from .dihedral import dihedral_resolution
from .errors import HochschildError, UnsupportedOperation, UsageError, ValidationError
from .fields import Field
from .gerstenhaber import (BarCochain, LeftCalculus, bar_bracket, bracket_contracting, bracket_lifting, bracket_nw,
                           cup_via_diagonal, goodcond, homotopy_lifting, mu_homotopy)
from .resolutions import (Cohomology, TraceHomology, bar_contraction, bar_resolution, cochain_combine,
                          compute_contraction, dual_numbers_resolution, evaluate, lift_chain_map, load_resolution,
                          pullback, resolution_to_json)
from .verify import format_cochain, summarize, verify_dihedral_tables

METHODS = ["bar", "lifting", "contracting", "nw", "bv"]


def build_resolution(algebra, char, depth):
    """(Resolution, ContractingHomotopy) for a built-in name or an algebra file.

    ``char`` None keeps the field of an algebra file and means Q for built-ins.
    """
    field = Field.from_char(char or 0)
    if algebra.startswith("dihedral:"):
        return dihedral_resolution(int(algebra.split(":", 1)[1]), field, depth)
    if os.path.exists(algebra):
        A = load_algebra(algebra, None if char is None else field)
    else:
        A = builtin_algebra(algebra, field)
    if A.name == "dual-numbers":
        res = dual_numbers_resolution(A, depth)
        return res, compute_contraction(res)
    res = bar_resolution(A, depth)
    return res, bar_contraction(res)


def job(args):
    if getattr(args, "resolution", None):
        res, c = load_resolution(args.resolution)
        if c is None:
            c = compute_contraction(res)
        return res, c
    return build_resolution(args.algebra, args.char, args.depth)


def emit(args, report, summary, status):
    text = json.dumps(report, indent=1, ensure_ascii=False) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(summary, file=sys.stderr)
    return status


def cmd_hh(args):
    if args.depth < args.max_degree + 1:
        raise UsageError(f"depth {args.depth} < max degree {args.max_degree} + 1")
    res, _ = job(args)
    P = res.P
    rows = []
    for n in range(args.max_degree + 1):
        H = Cohomology(res, n)
        Hh = TraceHomology(res, n)
        rows.append({"degree": n, "HH^n": H.dim, "HH_n": Hh.dim,
                     "cocycle-basis": [format_cochain(P, f) for f in H.basis]})
    report = {"algebra": res.algebra.name, "char": res.field.char, "depth": res.depth, "degrees": rows}
    dims = " ".join(f"{r['degree']}:{r['HH^n']}/{r['HH_n']}" for r in rows)
    return emit(args, report, f"dim HH^n/HH_n  {dims}", 0)


class Brackets:
    """[f, g] by each available method, on a fixed resolution."""

    def __init__(self, res, contraction):
        self.res, self.c = res, contraction
        self.L = LeftCalculus(res, contraction)
        self._bar = None
        self._phi = None
        self._connes = None

    def transfer(self, depth):
        if self._bar is None or self._bar[0].depth < depth:
            A = self.res.algebra
            bar = bar_resolution(A, depth)
            toP = lift_chain_map(bar, self.res, self.c)
            toB = lift_chain_map(self.res, bar, bar_contraction(bar))
            self._bar = (bar, toP, toB)
        return self._bar

    def bar(self, f, g):
        _, toP, toB = self.transfer(f.degree + g.degree)
        A, P = self.res.algebra, self.res.P

        def lift(h):
            return BarCochain(A, h.degree, fn=lambda t: evaluate(P, h, toP.image(t)))

        return pullback(bar_bracket(lift(f), lift(g)), toB)

    def lifting(self, f, g):
        d = self.L.delta_image
        return bracket_lifting(self.res, f, g, homotopy_lifting(self.res, f, d), homotopy_lifting(self.res, g, d))

    def contracting(self, f, g):
        return bracket_contracting(self.L, f, g)

    def nw(self, f, g):
        if self._phi is None:
            self._phi = mu_homotopy(self.res)
        eps = "zero" if goodcond(self.L, f.degree + g.degree) else "substituted"
        return bracket_nw(self.L, f, g, self._phi, eps)

    def bv(self, f, g):
        if not self.res.algebra.is_symmetric:
            raise UnsupportedOperation("the bv method needs a symmetric algebra")
        if self._connes is None:
            self._connes = ConnesContraction(self.L)
        return bracket_via_bv(self.res, self._connes, lambda x, y: cup_via_diagonal(self.res, x, y, self.L.delta_image),
                              f, g)


def cmd_bracket(args):
    methods = args.method or ["contracting"]
    for m in methods:
        if m not in METHODS:
            raise UsageError(f"unknown method {m!r}")
    n, m = args.degrees
    if args.depth < n + m:
        raise UsageError(f"depth {args.depth} < {n + m} needed for degrees {n}, {m}")
    res, c = job(args)
    if "bv" in methods and not res.algebra.is_symmetric:
        raise UsageError("the bv method needs a symmetric algebra")
    Hn, Hm = Cohomology(res, n), Cohomology(res, m)
    target = Cohomology(res, n + m - 1) if n + m >= 1 else None
    pairs = [(i, j) for i in range(Hn.dim) for j in range(Hm.dim)]
    if args.classes:
        i, j = args.classes
        if not (0 <= i < Hn.dim and 0 <= j < Hm.dim):
            raise UsageError(f"class indices out of range: HH^{n} has {Hn.dim}, HH^{m} has {Hm.dim}")
        pairs = [(i, j)]
    eng = Brackets(res, c)
    F, P = res.field, res.P
    rows, bad = [], 0
    for i, j in pairs:
        f, g = Hn.basis[i], Hm.basis[j]
        vals = {name: getattr(eng, name)(f, g) for name in methods}
        entry = {"classes": [i, j], "values": {k: format_cochain(P, v) for k, v in vals.items()}}
        if target is not None:
            entry["coordinates"] = {k: {str(a): F.format(b) for a, b in sorted(target.coordinates(v).items())}
                                    for k, v in vals.items()}
        if len(methods) > 1:
            first = vals[methods[0]]
            same = all(target is None or target.is_coboundary(cochain_combine(F, n + m - 1, (1, v), (-1, first)))
                       for v in vals.values())
            entry["verdict"] = "equal" if same else "different"
            bad += not same
        rows.append(entry)
    report = {"algebra": res.algebra.name, "char": F.char, "degrees": [n, m], "methods": methods, "brackets": rows}
    summary = f"{len(rows)} bracket(s) by {', '.join(methods)}"
    if len(methods) > 1:
        summary += f"; {len(rows) - bad} equal, {bad} different"
    return emit(args, report, summary, 1 if bad else 0)


def cmd_verify(args):
    field = Field.from_char(args.char or 0)
    resolution = None
    if args.resolution:
        try:
            resolution = load_resolution(args.resolution)
        except ValidationError as e:
            report = [{"claim-id": f"structure:{e.identity}", "status": "mismatch", "lhs": str(e), "rhs": "holds"}]
            return emit(args, report, f"validation error: {e.identity}: {e}", 1)
    rows = verify_dihedral_tables(args.k, field, args.depth, resolution=resolution)
    counts = summarize(rows)
    summary = " ".join(f"{k}={v}" for k, v in counts.items())
    return emit(args, rows, summary, 1 if counts["mismatch"] else 0)


def cmd_export(args):
    res, c = job(args)
    report = resolution_to_json(res, c)
    return emit(args, report, f"resolution of {res.algebra.name} to degree {res.depth}", 0)


def parser():
    ap = argparse.ArgumentParser(prog="hochschild", description="Hochschild (co)homology and its operations.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, algebra=True):
        if algebra:
            p.add_argument("--algebra", default="dihedral:2", help="algebra file or dihedral:k, dual-numbers, field")
        p.add_argument("--char", type=int, help="0 or a prime (default 0, or the field of an algebra file)")
        p.add_argument("--depth", type=int, default=5, help="truncation depth of the resolution")
        p.add_argument("--resolution", help="resolution file to use instead of the built-in one")
        p.add_argument("--out", help="write the report here instead of stdout")

    p = sub.add_parser("hh", help="dimensions and cocycle bases")
    common(p)
    p.add_argument("--max-degree", type=int, default=3)
    p.set_defaults(fn=cmd_hh)

    p = sub.add_parser("bracket", help="Gerstenhaber brackets of cohomology basis classes")
    common(p)
    p.add_argument("--degrees", type=int, nargs=2, required=True, metavar=("N", "M"))
    p.add_argument("--classes", type=int, nargs=2, metavar=("I", "J"), help="basis indices (default: all pairs)")
    p.add_argument("--method", action="append", choices=METHODS)
    p.set_defaults(fn=cmd_bracket)

    p = sub.add_parser("verify", help="identity suite and closed-form tables for the dihedral family")
    p.add_argument("--k", type=int, default=2)
    common(p, algebra=False)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("export-resolution", help="write a resolution file with its contracting homotopy")
    common(p)
    p.set_defaults(fn=cmd_export)
    return ap


def main(argv=None):
    args = parser().parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, UnsupportedOperation) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValidationError as e:
        print(f"validation error ({e.identity}): {e}", file=sys.stderr)
        return 2
    except (HochschildError, OSError, KeyError, json.JSONDecodeError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
