"""Command line interface.

Exit codes: 0 success, 1 unusable input (parse errors, structural
violations, unknown names), 2 non-generic or degenerate data, 3 internal
invariant failure.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import io as fmt
from .arrangement import (SingularLocus, build_codomain_stratification,
                          coarseness_check, render_svg,
                          stratify_singular_locus)
from .complexes import manifold_check
from .errors import (GenericityError, InputError, InternalError, PLStratError)
from .jacobi import check_generic, domain_stratification, jacobi_set
from .posets import linear_subposets
from .reeb import (check_stein_square, interval_fiber_audit, reeb_graph,
                   reeb_scaffold, stratum_fiber_audit)

NOTION_CHOICES = ("H", "D", "L")


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; that code is reserved here
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _emit(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_input(args):
    if args.example is not None:
        return fmt.example_map(args.example)
    if args.input is None:
        raise InputError("provide an input file or --example NAME")
    return fmt.load_map(args.input)


def _load_any(args):
    """A map or a drawn contour, whichever the input happens to hold."""
    if args.example is not None:
        return fmt.example_input(args.example)
    if args.input is None:
        raise InputError("provide an input file or --example NAME")
    return fmt.load_input(args.input)


def _add_input_args(sub):
    sub.add_argument("input", nargs="?", help="map JSON file")
    sub.add_argument("--example", help="use a bundled example instead of a file")


def cmd_validate(args) -> int:
    f = _load_input(args)
    gen = check_generic(f)
    man = manifold_check(f.domain)
    doc = {"k": f.k,
           "vertices": len(f.domain.vertices),
           "simplices": len(f.domain.sorted_simplices()),
           "genericity": fmt.genericity_to_dict(gen),
           "manifold": fmt.manifold_to_dict(man)}
    _emit(fmt.canonical_dumps(doc), args.out)
    return 0 if gen.passed else 2


def cmd_jacobi(args) -> int:
    f = _load_input(args)
    j = jacobi_set(f, args.notion, jobs=args.jobs)
    _emit(fmt.canonical_dumps(fmt.jacobi_report_dict(f, j)), args.out)
    return 0


def cmd_stratify_domain(args) -> int:
    f = _load_input(args)
    space = domain_stratification(f, args.notion)
    _emit(fmt.canonical_dumps(fmt.stratified_space_to_dict(space)), args.out)
    return 0


def cmd_stratify_codomain(args) -> int:
    f = _load_input(args)
    j = jacobi_set(f, args.notion)
    cs = build_codomain_stratification(f, j)
    _emit(fmt.canonical_dumps(fmt.codomain_to_dict(cs)), args.out)
    if args.svg:
        _emit(render_svg(cs), args.svg)
    return 0


def cmd_reeb(args) -> int:
    f = _load_input(args)
    if f.k == 1:
        rg = reeb_graph(f, args.notion)
        audit = interval_fiber_audit(f, args.notion, samples=args.samples)
        doc = {"reeb": fmt.reeb_to_dict(rg),
               "fiber_audit": fmt.fiber_audit_to_dict(audit)}
    else:
        sc = reeb_scaffold(f, args.notion)
        stein = check_stein_square(f, sc)
        ok, per_stratum = stratum_fiber_audit(f, sc, samples=args.samples)
        doc = {"scaffold": fmt.scaffold_to_dict(sc),
               "stein": fmt.stein_to_dict(stein),
               "fiber_audit": {"passed": ok,
                               "per_stratum": {s: list(c)
                                               for s, c in sorted(per_stratum.items())}}}
    _emit(fmt.canonical_dumps(doc), args.out)
    return 0


def cmd_locus(args) -> int:
    if args.example is not None:
        locus = fmt.example_locus(args.example)
    elif args.input is not None:
        locus = fmt.load_locus(args.input)
    else:
        raise InputError("provide a contour file or --example NAME")
    ls = stratify_singular_locus(locus)
    coarse, removable = coarseness_check(ls)
    doc = fmt.locus_stratification_to_dict(ls)
    doc["coarse"] = coarse
    doc["removable"] = removable
    _emit(fmt.canonical_dumps(doc), args.out)
    if args.svg:
        _emit(render_svg(ls), args.svg)
    return 0


def _stage(name, fn):
    # failures carry the stage so a bundle abort is attributable
    try:
        return fn()
    except PLStratError as exc:
        raise type(exc)(f"stage {name}: {exc}") from exc


def cmd_pipeline(args) -> int:
    obj = _load_any(args)
    os.makedirs(args.out, exist_ok=True)

    def write(name, text):
        with open(os.path.join(args.out, name), "w", encoding="utf-8") as fh:
            fh.write(text)

    if isinstance(obj, SingularLocus):
        ls = _stage("locus", lambda: stratify_singular_locus(obj))
        coarse, removable = coarseness_check(ls)
        doc = fmt.locus_stratification_to_dict(ls)
        doc["coarse"] = coarse
        doc["removable"] = removable
        write("codomain_strat.json", fmt.canonical_dumps(doc))
        if args.svg:
            write("codomain_strat.svg", render_svg(ls))
        return 0

    f = obj
    gen = _stage("validate", lambda: check_generic(f))
    man = _stage("validate", lambda: manifold_check(f.domain))
    write("validate.json", fmt.canonical_dumps(
        {"k": f.k, "vertices": len(f.domain.vertices),
         "simplices": len(f.domain.sorted_simplices()),
         "genericity": fmt.genericity_to_dict(gen),
         "manifold": fmt.manifold_to_dict(man)}))
    if not gen.passed:
        return 2

    j = _stage("jacobi", lambda: jacobi_set(f, args.notion, jobs=args.jobs))
    write("jacobi.json", fmt.canonical_dumps(fmt.jacobi_report_dict(f, j)))
    space = _stage("domain", lambda: domain_stratification(f, args.notion))
    write("domain_strat.json",
          fmt.canonical_dumps(fmt.stratified_space_to_dict(space)))

    if f.k in (1, 2):
        cs = _stage("codomain", lambda: build_codomain_stratification(f, j))
        write("codomain_strat.json", fmt.canonical_dumps(fmt.codomain_to_dict(cs)))
        if args.svg:
            write("codomain_strat.svg", render_svg(cs))
        if args.filtration:
            chain = linear_subposets(cs.space.poset)[0]
            write("filtration.txt", fmt.filtration_text(chain))

    if f.k == 1:
        rg = _stage("reeb", lambda: reeb_graph(f, args.notion))
        write("reeb.json", fmt.canonical_dumps(fmt.reeb_to_dict(rg)))
        if args.dot:
            write("reeb.dot", fmt.reeb_to_dot(rg))
        audit = _stage("audit", lambda: interval_fiber_audit(
            f, args.notion, samples=args.samples))
        write("audit.json", fmt.canonical_dumps(fmt.fiber_audit_to_dict(audit)))
    elif f.k == 2:
        sc = _stage("scaffold", lambda: reeb_scaffold(f, args.notion))
        stein = _stage("scaffold", lambda: check_stein_square(f, sc))
        sdoc = fmt.scaffold_to_dict(sc)
        sdoc["stein"] = fmt.stein_to_dict(stein)
        write("scaffold.json", fmt.canonical_dumps(sdoc))
        ok, per_stratum = _stage("audit", lambda: stratum_fiber_audit(
            f, sc, samples=args.samples))
        write("audit.json", fmt.canonical_dumps(
            {"passed": ok,
             "per_stratum": {s: list(c)
                             for s, c in sorted(per_stratum.items())}}))
    return 0


def cmd_filtration(args) -> int:
    obj = _load_any(args)
    if isinstance(obj, SingularLocus):
        space = stratify_singular_locus(obj).space
    else:
        if obj.k not in (1, 2):
            raise InputError("filtration export needs one or two parameters")
        space = build_codomain_stratification(obj, jacobi_set(obj, args.notion)).space
    chains = linear_subposets(space.poset)
    if args.chain:
        chain = tuple(args.chain.split(","))
        if chain not in chains:
            raise InputError(f"no maximal chain {args.chain!r} in the "
                             f"stratification poset")
    else:
        chain = chains[0]
    _emit(fmt.filtration_text(chain), args.out)
    return 0


def cmd_example(args) -> int:
    if args.name is None:
        _emit("\n".join(fmt.example_names()) + "\n", args.out)
        return 0
    data = fmt.load_example(args.name)
    _emit(fmt.canonical_dumps(data), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="plstrat",
                     description="Stratifications of piecewise linear maps: "
                                 "critical loci, plane arrangements of their "
                                 "images, Reeb graphs and fiber scaffolds.")
    subs = parser.add_subparsers(dest="command", required=True)

    def common(sub, notion=True, jobs=False, samples=False, svg=False):
        _add_input_args(sub)
        sub.add_argument("--out", help="output path, '-' or omitted for stdout")
        if notion:
            sub.add_argument("--notion", choices=NOTION_CHOICES, default="H",
                             help="criticality notion (default H)")
        if jobs:
            sub.add_argument("--jobs", type=int, default=1,
                             help="worker threads for per-simplex tests")
        if samples:
            sub.add_argument("--samples", type=int, default=3,
                             help="probe points per interval or stratum")
        if svg:
            sub.add_argument("--svg", help="also write an SVG picture here")

    s = subs.add_parser("validate", help="parse, audit genericity and manifoldness")
    common(s, notion=False)
    s.set_defaults(func=cmd_validate)

    s = subs.add_parser("jacobi", help="critical locus under a notion")
    common(s, jobs=True)
    s.set_defaults(func=cmd_jacobi)

    s = subs.add_parser("stratify-domain", help="domain strata around the locus")
    common(s)
    s.set_defaults(func=cmd_stratify_domain)

    s = subs.add_parser("stratify-codomain",
                        help="plane strata cut by the critical values")
    common(s, svg=True)
    s.set_defaults(func=cmd_stratify_codomain)

    s = subs.add_parser("reeb", help="Reeb graph (k=1) or component scaffold (k=2)")
    common(s, samples=True)
    s.set_defaults(func=cmd_reeb)

    s = subs.add_parser("morse2-locus", help="stratify a drawn apparent contour")
    s.add_argument("input", nargs="?", help="contour JSON file")
    s.add_argument("--example", help="use a bundled example instead of a file")
    s.add_argument("--out", help="output path, '-' or omitted for stdout")
    s.add_argument("--svg", help="also write an SVG picture here")
    s.set_defaults(func=cmd_locus)

    s = subs.add_parser("pipeline",
                        help="write every applicable artifact to a directory")
    _add_input_args(s)
    s.add_argument("--out", required=True, help="bundle output directory")
    s.add_argument("--notion", choices=NOTION_CHOICES, default="H",
                   help="criticality notion (default H)")
    s.add_argument("--jobs", type=int, default=1,
                   help="worker threads for per-simplex tests")
    s.add_argument("--samples", type=int, default=3,
                   help="probe points per interval or stratum")
    s.add_argument("--svg", action=argparse.BooleanOptionalAction, default=True,
                   help="write SVG pictures")
    s.add_argument("--dot", action=argparse.BooleanOptionalAction, default=True,
                   help="write DOT graphs")
    s.add_argument("--filtration", action=argparse.BooleanOptionalAction,
                   default=False, help="also write a chain filtration file")
    s.set_defaults(func=cmd_pipeline)

    s = subs.add_parser("export-filtration",
                        help="one maximal chain of codomain strata as a filtration")
    common(s)
    s.add_argument("--chain", help="comma separated stratum labels; "
                                   "first maximal chain when omitted")
    s.set_defaults(func=cmd_filtration)

    s = subs.add_parser("example", help="print a bundled example input")
    s.add_argument("name", nargs="?", help="example name; omit to list")
    s.add_argument("--out", help="output path, '-' or omitted for stdout")
    s.set_defaults(func=cmd_example)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except GenericityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except PLStratError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
