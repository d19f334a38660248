"""Command line: ``prismtab {schubert,enumerate,verify}``.

Exit codes: 0 success, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import harness
from .multiplus import all_multi, components_for
from .permutation import Permutation, parse_permutation
from .pipedream import min_plus
from .polynomial import schubert
from .prism import prism, prism_polynomial, weight
from .srcomplex import int_plus

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _perm(text: str) -> Permutation:
    try:
        return parse_permutation(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _wstr(w: Permutation) -> str:
    return "".join(map(str, w.window)) if w.n < 10 else ",".join(map(str, w.window))


def _emit(args, text: str | None = None, obj=None) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")
    else:
        sys.stdout.write(text + "\n")


def cmd_schubert(args) -> int:
    w = _perm(args.w)
    model = args.model
    if args.check and model == "schubert":
        model = "both"
    s = schubert(w, nvars=w.n) if model in ("schubert", "both") else None
    p = prism_polynomial(w) if model in ("prism", "both") else None
    obj = {"w": _wstr(w)}
    lines = []
    if model == "schubert":
        obj["schubert"] = s.to_json_obj()
        lines.append(s.to_text())
    elif model == "prism" and not args.check:
        obj["prism"] = p.to_json_obj()
        lines.append(p.to_text())
    else:
        if s is None:
            s = schubert(w, nvars=w.n)
        equal = s == p
        obj.update(schubert=s.to_json_obj(), prism=p.to_json_obj(), equal=equal)
        lines.append(f"schubert: {s.to_text()}")
        lines.append(f"prism:    {p.to_text()}")
        lines.append("check: OK" if equal else "check: MISMATCH")
        _emit(args, "\n".join(lines), obj)
        return EXIT_OK if equal else EXIT_FAIL
    _emit(args, "\n".join(lines), obj)
    return EXIT_OK


def _indent(block: str) -> str:
    return "\n".join("  " + line for line in block.splitlines())


def cmd_enumerate(args) -> int:
    w = _perm(args.w)
    kind = args.kind
    if w.n > harness.LONG_CEILING and not args.long:
        raise UsageError(f"enumerating in S_{w.n} needs --long")
    items_text, items_json = [], []
    if kind == "prism":
        for T in prism(w):
            items_text.append(f"{_indent(T.to_text())}\n  weight: {weight(T).to_text()}")
            items_json.append({"tableau": T.to_json_obj(), "weight": weight(T).to_json_obj()})
        noun = "prism tableaux"
    elif kind == "pipedreams":
        for P in min_plus(w):
            items_text.append(_indent(P.to_text()))
            items_json.append(P.to_json_obj())
        noun = "reduced pipe dreams"
    elif kind == "multiplus":
        comps = components_for(w)
        for Q in sorted(all_multi(w), key=lambda q: q.sort_key()):
            items_text.append(_indent(Q.to_text()))
            items_json.append(Q.to_json_obj())
        noun = "multi-plus diagrams over " + (", ".join(_wstr(u) for u in comps) or "no components")
    else:
        for P in int_plus(w):
            items_text.append(_indent(P.to_text()))
            items_json.append(P.to_json_obj())
        noun = "interior plus diagrams"
    header = f"# {len(items_text)} {noun} for {_wstr(w)}"
    text = "\n\n".join([header] + [f"[{k}]\n{t}" for k, t in enumerate(items_text, 1)])
    _emit(args, text, {"w": _wstr(w), "kind": kind, "count": len(items_json), "items": items_json})
    return EXIT_OK


def cmd_verify(args) -> int:
    suite = args.suite
    n = args.n if args.n is not None else harness.DEFAULT_N[suite]
    if suite == "table1":
        n = 4
    ceiling = harness.LONG_CEILING if args.long else harness.DEFAULT_CEILING
    if n > ceiling:
        hint = " (use --long)" if not args.long else ""
        raise UsageError(f"n={n} exceeds the ceiling {ceiling}{hint}")
    if n < 1:
        raise UsageError("n must be positive")
    report = harness.run_suite(suite, n, jobs=args.jobs)
    if args.report:
        obj = report.to_json_obj()
        if suite == "conjecture":
            obj["records"] = harness.conjecture_records(n)
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(obj, fh, indent=2)
            fh.write("\n")
    lines = [report.summary()]
    for w, check, witness in report.failures[:20]:
        lines.append(f"  {w}: {check}: {witness}")
    if len(report.failures) > 20:
        lines.append(f"  ... {len(report.failures) - 20} more")
    _emit(args, "\n".join(lines), report.to_json_obj(with_time=False))
    return EXIT_OK if report.passed else EXIT_FAIL


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # shared so the flags work before or after the subcommand
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("text", "json"), default=d("text"))
    p.add_argument("--jobs", type=int, default=d(os.cpu_count() or 1), metavar="N")
    p.add_argument("--long", action="store_true", default=d(False), help="allow n = 6 sweeps")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prismtab",
        description="Schubert polynomials from prism tableaux and pipe dreams.",
        parents=[_global_flags(False)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    g = [_global_flags(True)]

    p = sub.add_parser("schubert", parents=g, help="print a Schubert polynomial")
    p.add_argument("w", help="permutation in one-line notation, e.g. 2143 or 10,1,2,...")
    p.add_argument("--model", choices=("schubert", "prism", "both"), default="schubert")
    p.add_argument("--check", action="store_true", help="compare the prism sum with divided differences")
    p.set_defaults(func=cmd_schubert)

    p = sub.add_parser("enumerate", parents=g, help="list combinatorial objects for w")
    p.add_argument("kind", choices=("prism", "pipedreams", "multiplus", "intplus"))
    p.add_argument("w")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=g, help="run an exhaustive check over S_n")
    p.add_argument("suite", choices=tuple(harness.SUITES))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--report", metavar="PATH", help="write a JSON report")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"prismtab: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
