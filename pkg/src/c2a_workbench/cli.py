"""Command-line entry point.

Exit status: 0 pass, 1 assertion failure, 2 usage error, 3 search exhausted.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys

from . import harness
from .classify import classify_all
from .errors import SizeLimitError, WorkbenchError
from .module import enumerate_submodules, parse_module_spec
from .render import lattice_report, to_dot, to_text
from .ring import parse_ring_spec

SCHEMA = 1
EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_EXHAUSTED = 0, 1, 2, 3


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps({"schema": SCHEMA, **obj}, indent=2) + "\n"


def _load_module(args):
    ring = parse_ring_spec(args.ring)
    m = parse_module_spec(ring, args.module)
    if m.cardinality > args.max_module:
        raise SizeLimitError(f"|M| = {m.cardinality} exceeds --max-module {args.max_module}")
    enumerate_submodules(m, bound=args.max_module)
    return m


def cmd_classify(args) -> int:
    m = _load_module(args)
    records = classify_all(m)
    if args.format == "dot":
        text = to_dot(m, records)
    elif args.format == "text":
        text = to_text(m, records)
    else:
        text = _dump(lattice_report(m, records))
    _emit(text, args.output)
    return EXIT_PASS


def cmd_export(args) -> int:
    m = _load_module(args)
    if args.format == "json":
        text = _dump(lattice_report(m))
    elif args.format == "text":
        text = to_text(m)
    else:
        text = to_dot(m)
    _emit(text, args.output)
    return EXIT_PASS


def _family(args, base: harness.InstanceFamily) -> harness.InstanceFamily:
    changes = {}
    if args.max_module is not None:
        changes["max_module"] = args.max_module
    if args.max_modulus is not None:
        changes["max_modulus"] = args.max_modulus
    if getattr(args, "ring", None):
        changes["rings"] = (parse_ring_spec(args.ring).moduli,)
    return dataclasses.replace(base, **changes)


def cmd_verify(args) -> int:
    ids = []
    for s in args.suite or ["all"]:
        ids += list(harness.SUITES) if s == "all" else [s]
    reports = [harness.run_suite(s, _family(args, harness.default_family(s))) for s in ids]
    passed = all(r.passed for r in reports)
    if args.format == "text":
        text = "".join(
            f"{r.suite} tier {r.tier}: {'PASS' if r.passed else 'FAIL'} "
            f"instances={r.instances} checks={r.checks} failures={len(r.failures)} findings={len(r.findings)}\n"
            for r in reports
        )
    else:
        text = _dump({"passed": passed, "suites": [r.to_json() for r in reports]})
    _emit(text, args.output)
    if args.timings:
        # kept out of the report so that reruns stay byte-identical
        times = {r.suite: round(r.wall_time, 3) for r in reports}
        with open(args.timings, "w") as fh:
            json.dump({"schema": SCHEMA, "wall_time": times, "total": round(sum(times.values()), 3)}, fh, indent=2)
    return EXIT_PASS if passed else EXIT_FAIL


def cmd_search(args) -> int:
    family = _family(args, harness.InstanceFamily())
    result = harness.search_separating(args.left, args.right, family)
    _emit(_dump(result), args.output)
    return EXIT_PASS if result["found"] else EXIT_EXHAUSTED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="c2a-workbench", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log suite progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, formats, default in (
        ("classify", cmd_classify, ("json", "dot", "text"), "json"),
        ("export", cmd_export, ("dot", "json", "text"), "dot"),
    ):
        sp = sub.add_parser(name, help=f"{name} the submodule lattice of one module")
        sp.add_argument("--ring", required=True, help="ring spec, e.g. Z8 or Z2xZ3")
        sp.add_argument("--module", required=True, help='orders on coordinate 0 ("4,2") or module JSON')
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--max-module", type=int, default=256, help="refuse modules larger than this")
        sp.add_argument("--output", "-o")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("verify", help="run theorem suites")
    sp.add_argument("--suite", action="append", help=f"suite id or 'all' (repeatable): {', '.join(harness.SUITES)}")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.add_argument("--timings", metavar="PATH", help="write per-suite wall times to this JSON file")
    sp.set_defaults(func=cmd_verify)

    sq = sub.add_parser("search", help="first instance separating two predicates")
    sq.add_argument("--left", required=True, help="prime | classical-prime | 2abs | c2a")
    sq.add_argument("--right", required=True)
    sq.add_argument("--ring", help="restrict the search to one ring")
    sq.set_defaults(func=cmd_search)

    for sp_ in (sp, sq):
        sp_.add_argument("--max-module", type=int, help="override the module cardinality bound")
        sp_.add_argument("--max-modulus", type=int, help="override the single-coordinate modulus bound")
        sp_.add_argument("--output", "-o")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except WorkbenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
