"""Command line interface: ``autsys <command> FILE [options]``.

Exit codes: 0 success or affirmative answer, 1 negative answer (with the
witness on stdout), 2 usage or input error, 3 search bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import census
from .core import AutsysError, ValidationReport, normalize
from .document import (
    ParseError,
    order_to_doc,
    order_to_dot,
    parse_partition,
    parse_poset,
    parse_subset,
    parse_system,
    poset_to_doc,
    system_to_doc,
    witness_to_doc,
)
from .gen import GenSpec, Method, TooLarge, enumerate_all, random_system
from .minors import (
    DEFAULT_BOUND,
    SearchBoundExceeded,
    extract_p3,
    extract_p4,
    find_bidirectional_pair,
    find_nonintersecting_pair,
    hex6,
    induced_minor,
    p_n,
    path_system,
    subdot_reachable,
    verify_witness,
)
from .ops import contract, delete, dot, restrict
from .order import canonical_order, from_poset, is_poset, to_poset
from .quotient import join, quotient_by_partition

OK, NEGATIVE, USAGE, BOUND = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _system(path: str):
    parsed = parse_system(_read(path))
    if isinstance(parsed, ValidationReport):
        raise UsageError(f"{path} is not an autonomous system: {parsed.summary()}")
    return parsed


def _target(spec: str):
    up = spec.upper()
    if up == "HEX6":
        return hex6()
    if up == "P4" and not Path(spec).exists():
        return path_system(["a", "x", "y", "b"])
    if up.startswith("P") and up[1:].isdigit() and not Path(spec).exists():
        return p_n(int(up[1:]))
    return _system(spec)


def _emit(doc) -> None:
    print(json.dumps(doc, indent=2))


def _witness(w, target) -> int:
    doc = witness_to_doc(w, target)
    doc["verified"] = verify_witness(w, target)
    _emit(doc)
    return OK if doc["verified"] else NEGATIVE


def cmd_validate(args) -> int:
    parsed = parse_system(_read(args.file))
    if isinstance(parsed, ValidationReport):
        _emit(parsed.as_dict())
        return NEGATIVE
    _emit({"valid": True, "missing_empty": False, "union_violations": [], "accessibility_violations": []})
    return OK


def cmd_normalize(args) -> int:
    _emit(system_to_doc(normalize(_system(args.file))))
    return OK


def _subset_arg(P, args):
    if args.subset is None:
        return P.full
    return P.mask(parse_subset(args.subset))


def cmd_canonical_order(args) -> int:
    P = _system(args.file)
    _emit(order_to_doc(canonical_order(P, _subset_arg(P, args))))
    return OK


def cmd_emit_dot(args) -> int:
    P = _system(args.file)
    sys.stdout.write(order_to_dot(canonical_order(P, _subset_arg(P, args))))
    return OK


def cmd_is_poset(args) -> int:
    P = _system(args.file)
    res = is_poset(P)
    if res:
        _emit({"is_poset": True})
        return OK
    a, b = res.witness
    _emit({"is_poset": False, "witness": [list(P.labels(a)), list(P.labels(b))],
           "intersection": list(P.labels(a & b))})
    return NEGATIVE


def cmd_to_poset(args) -> int:
    P = _system(args.file)
    R = to_poset(P)
    if R is None:
        a, b = is_poset(normalize(P)).witness
        Q = normalize(P)
        _emit({"is_poset": False, "witness": [list(Q.labels(a)), list(Q.labels(b))]})
        return NEGATIVE
    _emit(poset_to_doc(R))
    return OK


def cmd_from_poset(args) -> int:
    _emit(system_to_doc(from_poset(parse_poset(_read(args.file)))))
    return OK


def _reduction(fn):
    def run(args) -> int:
        P = _system(args.file)
        if args.subset is None:
            raise UsageError("--subset is required")
        _emit(system_to_doc(fn(P, parse_subset(args.subset))))
        return OK

    return run


def cmd_join(args) -> int:
    _emit(system_to_doc(join([_system(f) for f in args.files])))
    return OK


def cmd_quotient(args) -> int:
    P = _system(args.file)
    if args.partition is None:
        raise UsageError("--partition is required")
    _emit(system_to_doc(quotient_by_partition(P, parse_partition(args.partition))))
    return OK


def cmd_find_p3(args) -> int:
    P = _system(args.file)
    pair = find_nonintersecting_pair(P)
    if pair is None:
        _emit({"is_poset": True, "witness": None})
        return NEGATIVE
    return _witness(extract_p3(P, *pair), p_n(3))


def cmd_find_p4(args) -> int:
    P = _system(args.file)
    pair = find_bidirectional_pair(P)
    if pair is None:
        _emit({"bidirectional_pair": None, "witness": None})
        return NEGATIVE
    return _witness(extract_p4(P, pair), path_system(["a", "x", "y", "b"]))


def cmd_search(args) -> int:
    P, T = _system(args.file), _target(args.target)
    if args.command == "subdot":
        w = subdot_reachable(P, T, bound=args.bound)
    else:
        w = induced_minor(P, T, bound=args.bound, require_induced=args.require_induced)
    if w is None:
        _emit({"found": False, "witness": None})
        return NEGATIVE
    return _witness(w, T)


def cmd_enumerate(args) -> int:
    _emit([system_to_doc(P) for P in enumerate_all(args.n, normalized=args.normalized)])
    return OK


def cmd_random(args) -> int:
    spec = GenSpec(args.n, normalized=args.normalized, seed=args.seed, method=Method(args.method))
    _emit(system_to_doc(random_system(spec)))
    return OK


def cmd_selftest(args) -> int:
    results = census.run_all(samples=args.samples, seed=args.seed, echo=print)
    failed = [r for r in results if not r.passed]
    for r in failed:
        for f in r.failures[: args.show]:
            print(f"  criterion {r.number}: {f}")
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return OK if not failed else NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="autsys", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", help="system document (JSON), or - for stdin")
        p.set_defaults(func=fn)
        return p

    with_file("validate", cmd_validate, "check the axioms and itemise violations")
    with_file("normalize", cmd_normalize, "drop elements outside every autonomous set")
    for name, fn, help_ in [
        ("canonical-order", cmd_canonical_order, "canonical order of an autonomous set"),
        ("emit-dot", cmd_emit_dot, "Hasse diagram of a canonical order in DOT"),
    ]:
        p = with_file(name, fn, help_)
        p.add_argument("--subset", help="comma separated labels (default: whole ground)")
    with_file("is-poset", cmd_is_poset, "intersection closure test with witness")
    with_file("to-poset", cmd_to_poset, "convert an intersection-closed system to its order")
    with_file("from-poset", cmd_from_poset, "system of down-sets of a poset document")
    for name, fn in [("delete", delete), ("contract", contract), ("restrict", restrict), ("dot", dot)]:
        p = with_file(name, _reduction(fn), f"{name} by a subset")
        p.add_argument("--subset", help="comma separated labels")
    p = sub.add_parser("join", help="least upper bound of several systems")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_join)
    p = with_file("quotient", cmd_quotient, "quotient by a partition")
    p.add_argument("--partition", help='cells separated by ";", e.g. "a1,a2;x;y;b1,b2"')
    with_file("find-p3", cmd_find_p3, "extract a P3 subdot from a non-poset")
    with_file("find-p4", cmd_find_p4, "extract a P4 induced minor from a bidirectional pair")
    for name in ("subdot", "induced-minor"):
        p = with_file(name, cmd_search, f"breadth-first {name} search")
        p.add_argument("--target", required=True, help="document path, Pn, or HEX6")
        p.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="largest source ground size searched")
        if name == "induced-minor":
            p.add_argument("--require-induced", action="store_true",
                           help="only quotient by partitions with a nonempty autonomous image")
    p = sub.add_parser("enumerate", help="all labelled systems on n elements")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--normalized", action="store_true")
    p.set_defaults(func=cmd_enumerate)
    p = sub.add_parser("random", help="seeded random system")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--normalized", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=[m.value for m in Method], default=Method.CHAIN_CLOSURE.value)
    p.set_defaults(func=cmd_random)
    p = sub.add_parser("selftest", help="run the theorem census")
    p.add_argument("--samples", type=int, default=1000, help="random n=5 systems for the P4 check")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--show", type=int, default=5, help="failures listed per criterion")
    p.set_defaults(func=cmd_selftest)
    return parser


def run_command(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        return args.func(args)
    except SearchBoundExceeded as e:
        print(f"autsys: {e}", file=sys.stderr)
        return BOUND
    except (UsageError, ParseError, TooLarge, AutsysError, ValueError) as e:
        print(f"autsys: {e}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
