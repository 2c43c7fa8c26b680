"""Command-line front end.

Exit codes: 0 all checks pass, 1 a verification failed (witness printed),
2 bad input or usage, 3 a family would exceed the size cap.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import serialize
from .errors import CompatError, DiscontinuousError, FamilyOverflowError, PipelineError
from .functions import DEFAULT_FAMILY_CAP, ValueGrid, enumerate_family, family_size, format_rational
from .lattice import (
    base_identity_violations,
    family_sigma_lattice,
    family_theta_lattice,
    lattice_from_rc,
    lattice_from_ro,
    spectrum,
    ult_space,
)
from .morphisms import (
    CompatMap,
    compat_iso_violation,
    discont_case_trace,
    discont_construction,
    is_compat_iso,
)
from .reconstruction import induce, reconstruct
from .serialize import FormatError
from .sweeps import SweepConfig, load_discont_instance, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

LATTICE_KINDS = ("ro", "rc", "theta", "sigma")


def _grid(text: str) -> ValueGrid:
    try:
        return ValueGrid.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad grid {text!r}: {exc}") from exc


def _check_cap(space, grid, cap: int) -> None:
    size = family_size(space, grid)
    if size > cap:
        raise FamilyOverflowError(f"family of {size} functions exceeds cap {cap}")


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _witness(w) -> str:
    if w is None:
        return "none"
    if isinstance(w, tuple):
        return ", ".join(_witness(x) for x in w)
    return repr(w)


def _build_lattice(args):
    space = serialize.load_space(args.space)
    if args.kind == "ro":
        return lattice_from_ro(space)
    if args.kind == "rc":
        return lattice_from_rc(space)
    grid = _grid(args.grid)
    _check_cap(space, grid, args.cap)
    fam = enumerate_family(space, grid, args.cap)
    return family_theta_lattice(fam) if args.kind == "theta" else family_sigma_lattice(fam)


# verbs


def cmd_validate(args) -> int:
    space = serialize.load_space(args.space)
    report = {"space": {"points": space.n, "opens": len(space.opens)}}
    if args.family:
        obj = serialize.read_json(args.family)
        if not isinstance(obj, list):
            raise FormatError("family must be a JSON array of functions")
        fam = serialize.family_from_json(space, obj, require_zero=False)
        report["family"] = {"functions": len(fam), "contains_zero": fam.zero_index is not None}
    _emit(args, serialize.dumps(report))
    return EXIT_OK


def cmd_lattice(args) -> int:
    lat = _build_lattice(args)
    if args.format == "dot":
        _emit(args, serialize.hasse_dot(lat, args.kind))
    else:
        _emit(args, serialize.dumps(serialize.lattice_to_json(lat)))
    return EXIT_OK


def cmd_spectrum(args) -> int:
    lat = _build_lattice(args)
    spc = ult_space(lat) if args.ult else spectrum(lat)
    if args.format == "dot":
        _emit(args, serialize.spectrum_dot(spc))
        return EXIT_OK
    bad = [list(v) for v in base_identity_violations(spc)]
    out = {
        "points": len(spc),
        "filters": [sorted(f.members) for f in spc.carrier],
        "topology": serialize.space_to_json(spc.topology),
        "base_identity_violations": bad,
    }
    _emit(args, serialize.dumps(out))
    return EXIT_FAIL if bad else EXIT_OK


def cmd_reconstruct(args) -> int:
    space = serialize.load_space(args.space)
    grid = _grid(args.grid)
    _check_cap(space, grid, args.cap)
    rep = reconstruct(space, grid)
    _emit(args, serialize.dumps(rep.to_json()))
    if not rep.verified:
        failed = [k for k, v in rep.checks.items() if not v]
        print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_check_iso(args) -> int:
    T = serialize.load_map(args.map)
    why = compat_iso_violation(T)
    out = {**T.flags, "is_compat_iso": why is None}
    if why is not None:
        out["reason"] = why[0]
        out["witness"] = _witness(why[1])
    _emit(args, serialize.dumps(out))
    return EXIT_OK if why is None else EXIT_FAIL


def cmd_induce(args) -> int:
    T = serialize.load_map(args.map)
    try:
        trace = induce(T)
    except PipelineError as exc:
        print(f"pipeline failed: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness: {_witness(exc.witness)}", file=sys.stderr)
        return EXIT_FAIL
    out = trace.to_json()
    code = EXIT_OK
    if args.expect:
        expected = serialize.space_map_from_json(
            T.source.space, T.target.space, serialize.read_json(args.expect)
        )
        out["matches_expected"] = expected == trace.homeomorphism
        if not out["matches_expected"]:
            print(f"expected {list(expected.assignment)}, got {out['homeomorphism']}", file=sys.stderr)
            code = EXIT_FAIL
    _emit(args, serialize.dumps(out))
    return code


def cmd_suite(args) -> int:
    cfg = SweepConfig(max_points=args.max_points, seed=args.seed)
    results = run_suite(cfg, args.only or None)
    if args.format == "json":
        _emit(args, serialize.dumps([r.to_json() for r in results]))
    else:
        _emit(args, "".join(r.line() + "\n" for r in results))
    for r in results:
        for v in r.violations[:5]:
            print(f"criterion {r.number} witness: {v!r}", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def cmd_demo(args) -> int:
    space, grid, F, f1, f2 = load_discont_instance(args.instance)
    _check_cap(space, grid, args.cap)
    fam = enumerate_family(space, grid, args.cap)
    T = discont_construction(fam, F, f1, f2)
    trace = discont_case_trace(T, F)
    ident = CompatMap.identity(fam)
    out = {
        "instance": args.instance,
        "points": space.n,
        "grid": str(grid),
        "component": F.to_list(),
        "f1": [format_rational(v) for v in f1],
        "f2": [format_rational(v) for v in f2],
        "family_size": len(fam),
        "moved": len(trace["changed"]),
        "cases": trace["cases"],
        "outside_fixed": trace["outside_fixed"],
        "case_violations": len(trace["violations"]),
        "is_compat_iso": is_compat_iso(T),
        "differs_from_identity": T != ident,
    }
    _emit(args, serialize.dumps(out))
    ok = out["is_compat_iso"] and out["differs_from_identity"] and not trace["violations"]
    return EXIT_OK if ok else EXIT_FAIL


def cmd_export_dot(args) -> int:
    if args.what == "specialization":
        space = serialize.load_space(args.space)
        _emit(args, serialize.specialization_dot(space))
        return EXIT_OK
    args.kind = args.what
    lat = _build_lattice(args)
    _emit(args, serialize.hasse_dot(lat, args.what))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="compatorder",
        description="Compatibility order on finite function spaces: checks and reconstruction.",
        epilog="Input paths may be written bundled:NAME for the shipped examples.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("--cap", type=int, default=DEFAULT_FAMILY_CAP, help="largest family to enumerate")
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")

    s = sub.add_parser("validate", parents=[common], help="parse a space and optionally a family")
    s.add_argument("space")
    s.add_argument("--family")
    s.set_defaults(func=cmd_validate)

    for verb, func, helptext in (
        ("lattice", cmd_lattice, "dump an RO, RC, theta or sigma lattice"),
        ("spectrum", cmd_spectrum, "prime-filter or ultrafilter spectrum of a lattice"),
    ):
        s = sub.add_parser(verb, parents=[common], help=helptext)
        s.add_argument("space")
        s.add_argument("--kind", choices=LATTICE_KINDS, default="theta")
        s.add_argument("--grid", default="0,1")
        s.add_argument("--format", choices=("json", "dot"), default="json")
        if verb == "spectrum":
            s.add_argument("--ult", action="store_true", help="ultrafilters only")
        s.set_defaults(func=func)

    s = sub.add_parser("reconstruct", parents=[common], help="recover a space from its theta lattice")
    s.add_argument("space")
    s.add_argument("--grid", default="0,1")
    s.set_defaults(func=cmd_reconstruct)

    s = sub.add_parser("check-iso", parents=[common], help="check a map file is a compatibility isomorphism")
    s.add_argument("map")
    s.set_defaults(func=cmd_check_iso)

    s = sub.add_parser("induce", parents=[common], help="induced homeomorphism of a map file")
    s.add_argument("map")
    s.add_argument("--expect", help="point map file the result must equal")
    s.set_defaults(func=cmd_induce)

    s = sub.add_parser("suite", parents=[common], help="run the acceptance sweeps")
    s.add_argument("--max-points", type=int, default=4)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--only", type=int, nargs="*", choices=range(1, 11), metavar="N")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_suite)

    s = sub.add_parser("demo", parents=[common], help="component swap construction on a bundled instance")
    s.add_argument("instance", nargs="?", default="discont_d3")
    s.set_defaults(func=cmd_demo)

    s = sub.add_parser("export-dot", parents=[common], help="DOT for a specialization order or lattice")
    s.add_argument("space")
    s.add_argument("--what", choices=("specialization",) + LATTICE_KINDS, default="specialization")
    s.add_argument("--grid", default="0,1")
    s.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FamilyOverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except DiscontinuousError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.fiber is not None:
            print(f"offending fiber: {exc.fiber!r} (value {format_rational(exc.value)})", file=sys.stderr)
        return EXIT_INPUT
    except PipelineError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (FormatError, CompatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
