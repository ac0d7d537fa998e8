"""Command-line interface.  Exit codes: 0 ok, 1 a check failed, 2 bad input."""
import argparse
import json
import sys

from . import metric as mc
from . import suites
from ._rational import as_fraction, fmt
from .errors import CheckFailed, InputError
from .freenorm import MassVector, free_norm, xi_map
from .lipschitz import dumps_values, lip_constant, mcshane_extend, parse_values, to_function
from .reductions import (SetSpec, ambient_from_json, build_compactness, build_generic_delta,
                         build_thm1, build_thm2, spec_from_json)
from .trees import FinTree, as_seq, canonical_enum, rank, rho


def _read(path):
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _json(path_or_text, literal=False):
    text = path_or_text if literal else _read(path_or_text)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {'argument' if literal else path_or_text}: {exc}") from exc


def _metric(path):
    return mc.from_json(_json(path))


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _seq_arg(text):
    data = _json(text, literal=True)
    if not isinstance(data, list):
        raise InputError(f"sequence must be a JSON array, got {text!r}")
    return as_seq(data)


def cmd_validate(args):
    m = _metric(args.metric)
    print(f"valid: n={m.n} diameter={fmt(m.diameter())}"
          + (f" min_separation={fmt(mc.min_separation(m))}" if m.n > 1 else ""))


def cmd_restrict(args):
    m = _metric(args.metric)
    keep = [int(x) for x in args.keep.split(",") if x.strip()]
    _emit(mc.restrict(m, keep).dumps(), args.output)


def cmd_free_norm(args):
    m = _metric(args.metric)
    a = MassVector.from_json(_json(args.mass))
    _emit(free_norm(m, a, args.method).dumps(), args.output)


def cmd_xi(args):
    m = _metric(args.metric)
    v = _json(args.v, literal=True) if args.v is not None else _json(args.v_file)
    print(repr(xi_map(m, v, args.method)))


def cmd_lip(args):
    m = _metric(args.metric)
    f = to_function(m, parse_values(_json(args.function)))
    print(fmt(lip_constant(f)))


def cmd_mcshane(args):
    m = _metric(args.metric)
    g = parse_values(_json(args.function))
    f = mcshane_extend(m, g, as_fraction(args.L), args.form)
    _emit(dumps_values(dict(enumerate(f.values))), args.output)


def cmd_rho(args):
    print(fmt(rho(_seq_arg(args.s), _seq_arg(args.t))))


def cmd_enum(args):
    if args.rank is not None:
        print(rank(_seq_arg(args.rank)))
    else:
        print(json.dumps(list(canonical_enum(args.k))))


def cmd_build(args):
    if args.kind in ("thm1", "thm2"):
        if not args.tree:
            raise InputError("--tree is required")
        T = FinTree.from_json(_json(args.tree))
        if args.kind == "thm1":
            m = build_thm1(T, args.n)
        else:
            amb = ambient_from_json(None if args.ambient in (None, "c0") else _json(args.ambient))
            m = build_thm2(T, args.n, amb)
    elif args.kind == "compact":
        if not args.set:
            raise InputError("--set is required")
        m = build_compactness(SetSpec.from_json(_json(args.set)), args.n)
    else:
        if not args.spec:
            raise InputError("--spec is required")
        data = _json(args.spec)
        if args.n is not None:
            data["n"] = args.n
        m = build_generic_delta(spec_from_json(data))
    _emit(m.dumps(), args.output)


def cmd_verify(args):
    ids = suites.SUITE_IDS if args.suite == "all" else (args.suite,)
    preset = "full" if args.full else "quick"
    parts, failed = [], 0
    for sid in ids:
        rep = suites.run_suite(sid, preset, args.seed, instances=args.instance or None,
                               jobs=args.jobs)
        parts.append(rep.dumps(timing=args.timing))
        failed += len(rep.failures)
        status = "PASS" if rep.ok else "FAIL"
        print(f"{status} {sid}: {len(rep.records)} instances, {len(rep.failures)} failures, "
              f"{rep.wall_time:.2f}s", file=sys.stderr)
    _emit("".join(parts), args.report)
    return 1 if failed else 0


def build_parser():
    p = argparse.ArgumentParser(prog="lipfree", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a metric file")
    s.add_argument("metric")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("restrict", help="restrict a metric to indices (must include 0)")
    s.add_argument("metric")
    s.add_argument("--keep", required=True, help="comma-separated indices")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_restrict)

    s = sub.add_parser("free-norm", help="norm of a mass vector with certificate")
    s.add_argument("metric")
    s.add_argument("mass")
    s.add_argument("--method", choices=("dual", "flow", "both"), default="both")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_free_norm)

    s = sub.add_parser("xi", help="norm of sum v(i) delta(i+1)")
    s.add_argument("metric")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--v", help="JSON array or index->value object")
    g.add_argument("--v-file")
    s.add_argument("--method", choices=("dual", "flow", "both"), default="both")
    s.set_defaults(func=cmd_xi)

    s = sub.add_parser("lip", help="Lipschitz constant of a function file")
    s.add_argument("metric")
    s.add_argument("function")
    s.set_defaults(func=cmd_lip)

    s = sub.add_parser("mcshane", help="McShane extension of a partial function")
    s.add_argument("metric")
    s.add_argument("function")
    s.add_argument("--L", required=True)
    s.add_argument("--form", choices=("lower", "upper"), default="lower")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_mcshane)

    s = sub.add_parser("rho", help="tree metric between two sequences")
    s.add_argument("s")
    s.add_argument("t")
    s.set_defaults(func=cmd_rho)

    s = sub.add_parser("enum", help="k-th sequence of the canonical enumeration, or --rank")
    s.add_argument("k", nargs="?", type=int, default=0)
    s.add_argument("--rank", metavar="SEQ")
    s.set_defaults(func=cmd_enum)

    s = sub.add_parser("build", help="emit a reduction-builder metric")
    s.add_argument("kind", choices=("thm1", "thm2", "compact", "generic"))
    s.add_argument("--tree")
    s.add_argument("--set")
    s.add_argument("--spec")
    s.add_argument("--ambient", help="metric file, or 'c0' (default)")
    s.add_argument("--n", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("suite", choices=suites.SUITE_IDS + ("all",))
    g = s.add_mutually_exclusive_group()
    g.add_argument("--quick", action="store_true", default=True)
    g.add_argument("--full", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--instance", type=int, action="append",
                   help="re-run only this instance id (repeatable)")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--report", help="write the report here instead of stdout")
    s.add_argument("--timing", action="store_true", help="include wall time in report headers")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "build" and args.kind != "generic" and args.n is None:
        parser.error("--n is required")
    try:
        return args.func(args) or 0
    except CheckFailed as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (InputError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
