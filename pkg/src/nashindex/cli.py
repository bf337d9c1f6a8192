"""Command-line front end.

    nashindex index   FILE [--json] [--bound-override D] [--force]
                           [--work-limit N]
    nashindex milnor  FILE [--json] [--work-limit N]
    nashindex check   FILE [--json] [--work-limit N]
    nashindex oracle branch-count FILE [--json] [--linear EXPR]
                           [--work-limit N]

FILE is a problem file (see probfile); '-' reads stdin.  Exit codes:
0 success, 2 mathematical precondition failure (bad input, non-isolated
zero), 3 resource exhaustion, 1 anything unexpected.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .engine import Budget, ResourceLimitError
from .homindex import homological_index
from .nash import NonIsolatedError, ProblemError, isolated_zero_check
from .oracles import branch_count, classical_milnor
from .probfile import ParseError, parse_expr, parse_problem


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(args, text, payload):
    if args.json:
        payload["schema"] = 1
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _budget(args, spec):
    limit = args.work_limit
    if limit is None:
        limit = spec.work_limit
    return Budget(limit)


def cmd_index(args):
    spec = parse_problem(_read(args.file))
    if args.bound_override is not None:
        spec.bound = args.bound_override
    prob = spec.to_problem()
    report = homological_index(prob, budget=_budget(args, spec),
                               force=args.force)
    _emit(args, "index = %d" % report.index, {
        "index": report.index,
        "chi": report.chi,
        "sign_exponent": report.sign_exponent,
        "twist_bound": report.twist_bound,
        "homology_dims": {str(k): v for k, v in
                          sorted(report.homology_dims.items())},
        "nash_ideal_size": report.nash_ideal_size,
        "elapsed_ms": report.elapsed_ms,
    })
    return 0


def cmd_milnor(args):
    spec = parse_problem(_read(args.file))
    if spec.f is None:
        raise ProblemError("milnor needs a function, not a raw form")
    t0 = time.monotonic()
    mu = classical_milnor(spec.f, _budget(args, spec))
    _emit(args, "mu = %d" % mu,
          {"mu": mu, "elapsed_ms": int((time.monotonic() - t0) * 1000)})
    return 0


def cmd_check(args):
    spec = parse_problem(_read(args.file))
    prob = spec.to_problem()
    ok, witness = isolated_zero_check(prob, _budget(args, spec))
    _emit(args, "isolated = %s" % ("true" if ok else "false"),
          {"isolated": ok, "witness": witness})
    return 0 if ok else 2


def cmd_oracle(args):
    if args.oracle != "branch-count":
        raise ProblemError("unknown oracle %r" % args.oracle)
    spec = parse_problem(_read(args.file))
    prob = spec.to_problem()
    if args.linear is not None:
        l = parse_expr(args.linear, prob.actx)
    elif spec.linear is not None:
        l = spec.linear
    else:
        raise ProblemError("branch-count needs a linear form "
                           "(--linear or a 'linear:' line)")
    t0 = time.monotonic()
    count = branch_count(prob, l, _budget(args, spec))
    _emit(args, "count = %d" % count,
          {"count": count, "elapsed_ms": int((time.monotonic() - t0) * 1000)})
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="nashindex",
        description="homological index of a 1-form on a hypersurface "
                    "singularity, via the Nash transform")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", metavar="FILE", help="problem file ('-' = stdin)")
        p.add_argument("--json", action="store_true",
                       help="machine-readable report")
        p.add_argument("--work-limit", type=int, metavar="N",
                       help="abort after N reduction steps")

    p = sub.add_parser("index", help="homological index of the form")
    common(p)
    p.add_argument("--bound-override", type=int, metavar="D",
                   help="force the Cech truncation bound")
    p.add_argument("--force", action="store_true",
                   help="skip the isolated-zero gate")
    p.set_defaults(fn=cmd_index)

    p = sub.add_parser("milnor", help="classical Milnor number of the function")
    common(p)
    p.set_defaults(fn=cmd_milnor)

    p = sub.add_parser("check", help="isolated-zero certificate")
    common(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("oracle", help="independent cross-checks")
    p.add_argument("oracle", metavar="NAME", help="oracle name (branch-count)")
    common(p)
    p.add_argument("--linear", metavar="EXPR",
                   help="morsification direction (linear form)")
    p.set_defaults(fn=cmd_oracle)

    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ResourceLimitError as e:
        print("error: %s" % e, file=sys.stderr)
        return 3
    except (ParseError, ProblemError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except OSError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except ArithmeticError as e:
        print("internal error: %s" % e, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
