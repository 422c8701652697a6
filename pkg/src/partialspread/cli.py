"""Command-line interface.

Exit codes: 0 success, 1 a verified object failed validation, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .bounds import exact_or_range
from .construct import construct_partial_spread, min_subspace_distance, read_spread, verify_partial_spread, write_spread
from .errors import FormatError, HypothesisNotMet, PartialSpreadError, ValidationError
from .partition import check_hele0, check_hele1, from_partial_spread, histogram, profiles, validate_partition
from .partition import descent_certificate
from .search import SearchConfig, max_partial_spread


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits 2 already; keep message terse
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="partialspread", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bounds", help="lower/upper/exact value of mu_q(n,t)")
    _params(b)
    b.add_argument("--sweep", type=int, metavar="NMAX", help="one row per n from t+1 to NMAX")
    b.add_argument("--machine", action="store_true", help="emit BOUND lines")

    c = sub.add_parser("construct", help="write a partial spread of size ell*q^t+1")
    _params(c)
    c.add_argument("-o", "--output", required=True)

    v = sub.add_parser("verify", help="validate a spread file")
    v.add_argument("file")

    s = sub.add_parser("search", help="exact branch-and-bound maximum")
    _params(s)
    s.add_argument("--time-limit", type=float, default=None)
    s.add_argument("--use-paper-bounds", action="store_true")
    s.add_argument("-o", "--output")

    a = sub.add_parser("analyze", help="partition identities and hyperplane histogram")
    a.add_argument("file")
    a.add_argument("--hyperplanes", action="store_true", help="print each hyperplane profile")

    d = sub.add_parser("descent", help="arithmetic descent certificate")
    _params(d)
    return parser


def _cmd_bounds(args) -> int:
    ns = range(args.t + 1, args.sweep + 1) if args.sweep else [args.n]
    for n in ns:
        rep = exact_or_range(args.q, n, args.t)
        if args.machine:
            print(rep.machine_line())
        elif args.sweep:
            print(f"q={args.q} n={n} t={args.t} lower={rep.lower} upper={rep.upper} {rep.row()}")
        else:
            print(f"q={args.q} n={n} t={args.t} lower={rep.lower} upper={rep.upper}")
            print(rep.row())
    return 0


def _cmd_construct(args) -> int:
    spread = construct_partial_spread(args.q, args.n, args.t)
    write_spread(spread, args.output)
    rep = verify_partial_spread(spread)
    print(f"wrote {args.output}: {rep.summary()}")
    return 0


def _cmd_verify(args) -> int:
    spread = read_spread(args.file)
    rep = verify_partial_spread(spread)
    if len(spread) >= 2:
        rep.min_distance = min_subspace_distance(spread)
    print(rep.summary())
    return 0


def _cmd_search(args) -> int:
    cfg = SearchConfig(time_limit_seconds=args.time_limit, use_paper_bounds=args.use_paper_bounds)
    res = max_partial_spread(args.q, args.n, args.t, cfg)
    status = "optimal" if res.optimal else f"best-so-far ({res.stopped_by})"
    print(
        f"q={args.q} n={args.n} t={args.t} size={res.size} {status} "
        f"nodes={res.nodes_explored} elapsed={res.elapsed:.2f}s"
    )
    if args.output:
        write_spread(res.best, args.output)
    return 0


def _cmd_analyze(args) -> int:
    spread = read_spread(args.file)
    part = from_partial_spread(spread)
    print(validate_partition(part).summary())
    if args.hyperplanes:
        dims = part.dims
        for prof in profiles(part):
            rows = "; ".join(" ".join(map(str, r)) for r in prof.hyperplane.rows)
            print(f"H [{rows}] b={list(prof.vector(dims))}")
    r0 = check_hele0(part)
    r1 = check_hele1(part)
    print(r0.summary())
    print(r1.summary())
    for line in r1.details:
        print(f"  {line}")
    print(f"# b-vectors list counts for dimensions {part.dims}")
    for line in histogram(part).lines():
        print(line)
    return 0


def _cmd_descent(args) -> int:
    try:
        cert = descent_certificate(args.q, args.n, args.t)
    except HypothesisNotMet as exc:
        print(f"HypothesisNotMet: {exc}")
        return 1
    for line in cert.trace:
        print(line)
    return 0


_COMMANDS = {
    "bounds": _cmd_bounds,
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "search": _cmd_search,
    "analyze": _cmd_analyze,
    "descent": _cmd_descent,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValidationError, FormatError) as exc:
        print(exc)
        return 1
    except PartialSpreadError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
