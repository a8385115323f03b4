"""Command-line front end: tables, verification suites, Y_S, zeta and Bernoulli values.

Every invocation writes exactly one document to stdout (JSON, or CSV for
``table --format csv``). Exit codes: 0 success or passing suite, 1 failing
suite, 2 bad arguments or a domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import TYPE_CHECKING, Any

import analytic
import fermionic
import stirling_q
from config import cache_enabled, get_default_seed, get_truncation_order, log_event
from errors import DomainError, QStirlingError
from exact_arith import arith_law_check, rat_parse
from reports import VerificationReport, merge_reports
from table_io import KINDS, doc_to_csv, evaluate_doc, table_doc
from table_store import ensure_db, load_table, save_table

if TYPE_CHECKING:
    from collections.abc import Callable

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _bernoulli_k(n: int) -> int:
    return min(n, get_truncation_order() - 1)


def _fermionic_suite(n: int) -> VerificationReport:
    parts = [
        fermionic.vanishing_check(n),
        fermionic.vanishing_step_check(n),
        fermionic.special_values_check(n),
        fermionic.connection_report(n, n),
        fermionic.power_collapse_check(n, n),
    ]
    return merge_reports("fermionic", parts, n=n)


SUITES: dict[str, Callable[[argparse.Namespace], VerificationReport]] = {
    "orthogonality": lambda a: stirling_q.orthogonality_check(a.n),
    "closed-form": lambda a: stirling_q.cross_check_second(
        a.n, forms=("closed_form", "alt_closed_form", "double_sum", "term_form")
    ),
    "newton-gregory": lambda a: stirling_q.cross_check_second(a.n, forms=("newton_gregory",)),
    "connection": lambda a: stirling_q.connection_check(a.n, a.n),
    "special-values": lambda a: stirling_q.special_values_check(a.n),
    "bosonic": lambda a: stirling_q.bosonic_limit_check(a.n),
    "fermionic": lambda a: _fermionic_suite(a.n),
    "inversion": lambda a: fermionic.fermionic_inversion_check(a.n),
    "specialization": lambda a: fermionic.q_specialization_check(a.n),
    "vanishing": lambda a: fermionic.vanishing_check(a.n),
    "f-arithmetic": lambda a: fermionic.f_arithmetic_check(a.n),
    "alt-recurrence": lambda a: fermionic.alt_recurrence_check(a.n),
    "interpolation": lambda a: analytic.interpolation_check(a.n),
    "bell": lambda a: analytic.bell_ys_check(a.n),
    "gessel": lambda a: analytic.gessel_report(a.n, _bernoulli_k(a.n)),
    "eulerian": lambda a: analytic.eulerian_stirling_report(a.n),
    "eulerian-bernoulli": lambda a: analytic.eulerian_bernoulli_report(a.n, _bernoulli_k(a.n)),
    "arith": lambda a: arith_law_check(a.samples, a.seed),
}


def _run_all(args: argparse.Namespace) -> VerificationReport:
    reports = []
    for name, fn in SUITES.items():
        if name == "alt-recurrence" and args.n < 3:
            reports.append(fermionic.alt_recurrence_check(3))
            continue
        log_event("VERIFY", f"suite {name}")
        reports.append(fn(args))
    return merge_reports("all", reports, n=args.n, seed=args.seed)


def _emit(doc: Any) -> None:
    sys.stdout.write(json.dumps(doc, ensure_ascii=False) + "\n")


def cmd_table(args: argparse.Namespace) -> int:
    if args.n < 1:
        raise DomainError(f"--n must be >= 1, got {args.n}")
    q = rat_parse(args.q) if args.q is not None else None
    use_cache = cache_enabled() if args.cache is None else args.cache
    if use_cache:
        con = ensure_db()
        try:
            doc = load_table(con, args.kind, args.n)
            if doc is None:
                doc = table_doc(args.kind, args.n)
                save_table(con, doc)
        finally:
            con.close()
        if q is not None:
            doc = evaluate_doc(doc, q)
    else:
        doc = table_doc(args.kind, args.n, q)
    if args.format == "csv":
        sys.stdout.write(doc_to_csv(doc))
    else:
        _emit(doc)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.n < 1:
        raise DomainError(f"--n must be >= 1, got {args.n}")
    if args.samples < 1:
        raise DomainError(f"--samples must be >= 1, got {args.samples}")
    report = _run_all(args) if args.suite == "all" else SUITES[args.suite](args)
    _emit(report.to_dict())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_interp(args: argparse.Namespace) -> int:
    result = analytic.interpolate(complex(args.z, args.z_im), args.k, args.q)
    _emit(result.to_dict())
    return EXIT_OK


def cmd_zeta(args: argparse.Namespace) -> int:
    _emit(analytic.zeta_via_stirling1(args.k, args.terms, exact=args.exact).to_dict())
    return EXIT_OK


def cmd_bernoulli(args: argparse.Namespace) -> int:
    value = analytic.bernoulli_higher(args.order, args.index)
    _emit(analytic.HigherBernoulli(args.order, args.index, value).to_dict())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qstirling", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="emit a triangle as JSON or CSV")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", default=None, help='evaluate at this rational, e.g. "1", "-1/2"')
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--cache", action=argparse.BooleanOptionalAction, default=None)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run an identity suite")
    p.add_argument("suite", choices=(*SUITES, "all"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=get_default_seed())
    p.add_argument("--samples", type=int, default=100, help="sample count for the arith suite")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("interp", help="evaluate Y_S(z, k, q)")
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--z-im", type=float, default=0.0)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=float, default=1.0)
    p.set_defaults(func=cmd_interp)

    p = sub.add_parser("zeta", help="partial sum of the Stirling series for zeta(k+1)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--exact", action="store_true", help="exact rational sum (terms < 500)")
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("bernoulli", help="higher-order Bernoulli number B_index^(order)")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--index", type=int, required=True)
    p.set_defaults(func=cmd_bernoulli)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except QStirlingError as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
