"""Command-line surface: evaluation, oracles, identity sweeps, sums, constants.

Exit codes: 0 success, 1 identity failure or method mismatch (witnesses
printed), 2 usage or domain error, 3 budget refusal.  JSON output encodes
every exact integer as a decimal string, since values outgrow doubles.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .core import DEFAULT_ORACLE_BUDGET, BudgetExceededError, jordan_totient
from .menon import (
    gcd_sum_lhs_oracle,
    lemma_sweep,
    n_k,
    n_k_oracle,
    n_k_recursion,
    n_k_sweep,
    parse_function_spec,
    verify_sweep,
)
from .summatory import (
    DEFAULT_PRIME_BOUND,
    DEFAULT_SIEVE_LIMIT,
    average_order_constant,
    error_table_csv,
    error_term_rows,
    sum_phi_k_convolution,
    sum_phi_k_direct,
)
from .totients import (
    g_k,
    phi_k,
    phi_k_nm,
    phi_k_nm_oracle,
    phi_k_nm_recursion,
    phi_k_oracle,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _default_workers() -> int:
    raw = os.environ.get("PHIK_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _emit_json(args, payload) -> None:
    _emit(args, json.dumps(payload, indent=2))


def _no_csv(args) -> None:
    if args.format == "csv":
        raise ValueError("csv output is not defined for this subcommand")


def _emit_value(args, value, **fields) -> None:
    if args.format == "json":
        payload = {key: str(v) for key, v in fields.items()}
        payload["value"] = str(value)
        _emit_json(args, payload)
    else:
        _emit(args, str(value))


# -- eval / oracle handlers -------------------------------------------------


def _cmd_eval_phi_k(args) -> int:
    _no_csv(args)
    _emit_value(args, phi_k(args.k, args.n), k=args.k, n=args.n)
    return EXIT_OK


def _cmd_eval_phi_k_nm(args) -> int:
    _no_csv(args)
    fn = phi_k_nm_recursion if args.method == "recursion" else phi_k_nm
    _emit_value(args, fn(args.k, args.n, args.m), k=args.k, n=args.n, m=args.m)
    return EXIT_OK


def _cmd_eval_g_k(args) -> int:
    _no_csv(args)
    _emit_value(args, g_k(args.k, args.n), k=args.k, n=args.n)
    return EXIT_OK


def _cmd_eval_n_k(args) -> int:
    _no_csv(args)
    fn = n_k_recursion if args.method == "recursion" else n_k
    _emit_value(
        args,
        fn(args.k, args.n, args.d, args.delta),
        k=args.k,
        n=args.n,
        d=args.d,
        delta=args.delta,
    )
    return EXIT_OK


def _cmd_eval_jordan(args) -> int:
    _no_csv(args)
    _emit_value(args, jordan_totient(args.k, args.n), k=args.k, n=args.n)
    return EXIT_OK


def _cmd_oracle_phi_k(args) -> int:
    _no_csv(args)
    if args.m is None:
        value = phi_k_oracle(args.k, args.n, args.budget)
        _emit_value(args, value, k=args.k, n=args.n)
    else:
        value = phi_k_nm_oracle(args.k, args.n, args.m, args.budget)
        _emit_value(args, value, k=args.k, n=args.n, m=args.m)
    return EXIT_OK


def _cmd_oracle_n_k(args) -> int:
    _no_csv(args)
    value = n_k_oracle(args.k, args.n, args.d, args.delta, args.budget)
    _emit_value(args, value, k=args.k, n=args.n, d=args.d, delta=args.delta)
    return EXIT_OK


def _cmd_oracle_menon_lhs(args) -> int:
    _no_csv(args)
    spec = parse_function_spec(args.f)
    value = gcd_sum_lhs_oracle(args.k, args.n, spec, args.budget)
    _emit_value(args, value, k=args.k, n=args.n, f=spec.label)
    return EXIT_OK


# -- verify handlers ---------------------------------------------------------


def _report_lines(report) -> list[str]:
    lines = [
        f"identity={report.identity} checked={report.checked} "
        f"failures={len(report.failures)} trivial_zeros={report.trivial_zeros} "
        f"skipped={len(report.skipped)}"
    ]
    for inst in report.failures:
        params = " ".join(f"{key}={val}" for key, val in inst.params)
        line = f"FAIL {params} lhs={inst.lhs} rhs={inst.rhs}"
        if inst.detail:
            line += f" ({inst.detail})"
        lines.append(line)
    for skip in report.skipped:
        lines.append(f"SKIP {skip}")
    return lines


def _finish_verify(args, reports) -> int:
    if args.format == "json":
        payload = [report.as_dict() for report in reports]
        _emit_json(args, payload if len(payload) > 1 else payload[0])
    else:
        lines = []
        for report in reports:
            lines.extend(_report_lines(report))
        verdict = "PASS" if all(r.ok for r in reports) else "FAIL"
        if any(r.partial for r in reports):
            verdict += " (partial: some instances skipped over budget)"
        lines.append(verdict)
        _emit(args, "\n".join(lines))
    if not all(r.ok for r in reports):
        return EXIT_FAILURE
    if any(r.partial for r in reports):
        return EXIT_BUDGET
    return EXIT_OK


def _cmd_verify_menon(args) -> int:
    _no_csv(args)
    report = verify_sweep(
        "menon_general",
        k_max=args.k_max,
        n_max=args.n_max,
        f=args.f,
        budget=args.budget,
        workers=args.workers,
    )
    return _finish_verify(args, [report])


def _cmd_verify_sita_ramaiah(args) -> int:
    _no_csv(args)
    report = verify_sweep(
        "sita_ramaiah",
        n_max=args.n_max,
        budget=args.budget,
        workers=args.workers,
    )
    return _finish_verify(args, [report])


def _cmd_verify_nageswara_rao(args) -> int:
    _no_csv(args)
    report = verify_sweep(
        "nageswara_rao",
        k_max=args.k_max,
        n_max=args.n_max,
        budget=args.budget,
        workers=args.workers,
    )
    return _finish_verify(args, [report])


def _cmd_verify_lemmas(args) -> int:
    _no_csv(args)
    reports = [
        lemma_sweep(args.n_max),
        n_k_sweep(args.k_max, args.n_max, args.budget),
    ]
    return _finish_verify(args, reports)


# -- summatory handlers -------------------------------------------------------


def _cmd_sum_phi_k(args) -> int:
    results = []
    if args.method in ("direct", "both"):
        results.append(
            sum_phi_k_direct(
                args.k, args.x, sieve_limit=args.sieve_limit, workers=args.workers
            )
        )
    if args.method in ("convolution", "both"):
        results.append(sum_phi_k_convolution(args.k, args.x, sieve_limit=args.sieve_limit))
    if len(results) == 2 and results[0].value != results[1].value:
        print(
            "METHOD MISMATCH (implementation bug): "
            f"direct_sieve={results[0].value} convolution={results[1].value}",
            file=sys.stderr,
        )
        return EXIT_FAILURE
    if args.format == "csv":
        rows = error_term_rows(
            args.k, [args.x], prime_bound=args.prime_bound, sieve_limit=args.sieve_limit
        )
        _emit(args, error_table_csv(rows))
    elif args.format == "json":
        payload = results[0].as_dict()
        if args.method == "both":
            payload["method"] = "both"
        _emit_json(args, payload)
    else:
        _emit(args, str(results[0].value))
    return EXIT_OK


def _cmd_constant(args) -> int:
    enclosure = average_order_constant(args.k, args.prime_bound)
    if args.format == "csv":
        raise ValueError("csv output is not defined for this subcommand")
    if args.format == "json":
        _emit_json(args, enclosure.as_dict())
    else:
        _emit(
            args,
            f"C_{args.k} in [{enclosure.lo!r}, {enclosure.hi!r}] "
            f"width={enclosure.width!r} (primes up to {args.prime_bound})",
        )
    return EXIT_OK


def _cmd_error_table(args) -> int:
    try:
        grid = [int(part) for part in args.x_grid.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"bad x grid {args.x_grid!r}, expected comma-separated integers")
    rows = error_term_rows(
        args.k, grid, prime_bound=args.prime_bound, sieve_limit=args.sieve_limit
    )
    if args.format == "json":
        _emit_json(args, [row.as_dict() for row in rows])
    else:
        _emit(args, error_table_csv(rows))
    return EXIT_OK


# -- parser ---------------------------------------------------------------


def _add_common(
    parser: argparse.ArgumentParser,
    formats=("plain", "json", "csv"),
    default_format="plain",
) -> None:
    parser.add_argument("--format", choices=formats, default=default_format)
    parser.add_argument("--budget", type=int, default=DEFAULT_ORACLE_BUDGET)
    parser.add_argument("--workers", type=int, default=_default_workers())
    parser.add_argument("--out", help="write output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phik",
        description="Exact arithmetic for the k-dimensional totient, its "
        "gcd-sum identities, and its average order.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p_eval = sub.add_parser("eval", help="closed-form evaluation")
    eval_sub = p_eval.add_subparsers(dest="target", required=True)

    p = eval_sub.add_parser("phi-k", help="phi_k(n)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    p.set_defaults(handler=_cmd_eval_phi_k)

    p = eval_sub.add_parser("phi-k-nm", help="two-parameter phi_k(n, m)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--method", choices=("closed", "recursion"), default="closed")
    _add_common(p)
    p.set_defaults(handler=_cmd_eval_phi_k_nm)

    p = eval_sub.add_parser("g-k", help="convolution factor g_k(n)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    p.set_defaults(handler=_cmd_eval_g_k)

    p = eval_sub.add_parser("n-k", help="unit-tuple count N_k(n, d, delta)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--method", choices=("closed", "recursion"), default="closed")
    _add_common(p)
    p.set_defaults(handler=_cmd_eval_n_k)

    p = eval_sub.add_parser("jordan", help="Jordan totient J_k(n)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    p.set_defaults(handler=_cmd_eval_jordan)

    p_oracle = sub.add_parser("oracle", help="brute-force enumeration")
    oracle_sub = p_oracle.add_subparsers(dest="target", required=True)

    p = oracle_sub.add_parser("phi-k", help="phi_k(n) by full tuple enumeration")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--m",
        type=int,
        default=None,
        help="test the sum against m instead of n (m not dividing n is experimental)",
    )
    _add_common(p)
    p.set_defaults(handler=_cmd_oracle_phi_k)

    p = oracle_sub.add_parser("n-k", help="N_k(n, d, delta) by unit-tuple enumeration")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    _add_common(p)
    p.set_defaults(handler=_cmd_oracle_n_k)

    p = oracle_sub.add_parser("menon-lhs", help="gcd sum over admissible tuples")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--f", default="id", help="id | one | tau | mu | pow:j | table:<path>")
    _add_common(p)
    p.set_defaults(handler=_cmd_oracle_menon_lhs)

    p_verify = sub.add_parser("verify", help="identity sweeps against oracles")
    verify_sub = p_verify.add_subparsers(dest="target", required=True)

    p = verify_sub.add_parser("menon", help="gcd-sum identity, arbitrary f")
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--n-max", type=int, default=40)
    p.add_argument("--f", default="id", help="id | one | tau | mu | pow:j | table:<path>")
    _add_common(p)
    p.set_defaults(handler=_cmd_verify_menon)

    p = verify_sub.add_parser("sita-ramaiah", help="k = 2 gcd-sum specialization")
    p.add_argument("--n-max", type=int, default=60)
    _add_common(p)
    p.set_defaults(handler=_cmd_verify_sita_ramaiah)

    p = verify_sub.add_parser("nageswara-rao", help="joint-gcd power identity")
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--n-max", type=int, default=40)
    _add_common(p)
    p.set_defaults(handler=_cmd_verify_nageswara_rao)

    p = verify_sub.add_parser("lemmas", help="residue-class counts and N_k machinery")
    p.add_argument("--n-max", type=int, default=40)
    p.add_argument("--k-max", type=int, default=3, help="tuple length cap for the N_k sweep")
    _add_common(p)
    p.set_defaults(handler=_cmd_verify_lemmas)

    p_sum = sub.add_parser("sum", help="exact partial sums")
    sum_sub = p_sum.add_subparsers(dest="target", required=True)

    p = sum_sub.add_parser("phi-k", help="sum of phi_k(n) for n <= x")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--method", choices=("direct", "convolution", "both"), default="direct")
    p.add_argument("--sieve-limit", type=int, default=DEFAULT_SIEVE_LIMIT)
    p.add_argument("--prime-bound", type=int, default=DEFAULT_PRIME_BOUND)
    _add_common(p)
    p.set_defaults(handler=_cmd_sum_phi_k)

    p = sub.add_parser("constant", help="enclose the average-order constant C_k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--prime-bound", type=int, default=DEFAULT_PRIME_BOUND)
    _add_common(p, formats=("plain", "json"))
    p.set_defaults(handler=_cmd_constant)

    p = sub.add_parser("error-table", help="exact sums against the main term")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--x-grid", required=True, help="comma-separated cutoffs, e.g. 100,1000")
    p.add_argument("--prime-bound", type=int, default=DEFAULT_PRIME_BOUND)
    p.add_argument("--sieve-limit", type=int, default=DEFAULT_SIEVE_LIMIT)
    _add_common(p, formats=("csv", "json", "plain"), default_format="csv")
    p.set_defaults(handler=_cmd_error_table)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except BudgetExceededError as exc:
        print(f"budget refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
