"""Command line interface.

Exit codes: 0 all checks passed, 1 usage error, 2 a certification check
failed, 3 a result disagrees with a printed value (reported, not a bug).
"""

from __future__ import annotations

import argparse
import math
import sys
import time

import mpmath

from . import bounds
from .exact_core import exact_sinc_integral, to_float
from .inequality import Relation, schneider_scan
from .quadrature import QuadratureError, contour_mean, gaussian_moment, quad_sinc_pow
from .report import (
    EXIT_USAGE,
    CheckResult,
    Report,
    float_obj,
    frac_str,
    rows_to_csv,
)
from .series import asympt_eval, asymptotic_coefficients

DEFAULT_PRECISION = 128


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _bits_for_digits(digits: int | None, floor: int = DEFAULT_PRECISION) -> int:
    if digits is None:
        return floor
    return max(floor, math.ceil(digits * math.log2(10)) + 16)


def cmd_exact(args, report: Report) -> str | None:
    ev = exact_sinc_integral(args.n)
    prec = _bits_for_digits(args.digits)
    report.parameters.update(n=args.n, digits=args.digits, precision_bits=prec)
    report.results["r"] = ev.r
    report.results["value"] = float_obj(to_float(ev.r, prec), args.digits)
    return None


def cmd_coeffs(args, report: Report) -> str | None:
    report.parameters.update(order=args.order, format=args.format)
    expansion = asymptotic_coefficients(args.order)
    report.results["coefficients"] = {ell: expansion.c(ell) for ell in range(1, args.order + 1)}
    check = report.add(bounds.compare_printed_coeffs(expansion))
    if args.format == "csv":
        rows = []
        for ell in range(1, args.order + 1):
            printed = bounds.PRINTED_COEFFS[ell - 1] if ell <= len(bounds.PRINTED_COEFFS) else None
            match = "" if printed is None else str(printed == expansion.c(ell)).lower()
            rows.append([ell, frac_str(expansion.c(ell)), "" if printed is None else frac_str(printed), match])
        if check.status != "pass":
            print(f"discrepancy with printed coefficients at orders {check.detail['mismatched']}",
                  file=sys.stderr)
        return rows_to_csv(["order", "computed", "printed", "match"], rows)
    return None


def cmd_asympt(args, report: Report) -> str | None:
    prec = _bits_for_digits(args.digits)
    report.parameters.update(n=args.n, order=args.order, digits=args.digits, precision_bits=prec)
    expansion = asymptotic_coefficients(args.order) if args.order > 0 else None
    value = asympt_eval(args.n, args.order, prec, expansion)
    report.results["value"] = float_obj(value, args.digits)
    if args.order == 4:
        exact = to_float(exact_sinc_integral(args.n).r, prec)
        with mpmath.workprec(prec):
            n = mpmath.mpf(args.n)
            bound = mpmath.sqrt(3 * mpmath.pi / (2 * n)) * mpmath.mpf(bounds.ENVELOPE_CONSTANT) / n**5
            err = abs(exact.value - value.value)
            within = bounds.certified_le(err, bound)
            report.results["exact"] = float_obj(exact, args.digits)
            report.results["error"] = mpmath.nstr(err, 12)
            report.results["error_bound"] = mpmath.nstr(bound, 12)
        excluded = args.n in bounds.EXPECTED_EXCEPTIONS
        report.results["excluded_n"] = excluded
        if not excluded:
            report.add(CheckResult("prop2_bound", "pass" if within else "discrepancy",
                                   {"n": args.n, "within_bound": within}))
    return None


def _envelope_check(report_: bounds.EnvelopeReport) -> CheckResult:
    n_max, worst = report_.max_residual
    detail = {
        "n_range": list(report_.n_range),
        "threshold": report_.threshold,
        "flagged": report_.exceptions,
        "expected_flagged": sorted(report_.expected_exceptions),
        "unexpected_flagged": report_.unexpected,
        "missing_flagged": report_.missing,
        "max_residual_outside_expected": {"n": n_max, "value": worst},
        "expected_residuals": {n: report_.residuals[n] for n in sorted(report_.expected_exceptions)
                               if n in report_.residuals},
        "unexpected_residuals": {n: report_.residuals[n] for n in report_.unexpected},
    }
    # residuals above the printed constant at n the paper does not exclude are a
    # disagreement with the paper, not a malfunction here
    status = "pass" if report_.matches_paper else "discrepancy"
    return CheckResult("prop2_envelope", status, detail)


def cmd_certify(args, report: Report) -> str | None:
    report.parameters.update(max_n=args.max_n)
    t = report.timings

    def timed(name, fn):
        start = time.perf_counter()
        out = fn()
        t[name] = time.perf_counter() - start
        return out

    env = timed("envelope", lambda: bounds.prop2_envelope(1, args.max_n))
    report.add(_envelope_check(env))
    report.add(timed("tail_lemma", bounds.tail_lemma_check))
    report.add(timed("coeff_bound", lambda: bounds.coeff_bound_check(60, k_min=4)))
    low = bounds.coeff_bound_check(3, k_min=2)
    report.results["coeff_bound_k2"] = {"holds": low.detail["per_k"][2], "note": "a_2 = -1/6"}
    report.add(timed("remainder_bound", bounds.remainder_grid_check))
    report.add(timed("log_sinc_upper", bounds.log_sinc_upper_check))
    report.add(timed("fibonacci", lambda: bounds.fibonacci_identity_check(300)))
    report.add(timed("gaussian_tail", bounds.gaussian_tail_check))

    def moments():
        bad = []
        with mpmath.workprec(256):
            for k in range(11):
                ref = math.prod(range(1, 2 * k, 2)) * mpmath.sqrt(mpmath.pi / 2)
                if abs(gaussian_moment(k, 256).value - ref) > mpmath.mpf("1e-20"):
                    bad.append(k)
        return CheckResult("gaussian_moments", "fail" if bad else "pass", {"failures": bad})

    report.add(timed("gaussian_moments", moments))

    def budgets():
        rows, ok = {}, True
        prev = None
        for n in (400, 1000, 2000):
            b = bounds.error_budget(n)
            monotone = prev is None or b.total.value < prev
            prev = b.total.value
            ok &= b.residual_ok and b.extension_ok and monotone
            rows[n] = {"taylor_tail": b.taylor_tail, "extension_tail": b.extension_tail,
                       "residual_terms": b.residual_terms, "total": b.total,
                       "residual_ok": b.residual_ok, "extension_ok": b.extension_ok}
        return CheckResult("error_budget", "pass" if ok else "fail", rows)

    report.add(timed("error_budget", budgets))

    def contour():
        m = contour_mean(3)
        ok = abs(m.value - mpmath.mpf("9.733")) <= mpmath.mpf("1e-3")
        return CheckResult("contour_constant", "pass" if ok else "discrepancy", {"M": m})

    report.add(timed("contour_constant", contour))
    return None


def cmd_schneider(args, report: Report) -> str | None:
    report.parameters.update(max_n=args.max_n, threads=args.threads)
    start = time.perf_counter()
    verdicts = schneider_scan(args.max_n, threads=args.threads)
    report.timings["scan"] = time.perf_counter() - start
    report.results["non_strict"] = [
        {"n": v.n, "lhs": v.lhs, "rhs": v.rhs, "relation": v.relation.value} for v in verdicts
    ]
    lt = [v.n for v in verdicts if v.relation is Relation.LT]
    eq = [v.n for v in verdicts if v.relation is Relation.EQ]
    report.add(CheckResult("no_lt", "fail" if lt else "pass", {"lt": lt}))
    expected_eq = [n for n in (4,) if n <= args.max_n]
    extra = [n for n in eq if n not in expected_eq]
    report.add(CheckResult("equality_set", "discrepancy" if extra or eq != expected_eq else "pass",
                           {"eq": eq, "expected_eq": expected_eq, "extra_eq": extra}))
    return None


def cmd_oracle(args, report: Report) -> str | None:
    report.parameters.update(n=args.n, target_err=args.target_err, precision_bits=args.precision)
    start = time.perf_counter()
    q = quad_sinc_pow(args.n, mpmath.mpf(args.target_err), precision=args.precision)
    report.timings["quadrature"] = time.perf_counter() - start
    exact = to_float(exact_sinc_integral(args.n).r, args.precision)
    with mpmath.workprec(args.precision):
        diff = abs(q.value.value - exact.value)
        ok = diff <= q.certified_error.value
    report.results.update(quadrature=q.value, certified_error=q.certified_error, pieces=q.pieces,
                          exact=exact, difference=mpmath.nstr(diff, 12))
    report.add(CheckResult("oracle_equivalence", "pass" if ok else "fail",
                           {"difference": mpmath.nstr(diff, 12)}))
    return None


TABLE_HEADER = ["n", "r", "I", "asympt_L4", "residual_n5"]


def table_rows(a: int, b: int, precision: int = DEFAULT_PRECISION) -> list[list[str]]:
    expansion = asymptotic_coefficients(4)
    rows = []
    for n in range(a, b + 1):
        r = exact_sinc_integral(n).r
        rows.append([
            str(n),
            frac_str(r),
            to_float(r, precision).to_decimal(30),
            asympt_eval(n, 4, precision, expansion).to_decimal(30),
            bounds.envelope_residual(n, expansion, precision).to_decimal(12),
        ])
    return rows


def cmd_table(args, report: Report) -> str | None:
    if not 1 <= args.from_ <= args.to:
        raise UsageError("need 1 <= --from <= --to")
    report.parameters.update(from_=args.from_, to=args.to)
    return rows_to_csv(TABLE_HEADER, table_rows(args.from_, args.to))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sincpow", description=__doc__.splitlines()[0])
    parser.add_argument("--out", help="also write the output to this file")
    parser.add_argument("--threads", type=int, default=1, help="worker processes for scans")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p = sub.add_parser("exact", help="exact value r with I(n) = r*pi")
    p.add_argument("n", type=int)
    p.add_argument("--digits", type=int)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("coeffs", help="coefficients c_1..c_L of the 1/n expansion")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("asympt", help="value of the truncated expansion")
    p.add_argument("n", type=int)
    p.add_argument("--order", type=int, default=4)
    p.add_argument("--digits", type=int)
    p.set_defaults(func=cmd_asympt)

    p = sub.add_parser("certify", help="run all bound checks")
    p.add_argument("--max-n", type=int, default=400)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("schneider", help="exact scan of the binomial inequality")
    p.add_argument("--max-n", type=int, default=400)
    p.set_defaults(func=cmd_schneider)

    p = sub.add_parser("oracle", help="quadrature cross-check against the exact value")
    p.add_argument("n", type=int)
    p.add_argument("--target-err", default="1e-25")
    p.add_argument("--precision", type=int, default=256)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("table", help="CSV of exact and asymptotic values")
    p.add_argument("--from", dest="from_", type=int, required=True)
    p.add_argument("--to", type=int, required=True)
    p.set_defaults(func=cmd_table)
    return parser


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        report = Report(command=argv, parameters={})
        start = time.perf_counter()
        text = args.func(args, report)
        report.timings["total"] = time.perf_counter() - start
    except (UsageError, ValueError, QuadratureError) as exc:
        print(f"sincpow: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if text is None:
        text = report.to_json() + "\n"
    stdout.write(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    return report.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
