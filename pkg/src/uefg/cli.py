"""``uefg`` command line: sum | spectrum | verify | conjecture.

Exit codes: 0 success, 2 invalid arguments or unwritable output,
3 closed form / oracle disagreement or failed identity, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from math import gcd

from . import expsums, verify
from .cyclo import CycNum, CyclotomicOrderError, root_of_unity
from .nt_kernel import factor, mod_inverse
from .schema import SCHEMA_VERSION, encode_value
from .spectra import (
    DEFAULT_DENSE_BUDGET,
    DEFAULT_ENUM_BUDGET,
    BudgetExceeded,
    GraphParams,
    LatticeVector,
    adjacency_oracle,
    eigenvalue_map,
    fft_oracle,
    lambda_oracle,
    spectrum,
    sweep_one,
)

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_BUDGET = 0, 2, 3, 4
EXACT_ORACLE_LIMIT = 4096  # vertices; beyond this the oracle sweep is numeric


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``start:stop[:step]`` (stop included when aligned) or a single integer."""
    parts = text.split(":")
    try:
        nums = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}") from None
    if len(nums) == 1:
        return nums
    if len(nums) not in (2, 3):
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    start, stop = nums[0], nums[1]
    step = nums[2] if len(nums) == 3 else 1
    if step <= 0:
        raise argparse.ArgumentTypeError("range step must be positive")
    return list(range(start, stop + 1, step))


def resolve_budget(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get("UEFG_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"UEFG_BUDGET must be an integer, got {env!r}") from None
    return DEFAULT_ENUM_BUDGET


def envelope(command: str, params: dict, results: dict, timing: float | None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "params": params,
        "results": results,
        "timing": timing,
    }


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


# sum --------------------------------------------------------------------

def _sum_values(kind: str, n: int, c: int | None, b: int | None, k: int | None):
    """Returns (value, oracle value or None, closed-form applicability)."""
    if kind == "ramanujan":
        return expsums.ramanujan_sum(c, n), expsums.ramanujan_sum_direct(c, n)
    if kind == "gauss":
        direct = expsums.gauss_sum_direct(n, c)
        if gcd(c, n) == 1:
            return expsums.gauss_sum_closed(n, c), direct
        return direct, None
    if kind == "char-gauss":
        if n % 2 == 0:
            raise UsageError("char-gauss needs odd n")
        value = expsums.char_gauss_sum(n, c)
        if gcd(c, n) == 1 or factor(n).squarefree:
            return value, expsums.char_gauss_sum(n, 1) * expsums.jacobi(c, n)
        return value, None
    if kind == "theta":
        value = expsums.theta(n, b, k)
        if gcd(k, n) == 1 and n % 2 == 1:
            # complete the square: k x^2 + b x = k (x + b/(2k))^2 - b^2/(4k)
            shift = root_of_unity(n, -mod_inverse(4 * k, n) * b * b)
            return value, shift * expsums.gauss_sum_closed(n, k)
        if gcd(k, n) == 1 and b % 2 == 0:
            half = b // 2
            shift = root_of_unity(n, -mod_inverse(k, n) * half * half)
            return value, shift * expsums.gauss_sum(n, k)
        return value, None
    raise UsageError(f"unknown sum kind {kind}")


def cmd_sum(args) -> int:
    n = args.n
    if n < 1:
        raise UsageError("--n must be positive")
    if args.kind == "theta":
        if args.b is None or args.k is None:
            raise UsageError("theta needs --b and --k")
    elif args.c is None:
        raise UsageError(f"{args.kind} needs --c")
    start = time.perf_counter()
    value, other = _sum_values(args.kind, n, args.c, args.b, args.k)
    agree = None if other is None else other == value
    params = {"kind": args.kind, "n": n}
    for name in ("c", "b", "k"):
        if getattr(args, name) is not None:
            params[name] = getattr(args, name)
    results = {"value": encode_value(value), "agreement": agree}
    if isinstance(value, CycNum):
        results["approx"] = [value.approx_complex().real, value.approx_complex().imag]
    if args.json:
        print(_dump(envelope("sum", params, results, time.perf_counter() - start)))
    else:
        print(value)
        if agree is not None:
            print(f"closed form agrees with direct sum: {agree}")
    return EXIT_MISMATCH if agree is False else EXIT_OK


# spectrum ---------------------------------------------------------------

def spectrum_results(rep) -> dict:
    return {
        "degree": rep.degree,
        "vertex_count": rep.params.vertex_count,
        "parity_class": rep.params.parity_class,
        "eigenvalues": [{"value": encode_value(v), "multiplicity": m} for v, m in rep.eigenvalues],
        "all_integral": rep.all_integral,
        "ramanujan_ok": rep.ramanujan_ok,
        "second_max_abs": rep.second_max_abs,
    }


def _oracle_check(params: GraphParams, rep, budget: int) -> dict:
    out = {}
    closed = eigenvalue_map(params, "closed", budget)
    if params.vertex_count <= EXACT_ORACLE_LIMIT:
        # exact: enumerate S_d(n) for every b
        out["enumeration"] = "exact"
        mismatches = [list(b) for b, v in closed.items()
                      if v != lambda_oracle(LatticeVector(params, b), budget)]
    else:
        out["enumeration"] = "fft"
        grid = fft_oracle(params, budget)
        mismatches = [list(b) for b, v in closed.items()
                      if abs(v.approx_complex() - grid[b]) > 1e-6]
    out["enumeration_agrees"] = not mismatches
    out["enumeration_mismatches"] = mismatches[:20]
    if params.vertex_count <= DEFAULT_DENSE_BUDGET:
        dense = adjacency_oracle(params)
        ours = rep.numeric()
        err = max((abs(a - b) for a, b in zip(dense, ours)), default=0.0)
        out["dense_agrees"] = len(dense) == len(ours) and err <= 1e-6
        out["dense_max_error"] = err
    else:
        out["dense_agrees"] = None
        out["dense_skipped"] = f"n^d above dense budget {DEFAULT_DENSE_BUDGET}"
    return out


def cmd_spectrum(args) -> int:
    budget = resolve_budget(args.budget)
    try:
        params = GraphParams.of(args.n, args.d)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    start = time.perf_counter()
    rep = spectrum(params, budget)
    results = spectrum_results(rep)
    status = EXIT_OK
    if args.oracle:
        check = _oracle_check(params, rep, budget)
        results["oracle"] = check
        if not check["enumeration_agrees"] or check["dense_agrees"] is False:
            status = EXIT_MISMATCH
    elapsed = time.perf_counter() - start
    if args.csv and rep.all_integral:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["value", "multiplicity"])
        for v, m in rep.eigenvalues:
            w.writerow([v, m])
        return status
    if args.csv:
        print("non-integral spectrum: CSV cannot carry it, writing JSON", file=sys.stderr)
    if args.json or args.csv:
        print(_dump(envelope("spectrum", {"n": args.n, "d": args.d}, results, elapsed)))
        return status
    print(f"T_{args.n}^({args.d}): {params.vertex_count} vertices, degree {rep.degree}")
    for v, m in rep.eigenvalues:
        print(f"  {str(v):>24}  x{m}")
    print(f"all integral: {rep.all_integral}")
    print(f"ramanujan bound met: {rep.ramanujan_ok} (max nontrivial |lambda| = {rep.second_max_abs:g})")
    if args.oracle:
        print(f"oracle: enumeration agrees {results['oracle']['enumeration_agrees']}, "
              f"dense agrees {results['oracle']['dense_agrees']}")
    return status


# verify -----------------------------------------------------------------

_VERIFY_FLAGS = {
    "gauss": {"max_n": "max_n"},
    "ramanujan": {"max_n": "max_n"},
    "char": {"max_n": "max_n"},
    "lemma21": {"max_n": "max_n"},
    "lemma31": {"max_n": "max_n", "max_d": "max_d"},
    "lemma32": {"max_n": "max_n", "max_d": "max_d"},
    "lemma34": {"max_n": "max_n", "max_size": "max_size"},
    "lemma37": {"max_n": "max_n", "max_size": "max_size"},
    "oracle": {"max_n": "max_n", "max_d": "max_d", "max_size": "max_size"},
}


def cmd_verify(args) -> int:
    kwargs = {}
    for flag, kw in _VERIFY_FLAGS[args.suite].items():
        val = getattr(args, flag)
        if val is not None:
            if val < 1:
                raise UsageError(f"--{flag.replace('_', '-')} must be positive")
            kwargs[kw] = val
    start = time.perf_counter()
    res = verify.SUITES[args.suite](**kwargs)
    elapsed = time.perf_counter() - start
    if args.json:
        print(_dump(envelope("verify", {"suite": args.suite, **kwargs}, res.as_dict(), elapsed)))
    else:
        print(f"{args.suite}: {res.checks} checks, {len(res.failures)} failures -> "
              f"{'pass' if res.passed else 'FAIL'}")
        for f in res.failures[:20]:
            print(f"  failed: {f}")
    return EXIT_OK if res.passed else EXIT_MISMATCH


# conjecture -------------------------------------------------------------

def sweep_record_json(rec) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "n": rec.n,
        "d": rec.d,
        "status": rec.status,
        "all_integral": rec.all_integral,
        "witness": list(rec.witness) if rec.witness is not None else None,
        "witness_value": rec.witness_value.to_json() if rec.witness_value is not None else None,
        "degree": rec.degree,
        "distinct_eigenvalues": rec.distinct_eigenvalues,
        "timing": rec.timing,
        "reason": rec.reason,
    }


def cmd_conjecture(args) -> int:
    budget = resolve_budget(args.budget)
    out = sys.stdout
    if args.out not in (None, "-"):
        try:
            out = open(args.out, "w")
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from None
    start = time.perf_counter()
    summary = {"pairs": 0, "done": 0, "skipped": 0, "non_integral": []}
    try:
        for n in args.n:
            if n < 2 or n % 2:
                continue
            for d in args.d:
                if d < 1 or d % 2 == 0:
                    continue
                rec = sweep_one(n, d, budget)
                out.write(json.dumps(sweep_record_json(rec), sort_keys=True) + "\n")
                out.flush()
                summary["pairs"] += 1
                summary[rec.status] += 1
                if rec.all_integral is False:
                    summary["non_integral"].append([n, d])
    finally:
        if out is not sys.stdout:
            out.close()
    if out is not sys.stdout:
        params = {"n": args.n, "d": args.d, "budget": budget, "out": args.out}
        print(_dump(envelope("conjecture", params, summary, time.perf_counter() - start)))
    return EXIT_OK


# entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="uefg", description="Spectra of unitary finite-Euclidean graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sum", help="evaluate one exponential sum exactly")
    s.add_argument("kind", choices=["gauss", "ramanujan", "char-gauss", "theta"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--c", type=int)
    s.add_argument("--b", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_sum)

    s = sub.add_parser("spectrum", help="full spectrum of T_n^(d)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--oracle", action="store_true",
                   help="also check against enumeration and the dense Jacobi eigensolver")
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true", help="value,multiplicity (integral spectra only)")
    s.add_argument("--budget", type=int, help="max n^d (default: $UEFG_BUDGET or 10^6)")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("verify", help="run a bounded identity suite")
    s.add_argument("--suite", required=True, choices=sorted(verify.SUITES))
    s.add_argument("--max-n", dest="max_n", type=int)
    s.add_argument("--max-d", dest="max_d", type=int)
    s.add_argument("--max-size", dest="max_size", type=int)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("conjecture", help="sweep n even, d odd; one JSON line per pair",
                       epilog="Ranges are start:stop[:step], stop included when aligned.")
    s.add_argument("--n", type=parse_range, required=True, help="e.g. 2:12:2")
    s.add_argument("--d", type=parse_range, required=True, help="e.g. 1:5:2")
    s.add_argument("--budget", type=int, help="max n^d per pair (default: $UEFG_BUDGET or 10^6)")
    s.add_argument("--out", help="JSON-lines output path (default stdout)")
    s.set_defaults(func=cmd_conjecture)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"uefg: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"uefg: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CyclotomicOrderError as exc:
        print(f"uefg: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"uefg: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
