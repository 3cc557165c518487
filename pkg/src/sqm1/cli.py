"""Command-line interface.

Every subcommand routes to one library operation and serializes through
emit.py, so identical invocations produce byte-identical output regardless
of thread count.  Exit codes: 0 success, 1 verification failure, 2 usage
error.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import dynamics, emit, heuristics, orbits, polys, separation
from .errors import CertificateFailed, NonExactDivision, Sqm1Error

SYNOPSIS = "run `sqm1 --help` for the command list and `sqm1 <command> --help` for flags"

EXTENDED_XMAX = 1_000_000


def _write(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit(args, default: str) -> str:
    return args.emit or default


def _require_extended(args, x_max: int) -> None:
    if x_max > EXTENDED_XMAX and not args.extended:
        raise Sqm1Error(f"targets above {EXTENDED_XMAX} need the --extended flag")


def cmd_basin(args) -> int:
    basin = dynamics.compute_basin(args.p)
    if _emit(args, "csv") == "json":
        _write(args, emit.to_json(emit.basin_obj(basin)))
    else:
        header = ("p", "basin_size", "balance", "is_full")
        row = (basin.p, basin.size, emit.sig6(basin.balance), emit.sig6(basin.is_full))
        _write(args, emit.csv_block(header, [row]))
    return 0


def cmd_census(args) -> int:
    census = dynamics.functional_census(args.p)
    if _emit(args, "csv") == "json":
        _write(args, emit.to_json(emit.census_obj(census)))
    else:
        header = ("p", "n_components", "cycle_lengths", "component_sizes", "basin_size")
        row = (
            census.p,
            census.n_components,
            ";".join(str(c) for c in census.cycle_lengths),
            ";".join(str(c) for c in census.component_sizes),
            census.basin_size,
        )
        _write(args, emit.csv_block(header, [row]))
    return 0


def cmd_scan(args) -> int:
    records = dynamics.scan_primes(args.limit, args.with_census, args.threads)
    if _emit(args, "csv") == "json":
        _write(args, emit.json_lines(emit.scan_record_obj(r) for r in records))
    else:
        _write(args, emit.csv_block(emit.SCAN_HEADER, (emit.scan_row(r) for r in records)))
    return 0


def cmd_separate(args) -> int:
    _require_extended(args, args.xmax)
    report = separation.separate(args.xmax, args.order, args.traversal, args.prime_limit)
    _write(args, emit.to_json(emit.separation_obj(report)))
    return 0 if report.separated else 1


def cmd_minimal_prime(args) -> int:
    _require_extended(args, args.xmax)
    report = separation.separate(args.xmax, "ascending", args.traversal, args.prime_limit)
    if not report.separated:
        print(
            f"not separated: primes up to {report.prime_limit} leave "
            f"{report.residual_blocks} blocks for xmax {args.xmax}",
            file=sys.stderr,
        )
        return 1
    obj = {
        "x_max": args.xmax,
        "minimal_prime": report.max_prime_used,
        "primes_consumed": report.primes_consumed,
    }
    if _emit(args, "json") == "csv":
        _write(args, emit.csv_block(tuple(obj), [tuple(obj.values())]))
    else:
        _write(args, emit.to_json(obj))
    return 0


def cmd_balance_order(args) -> int:
    pairs = separation.balance_order(args.prime_limit)
    if _emit(args, "csv") == "json":
        objs = [
            {"p": p, "balance": emit.jnum(bal), "exact": emit.frac(bal)} for p, bal in pairs
        ]
        _write(args, emit.to_json({"prime_limit": args.prime_limit, "pairs": objs}))
    else:
        rows = [(p, emit.sig6(bal)) for p, bal in pairs]
        _write(args, emit.csv_block(("p", "balance"), rows))
    return 0


def cmd_orbit(args) -> int:
    record = orbits.orbit_terms(args.n, args.kmax)
    if _emit(args, "csv") == "json":
        _write(args, emit.to_json({"n": record.n, "terms": list(record.terms)}))
    else:
        rows = list(enumerate(record.terms))
        _write(args, emit.csv_block(("k", "term"), rows))
    return 0


def cmd_primes_of(args) -> int:
    ps = orbits.prime_set_truncated(args.n, args.limit)
    if _emit(args, "csv") == "json":
        _write(args, emit.to_json({"n": args.n, "prime_limit": args.limit, "primes": ps}))
    else:
        _write(args, emit.csv_block(("p",), [(p,) for p in ps]))
    return 0


def cmd_restricted_set(args) -> int:
    ps = orbits.restricted_set(args.n)
    if _emit(args, "csv") == "json":
        _write(args, emit.to_json({"n": args.n, "primes": ps}))
    else:
        _write(args, emit.csv_block(("p",), [(p,) for p in ps]))
    return 0


def cmd_gcd_experiment(args) -> int:
    report = orbits.gcd_experiment(args.n, args.n2, args.kmax)
    if _emit(args, "json") == "csv":
        rows = [
            (k, report.gcds[k], report.cofactors[k]) for k in range(report.k_max + 1)
        ]
        _write(args, emit.csv_block(("k", "gcd", "cofactor"), rows))
    else:
        _write(args, emit.to_json(emit.gcd_obj(report)))
    return 0


def _poly_out(args, poly, **extra) -> None:
    mode = _emit(args, "text")
    if mode == "json":
        _write(args, emit.to_json(emit.poly_obj(poly, **extra)))
    elif mode == "csv":
        header = tuple(extra) + ("degree", "coefficients")
        row = tuple(extra.values()) + (
            poly.degree,
            ";".join(str(c) for c in poly.coefficients),
        )
        _write(args, emit.csv_block(header, [row]))
    else:
        _write(args, str(poly) + "\n")


def cmd_iterate(args) -> int:
    _poly_out(args, polys.iterate_poly(args.m), m=args.m)
    return 0


def cmd_eisenstein(args) -> int:
    cert = polys.eisenstein_certificate(args.m)
    mode = _emit(args, "text")
    if mode == "json":
        obj = emit.poly_obj(cert.poly, m=cert.m, variant=cert.variant)
        obj["verified"] = cert.verified
        _write(args, emit.to_json(obj))
    elif mode == "csv":
        row = (
            cert.m,
            cert.variant,
            emit.sig6(cert.verified),
            ";".join(str(c) for c in cert.poly.coefficients),
        )
        _write(args, emit.csv_block(("m", "variant", "verified", "coefficients"), [row]))
    else:
        _write(args, f"{cert.variant}: {cert.poly}\n")
    return 0


def cmd_phi(args) -> int:
    _poly_out(args, polys.phi(args.n), n=args.n)
    return 0


def cmd_necklace(args) -> int:
    count = polys.necklace_count(args.n)
    if _emit(args, "text") == "json":
        _write(args, emit.to_json({"n": args.n, "count": count}))
    else:
        _write(args, f"{count}\n")
    return 0


def cmd_disc(args) -> int:
    poly = polys.BigPoly(args.coeffs)
    value = polys.discriminant(poly)
    if _emit(args, "text") == "json":
        obj = {"coefficients": list(poly.coefficients), "discriminant": value}
        _write(args, emit.to_json(obj))
    else:
        _write(args, f"{value}\n")
    return 0


def cmd_tree_model(args) -> int:
    prob = heuristics.tree_size_probability(args.n)
    if _emit(args, "text") == "json":
        obj = {"n": args.n, "probability": emit.frac(prob), "value": emit.jnum(prob)}
        _write(args, emit.to_json(obj))
    else:
        _write(args, f"{emit.frac(prob)}\n")
    return 0


def cmd_histogram(args) -> int:
    hist = heuristics.size_histogram(args.limit, args.max_n)
    if _emit(args, "csv") == "json":
        _write(args, emit.to_json(emit.histogram_obj(hist)))
    else:
        header = ("n", "size", "observed", "predicted")
        _write(args, emit.csv_block(header, emit.histogram_rows(hist)))
    return 0


def cmd_band(args) -> int:
    report = heuristics.band_count(args.limit, args.a, args.b)
    if _emit(args, "json") == "csv":
        _write(args, emit.csv_block(("p",), [(p,) for p in report.primes]))
    else:
        _write(args, emit.to_json(emit.band_obj(report)))
    return 0


def cmd_fpf(args) -> int:
    value = heuristics.fpf_fraction(args.n)
    reference = math.exp(-1 / args.n)
    if _emit(args, "text") == "json":
        obj = {
            "n": args.n,
            "fraction": emit.frac(value),
            "value": emit.jnum(value),
            "reference": emit.jnum(reference),
        }
        _write(args, emit.to_json(obj))
    else:
        _write(args, f"{emit.frac(value)}\n")
    if args.epsilon is not None and abs(float(value) - reference) >= args.epsilon:
        print(
            f"fixed-point fraction {float(value):.6g} deviates from e^(-1/n) "
            f"{reference:.6g} by >= {args.epsilon}",
            file=sys.stderr,
        )
        return 1
    return 0


def cmd_predict_full_basin(args) -> int:
    pred = heuristics.full_basin_prediction(args.limit)
    _write(args, emit.to_json(emit.prediction_obj(pred)))
    return 0


def cmd_delta(args) -> int:
    value = heuristics.delta_estimate(args.m, args.prime_limit, args.threads)
    if _emit(args, "text") == "json":
        obj = {
            "m": args.m,
            "prime_limit": args.prime_limit,
            "fraction": emit.frac(value),
            "value": emit.jnum(value),
        }
        _write(args, emit.to_json(obj))
    else:
        _write(args, f"{emit.sig6(value)}\n")
    return 0


def cmd_check_lemmas(args) -> int:
    limit = args.limit or 100_000
    checks = []

    ok = True
    for n in range(2, 21):
        terms = orbits.orbit_terms(n, 10).terms
        for k in range(9):
            identity = terms[k + 2] == terms[k] ** 2 * (terms[k] ** 2 - 2)
            if not identity or terms[k + 2] % terms[k]:
                ok = False
    checks.append(("orbit doubling identity and divisibility (n <= 20, k <= 8)", ok))

    ps, sizes = dynamics.basin_sizes_up_to(10_000)
    ok = all(
        (int(s) == 3) == (int(p) % 8 in (3, 5)) for p, s in zip(ps, sizes) if p != 2
    )
    checks.append(("basin size 3 exactly at p = +-3 mod 8, below 10^4", ok))

    scan_limit = min(limit, 100_000)
    expected = [p for p in (2, 3, 7, 23, 19207) if p <= scan_limit]
    found = dynamics.full_basin_primes(scan_limit)
    checks.append((f"full-basin primes below {scan_limit} = {expected}", found == expected))

    all_ok = all(ok for _, ok in checks)
    if _emit(args, "text") == "json":
        obj = {
            "checks": [{"name": name, "ok": ok} for name, ok in checks],
            "all_ok": all_ok,
        }
        _write(args, emit.to_json(obj))
    else:
        lines = [("ok: " if ok else "FAIL: ") + name for name, ok in checks]
        _write(args, "\n".join(lines) + "\n")
    return 0 if all_ok else 1


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}") from exc


def _coeff_list(text: str):
    try:
        return [int(c) for c in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--emit", choices=("csv", "json"), help="output format")
    common.add_argument("--threads", type=int, default=1, help="worker threads")
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument(
        "--extended", action="store_true", help="allow long-running reproduction targets"
    )

    parser = argparse.ArgumentParser(
        prog="sqm1", description="experiments around the map x -> x^2 - 1"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("basin", cmd_basin, "basin of 0 in F_p")
    p.add_argument("--p", type=int, required=True)

    p = add("census", cmd_census, "component/cycle census of F_p")
    p.add_argument("--p", type=int, required=True)

    p = add("scan", cmd_scan, "per-prime records up to a limit")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--with-census", action="store_true")

    p = add("separate", cmd_separate, "partition refinement up to xmax")
    p.add_argument("--xmax", type=int, required=True)
    p.add_argument("--order", choices=("ascending", "balance"), default="ascending")
    p.add_argument("--traversal", choices=("bfs", "dfs"), default="bfs")
    p.add_argument("--prime-limit", type=int)

    p = add("minimal-prime", cmd_minimal_prime, "least p whose primes separate up to xmax")
    p.add_argument("--xmax", type=int, required=True)
    p.add_argument("--traversal", choices=("bfs", "dfs"), default="bfs")
    p.add_argument("--prime-limit", type=int)

    p = add("balance-order", cmd_balance_order, "primes sorted by basin balance")
    p.add_argument("--prime-limit", type=int, required=True)

    p = add("orbit", cmd_orbit, "orbit terms over the integers")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)

    p = add("primes-of", cmd_primes_of, "primes dividing some orbit term")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--limit", type=int, required=True)

    p = add("restricted-set", cmd_restricted_set, "orbit primes congruent to +-3 mod 8")
    p.add_argument("--n", type=int, required=True)

    p = add("gcd-experiment", cmd_gcd_experiment, "gcds of two orbits at even indices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)

    p = add("iterate", cmd_iterate, "m-th iterate as a polynomial")
    p.add_argument("--m", type=int, required=True)

    p = add("eisenstein", cmd_eisenstein, "irreducibility certificate for the m-th level")
    p.add_argument("--m", type=int, required=True)

    p = add("phi", cmd_phi, "cycle polynomial of period n")
    p.add_argument("--n", type=int, required=True)

    p = add("necklace", cmd_necklace, "binary necklace count k_n")
    p.add_argument("--n", type=int, required=True)

    p = add("disc", cmd_disc, "discriminant of an integer polynomial")
    p.add_argument(
        "--coeffs",
        type=_coeff_list,
        required=True,
        help="constant term first; use the = form for a negative lead: --coeffs=-2,0,1",
    )

    p = add("tree-model", cmd_tree_model, "model probability of basin size 2n+1")
    p.add_argument("--n", type=int, required=True)

    p = add("histogram", cmd_histogram, "observed vs predicted basin-size counts")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--max-n", type=int, default=20)

    p = add("band", cmd_band, "primes with relative basin size inside [a, b]")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--a", type=_fraction, required=True)
    p.add_argument("--b", type=_fraction, required=True)

    p = add("fpf", cmd_fpf, "fixed-point fraction of the permutation model")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--epsilon", type=float, help="fail if further than this from e^(-1/n)")

    p = add("predict-full-basin", cmd_predict_full_basin, "expected count of full basins")
    p.add_argument("--limit", type=int, required=True)

    p = add("delta", cmd_delta, "fraction of primes where level m can reach 1")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--prime-limit", type=int, default=100_000)

    p = add("check-lemmas", cmd_check_lemmas, "run the structural fixtures end-to-end")
    p.add_argument("--limit", type=int)

    return parser


def dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if code is not None else 0
    try:
        return args.func(args)
    except (NonExactDivision, CertificateFailed) as exc:
        print(f"internal verification failed: {exc}", file=sys.stderr)
        return 1
    except Sqm1Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(SYNOPSIS, file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
