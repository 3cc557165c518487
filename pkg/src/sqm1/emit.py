"""Serialization helpers: fixed column orders, 6-significant-digit floats.

Numbers cross from exact rationals to decimal text only here, so every
emitting command renders identically no matter how it was computed.
"""

from __future__ import annotations

import json
from fractions import Fraction


def sig6(value) -> str:
    """Decimal with 6 significant digits; integers pass through unchanged."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".6g")


def jnum(value) -> float:
    """Float rounded to 6 significant digits, for JSON number fields."""
    return float(format(float(value), ".6g"))


def frac(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def csv_block(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(c) for c in row))
    return "\n".join(lines) + "\n"


def to_json(obj) -> str:
    return json.dumps(obj) + "\n"


def json_lines(objs) -> str:
    return "".join(json.dumps(o) + "\n" for o in objs)


SCAN_HEADER = ("p", "basin_size", "balance", "is_full", "n_components", "cycle_lengths")


def scan_row(rec):
    if rec.census is None:
        ncomp, cycles = "", ""
    else:
        ncomp = rec.census.n_components
        cycles = ";".join(str(c) for c in rec.census.cycle_lengths)
    return (rec.p, rec.basin_size, sig6(rec.balance), sig6(rec.is_full), ncomp, cycles)


def scan_record_obj(rec) -> dict:
    if rec.census is None:
        ncomp, cycles = None, None
    else:
        ncomp = rec.census.n_components
        cycles = list(rec.census.cycle_lengths)
    return {
        "p": rec.p,
        "basin_size": rec.basin_size,
        "balance": jnum(rec.balance),
        "is_full": rec.is_full,
        "n_components": ncomp,
        "cycle_lengths": cycles,
    }


def basin_obj(basin) -> dict:
    return {
        "p": basin.p,
        "basin_size": basin.size,
        "balance": jnum(basin.balance),
        "is_full": basin.is_full,
    }


def census_obj(census) -> dict:
    return {
        "p": census.p,
        "n_components": census.n_components,
        "cycle_lengths": list(census.cycle_lengths),
        "component_sizes": list(census.component_sizes),
        "basin_size": census.basin_size,
    }


def separation_obj(report) -> dict:
    return {
        "x_max": report.x_max,
        "order": report.order,
        "traversal": report.traversal,
        "prime_limit": report.prime_limit,
        "separated": report.separated,
        "max_prime_used": report.max_prime_used,
        "primes_consumed": report.primes_consumed,
        "residual_blocks": report.residual_blocks,
    }


def poly_obj(poly, **extra) -> dict:
    obj = dict(extra)
    obj["degree"] = poly.degree
    obj["coefficients"] = list(poly.coefficients)
    obj["display"] = str(poly)
    return obj


def gcd_obj(report) -> dict:
    return {
        "n": report.n,
        "n2": report.n2,
        "k_max": report.k_max,
        "gcds": list(report.gcds),
        "valuations": {str(p): list(v) for p, v in sorted(report.valuations.items())},
        "first_index": {str(p): k for p, k in sorted(report.first_index.items())},
        "cofactors": list(report.cofactors),
        "has_unfactored": report.has_unfactored,
    }


def histogram_rows(hist):
    rows = []
    for n in range(1, hist.max_n + 1):
        observed, predicted = hist.bins[n]
        rows.append((n, 2 * n + 1, observed, sig6(predicted)))
    return rows


def histogram_obj(hist) -> dict:
    return {
        "prime_limit": hist.prime_limit,
        "max_n": hist.max_n,
        "bins": [
            {
                "n": n,
                "size": 2 * n + 1,
                "observed": hist.bins[n][0],
                "predicted": jnum(hist.bins[n][1]),
            }
            for n in range(1, hist.max_n + 1)
        ],
        "overflow_observed": hist.overflow_observed,
        "overflow_predicted": jnum(hist.overflow_predicted),
        "odd_prime_count": hist.odd_prime_count,
    }


def band_obj(report) -> dict:
    return {
        "prime_limit": report.prime_limit,
        "a": frac(report.a),
        "b": frac(report.b),
        "observed": report.observed,
        "primes": list(report.primes),
        "shape": jnum(report.shape),
        "fitted_const": jnum(report.fitted_const),
    }


def prediction_obj(pred) -> dict:
    return {
        "x": pred.x,
        "base_constant": jnum(pred.base_constant),
        "refined_constant": jnum(pred.refined_constant),
        "prime_harmonic_sum": jnum(pred.prime_harmonic_sum),
        "base_expected": jnum(pred.base_expected),
        "refined_expected": jnum(pred.refined_expected),
    }
