"""Command-line front end: argument parsing, run reports, artifact files.

Report contract: a JSON object {config, version, results, timing} on stdout.
The results block is deterministic for a fixed config (sorted keys, integers
as decimal strings, rationals as {num, den} string pairs); timing sits in its
own block outside the determinism contract.  Every record in results carries
a method tag naming the operation that produced it.

Exit codes: 0 success, 2 validation error, 3 capacity exceeded, 4 internal
verification failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .character_lab import (
    census_via_characters,
    enumerate_Qt,
    large_sieve_check,
    moment_check,
    nonprincipal_contribution,
    phi_slack,
    principal_contribution,
    random_sieve_instances,
    tail_shape,
)
from .constructor import (
    assemble_set,
    count_solutions_for_u0,
    lower_bound_estimate,
    plan_parameters,
    popular_residue,
    solve_congruence_pairs,
)
from .errors import SUnitError, ValidationError, VerificationError
from .prime_tools import interval_stats
from .smooth_verifier import enumerate_smooth_pairs, verify_solution
from .tuple_census import (
    CensusParams,
    census_over,
    count_direct,
    count_exact,
    count_sampled,
)

PAIR_LIST_THRESHOLD = 50
QT_LIST_THRESHOLD = 200


# ---------------------------------------------------------------------------
# serialization

def encode(obj):
    """Render a result object as JSON-safe data with lossless integers.

    bool must be tested before int (bool is an int subclass); all true
    integers become decimal strings and Fractions become string pairs, so no
    consumer ever sees a rounded big integer.
    """
    if obj is None or isinstance(obj, (bool, float, str)):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return {"num": str(obj.numerator), "den": str(obj.denominator)}
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if dataclasses.is_dataclass(obj):
        return {f.name: encode(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(x) for x in obj]
    raise TypeError(f"cannot encode {type(obj).__name__} into a report")


def solutions_csv(solutions) -> str:
    """CSV export of a solution list: a, c, factorization_a, factorization_c."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["a", "c", "factorization_a", "factorization_c"])
    for sol in solutions:
        writer.writerow(
            [sol.a, sol.c, _fact_str(sol.factorization_a), _fact_str(sol.factorization_c)]
        )
    return buf.getvalue()


def _fact_str(factors: dict[int, int]) -> str:
    if not factors:
        return "1"
    return "*".join(f"{p}^{e}" for p, e in sorted(factors.items()))


# ---------------------------------------------------------------------------
# command implementations; each returns (results, artifacts) where artifacts
# is a list of (path, text) files to write

def _require(args, *names):
    missing = [n for n in names if getattr(args, n.replace("-", "_"), None) is None]
    if missing:
        raise ValidationError(
            f"command {args.command!r} requires {', '.join('--' + n for n in missing)}"
        )


def run_census(args):
    _require(args, "y", "k", "ell")
    params = CensusParams(args.y, args.k, args.ell, enforce_range=args.enforce_range)
    stats = interval_stats(args.y)
    methods = [m.strip() for m in args.method.split(",") if m.strip()]
    known = {"exact", "direct", "characters", "sampled"}
    bad = set(methods) - known
    if bad or not methods:
        raise ValidationError(f"unknown census methods {sorted(bad)}; pick from {sorted(known)}")

    records = []
    for method in methods:
        if method == "exact":
            records.append(count_exact(params, stats))
        elif method == "direct":
            records.append(count_direct(params, stats))
        elif method == "characters":
            records.append(census_via_characters(params, stats))
        else:
            if args.samples is None or args.seed is None:
                raise ValidationError("sampled census requires --samples and --seed")
            records.append(count_sampled(params, args.samples, args.seed, stats))

    integer_counts = {r.method: r.count for r in records if r.method != "sampled"}
    if len(set(integer_counts.values())) > 1:
        raise VerificationError(f"census methods disagree: {integer_counts}")

    results = {
        "census": [encode(r) for r in records],
        "interval": {
            "method": "interval-stats",
            "y": args.y,
            "recip_sum": encode(stats.recip_sum),
            "prime_count": encode(stats.prime_count),
            "recip_sum_asymptotic": stats.recip_sum_asymptotic,
            "prime_count_asymptotic": stats.prime_count_asymptotic,
        },
        "warnings": [] if stats.modulus_primes else ["modulus prime interval is empty"],
    }
    return results, []


def run_construct(args):
    _require(args, "y")
    warnings = []
    if args.k is not None and args.ell is not None:
        k, ell = args.k, args.ell
        plan = None
    else:
        plan = plan_parameters(
            args.y,
            alpha=args.alpha if args.alpha is not None else Fraction(1, 3),
            beta=args.beta if args.beta is not None else Fraction(1, 4),
            k=args.k,
            ell=args.ell,
            enforce_range=args.enforce_range,
        )
        k, ell = plan.k, plan.ell
        if plan.k_clamped or plan.ell_clamped:
            warnings.append(
                f"parameter plan clamped to k={k}, ell={ell} "
                f"(raw k = {plan.raw_k:.6f} at y = {args.y})"
            )
    if not (1 <= ell <= k):
        raise ValidationError(f"need 1 <= ell <= k, got k={k}, ell={ell}")

    stats = interval_stats(args.y)
    pairs = solve_congruence_pairs(args.y, k, ell, stats)
    census = census_over(stats.product_primes, stats.modulus_primes, k, ell)
    kl = math.factorial(k) * math.factorial(ell)
    results = {
        "plan": encode(plan) if plan else {"k": encode(k), "ell": encode(ell), "method": "explicit"},
        "pair_count": encode(len(pairs)),
        "conversion": {
            "method": "ordered-to-unordered",
            "census": encode(census),
            "ordered_per_pair": encode(kl),
            "lower_bound": encode(Fraction(census, kl)),
            "holds": len(pairs) * kl >= census,
        },
        "warnings": warnings,
    }
    if plan:
        results["plan"]["method"] = "exponent-plan"

    if len(pairs) <= PAIR_LIST_THRESHOLD:
        results["pairs"] = [encode(p) for p in pairs]
    else:
        results["pairs"] = {"suppressed": True, "count": encode(len(pairs))}

    artifacts = []
    if not pairs:
        warnings.append("no congruence solutions at these parameters; nothing to construct")
        results["histogram"] = None
        results["construction"] = None
        return results, artifacts

    hist = popular_residue(pairs)
    assembled = assemble_set(args.y, hist.popular)
    outcome = count_solutions_for_u0(pairs, hist.popular, assembled)
    results["histogram"] = {
        "method": "pigeonhole",
        "total": encode(hist.total),
        "distinct": encode(hist.distinct),
        "pigeonhole_floor": encode(hist.pigeonhole_floor),
        "popular": encode(hist.popular),
        "multiplicity": encode(hist.multiplicity),
        "top": [[encode(u), encode(n)] for u, n in hist.top(10)],
        "pigeonhole_holds": hist.multiplicity >= hist.pigeonhole_floor,
    }
    results["analytic_multiplicity_bound"] = {
        "method": "closed-form",
        "value": lower_bound_estimate(args.y, k, ell, stats),
        "actual_multiplicity": encode(hist.multiplicity),
    }
    results["construction"] = encode(outcome)
    results["construction"]["method"] = "verified-construction"
    results["set_diagnostics"] = {
        "method": "assemble-set",
        "u0_factors": encode(assembled.u0_factors),
        "factor_count_reference": assembled.factor_count_reference,
        "size_reference": assembled.size_reference,
    }

    if args.limit is not None:
        oracle = enumerate_smooth_pairs(assembled.primes, args.limit)
        oracle_as = {p.a for p in oracle}
        covered = [s for s in outcome.solutions if s.c <= args.limit]
        results["oracle_cross_check"] = {
            "method": "smoothness-sieve",
            "limit": encode(args.limit),
            "oracle_pairs": encode(len(oracle)),
            "solutions_within_limit": encode(len(covered)),
            "all_found": all(s.a in oracle_as for s in covered),
        }

    if args.out:
        s_payload = {
            "y": args.y,
            "u0": str(outcome.u0),
            "primes": [str(p) for p in outcome.prime_set],
        }
        artifacts.append((args.out + ".S.json", json.dumps(s_payload, sort_keys=True, indent=2) + "\n"))
        artifacts.append((args.out + ".solutions.csv", solutions_csv(outcome.solutions)))
        if args.format == "csv":
            artifacts.append((args.out, solutions_csv(outcome.solutions)))
    return results, artifacts


def _parse_s_primes(args) -> tuple[int, ...]:
    if args.s_primes is not None:
        try:
            return tuple(int(tok) for tok in args.s_primes.split(",") if tok.strip())
        except ValueError as exc:
            raise ValidationError(f"cannot parse --s-primes: {exc}") from exc
    if args.s_file is not None:
        payload = json.loads(Path(args.s_file).read_text())
        if isinstance(payload, dict):
            payload = payload.get("primes")
        if not isinstance(payload, list):
            raise ValidationError(f"{args.s_file} holds no prime list")
        return tuple(int(p) for p in payload)
    raise ValidationError("verify requires --s-primes or --s-file")


def run_verify(args):
    _require(args, "limit")
    primes = _parse_s_primes(args)
    pairs = enumerate_smooth_pairs(primes, args.limit)
    results = {
        "s_primes": [encode(p) for p in primes],
        "limit": encode(args.limit),
        "pair_count": encode(len(pairs)),
        "pairs": [encode(p) for p in pairs],
        "method": "smoothness-sieve",
        "warnings": [],
    }
    if args.check_a is not None:
        cert = verify_solution(args.check_a, primes)
        results["certificate"] = encode(cert)
        results["certificate"]["method"] = "trial-division"
    artifacts = []
    if args.out and args.format == "csv":
        artifacts.append((args.out, solutions_csv(pairs)))
    return results, artifacts


def _diag_large_sieve(args, warnings):
    if args.seed is None:
        raise ValidationError("large-sieve diagnostics draw random instances; --seed is required")
    trials = args.trials
    records = {}
    for mode, fixed in (
        ("single-modulus", {"fixed_modulus": args.q}),
        ("primitive-family", {"fixed_bound": args.Q}),
    ):
        checks = [
            large_sieve_check(inst, mode)
            for inst in random_sieve_instances(trials, args.seed, mode, **fixed)
        ]
        failures = [c for c in checks if not c.passed]
        records[mode] = {
            "method": "large-sieve-check",
            "trials": encode(trials),
            "passed": encode(sum(c.passed for c in checks)),
            "failures": [encode(c) for c in failures],
            "max_lhs_over_rhs": max((c.lhs / c.rhs) for c in checks if c.rhs > 0),
        }
    return records


def _diag_moments(args, warnings):
    t = args.t if args.t is not None else 1
    stats = interval_stats(args.y)
    if not stats.modulus_primes:
        warnings.append(f"empty modulus prime interval at y = {args.y}; no moments")
        return {}
    return {
        which: encode(moment_check(t, args.y, which, stats=stats))
        | {"method": "character-enumeration+representation-identity"}
        for which in ("2t", "4t")
    }


def _diag_tails(args, warnings):
    stats = interval_stats(args.y)
    if not stats.modulus_primes:
        warnings.append(f"empty modulus prime interval at y = {args.y}; no tail shapes")
        return {}
    if args.k is not None and args.ell is not None:
        k, ell = args.k, args.ell
    else:
        plan = plan_parameters(args.y, k=args.k, ell=args.ell)
        k, ell = plan.k, plan.ell
        warnings.append(f"tail shapes defaulted to planned k={k}, ell={ell}")
    params = CensusParams(args.y, k, ell)
    return {
        which: encode(tail_shape(params, which)) | {"method": "tail-shape"}
        for which in ("low", "high")
    }


def _diag_qt(args, warnings):
    t = args.t if args.t is not None else 1
    stats = interval_stats(args.y)
    if not stats.modulus_primes:
        warnings.append(f"empty modulus prime interval at y = {args.y}; Q_t is empty")
        return {}
    cls = enumerate_Qt(t, args.y, stats=stats)
    record = {
        "method": "multiset-enumeration",
        "t": encode(t),
        "size": encode(cls.size),
        "size_reference": cls.size_reference,
        "within_reference": cls.within_reference,
        "min_modulus": encode(min(cls.moduli)),
        "range_floor": float(args.y / 4) ** t,
    }
    if cls.size <= QT_LIST_THRESHOLD:
        record["moduli"] = [encode(m) for m in cls.moduli]
    return record


def _diag_decomposition(args, warnings):
    stats = interval_stats(args.y)
    if not stats.modulus_primes:
        warnings.append(f"empty modulus prime interval at y = {args.y}; no decomposition")
        return {}
    k = args.k if args.k is not None else 2
    ell = args.ell if args.ell is not None else 1
    params = CensusParams(args.y, k, ell)
    principal = principal_contribution(params, stats)
    slack = phi_slack(params, stats)
    report = nonprincipal_contribution(params, stats)
    return {
        "method": "character-decomposition",
        "principal": encode(principal),
        "phi_slack": encode(slack),
        "nonprincipal": encode(report),
    }


def run_diagnose(args):
    topic = args.topic
    warnings: list[str] = []
    results: dict = {"warnings": warnings}
    need_y = {"moments", "tails", "qt", "decomposition"}
    if topic in need_y:
        _require(args, "y")
    if topic in ("all", "large-sieve"):
        if topic == "all" and args.seed is None:
            warnings.append("skipping large-sieve diagnostics: no --seed given")
        else:
            results["large_sieve"] = _diag_large_sieve(args, warnings)
    for name, fn in (
        ("moments", _diag_moments),
        ("tails", _diag_tails),
        ("qt", _diag_qt),
        ("decomposition", _diag_decomposition),
    ):
        if topic == name or (topic == "all" and args.y is not None):
            results[name] = fn(args, warnings)
    if topic == "all" and args.y is None:
        warnings.append("no --y given; skipped moments, tails, qt, decomposition")
    return results, []


# ---------------------------------------------------------------------------
# argument parsing and entry point

def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--y", type=float, help="interval scale; prime ranges are (y/4, y/2] and (y/2, y]")
    sp.add_argument("--k", type=int, help="number of product-range primes per tuple")
    sp.add_argument("--ell", type=int, help="number of modulus-range primes per tuple")
    sp.add_argument("--alpha", type=_fraction, help="tuple-length ratio ell/k (rational, e.g. 1/3)")
    sp.add_argument("--beta", type=_fraction, help="growth exponent for k (rational, e.g. 1/4)")
    sp.add_argument("--limit", type=int, help="bound for smooth pair enumeration")
    sp.add_argument("--samples", type=int, help="sample count for the Monte Carlo census")
    sp.add_argument("--seed", type=int, help="random seed; mandatory whenever sampling is involved")
    sp.add_argument("--enforce-range", action="store_true", help="fail when parameters leave the proven regime")
    sp.add_argument("--out", type=str, help="write the report (and artifacts) to this path")
    sp.add_argument("--format", choices=("json", "csv"), default="json", help="primary artifact format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sunitlab",
        description=(
            "Census of prime-product congruences and pigeonhole construction "
            "of prime sets with many consecutive smooth pairs"
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    census = sub.add_parser("census", help="count congruent prime tuples")
    _add_common(census)
    census.add_argument(
        "--method",
        default="exact",
        help="comma list from exact, direct, characters, sampled",
    )

    construct = sub.add_parser("construct", help="run the full construction pipeline")
    _add_common(construct)

    verify = sub.add_parser("verify", help="enumerate/check consecutive smooth pairs")
    _add_common(verify)
    verify.add_argument("--s-primes", type=str, help="comma-separated prime set S")
    verify.add_argument("--s-file", type=str, help="JSON file holding S (as from construct)")
    verify.add_argument("--check-a", type=int, help="verify one candidate a against S")

    diagnose = sub.add_parser("diagnose", help="analytic cross-checks and diagnostics")
    diagnose.add_argument(
        "topic",
        nargs="?",
        default="all",
        choices=("all", "large-sieve", "moments", "tails", "qt", "decomposition"),
    )
    _add_common(diagnose)
    diagnose.add_argument("--q", type=int, help="pin the single-modulus sieve checks to this modulus")
    diagnose.add_argument("--Q", type=int, help="pin the family sieve checks to this modulus bound")
    diagnose.add_argument("--trials", type=int, default=100, help="number of random sieve instances")
    diagnose.add_argument("--t", type=int, help="modulus class parameter for moments/qt")

    return parser


_DISPATCH = {
    "census": run_census,
    "construct": run_construct,
    "verify": run_verify,
    "diagnose": run_diagnose,
}


def _config_echo(args) -> dict:
    skip = {"command"}
    payload = {
        k: (encode(v) if isinstance(v, (Fraction, int)) or v is None else v)
        for k, v in sorted(vars(args).items())
        if k not in skip
    }
    payload["command"] = args.command
    return payload


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format == "csv":
        if args.command not in ("construct", "verify"):
            print(
                json.dumps({"error": {"code": "validation", "message": "csv format applies only to construct and verify"}}),
                file=sys.stderr,
            )
            return 2
        if not args.out:
            print(
                json.dumps({"error": {"code": "validation", "message": "--format csv requires --out"}}),
                file=sys.stderr,
            )
            return 2

    start = time.perf_counter()
    try:
        results, artifacts = _DISPATCH[args.command](args)
    except SUnitError as exc:
        print(
            json.dumps({"error": {"code": exc.code, "message": str(exc)}}),
            file=sys.stderr,
        )
        return exc.exit_status
    elapsed = time.perf_counter() - start

    report = {
        "config": _config_echo(args),
        "version": __version__,
        "results": results,
        "timing": {"seconds": round(elapsed, 6)},
    }
    text = json.dumps(report, sort_keys=True, indent=2)
    print(text)

    try:
        if args.out and args.format == "json":
            Path(args.out).write_text(text + "\n")
        for path, content in artifacts:
            Path(path).write_text(content)
    except OSError as exc:
        print(
            json.dumps({"error": {"code": "io", "message": str(exc)}}),
            file=sys.stderr,
        )
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
