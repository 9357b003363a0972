"""Pipeline from census parameters to a prime set rich in consecutive smooth pairs.

The chain: pick exponents (alpha, beta) and derive tuple lengths (k, ell);
enumerate congruence solutions product == 1 (mod modulus) over prime multisets;
pigeonhole the quotients u = (product - 1)/modulus to find a popular value u0;
take S = primes in (y/4, y] together with the prime factors of u0.  Every pair
with quotient u0 then gives consecutive S-smooth integers a = modulus * u0 and
c = product.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapacityError, ValidationError, VerificationError
from .prime_tools import PrimeStats, factorize, interval_stats, sieve_interval
from .smooth_verifier import SmoothPair, verify_solution

PAIR_OP_LIMIT = 20_000_000

DEFAULT_ALPHA = Fraction(1, 3)
DEFAULT_BETA = Fraction(1, 4)


@dataclass(frozen=True)
class ConstraintReport:
    """Exact evaluation of the two exponent constraints.

    product_rule: (1 - alpha)(1 - beta) >= 1/2 keeps the smooth numbers
    large enough; exponent_rule: alpha(1 - beta) >= beta keeps the quotient
    u0 small enough.  Defaults alpha=1/3, beta=1/4 meet the first with
    equality and the second with equality as well.
    """

    product_value: Fraction
    product_ok: bool
    exponent_value: Fraction
    exponent_ok: bool

    @property
    def ok(self) -> bool:
        return self.product_ok and self.exponent_ok


@dataclass(frozen=True)
class ExponentPlan:
    alpha: Fraction
    beta: Fraction
    k: int
    ell: int
    raw_k: float
    k_clamped: bool
    ell_clamped: bool
    constraints: ConstraintReport


def plan_parameters(
    y: float,
    alpha: Fraction | int | str = DEFAULT_ALPHA,
    beta: Fraction | int | str = DEFAULT_BETA,
    k: int | None = None,
    ell: int | None = None,
    enforce_range: bool = False,
) -> ExponentPlan:
    """Choose tuple lengths k = y^beta/(10 log y), ell = alpha*k, clamped for small y.

    At desk scale the raw k is far below 1, so the floors k >= 2, ell >= 1
    keep the pipeline running; the clamp flags make that visible.  Explicit k
    or ell overrides skip the corresponding derivation.
    """
    if y < 10:
        raise ValidationError(f"need y >= 10 for parameter planning, got {y}")
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    if not (0 <= alpha <= Fraction(1, 2)):
        raise ValidationError(f"need 0 <= alpha <= 1/2, got {alpha}")
    if beta <= 0:
        raise ValidationError(f"need beta > 0, got {beta}")
    if enforce_range:
        cap = Fraction(1, 3) - Fraction(math.log(math.log(y)) / math.log(y))
        if beta > cap:
            raise ValidationError(
                f"beta = {beta} exceeds the supported range bound "
                f"1/3 - loglog y/log y = {float(cap):.4f} at y = {y}"
            )

    constraints = ConstraintReport(
        product_value=(1 - alpha) * (1 - beta),
        product_ok=(1 - alpha) * (1 - beta) >= Fraction(1, 2),
        exponent_value=alpha * (1 - beta),
        exponent_ok=alpha * (1 - beta) >= beta,
    )
    if not constraints.ok and k is None and ell is None:
        raise ValidationError(
            f"exponents alpha={alpha}, beta={beta} fail the plan constraints "
            f"((1-a)(1-b) = {constraints.product_value} vs 1/2; "
            f"a(1-b) = {constraints.exponent_value} vs b = {beta}) "
            "and no explicit k, ell were given"
        )

    raw_k = y ** float(beta) / (10 * math.log(y))
    if k is None:
        k_derived = max(2, math.floor(raw_k))
        k_clamped = math.floor(raw_k) < 2
    else:
        k_derived, k_clamped = k, False
    if ell is None:
        floor_ell = math.floor(alpha * k_derived)
        ell_derived = max(1, floor_ell)
        ell_clamped = floor_ell < 1
    else:
        ell_derived, ell_clamped = ell, False
    if not (1 <= ell_derived <= k_derived):
        raise ValidationError(
            f"need 1 <= ell <= k, got k={k_derived}, ell={ell_derived}"
        )
    return ExponentPlan(
        alpha=alpha,
        beta=beta,
        k=k_derived,
        ell=ell_derived,
        raw_k=raw_k,
        k_clamped=k_clamped,
        ell_clamped=ell_clamped,
        constraints=constraints,
    )


@dataclass(frozen=True)
class CongruencePair:
    """One unordered congruence solution: product == 1 (mod modulus).

    product is a product of k primes from (y/2, y] (multiset recorded in
    product_factors), modulus a product of ell primes from (y/4, y/2], and
    quotient = (product - 1) // modulus, an integer by construction.
    """

    product: int
    modulus: int
    quotient: int
    product_factors: tuple[int, ...]
    modulus_factors: tuple[int, ...]


def solve_congruence_pairs(
    y: float,
    k: int,
    ell: int,
    stats: PrimeStats | None = None,
    op_limit: int = PAIR_OP_LIMIT,
) -> list[CongruencePair]:
    """All unordered (product multiset, modulus multiset) pairs with the congruence.

    Each congruence solution appears once; the ordered census counts it up to
    k! * ell! times, so len(result) >= census / (k! * ell!).  The quotient
    range bound quotient < 4^ell * y^(k-ell) is checked on every pair.
    """
    if k < 1 or ell < 1:
        raise ValidationError(f"need k, ell >= 1, got k={k}, ell={ell}")
    st = stats or interval_stats(y)
    p_primes, q_primes = st.product_primes, st.modulus_primes
    n_r = math.comb(len(p_primes) + k - 1, k)
    n_q = math.comb(len(q_primes) + ell - 1, ell)
    if n_r * n_q > op_limit:
        raise CapacityError(
            f"{n_r} product multisets x {n_q} modulus multisets exceeds "
            f"op limit {op_limit}"
        )
    quotient_cap = 4**ell * Fraction(y) ** (k - ell)
    pairs: list[CongruencePair] = []
    moduli = [
        (math.prod(combo), combo)
        for combo in itertools.combinations_with_replacement(q_primes, ell)
    ]
    for r_combo in itertools.combinations_with_replacement(p_primes, k):
        r = math.prod(r_combo)
        for m, q_combo in moduli:
            if (r - 1) % m == 0:
                u = (r - 1) // m
                if u > quotient_cap:
                    raise VerificationError(
                        f"quotient {u} exceeds range bound {quotient_cap} "
                        f"for pair ({r}, {m}); enumeration bug"
                    )
                pairs.append(
                    CongruencePair(
                        product=r,
                        modulus=m,
                        quotient=u,
                        product_factors=r_combo,
                        modulus_factors=q_combo,
                    )
                )
    pairs.sort(key=lambda pr: (pr.modulus, pr.product))
    return pairs


@dataclass(frozen=True)
class ResidueHistogram:
    """Multiplicity of each quotient value among the congruence pairs."""

    counts: dict[int, int]
    total: int
    distinct: int
    pigeonhole_floor: int
    popular: int
    multiplicity: int

    def top(self, n: int = 10) -> list[tuple[int, int]]:
        """Most common quotients, multiplicity descending then value ascending."""
        return sorted(self.counts.items(), key=lambda kv: (-kv[1], kv[0]))[:n]


def popular_residue(pairs: list[CongruencePair]) -> ResidueHistogram:
    """Pigeonhole step: the quotient shared by the most pairs (ties: smallest).

    The returned multiplicity always satisfies the exact pigeonhole bound
    multiplicity >= ceil(total / distinct).
    """
    if not pairs:
        raise ValidationError("no congruence pairs: popular residue undefined")
    counts = Counter(pr.quotient for pr in pairs)
    popular, multiplicity = min(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    total = sum(counts.values())
    return ResidueHistogram(
        counts=dict(counts),
        total=total,
        distinct=len(counts),
        pigeonhole_floor=math.ceil(total / len(counts)),
        popular=popular,
        multiplicity=multiplicity,
    )


def lower_bound_estimate(
    y: float, k: int, ell: int, stats: PrimeStats | None = None
) -> float:
    """Analytic lower bound for the popular multiplicity.

    Half the main term, spread over unordered pairs (k! * ell!) and quotient
    values (4^ell * y^(k-ell)).  Meaningful only in the asymptotic regime; at
    desk scale it is a diagnostic to report next to the actual multiplicity.
    """
    st = stats or interval_stats(y)
    main = st.recip_sum**ell * Fraction(st.prime_count) ** k
    denom = (
        2
        * math.factorial(k)
        * math.factorial(ell)
        * 4**ell
        * Fraction(y) ** (k - ell)
    )
    return float(main / denom)


@dataclass(frozen=True)
class AssembledSet:
    """The prime set S and its size diagnostics.

    factor_count_reference = log(u0)/loglog(u0) bounds the number of distinct
    prime factors u0 can contribute (up to a constant); size_reference =
    y/log y bounds |S| the same way.  Both are recorded ratios, not asserts.
    """

    y: float
    u0: int
    primes: tuple[int, ...]
    size: int
    u0_factors: dict[int, int]
    factor_count_reference: float | None
    size_reference: float


def assemble_set(
    y: float, u0: int, limit: int | None = None
) -> AssembledSet:
    """S = primes in (y/4, y] together with the distinct prime factors of u0."""
    if u0 < 1:
        raise ValidationError(f"need u0 >= 1, got {u0}")
    interval = sieve_interval(y / 4, y, limit)
    u0_factors = factorize(u0)
    primes = tuple(sorted(set(interval.primes) | set(u0_factors)))
    loglog = math.log(math.log(u0)) if u0 >= 3 else 0.0
    return AssembledSet(
        y=y,
        u0=u0,
        primes=primes,
        size=len(primes),
        u0_factors=u0_factors,
        factor_count_reference=math.log(u0) / loglog if loglog > 0 else None,
        size_reference=y / math.log(y),
    )


@dataclass(frozen=True)
class ConstructionResult:
    """Verified output of one full construction run."""

    u0: int
    multiplicity: int
    prime_set: tuple[int, ...]
    size: int
    solutions: tuple[SmoothPair, ...]
    benchmark_conservative: float | None
    benchmark_headline: float | None


def solution_count_benchmarks(s: int) -> tuple[float | None, float | None]:
    """Asymptotic solution-count benchmarks at set size s.

    conservative: exp(s^(1/4) / (10 (log s)^(3/4))); headline:
    exp(s^(1/4)/log s).  Undefined (None) for s < 2.
    """
    if s < 2:
        return None, None
    root = s**0.25
    log_s = math.log(s)
    return math.exp(root / (10 * log_s**0.75)), math.exp(root / log_s)


def count_solutions_for_u0(
    pairs: list[CongruencePair], u0: int, assembled: AssembledSet
) -> ConstructionResult:
    """Emit and verify the consecutive smooth pair for every pair with quotient u0.

    a = modulus * u0 and c = product satisfy a + 1 = c; both must factor over
    S.  A verification failure here means an internal bug, so it aborts hard
    rather than dropping the solution.
    """
    solutions = []
    for pr in pairs:
        if pr.quotient != u0:
            continue
        a, c = pr.modulus * u0, pr.product
        if a + 1 != c:
            raise VerificationError(
                f"pair ({pr.product}, {pr.modulus}): a+1 = {a + 1} != c = {c}"
            )
        cert = verify_solution(a, assembled.primes)
        if not cert.ok:
            raise VerificationError(
                f"solution ({a}, {c}) is not smooth over S = {assembled.primes}"
            )
        solutions.append(
            SmoothPair(
                a=a,
                c=c,
                factorization_a=cert.factorization_a,
                factorization_c=cert.factorization_c,
            )
        )
    solutions.sort(key=lambda sp: sp.a)
    conservative, headline = solution_count_benchmarks(assembled.size)
    return ConstructionResult(
        u0=u0,
        multiplicity=len(solutions),
        prime_set=assembled.primes,
        size=assembled.size,
        solutions=tuple(solutions),
        benchmark_conservative=conservative,
        benchmark_headline=headline,
    )


def run_construction(
    y: float,
    k: int,
    ell: int,
    stats: PrimeStats | None = None,
) -> tuple[list[CongruencePair], ResidueHistogram | None, ConstructionResult | None]:
    """Convenience end-to-end run: pairs, histogram, verified result.

    With no congruence pairs the histogram and result are None; callers
    decide whether that is a warning or an error.
    """
    pairs = solve_congruence_pairs(y, k, ell, stats)
    if not pairs:
        return pairs, None, None
    hist = popular_residue(pairs)
    assembled = assemble_set(y, hist.popular)
    result = count_solutions_for_u0(pairs, hist.popular, assembled)
    return pairs, hist, result
