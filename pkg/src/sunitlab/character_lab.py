"""Dirichlet character machinery and the analytic cross-checks built on it.

Characters are represented exactly as exponent vectors over generators of the
unit group: a character maps each generator to a root of unity, recorded as an
integer exponent of a fixed primitive root of unity of order E (the group
exponent).  Values become floating complex numbers only at summation time,
with explicit tolerances guarding every place a float is rounded back to an
integer.
"""

from __future__ import annotations

import cmath
import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import CapacityError, ToleranceError, ValidationError
from .prime_tools import PrimeStats, factorize, interval_stats
from .tuple_census import (
    CensusParams,
    RepresentationTable,
    census_over,
    main_term,
    representation_counts,
)

CHARACTER_MODULUS_LIMIT = 1_000_000

IDENTITY_TOL = 1e-9
ROUNDING_TOL = 1e-2


def _snap(x: float) -> float:
    for target in (0.0, 1.0, -1.0):
        if abs(x - target) < 1e-15:
            return target
    return x


def _unit_root(t: int, order: int) -> complex:
    """exp(2*pi*i*t/order), exact on the real and imaginary axes.

    Snapping the four axis roots keeps order-1/2/4 characters and hence all
    real character sums exact, so small golden values compare by equality.
    """
    angle = 2 * cmath.pi * t / order
    return complex(_snap(math.cos(angle)), _snap(math.sin(angle)))


def _primitive_root(p: int) -> int:
    """Smallest primitive root modulo an odd prime p."""
    order_factors = factorize(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in order_factors):
            return g
    raise ValidationError(f"{p} has no primitive root; not an odd prime?")


def _prime_power_generators(p: int, e: int) -> list[tuple[int, int]]:
    """Generators (residue, order) of the unit group mod p**e."""
    if p == 2:
        if e == 1:
            return []
        if e == 2:
            return [(3, 2)]
        return [(2**e - 1, 2), (5, 2 ** (e - 2))]
    g = _primitive_root(p)
    if e >= 2 and pow(g, p - 1, p * p) == 1:
        g += p  # the lift that stays a generator mod every power
    return [(g % p**e, p ** (e - 1) * (p - 1))]


class UnitGroup:
    """Multiplicative group mod m: generators, discrete logs, root-of-unity table."""

    def __init__(self, modulus: int):
        if modulus < 1:
            raise ValidationError(f"need modulus >= 1, got {modulus}")
        self.modulus = modulus
        gens: list[tuple[int, int]] = []
        if modulus > 1:
            for p, e in factorize(modulus).items():
                pe = p**e
                cofactor = modulus // pe
                for g, order in _prime_power_generators(p, e):
                    if cofactor == 1:
                        lifted = g
                    else:
                        # CRT: equal to g mod p^e and to 1 mod the cofactor
                        inv = pow(pe, -1, cofactor)
                        lifted = (g + pe * ((1 - g) * inv % cofactor)) % modulus
                    gens.append((lifted, order))
        self.generators = tuple(gens)
        self.exponent = math.lcm(*(o for _, o in gens)) if gens else 1
        self.weights = tuple(self.exponent // o for _, o in gens)
        self.totient = math.prod(o for _, o in gens) if gens else 1

        dlog: dict[int, tuple[int, ...]] = {1 % modulus: (0,) * len(gens)}
        for i, (g, order) in enumerate(gens):
            current = dict(dlog)
            power = 1
            for j in range(1, order):
                power = power * g % modulus
                for a, vec in current.items():
                    b = a * power % modulus
                    dlog[b] = vec[:i] + (j,) + vec[i + 1 :]
        if len(dlog) != self.totient:
            raise ValidationError(
                f"unit group mod {modulus}: built {len(dlog)} discrete logs, "
                f"expected {self.totient}"
            )
        self.dlog = dlog
        self.roots = tuple(_unit_root(t, self.exponent) for t in range(self.exponent))


class DirichletCharacter:
    """A character mod m, stored as one exponent per unit-group generator.

    The value at n with gcd(n, m) = 1 is the E-th root of unity with integer
    exponent sum_i(exponents[i] * weight_i * dlog_i(n)) mod E; at other n the
    value is 0.
    """

    __slots__ = ("group", "exponents", "_conductor")

    def __init__(self, group: UnitGroup, exponents: tuple[int, ...]):
        self.group = group
        self.exponents = exponents
        self._conductor: int | None = None

    @property
    def modulus(self) -> int:
        return self.group.modulus

    def root_exponent(self, n: int) -> int | None:
        """Integer t with value = exp(2*pi*i*t/E), or None when gcd(n, m) > 1."""
        vec = self.group.dlog.get(n % self.group.modulus)
        if vec is None:
            return None
        total = sum(
            c * w * d for c, w, d in zip(self.exponents, self.group.weights, vec)
        )
        return total % self.group.exponent

    def __call__(self, n: int) -> complex:
        t = self.root_exponent(n)
        return 0j if t is None else self.group.roots[t]

    @property
    def is_principal(self) -> bool:
        return all(c == 0 for c in self.exponents)

    @property
    def conductor(self) -> int:
        """Smallest divisor d of the modulus from which this character is induced.

        Decided by the restriction test: d qualifies iff the character is 1 on
        every unit congruent to 1 mod d.
        """
        if self._conductor is None:
            m = self.group.modulus
            for d in sorted(_divisors(m)):
                if all(
                    self.root_exponent(a) == 0
                    for a in range(1, m + 1, d)
                    if math.gcd(a, m) == 1
                ):
                    self._conductor = d
                    break
            else:  # d = m always qualifies
                self._conductor = m
        return self._conductor

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.group.modulus

    def __repr__(self) -> str:
        return f"DirichletCharacter(mod {self.modulus}, exponents={self.exponents})"


@dataclass(frozen=True)
class CharacterTable:
    """All phi(m) characters mod m."""

    modulus: int
    totient: int
    generators: tuple[tuple[int, int], ...]
    characters: tuple[DirichletCharacter, ...]

    @property
    def principal(self) -> DirichletCharacter:
        return self.characters[0]

    def primitive(self) -> tuple[DirichletCharacter, ...]:
        return tuple(chi for chi in self.characters if chi.is_primitive)


@lru_cache(maxsize=256)
def _build_table(m: int) -> CharacterTable:
    group = UnitGroup(m)
    ranges = [range(order) for _, order in group.generators]
    chars = tuple(
        DirichletCharacter(group, exps) for exps in itertools.product(*ranges)
    )
    return CharacterTable(
        modulus=m,
        totient=group.totient,
        generators=group.generators,
        characters=chars,
    )


def character_table(m: int, limit: int = CHARACTER_MODULUS_LIMIT) -> CharacterTable:
    """Build the full character table mod m (cached; m capped by ``limit``)."""
    if m < 1:
        raise ValidationError(f"need modulus >= 1, got {m}")
    if m > limit:
        raise CapacityError(f"modulus {m} exceeds character table cap {limit}")
    return _build_table(m)


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**j for d in divs for j in range(e + 1)]
    return sorted(divs)


def prime_char_sum(
    chi: DirichletCharacter, y: float, stats: PrimeStats | None = None
) -> complex:
    """Sum of the character over the primes in (y/2, y].

    Exact for the principal character (each term contributes exactly 1).
    Terms with gcd(p, modulus) > 1 contribute 0; for census moduli this never
    happens since the modulus and product prime intervals are disjoint.
    """
    st = stats or interval_stats(y)
    # aggregate by root exponent first: fewer float additions, exact principal case
    exponent_counts: Counter[int] = Counter()
    for p in st.product_primes:
        t = chi.root_exponent(p)
        if t is not None:
            exponent_counts[t] += 1
    return sum(
        (count * chi.group.roots[t] for t, count in exponent_counts.items()), 0j
    )


def _phi_of_multiset(combo: tuple[int, ...]) -> int:
    """Euler phi of the product of a prime multiset, exactly."""
    phi = 1
    for q, e in Counter(combo).items():
        phi *= q ** (e - 1) * (q - 1)
    return phi


def _multiset_weight(combo: tuple[int, ...]) -> int:
    w = math.factorial(len(combo))
    for mult in Counter(combo).values():
        w //= math.factorial(mult)
    return w


def census_via_characters(
    params: CensusParams,
    stats: PrimeStats | None = None,
    limit: int = CHARACTER_MODULUS_LIMIT,
):
    """Census recomputed by character orthogonality; must equal count_exact.

    For each modulus m = q_1*...*q_l the tuple count with product 1 mod m is
    (1/phi(m)) * sum over chi mod m of S_chi^k.  The float accumulation is
    rounded to the nearest integer under a 10^-2 guard.
    """
    from .tuple_census import CensusResult, error_term  # local to avoid cycle at import

    st = stats or interval_stats(params.y)
    mt = main_term(params, st)
    et = error_term(params, st)
    if not st.modulus_primes:
        return CensusResult(
            count=0, main_term=mt, error_bound=et, ratio=None, method="characters",
            in_hypothesis=params.in_hypothesis, empty_interval=True,
        )
    total = 0j
    for combo in itertools.combinations_with_replacement(
        st.modulus_primes, params.ell
    ):
        m = math.prod(combo)
        table = character_table(m, limit)
        acc = 0j
        for chi in table.characters:
            acc += prime_char_sum(chi, params.y, st) ** params.k
        total += _multiset_weight(combo) * acc / table.totient
    rounded = round(total.real)
    if abs(total - rounded) >= ROUNDING_TOL:
        raise ToleranceError(
            f"character census {total} strays {abs(total - rounded):.3g} "
            f"from integer {rounded}; guard is {ROUNDING_TOL}"
        )
    ratio = rounded / float(mt) if mt else None
    return CensusResult(
        count=rounded, main_term=mt, error_bound=et, ratio=ratio, method="characters",
        in_hypothesis=params.in_hypothesis, empty_interval=False,
    )


def principal_contribution(
    params: CensusParams, stats: PrimeStats | None = None
) -> Fraction:
    """Exact rational principal-character part: sum over tuples of P^k/phi(m)."""
    st = stats or interval_stats(params.y)
    pk = Fraction(st.prime_count) ** params.k
    total = Fraction(0)
    for combo in itertools.combinations_with_replacement(
        st.modulus_primes, params.ell
    ):
        total += _multiset_weight(combo) * pk / _phi_of_multiset(combo)
    return total


@dataclass(frozen=True)
class PhiSlackReport:
    """How far main_term sits below the principal contribution.

    delta is defined by main_term = principal * (1 + delta); it is always in
    (-hard_bound, 0] because 1/phi(m) >= 1/m termwise.  within_constant2
    records whether |delta| <= 2*l/y, a small-case constant choice that is
    reported rather than assumed.
    """

    delta: Fraction
    constant2_bound: Fraction
    within_constant2: bool
    hard_bound: Fraction
    within_hard: bool


def phi_slack(params: CensusParams, stats: PrimeStats | None = None) -> PhiSlackReport:
    st = stats or interval_stats(params.y)
    if not st.modulus_primes or st.prime_count == 0:
        zero = Fraction(0)
        return PhiSlackReport(zero, zero, True, zero, True)
    principal = principal_contribution(params, st)
    mt = main_term(params, st)
    delta = mt / principal - 1
    c2 = Fraction(2 * params.ell) / Fraction(params.y)
    q_min = st.modulus_primes[0]
    hard = 1 - (1 - Fraction(1, q_min)) ** params.ell
    return PhiSlackReport(
        delta=delta,
        constant2_bound=c2,
        within_constant2=abs(delta) <= c2,
        hard_bound=hard,
        within_hard=-hard <= delta <= 0,
    )


@dataclass(frozen=True)
class NonprincipalReport:
    """The non-principal part of the census and the bounds claimed for it.

    value = census - principal, exact.  direct_bound is the termwise bound
    sum over tuples of (2/m) * sum_{chi != chi0} |S_chi|^k; class_bounds[t]
    is the primitive-conductor regrouping with the combinatorial weight
    (2/q) * (l!/(l-t)!) * lambda^(l-t) per conductor in the t-prime class.
    The holds flags can fail for tiny y where 1/phi(m) > 2/m; that is
    recorded, not hidden.
    """

    census: int
    principal: Fraction
    value: Fraction
    direct_bound: float
    direct_bound_holds: bool
    class_bounds: dict[int, float]
    class_bound_total: float
    class_bound_holds: bool


def nonprincipal_contribution(
    params: CensusParams,
    stats: PrimeStats | None = None,
    limit: int = CHARACTER_MODULUS_LIMIT,
) -> NonprincipalReport:
    st = stats or interval_stats(params.y)
    count = census_over(st.product_primes, st.modulus_primes, params.k, params.ell)
    principal = principal_contribution(params, st)
    value = Fraction(count) - principal

    direct = 0.0
    for combo in itertools.combinations_with_replacement(
        st.modulus_primes, params.ell
    ):
        m = math.prod(combo)
        table = character_table(m, limit)
        s = sum(
            abs(prime_char_sum(chi, params.y, st)) ** params.k
            for chi in table.characters
            if not chi.is_principal
        )
        direct += _multiset_weight(combo) * 2 / m * s

    lam = st.recip_sum
    fact_ell = math.factorial(params.ell)
    class_bounds: dict[int, float] = {}
    for t in range(1, params.ell + 1):
        cls = enumerate_Qt(t, params.y, stats=st)
        weight = (
            2
            * Fraction(fact_ell, math.factorial(params.ell - t))
            * lam ** (params.ell - t)
        )
        acc = 0.0
        for m, _combo in cls.entries:
            table = character_table(m, limit)
            s = sum(
                abs(prime_char_sum(chi, params.y, st)) ** params.k
                for chi in table.primitive()
            )
            acc += float(weight) / m * s
        class_bounds[t] = acc
    class_total = sum(class_bounds.values())

    slack = 1 + IDENTITY_TOL
    return NonprincipalReport(
        census=count,
        principal=principal,
        value=value,
        direct_bound=direct,
        direct_bound_holds=abs(value) <= direct * slack,
        class_bounds=class_bounds,
        class_bound_total=class_total,
        class_bound_holds=abs(value) <= class_total * slack,
    )


@dataclass(frozen=True)
class ModulusClass:
    """All products of exactly t modulus-range primes, with multiplicity."""

    t: int
    y: float
    entries: tuple[tuple[int, tuple[int, ...]], ...]
    size: int
    size_reference: float
    within_reference: bool

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(m for m, _ in self.entries)


def enumerate_Qt(
    t: int, y: float, cap: int = 2_000_000, stats: PrimeStats | None = None
) -> ModulusClass:
    """Enumerate the modulus class of t-prime products from (y/4, y/2].

    size_reference is P^t/t! where P counts the (y/2, y] primes; the
    comparison is a recorded diagnostic (it can fail for small y).
    """
    if t < 1:
        raise ValidationError(f"need t >= 1, got {t}")
    st = stats or interval_stats(y)
    q_primes = st.modulus_primes
    size = math.comb(len(q_primes) + t - 1, t)
    if size > cap:
        raise CapacityError(f"|Q_{t}| = {size} exceeds cap {cap}")
    entries = sorted(
        (math.prod(combo), combo)
        for combo in itertools.combinations_with_replacement(q_primes, t)
    )
    reference = st.prime_count**t / math.factorial(t)
    return ModulusClass(
        t=t,
        y=y,
        entries=tuple(entries),
        size=size,
        size_reference=reference,
        within_reference=size <= reference,
    )


@dataclass(frozen=True)
class LargeSieveInstance:
    """Coefficients a_1..a_N with either a single modulus or a family bound."""

    length: int
    coefficients: tuple[complex, ...]
    modulus: int | None = None
    modulus_bound: int | None = None

    def __post_init__(self) -> None:
        if self.length < 1 or len(self.coefficients) != self.length:
            raise ValidationError(
                f"need length >= 1 with exactly length coefficients, got "
                f"length={self.length}, #coefficients={len(self.coefficients)}"
            )

    def norm(self) -> float:
        return sum(abs(a) ** 2 for a in self.coefficients)


@dataclass(frozen=True)
class SieveCheck:
    mode: str
    lhs: float
    rhs: float
    passed: bool


def _char_sum(chi: DirichletCharacter, coefficients: tuple[complex, ...]) -> complex:
    return sum(
        a * chi(n) for n, a in enumerate(coefficients, start=1) if a != 0
    )


def large_sieve_check(
    instance: LargeSieveInstance,
    mode: str,
    limit: int = CHARACTER_MODULUS_LIMIT,
) -> SieveCheck:
    """Verify a mean-square character sum inequality on one instance.

    single-modulus: sum over all chi mod q of |sum a_n chi(n)|^2
                    <= (N + q) * sum |a_n|^2.
    primitive-family: sum over q <= Q of (q/phi(q)) * sum over primitive chi
                    of |...|^2 <= (N + Q^2 - 1) * sum |a_n|^2.
    Both inequalities hold unconditionally; passed=False means a bug,
    not an interesting input.
    """
    norm = instance.norm()
    if mode == "single-modulus":
        if instance.modulus is None:
            raise ValidationError("single-modulus mode needs a modulus")
        table = character_table(instance.modulus, limit)
        lhs = sum(
            abs(_char_sum(chi, instance.coefficients)) ** 2
            for chi in table.characters
        )
        rhs = (instance.length + instance.modulus) * norm
    elif mode == "primitive-family":
        if instance.modulus_bound is None:
            raise ValidationError("primitive-family mode needs a modulus bound")
        lhs = 0.0
        for q in range(1, instance.modulus_bound + 1):
            table = character_table(q, limit)
            part = sum(
                abs(_char_sum(chi, instance.coefficients)) ** 2
                for chi in table.primitive()
            )
            lhs += q / table.totient * part
        rhs = (instance.length + instance.modulus_bound**2 - 1) * norm
    else:
        raise ValidationError(f"unknown mode {mode!r}")
    return SieveCheck(mode=mode, lhs=lhs, rhs=rhs, passed=lhs <= rhs * (1 + IDENTITY_TOL))


def random_sieve_instances(
    trials: int,
    seed: int,
    mode: str,
    max_length: int = 50,
    max_modulus: int = 101,
    max_modulus_bound: int = 20,
    fixed_modulus: int | None = None,
    fixed_bound: int | None = None,
):
    """Seeded stream of random instances for the large sieve checks.

    Moduli are drawn uniformly unless pinned via fixed_modulus / fixed_bound.
    """
    rng = random.Random(seed)
    for _ in range(trials):
        n = rng.randint(1, max_length)
        coeffs = tuple(
            complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(n)
        )
        if mode == "single-modulus":
            q = fixed_modulus if fixed_modulus is not None else rng.randint(1, max_modulus)
            yield LargeSieveInstance(length=n, coefficients=coeffs, modulus=q)
        else:
            b = fixed_bound if fixed_bound is not None else rng.randint(1, max_modulus_bound)
            yield LargeSieveInstance(length=n, coefficients=coeffs, modulus_bound=b)


@dataclass(frozen=True)
class MomentReport:
    """One moment of prime character sums over a modulus class.

    lhs is the float from direct character enumeration; lhs_exact the same
    quantity recomputed in pure integer arithmetic through representation
    counts and conductor inclusion-exclusion.  reference carries implied
    constant 1, so ratio is reported without any pass/fail.
    """

    t: int
    y: float
    which: str
    lhs: float
    lhs_exact: int
    reference: float
    ratio: float | None
    class_size: int


def _mobius(n: int) -> int:
    mu = 1
    for _p, e in factorize(n).items():
        if e > 1:
            return 0
        mu = -mu
    return mu


def _phi(n: int) -> int:
    phi = 1
    for p, e in factorize(n).items():
        phi *= p ** (e - 1) * (p - 1)
    return phi


def _residue_pair_sum(table: RepresentationTable, c: int) -> int:
    """Sum over pairs m == n (mod c) of a(m)*a(n), exactly."""
    by_residue: Counter[int] = Counter()
    for n, a in table.counts.items():
        by_residue[n % c] += a
    return sum(v * v for v in by_residue.values())


def moment_primitive_sum_exact(q: int, table: RepresentationTable) -> int:
    """Integer value of sum over primitive chi mod q of |sum_n a(n) chi(n)|^2.

    Uses the orthogonality identity per divisor-modulus and Moebius inversion
    over conductors; requires every n in the table coprime to q, which holds
    here because product-range primes cannot divide modulus-range products.
    """
    for p in factorize(q):
        if any(n % p == 0 for n in table.counts):
            raise ValidationError(
                f"representation support shares prime {p} with modulus {q}"
            )
    total = 0
    for c in _divisors(q):
        mu = _mobius(q // c)
        if mu == 0:
            continue
        total += mu * _phi(c) * _residue_pair_sum(table, c)
    return total


def moment_check(
    t: int,
    y: float,
    which: str,
    limit: int = CHARACTER_MODULUS_LIMIT,
    stats: PrimeStats | None = None,
) -> MomentReport:
    """Moment of prime character sums over the t-prime modulus class.

    which="2t": sum over q in Q_t, primitive chi mod q of |S_chi|^(2t),
    reference y^t * P^(2t).  which="4t": exponent 4t, reference (t*y*P)^(2t),
    stated without the q/phi(q) weight.
    """
    if which not in ("2t", "4t"):
        raise ValidationError(f"which must be '2t' or '4t', got {which!r}")
    st = stats or interval_stats(y)
    cls = enumerate_Qt(t, y, stats=st)
    power = 2 * t if which == "2t" else 4 * t
    rep = representation_counts(power // 2, y, stats=st)

    lhs = 0.0
    lhs_exact = 0
    for q, _combo in cls.entries:
        table = character_table(q, limit)
        lhs += sum(
            abs(prime_char_sum(chi, y, st)) ** power for chi in table.primitive()
        )
        lhs_exact += moment_primitive_sum_exact(q, rep)

    big_p = st.prime_count
    reference = (
        float(y) ** t * big_p ** (2 * t)
        if which == "2t"
        else float(t * y * big_p) ** (2 * t)
    )
    ratio = lhs_exact / reference if reference > 0 else None
    return MomentReport(
        t=t, y=y, which=which, lhs=lhs, lhs_exact=lhs_exact,
        reference=reference, ratio=ratio, class_size=cls.size,
    )


@dataclass(frozen=True)
class TailShapeReport:
    """Shape ratio of one tail of the non-principal bound.

    low range: sum over 1 <= t <= k/4 of (4l/y)^t * lambda^(l-t) * M_k(t)
    against P^k * lambda^l / log y.  high range: sum over k/4 < t <= l of
    (4/y)^t * lambda^(l-t) * M_k(t) against l^(k-l) * (4*lambda*P)^l *
    y^(k/2), where M_k(t) sums |S_chi|^k over primitive characters of the
    t-prime modulus class.  The two ranges deliberately carry different
    per-term weights, matching the bounds they come from.  Ratios only.
    """

    which: str
    k: int
    ell: int
    y: float
    terms: dict[int, float]
    lhs: float
    reference: float
    ratio: float | None


def _moment_kth_abs_sum(t: int, y: float, k: int, st: PrimeStats, limit: int) -> float:
    cls = enumerate_Qt(t, y, stats=st)
    acc = 0.0
    for q, _combo in cls.entries:
        table = character_table(q, limit)
        acc += sum(
            abs(prime_char_sum(chi, y, st)) ** k for chi in table.primitive()
        )
    return acc


def tail_shape(
    params: CensusParams,
    which: str,
    limit: int = CHARACTER_MODULUS_LIMIT,
    stats: PrimeStats | None = None,
) -> TailShapeReport:
    if which not in ("low", "high"):
        raise ValidationError(f"which must be 'low' or 'high', got {which!r}")
    st = stats or interval_stats(params.y)
    k, ell, y = params.k, params.ell, params.y
    lam = float(st.recip_sum)
    big_p = st.prime_count

    if which == "low":
        t_values = [t for t in range(1, ell + 1) if t <= k / 4]
        base = 4 * ell / y
        reference = big_p**k * lam**ell / math.log(y)
    else:
        t_values = [t for t in range(1, ell + 1) if t > k / 4]
        base = 4 / y
        reference = ell ** (k - ell) * (4 * lam * big_p) ** ell * y ** (k / 2)

    terms = {
        t: base**t * lam ** (ell - t) * _moment_kth_abs_sum(t, y, k, st, limit)
        for t in t_values
    }
    lhs = sum(terms.values())
    ratio = lhs / reference if reference > 0 else None
    return TailShapeReport(
        which=which, k=k, ell=ell, y=y, terms=terms,
        lhs=lhs, reference=reference, ratio=ratio,
    )
