import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sunitlab.errors import CapacityError, ValidationError
from sunitlab.prime_tools import interval_stats
from sunitlab.tuple_census import (
    CensusParams,
    census_over,
    count_direct,
    count_exact,
    count_sampled,
    error_term,
    main_term,
    representation_counts,
)

from oracles import oracle_census, oracle_rep_counts


def test_params_validation():
    with pytest.raises(ValidationError):
        CensusParams(30, 1, 2)  # ell > k
    with pytest.raises(ValidationError):
        CensusParams(30, 0, 0)
    with pytest.raises(ValidationError):
        CensusParams(1.2, 1, 1)
    # k = 2 is far outside y^(1/3)/(log y)^2 at y = 30; flag vs hard failure
    assert not CensusParams(30, 2, 1).in_hypothesis
    with pytest.raises(ValidationError):
        CensusParams(30, 2, 1, enforce_range=True)


def test_k_bound_value():
    p = CensusParams(1000.0, 1, 1)
    assert p.k_bound() == pytest.approx(1000 ** (1 / 3) / math.log(1000) ** 2)


def test_main_term_golden():
    # lambda = 1/11 + 1/13 = 24/143, P = 4 at y = 30
    assert main_term(CensusParams(30, 2, 1)) == Fraction(24, 143) * 16
    assert main_term(CensusParams(20, 1, 1)) == Fraction(1, 7) * 4
    assert main_term(CensusParams(30, 2, 2)) == Fraction(24, 143) ** 2 * 16


def test_error_term_regime_and_values():
    et = error_term(CensusParams(30, 2, 1))
    assert et.applicable  # k/4 <= l <= k/2 at (2, 1)
    # 1^(2-1) * (4 * 24/143 * 4)^1 * 30^1
    assert et.exact == Fraction(384, 143) * 30
    assert et.value == pytest.approx(float(Fraction(11520, 143)))
    assert et.note == ""

    na = error_term(CensusParams(30, 2, 2))
    assert not na.applicable  # l > k/2
    assert na.note != ""

    na2 = error_term(CensusParams(30, 5, 1))
    assert not na2.applicable  # l < k/4

    odd = error_term(CensusParams(30, 3, 1))
    assert odd.exact is None  # y^(3/2) irrational, float only
    assert odd.value == pytest.approx(float(Fraction(384, 143)) * 30**1.5)


def test_count_exact_goldens():
    assert count_exact(CensusParams(30, 1, 1)).count == 1
    assert count_exact(CensusParams(30, 2, 1)).count == 5
    assert count_exact(CensusParams(20, 1, 1)).count == 0


@pytest.mark.parametrize("y", [12, 20, 30, 40])
@pytest.mark.parametrize("k,ell", [(1, 1), (2, 1), (2, 2), (3, 2)])
def test_count_exact_matches_bruteforce(y, k, ell):
    got = count_exact(CensusParams(y, k, ell)).count
    assert got == oracle_census(y, k, ell)


@given(
    y=st.sampled_from([10, 14, 22, 26, 34, 44, 52]),
    k=st.integers(1, 3),
    ell=st.integers(1, 2),
)
@settings(max_examples=40, deadline=None)
def test_count_methods_agree(y, k, ell):
    if ell > k:
        ell = k
    params = CensusParams(y, k, ell)
    a = count_exact(params)
    b = count_direct(params)
    assert a.count == b.count
    assert a.method == "residue-dp"
    assert b.method == "direct"


@given(seed=st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_census_over_shuffle_invariance(seed):
    stats = interval_stats(40)
    p_list, q_list = list(stats.product_primes), list(stats.modulus_primes)
    baseline = census_over(tuple(p_list), tuple(q_list), 2, 2)
    rng = random.Random(seed)
    rng.shuffle(p_list)
    rng.shuffle(q_list)
    assert census_over(tuple(p_list), tuple(q_list), 2, 2) == baseline


def test_empty_interval_flag():
    # y = 3: no primes in (0.75, 1.5], so the modulus range is empty
    res = count_exact(CensusParams(3, 1, 1))
    assert res.empty_interval
    assert res.count == 0
    assert res.main_term == 0
    assert res.ratio is None


def test_ratio_against_main_term():
    res = count_exact(CensusParams(30, 2, 1))
    assert res.ratio == pytest.approx(5 / float(Fraction(384, 143)))
    assert not res.in_hypothesis


def test_sampled_reference_point_within_three_sigma():
    res = count_sampled(CensusParams(30, 2, 1), samples=10**5, seed=1)
    assert res.method == "sampled"
    assert res.std_error is not None and res.std_error > 0
    assert abs(res.count - 5) <= 3 * res.std_error


def test_sampled_deterministic_per_seed():
    a = count_sampled(CensusParams(30, 2, 1), samples=2000, seed=7)
    b = count_sampled(CensusParams(30, 2, 1), samples=2000, seed=7)
    c = count_sampled(CensusParams(30, 2, 1), samples=2000, seed=8)
    assert (a.count, a.std_error) == (b.count, b.std_error)
    assert (a.count, a.std_error) != (c.count, c.std_error)


def test_sampled_validation():
    with pytest.raises(ValidationError):
        count_sampled(CensusParams(30, 2, 1), samples=0, seed=1)


def test_sampled_empty_interval():
    res = count_sampled(CensusParams(3, 1, 1), samples=10, seed=1)
    assert res.empty_interval and res.count == 0.0 and res.std_error == 0.0


@pytest.mark.parametrize("t", [1, 2, 3])
@pytest.mark.parametrize("y", [20, 30, 40, 60])
def test_representation_count_identities(t, y):
    stats = interval_stats(y)
    table = representation_counts(t, y, stats=stats)
    assert table.total == stats.prime_count**t
    assert table.max_count <= math.factorial(t)
    assert sum(table.counts.values()) == table.total


@pytest.mark.parametrize("t,y", [(1, 30), (2, 30), (2, 40), (3, 20)])
def test_representation_counts_match_oracle(t, y):
    table = representation_counts(t, y)
    assert table.counts == dict(oracle_rep_counts(t, y))


def test_representation_counts_capacity():
    with pytest.raises(CapacityError):
        representation_counts(3, 60, cap=10)
    with pytest.raises(ValidationError):
        representation_counts(0, 30)


def test_direct_capacity(monkeypatch):
    # direct enumeration must refuse rather than grind: force a tiny budget
    import sunitlab.tuple_census as tc

    monkeypatch.setattr(tc, "DIRECT_OP_LIMIT", 100)
    with pytest.raises(CapacityError):
        count_direct(CensusParams(60, 3, 2))
