import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from c2a_workbench.errors import ImproperInputError, InvalidRingError, RingMismatchError, SpecParseError
from c2a_workbench.ring import (
    Ring,
    absorbing_ideal_witness,
    enumerate_ideals,
    ideal_combine,
    ideal_generated,
    is_n_absorbing_ideal,
    is_prime_ideal,
    is_ring_isomorphism,
    minimal_primes_over,
    parse_ring_spec,
    radical,
    unit_ideal,
    zero_ideal,
)

from . import oracles

small_moduli = st.one_of(
    st.integers(2, 16).map(lambda n: (n,)),
    st.tuples(st.integers(2, 4), st.integers(2, 4)),
)


def ideal(ring, *gens):
    return ideal_generated(ring, gens)


def test_cardinality():
    assert Ring([6]).cardinality == 6
    assert Ring([2, 3]).cardinality == 6


@pytest.mark.parametrize("bad", [[], [1], [6, 1], [0]])
def test_invalid_ring(bad):
    with pytest.raises(InvalidRingError):
        Ring(bad)


def test_crt_isomorphism_found_by_search():
    a, b = Ring([2, 3]), Ring([6])
    found = []
    rest = [x for x in a.elements if x != (0, 0) and x != (1, 1)]
    for perm in itertools.permutations([y for y in b.elements if y not in ((0,), (1,))]):
        mapping = {(0, 0): (0,), (1, 1): (1,), **dict(zip(rest, perm))}
        if is_ring_isomorphism(a, b, mapping):
            found.append(mapping)
    assert len(found) == 1
    assert found[0][(1, 0)] == (3,)


def test_parse_ring_spec():
    assert parse_ring_spec("Z6") == Ring([6])
    assert parse_ring_spec("Z2xZ3").moduli == (2, 3)
    with pytest.raises(SpecParseError):
        parse_ring_spec("Q6")


def test_generated_ideals():
    z8 = Ring([8])
    assert ideal(z8, 2).elements == [(0,), (2,), (4,), (6,)]
    assert ideal_generated(z8, []).elements == [(0,)]
    r = Ring([2, 3])
    assert ideal(r, (1, 0)).elements == [(0, 0), (1, 0)]


@pytest.mark.parametrize("moduli,count", [((6,), 4), ((8,), 4), ((2, 2), 4), ((12,), 6), ((4, 4), 9)])
def test_ideal_counts(moduli, count):
    assert len(enumerate_ideals(Ring(moduli))) == count


@settings(max_examples=25, deadline=None)
@given(small_moduli)
def test_ideals_match_subset_closure(moduli):
    ring = Ring(moduli)
    got = {frozenset(i.elements) for i in enumerate_ideals(ring)}
    if ring.cardinality <= 12:
        assert got == set(oracles.all_ideals(moduli))
    # every ideal is an additive subgroup absorbing multiplication
    for i in enumerate_ideals(ring):
        s = set(i.elements)
        assert all(ring.add(x, y) in s and ring.mul(r, x) in s for x in s for y in s for r in ring.elements)


def test_combine_examples():
    z6, z36 = Ring([6]), Ring([36])
    assert ideal_combine(ideal(z6, 2), ideal(z6, 3), "product") == zero_ideal(z6)
    i = ideal(z6, 2)
    assert ideal_combine(i, i, "intersection") == i
    assert ideal_combine(ideal(z36, 4), ideal(z36, 9), "intersection") == zero_ideal(z36)
    with pytest.raises(RingMismatchError):
        ideal_combine(ideal(z6, 2), ideal(z36, 2), "sum")


def test_prime_examples():
    z6 = Ring([6])
    assert is_prime_ideal(ideal(z6, 2))
    assert not is_prime_ideal(zero_ideal(z6))
    assert not is_prime_ideal(unit_ideal(z6))


def test_absorbing_examples():
    z6, z8, z30 = Ring([6]), Ring([8]), Ring([30])
    assert is_n_absorbing_ideal(zero_ideal(z6), 2)
    assert not is_n_absorbing_ideal(zero_ideal(z8), 2)
    assert absorbing_ideal_witness(zero_ideal(z8), 2) is not None
    assert not is_n_absorbing_ideal(zero_ideal(z30), 2)
    assert is_n_absorbing_ideal(zero_ideal(z30), 3)
    with pytest.raises(ImproperInputError):
        is_n_absorbing_ideal(unit_ideal(z6), 2)


@settings(max_examples=25, deadline=None)
@given(small_moduli)
def test_prime_implies_two_absorbing_and_oracle(moduli):
    ring = Ring(moduli)
    for i in enumerate_ideals(ring):
        if not i.is_proper:
            continue
        two = is_n_absorbing_ideal(i, 2)
        assert two == oracles.two_absorbing_ideal(moduli, set(i.elements))
        if is_prime_ideal(i):
            assert two
        # n-absorbing is monotone in n
        assert not two or is_n_absorbing_ideal(i, 3)


def test_radical_examples():
    z8, z6 = Ring([8]), Ring([6])
    assert radical(ideal(z8, 4)) == ideal(z8, 2)
    assert radical(ideal(z6, 2)) == ideal(z6, 2)
    assert radical(zero_ideal(z6)) == zero_ideal(z6)
    assert minimal_primes_over(zero_ideal(z6)) == [ideal(z6, 3), ideal(z6, 2)]
    assert minimal_primes_over(ideal(z8, 4)) == [ideal(z8, 2)]


@settings(max_examples=30, deadline=None)
@given(small_moduli)
def test_radical_is_meet_of_minimal_primes(moduli):
    ring = Ring(moduli)
    for i in enumerate_ideals(ring):
        if not i.is_proper:
            continue
        r = radical(i)
        brute = {x for x in ring.elements if any(set(i.elements) >= {_power(ring, x, k)} for k in range(1, 8))}
        assert set(r.elements) == brute
        meet = set(ring.elements)
        for p in minimal_primes_over(i):
            assert is_prime_ideal(p) and i <= p
            meet &= set(p.elements)
        assert meet == brute


def _power(ring, x, k):
    acc = ring.element(1)
    for _ in range(k):
        acc = ring.mul(acc, x)
    return acc
