import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rlsheaf.bits import mask_of
from rlsheaf.catalog import all_lattices, get
from rlsheaf.filters import (
    NoSuchPrime,
    all_filters,
    filter_join,
    generated_filter,
    is_filter,
    is_filter_alt,
    is_prime,
    o_of_p,
    separate_with_prime,
    spec,
    tensor_closure,
    upward_closure,
)

import oracles
from conftest import small_lattices

# filters, primes, O(P) per catalog lattice, computed by the 2^n scan in oracles.py
FROZEN = {
    "l2": ([2, 3], [2], [2]),
    "l3-chain": ([4, 6, 7], [4, 6], [4, 4]),
    "l3-luk": ([4, 7], [4], [4]),
    "l4": ([8, 10, 12, 15], [10, 12], [10, 12]),
    "l5": ([16, 24, 26, 28, 31], [16, 26, 28], [16, 16, 16]),
    "l5-luk": ([16, 31], [16], [16]),
    "l6-godel": ([32, 48, 56, 60, 62, 63], [32, 48, 56, 60, 62], [32] * 5),
    "l6-mv2x3": ([32, 40, 52, 63], [40, 52], [40, 52]),
}

SAMPLE = small_lattices(5)
lattices = st.sampled_from(SAMPLE)


def named(L, *names):
    return mask_of(L.index(s) for s in names)


@pytest.mark.parametrize("name,L", all_lattices())
def test_frozen_values(name, L):
    fs, ps, os_ = FROZEN[name]
    assert list(all_filters(L)) == fs
    assert [P.mask for P in spec(L)] == ps
    assert [o_of_p(L, P) for P in spec(L)] == os_


@pytest.mark.parametrize("name,L", all_lattices())
def test_oracle_agreement(name, L):
    assert list(all_filters(L)) == oracles.filters_by_scan(L)
    assert [P.mask for P in spec(L)] == oracles.primes_by_scan(L)
    assert [o_of_p(L, P) for P in spec(L)] == [o_of_p(L, P.mask) for P in spec(L)]


@pytest.mark.parametrize("name,L", all_lattices())
def test_characterizations_on_all_subsets(name, L):
    for S in range(1 << L.n):
        assert is_filter(L, S) == is_filter_alt(L, S), S


def test_l4_named():
    L = get("l4")
    assert [P.mask for P in spec(L)] == [named(L, "a", "1"), named(L, "b", "1")]
    P = spec(L)[0]
    assert o_of_p(L, P) == P.mask


def test_l5_join_irreducible_top():
    # 1 is join-irreducible in this lattice, so {1} is itself prime
    L = get("l5")
    assert is_prime(L, 1 << L.top)
    assert spec(L)[0].mask == 1 << L.top


def test_generated_filter_examples():
    L = get("l3-luk")
    a = L.index("m")
    # a (x) a = 0 in the three-element Lukasiewicz chain
    assert tensor_closure(L, 1 << a) == mask_of([0, a])
    assert generated_filter(L, 1 << a) == L.full
    assert upward_closure(L, 1 << a) == mask_of([a, L.top])
    L = get("l4")
    assert generated_filter(L, 0) == 1 << L.top
    assert filter_join(L, named(L, "a", "1"), named(L, "b", "1")) == L.full


def test_separation():
    L = get("l4")
    P = separate_with_prime(L, 1 << L.top, L.index("a"))
    assert P.mask == named(L, "b", "1")
    with pytest.raises(NoSuchPrime):
        separate_with_prime(L, L.full, 0)
    assert separate_with_prime(L, L.full, 0, all=True) == []


@settings(max_examples=80, deadline=None)
@given(lattices, st.data())
def test_generated_filter_is_least(L, data):
    X = data.draw(st.integers(0, L.full))
    F = generated_filter(L, X)
    assert F == oracles.generated_by_scan(L, X)
    assert is_filter(L, F) and X & ~F == 0


@settings(max_examples=80, deadline=None)
@given(lattices)
def test_spec_properties(L):
    fs = set(all_filters(L))
    assert fs == set(oracles.filters_by_scan(L))
    inter = L.full
    for P in spec(L):
        assert P.mask in fs and P.mask != L.full
        O = o_of_p(L, P)
        assert O == oracles.o_of_p_direct(L, P.mask)
        assert O & ~P.mask == 0
        inter &= P.mask
    assert inter == 1 << L.top


@settings(max_examples=80, deadline=None)
@given(lattices, st.data())
def test_prime_separates(L, data):
    fs = all_filters(L)
    F = data.draw(st.sampled_from(fs))
    a = data.draw(st.integers(0, L.n - 1))
    if F >> a & 1:
        return
    P = separate_with_prime(L, F, a)
    assert F & ~P.mask == 0 and not P.mask >> a & 1
