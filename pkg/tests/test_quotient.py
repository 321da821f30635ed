import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rlsheaf.algebra import validate
from rlsheaf.bits import mask_of
from rlsheaf.catalog import all_lattices, get
from rlsheaf.filters import all_filters
from rlsheaf.quotient import (
    class_of,
    congruence_classes,
    congruence_report,
    projection_report,
    quotient,
)

import oracles
from conftest import small_lattices

SAMPLE = small_lattices(5)


def test_l4_by_prime():
    L = get("l4")
    F = mask_of([L.index("a"), L.top])
    Q = quotient(L, F)
    assert Q.algebra.names == ("{0,b}", "{a,1}")
    assert Q.classes == (mask_of([0, L.index("b")]), F)
    assert class_of(Q, L.index("b")) == 0
    assert Q.representative(1) == L.index("a")


def test_identity_and_total():
    L = get("l4")
    Q = quotient(L, 1 << L.top)
    assert Q.size == L.n
    assert Q.algebra.meet == L.meet and Q.algebra.residuum == L.residuum
    Q = quotient(L, L.full)
    assert Q.size == 1 and Q.classes == (L.full,)


def test_lukasiewicz_simple():
    # the only proper filter of a Lukasiewicz chain is {1}
    L = get("l5-luk")
    assert [quotient(L, F).size for F in all_filters(L)] == [5, 1]


@pytest.mark.parametrize("name,L", all_lattices())
def test_catalog_quotients(name, L):
    for F in all_filters(L):
        Q = quotient(L, F)
        assert list(Q.class_of) == [
            sorted(set(oracles.classes_mod(L, F))).index(c) for c in oracles.classes_mod(L, F)
        ]
        assert congruence_report(L, F).passed
        assert projection_report(Q).passed
        assert Q.classes[Q.class_of[L.top]] == F


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(SAMPLE), st.data())
def test_quotient_properties(L, data):
    F = data.draw(st.sampled_from(all_filters(L)))
    Q = quotient(L, F)
    classes, cls = congruence_classes(L, F)
    assert sum(bin(m).count("1") for m in classes) == L.n
    assert all(m & m2 == 0 for i, m in enumerate(classes) for m2 in classes[i + 1:])
    # classes come out ordered by least member
    lows = [(m & -m).bit_length() for m in classes]
    assert lows == sorted(lows)
    assert projection_report(Q).passed
    if Q.size > 1:
        assert validate(Q.algebra.raw()).passed
