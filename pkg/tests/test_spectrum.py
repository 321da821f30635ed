import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rlsheaf.catalog import all_lattices, get
from rlsheaf.filters import all_filters, generated_filter, spec
from rlsheaf.spectrum import d_set, stone_topology, v_set
from rlsheaf.topology import BaseTopology, FiniteTopology, verify_base, verify_topology

from conftest import small_lattices

SAMPLE = small_lattices(5)


def test_l4_topology_is_discrete():
    L = get("l4")
    T = stone_topology(L)
    assert T.opens == (0, 1, 2, 3)
    assert dict(T.base) == {0: 3, 1: 2, 2: 1, 3: 0}
    assert d_set(L, 1 << L.index("a")) == 0b10


def test_l5_topology():
    L = get("l5")
    T = stone_topology(L)
    assert T.opens == (0, 1, 3, 5, 7)
    assert d_set(L, 1 << L.index("a")) == 0b101
    assert d_set(L, 1 << L.index("c")) == 0b001
    assert [v_set(L, a) for a in range(L.n)] == [0, 0, 0, 0, 7]


def test_v_set_l4():
    L = get("l4")
    assert v_set(L, L.index("a")) == 0b01
    assert v_set(L, L.index("b")) == 0b10
    assert v_set(L, L.top) == 0b11 and v_set(L, 0) == 0


def test_verify_topology_catches_gaps():
    bad = FiniteTopology(point_count=3, opens=(0, 1, 2, 7), base=())
    r = verify_topology(bad)
    assert "union closure" in r.axioms()
    bad = FiniteTopology(point_count=2, opens=(0, 1), base=())
    assert "full set absent" in verify_topology(bad).axioms()
    bad = FiniteTopology(point_count=2, opens=(0, 1, 3), base=((0, 2),))
    assert "base member not open" in verify_topology(bad).axioms()


def test_verify_base():
    assert verify_base(BaseTopology(point_count=2, base=(1, 2))).passed
    assert "base does not cover" in verify_base(BaseTopology(point_count=2, base=(1,))).axioms()
    assert "base refinement" in verify_base(BaseTopology(point_count=3, base=(3, 6))).axioms()


@pytest.mark.parametrize("name,L", all_lattices())
def test_d_set_exhaustive(name, L):
    for X in range(1 << L.n):
        assert d_set(L, X) == d_set(L, generated_filter(L, X))


@pytest.mark.parametrize("name,L", all_lattices())
def test_stone_topology_catalog(name, L):
    T = stone_topology(L)
    assert verify_topology(T).passed
    assert d_set(L, L.full) == T.full and d_set(L, 1 << L.top) == 0


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(SAMPLE))
def test_opens_from_filters(L):
    T = stone_topology(L)
    fs = all_filters(L)
    ds = {d_set(L, F) for F in fs}
    assert set(T.opens) == ds
    # distinct filters give distinct opens
    assert len(ds) == len(fs)
    for F in fs:
        for G in fs:
            assert d_set(L, F & G) == d_set(L, F) & d_set(L, G)
            assert d_set(L, generated_filter(L, F | G)) == d_set(L, F) | d_set(L, G)
    for a in range(L.n):
        for b in range(L.n):
            assert d_set(L, 1 << L.tensor[a][b]) == d_set(L, 1 << a) | d_set(L, 1 << b)
            assert d_set(L, 1 << L.join[a][b]) == d_set(L, 1 << a) & d_set(L, 1 << b)
        assert T.is_open(v_set(L, a))
    assert len(spec(L)) == T.point_count
