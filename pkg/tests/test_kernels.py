from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rlsheaf import _pykernels, kernels
from rlsheaf.algebra import tables_from_order
from rlsheaf.catalog import all_lattices
from rlsheaf.explorer import lattice_orders

from conftest import BACKENDS


def tables(n):
    return st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n)


@st.composite
def square(draw):
    n = draw(st.integers(1, 5))
    return draw(tables(n))


def naive_assoc(op):
    n = len(op)
    for x, y, z in product(range(n), repeat=3):
        if op[op[x][y]][z] != op[x][op[y][z]]:
            return (x, y, z)
    return None


def test_backend_selected():
    assert kernels.BACKEND in ("python", "cython")


@settings(max_examples=200, deadline=None)
@given(square())
def test_assoc_violation_is_lex_least(op):
    for b in BACKENDS:
        mod = b.values[0]
        if mod is None:
            continue
        got = mod.first_assoc_violation(op)
        assert (tuple(got) if got else None) == naive_assoc(op)


@pytest.mark.parametrize("name,L", all_lattices())
def test_residuum_and_adjunction(backend, name, L):
    r = backend.derive_residuum(L.tensor, L.join, L.le, L.bottom)
    assert [list(row) for row in r] == [list(row) for row in L.residuum]
    assert backend.first_adjunction_violation(L.tensor, L.residuum, L.le) is None


def test_adjunction_violation_found(backend):
    from rlsheaf.catalog import get

    L = get("l4")
    bad = [list(r) for r in L.residuum]
    bad[1][0] = L.top  # a -> 0 = 1 is too large
    w = backend.first_adjunction_violation(L.tensor, bad, L.le)
    assert w is not None
    x, y, z = w
    assert L.leq(L.tensor[x][y], z) != L.leq(x, bad[y][z])


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_tensor_search_backends_agree(n):
    mods = [b.values[0] for b in BACKENDS if b.values[0] is not None]
    for le in lattice_orders(n):
        meet, join = tables_from_order(le)
        results = [
            sorted(tuple(map(tuple, t)) for t in m.search_tensors(le, meet, join, 0, n - 1))
            for m in mods
        ]
        assert all(r == results[0] for r in results)


def test_tensor_search_brute_force_n4():
    # all commutative tables with 0 absorbing and top as unit, filtered by the axioms
    n = 4
    for le in lattice_orders(n):
        meet, join = tables_from_order(le)
        found = {tuple(map(tuple, t)) for t in _pykernels.search_tensors(le, meet, join, 0, n - 1)}
        brute = set()
        for a, b, c in product(range(n), repeat=3):
            t = [[0] * n for _ in range(n)]
            for x in range(n):
                t[x][n - 1] = t[n - 1][x] = x
            t[1][1], t[1][2], t[2][1], t[2][2] = a, b, b, c
            if naive_assoc(t):
                continue
            if any(not le[t[x][z]][t[y][z]] for x in range(n) for y in range(n) for z in range(n) if le[x][y]):
                continue
            if any(t[join[x][y]][z] != join[t[x][z]][t[y][z]] for x in range(n) for y in range(n) for z in range(n)):
                continue
            brute.add(tuple(map(tuple, t)))
        assert found == brute


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_enumerate_sections_matches_product_filter(data):
    k = data.draw(st.integers(1, 4))
    sizes = data.draw(st.lists(st.integers(1, 3), min_size=k, max_size=k))
    allow = [[[data.draw(st.integers(0, (1 << sizes[Q]) - 1)) for Q in range(k)]
              for _ in range(sizes[P])] for P in range(k)]
    expect = [
        v for v in product(*(range(s) for s in sizes))
        if all(allow[P][v[P]][Q] >> v[Q] & 1 for P in range(k) for Q in range(k) if P != Q)
    ]
    for b in BACKENDS:
        mod = b.values[0]
        if mod is None:
            continue
        assert [tuple(v) for v in mod.enumerate_sections(sizes, allow)] == expect


def test_pure_env_forces_python():
    import os
    import subprocess
    import sys

    env = dict(os.environ, RLSHEAF_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from rlsheaf import kernels; print(kernels.BACKEND)"],
                         capture_output=True, text=True, env=env)
    assert out.stdout.strip() == "python"
