from itertools import product

import pytest

from rlsheaf.algebra import raw_tables, tables_from_order, validate
from rlsheaf.catalog import get
from rlsheaf.explorer import (
    canonical_hash,
    element_names,
    enumerate_lattices,
    footer,
    lattice_orders,
    survey,
)

# known counts of bounded commutative integral residuated lattices up to isomorphism
DISTINCT = {2: 1, 3: 2, 4: 7, 5: 26, 6: 129}
LABELLED = {2: 1, 3: 2, 4: 7, 5: 27, 6: 158}


def stream(n):
    return list(enumerate_lattices(n))


def brute_force(n):
    """Residuated tables on naturally labelled orders, by trying every tensor table."""
    out = set()
    middle = list(range(1, n - 1))
    cells = [(i, j) for i in middle for j in middle if i <= j]
    for le in lattice_orders(n):
        meet, join = tables_from_order(le)
        for vals in product(range(n), repeat=len(cells)):
            t = [[0] * n for _ in range(n)]
            for x in range(n):
                t[x][n - 1] = t[n - 1][x] = x
            for (i, j), v in zip(cells, vals):
                t[i][j] = t[j][i] = v
            if validate(raw_tables(element_names(n), meet, join, t)).passed:
                out.add((meet, tuple(map(tuple, t))))
    return out


@pytest.mark.parametrize("n", [2, 3, 4])
def test_complete_and_sound(n):
    got = {(g.lattice.meet, g.lattice.tensor) for g in stream(n)}
    assert got == brute_force(n)


def test_n2_is_boolean():
    (g,) = stream(2)
    assert g.lattice.tensor == ((0, 0), (0, 1))


def test_n3_godel_and_lukasiewicz():
    tensors = {g.lattice.tensor[1][1] for g in stream(3)}
    assert tensors == {0, 1}


def test_l4_appears():
    L = get("l4")
    assert any(g.lattice.meet == L.meet and g.lattice.tensor == L.tensor for g in stream(4))
    assert canonical_hash(L) in {g.canonical_hash for g in stream(4)}


@pytest.mark.parametrize("n", sorted(DISTINCT))
def test_counts(n):
    gens = stream(n)
    assert len(gens) == LABELLED[n]
    assert len({g.canonical_hash for g in gens}) == DISTINCT[n]
    assert [g.index for g in gens] == list(range(len(gens)))


def test_hash_invariant_under_relabelling():
    # the two labellings of the diamond's atoms give the same hash
    gens = [g for g in stream(5)]
    by_hash = {}
    for g in gens:
        by_hash.setdefault(g.canonical_hash, []).append(g)
    dups = [v for v in by_hash.values() if len(v) > 1]
    assert len(dups) == 1 and len(dups[0]) == 2


def test_stream_deterministic_and_parallel():
    a = [(g.lattice.meet, g.lattice.tensor, g.canonical_hash) for g in enumerate_lattices(5)]
    b = [(g.lattice.meet, g.lattice.tensor, g.canonical_hash) for g in enumerate_lattices(5, jobs=2)]
    assert a == b


def test_size_limits():
    with pytest.raises(ValueError):
        list(enumerate_lattices(1))
    with pytest.raises(ValueError):
        list(enumerate_lattices(7))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_survey_rows(n):
    rows = survey(n)
    assert all(r.checks_passed for r in rows)
    assert all(r.image == n and r.verdict == "yes" for r in rows)
    f = footer(rows)
    assert f["lattices"] == LABELLED[n] and f["distinct"] == DISTINCT[n]
    assert f["check_failures"] == 0
    first = {}
    for r in rows:
        first.setdefault(r.lattice_id, r.index)
        assert r.duplicate_of == (None if first[r.lattice_id] == r.index else first[r.lattice_id])
