"""Exhaustive generation of small residuated lattices and the surjectivity survey.

Lattices live on the labelled carrier ``0 .. n-1`` with 0 the bottom, ``n-1``
the top, and every order relation ``i < j`` satisfying ``i < j`` as integers.
Isomorphic copies are kept; each carries a canonical hash (least relabelled
table tuple over permutations of the middle elements) for deduplication.
"""

from __future__ import annotations

import hashlib
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator, NamedTuple, Optional, Sequence

from . import kernels
from .algebra import MalformedTables, ResiduatedLattice, tables_from_order
from .checks import theorem_suite
from .filters import all_filters, o_of_p, spec
from .sheaf import DEFAULT_BUDGET, build_sheaf, represent

MAX_SIZE = 6
MIDDLE_NAMES = "abcdefghijklmnopqrstuvwxyz"


class Generated(NamedTuple):
    index: int
    lattice: ResiduatedLattice
    canonical_hash: str


def element_names(n: int) -> list[str]:
    return ["0"] + list(MIDDLE_NAMES[: n - 2]) + ["1"]


def lattice_orders(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Order matrices of all naturally labelled bounded lattices on n elements."""
    middle = range(1, n - 1)
    pairs = list(combinations(middle, 2))
    for bits in range(1 << len(pairs)):
        rel = {p for k, p in enumerate(pairs) if bits >> k & 1}
        if any((i, j) in rel and (j, k) in rel and (i, k) not in rel
               for i in middle for j in middle for k in middle):
            continue
        le = tuple(
            tuple(int(x == y or x == 0 or y == n - 1 or (x, y) in rel) for y in range(n))
            for x in range(n)
        )
        try:
            tables_from_order(le)
        except MalformedTables:
            continue
        yield le


def _tensors_for_order(le) -> list[list[list[int]]]:
    meet, join = tables_from_order(le)
    n = len(le)
    return kernels.search_tensors(le, meet, join, 0, n - 1)


def canonical_hash(L: ResiduatedLattice) -> str:
    n = L.n
    best = None
    for perm in permutations(range(1, n - 1)):
        p = (0,) + perm + (n - 1,)
        inv = [0] * n
        for i, v in enumerate(p):
            inv[v] = i
        key = tuple(
            tuple(p[table[inv[x]][inv[y]]] for x in range(n) for y in range(n))
            for table in (L.meet, L.tensor)
        )
        if best is None or key < best:
            best = key
    return hashlib.sha256(repr(best).encode()).hexdigest()[:16]


def enumerate_lattices(n: int, jobs: int = 1, max_size: int = MAX_SIZE) -> Iterator[Generated]:
    """Every residuated lattice on the labelled carrier of size n, in a fixed order."""
    if not 2 <= n <= max_size:
        raise ValueError(f"size must be between 2 and {max_size}")
    orders = list(lattice_orders(n))
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            per_order = list(pool.map(_tensors_for_order, orders))
    else:
        per_order = [_tensors_for_order(le) for le in orders]
    names = element_names(n)
    index = 0
    for le, tensors in zip(orders, per_order):
        meet, join = tables_from_order(le)
        for t in tensors:
            L = ResiduatedLattice.from_tables(names, meet, join, t)
            yield Generated(index, L, canonical_hash(L))
            index += 1


@dataclass(frozen=True)
class SurveyRow:
    index: int
    lattice_id: str
    duplicate_of: Optional[int]
    n: int
    filters: int
    primes: int
    o_sizes: tuple[int, ...]
    stalk_sizes: tuple[int, ...]
    gamma: Optional[int]
    image: int
    verdict: str
    failed_checks: tuple[str, ...]
    wall_time: float

    @property
    def checks_passed(self) -> bool:
        return not self.failed_checks


def survey_row(g: Generated, budget: int = DEFAULT_BUDGET, duplicate_of: Optional[int] = None) -> SurveyRow:
    start = time.perf_counter()
    L = g.lattice
    S = build_sheaf(L)
    rep = represent(L, budget, S=S)
    results = theorem_suite(L, budget, sheaf=S, representation=rep)
    failed = tuple(name for name, report in results if not report.passed)
    return SurveyRow(
        index=g.index,
        lattice_id=g.canonical_hash,
        duplicate_of=duplicate_of,
        n=L.n,
        filters=len(all_filters(L)),
        primes=len(spec(L)),
        o_sizes=tuple(o_of_p(L, P).bit_count() for P in spec(L)),
        stalk_sizes=S.stalk_sizes,
        gamma=rep.gamma_size,
        image=rep.image_size,
        verdict=rep.verdict,
        failed_checks=failed,
        wall_time=time.perf_counter() - start,
    )


def _row_job(args):
    return survey_row(*args)


def survey(
    n: int, budget: int = DEFAULT_BUDGET, jobs: int = 1,
    lattices: Optional[Sequence[Generated]] = None,
) -> list[SurveyRow]:
    """Represent every generated lattice of size n; rows come back in generation order."""
    gens = list(enumerate_lattices(n, jobs) if lattices is None else lattices)
    first: dict[str, int] = {}
    tasks = []
    for g in gens:
        dup = first.setdefault(g.canonical_hash, g.index)
        tasks.append((g, budget, None if dup == g.index else dup))
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            rows = list(pool.map(_row_job, tasks, chunksize=8))
    else:
        rows = [_row_job(t) for t in tasks]
    for row in rows:
        if row.image != row.n:
            raise RuntimeError(f"representation not injective for lattice {row.index}")
    return rows


def footer(rows: Sequence[SurveyRow]) -> dict[str, int]:
    counts = {"lattices": len(rows), "distinct": len({r.lattice_id for r in rows})}
    for v in ("yes", "no", "unknown"):
        counts[v] = sum(r.verdict == v for r in rows)
    counts["check_failures"] = sum(not r.checks_passed for r in rows)
    return counts
