"""The Stone topology on the prime spectrum.

Points are prime filter indices in spectrum order. ``d_set(X)`` is the set of
primes not containing X; the opens are ``d_set(F)`` over all filters and
``{d_set({a})}`` is the base.
"""

from __future__ import annotations

from functools import lru_cache

from .algebra import ResiduatedLattice, ValidationReport, Violation
from .bits import Subset
from .filters import all_filters, o_of_p, spec
from .topology import FiniteTopology, TopologyAxiomViolation, verify_topology


def d_set(L: ResiduatedLattice, X: Subset) -> Subset:
    """Primes P with X not a subset of P. Empty for empty X."""
    out = 0
    for P in spec(L):
        if X & ~P.mask:
            out |= 1 << P.index
    return out


@lru_cache(maxsize=512)
def stone_topology(L: ResiduatedLattice) -> FiniteTopology:
    T = FiniteTopology(
        point_count=len(spec(L)),
        opens=tuple(d_set(L, F) for F in all_filters(L)),
        base=tuple((a, d_set(L, 1 << a)) for a in range(L.n)),
    )
    report = verify_topology(T)
    if not report.passed:
        raise TopologyAxiomViolation(report)
    return T


def v_set(L: ResiduatedLattice, a: int) -> Subset:
    """Primes P with a in O(P); always an open set of the Stone topology."""
    out = 0
    for P in spec(L):
        if o_of_p(L, P) >> a & 1:
            out |= 1 << P.index
    if not stone_topology(L).is_open(out):
        raise TopologyAxiomViolation(
            ValidationReport((Violation("not open", (a,)),), check="support of a in O(P)")
        )
    return out
