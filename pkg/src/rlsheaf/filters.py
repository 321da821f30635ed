"""Filters, prime filters and the prime spectrum of a finite residuated lattice.

Subsets are int bit masks over the carrier. Every list returned here is in
canonical order: by cardinality, then by mask value.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from .algebra import ResiduatedLattice
from .bits import Subset, canonical_key, iter_members


class NoSuchPrime(RuntimeError):
    """No prime filter separates; cannot happen for a valid lattice."""


class PrimeFilter(NamedTuple):
    index: int
    mask: Subset


def is_upward_closed(L: ResiduatedLattice, S: Subset) -> bool:
    up = L.up
    return all(up[x] & ~S == 0 for x in iter_members(S))


def is_filter(L: ResiduatedLattice, S: Subset) -> bool:
    """Nonempty, upward closed and closed under the tensor."""
    if not S or not is_upward_closed(L, S):
        return False
    t = L.tensor
    elems = list(iter_members(S))
    return all(S >> t[x][y] & 1 for x in elems for y in elems)


def is_filter_alt(L: ResiduatedLattice, S: Subset) -> bool:
    """Contains the top and is closed under modus ponens (x, x->y in S gives y in S).

    Meant for nonempty upward closed ``S``; on those it agrees with :func:`is_filter`.
    """
    if not S >> L.top & 1:
        return False
    r = L.residuum
    elems = list(iter_members(S))
    for x in elems:
        rx = r[x]
        for y in range(L.n):
            if S >> rx[y] & 1 and not S >> y & 1:
                return False
    return True


def tensor_closure(L: ResiduatedLattice, X: Subset) -> Subset:
    t = L.tensor
    closed = X
    while True:
        elems = list(iter_members(closed))
        grown = closed
        for x in elems:
            for y in elems:
                grown |= 1 << t[x][y]
        if grown == closed:
            return closed
        closed = grown


def upward_closure(L: ResiduatedLattice, X: Subset) -> Subset:
    out = 0
    for x in iter_members(X):
        out |= L.up[x]
    return out


def generated_filter(L: ResiduatedLattice, X: Subset) -> Subset:
    """Least filter containing X; ``{top}`` for the empty set."""
    return upward_closure(L, tensor_closure(L, X) | 1 << L.top)


@lru_cache(maxsize=512)
def all_filters(L: ResiduatedLattice) -> tuple[Subset, ...]:
    """Every filter once, grown from the principal ones by intersections and joins."""
    found = {generated_filter(L, 1 << a) for a in range(L.n)}
    frontier = list(found)
    while frontier:
        new = []
        current = list(found)
        for F in frontier:
            for G in current:
                for H in (F & G, generated_filter(L, F | G)):
                    if H not in found:
                        found.add(H)
                        new.append(H)
        frontier = new
    return tuple(sorted(found, key=canonical_key))


def filter_join(L: ResiduatedLattice, F: Subset, G: Subset) -> Subset:
    return generated_filter(L, F | G)


def is_prime(L: ResiduatedLattice, F: Subset) -> bool:
    if F == L.full:
        return False
    j = L.join
    n = L.n
    for x in range(n):
        if F >> x & 1:
            continue
        jx = j[x]
        for y in range(n):
            if F >> jx[y] & 1 and not F >> y & 1:
                return False
    return True


@lru_cache(maxsize=512)
def spec(L: ResiduatedLattice) -> tuple[PrimeFilter, ...]:
    primes = [F for F in all_filters(L) if is_prime(L, F)]
    return tuple(PrimeFilter(i, F) for i, F in enumerate(primes))


def o_of_p(L: ResiduatedLattice, P) -> Subset:
    """Elements x with ``a v x = top`` for some a outside P."""
    P = getattr(P, "mask", P)
    j = L.join
    out = 0
    for a in range(L.n):
        if P >> a & 1:
            continue
        for x in range(L.n):
            if j[a][x] == L.top:
                out |= 1 << x
    return out


def separate_with_prime(
    L: ResiduatedLattice, F: Subset, a: int, all: bool = False
):
    """First prime filter (in spectrum order) containing F and omitting a.

    With ``all=True`` return every such prime instead.
    """
    hits = [P for P in spec(L) if F & ~P.mask == 0 and not P.mask >> a & 1]
    if all:
        return hits
    if not hits:
        raise NoSuchPrime(f"no prime filter contains {F:#b} and omits {a}")
    return hits[0]
