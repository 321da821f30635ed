"""Finite topological spaces on points ``0 .. count-1`` with open sets as bit masks."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

from .algebra import ValidationReport, Violation
from .bits import Subset, canonical_key


class TopologyAxiomViolation(RuntimeError):
    def __init__(self, report: ValidationReport):
        self.report = report
        v = report.violations[0]
        super().__init__(f"{report.check}: {v.axiom} at {v.witness}")


def _dedupe(masks: Iterable[Subset]) -> tuple[Subset, ...]:
    return tuple(sorted(set(masks), key=canonical_key))


@dataclass(frozen=True)
class FiniteTopology:
    """A fully materialized topology with a distinguished labelled base.

    ``base`` holds ``(label, open set)`` pairs; labels are lattice elements for
    the Stone topology.
    """

    point_count: int
    opens: tuple[Subset, ...]
    base: tuple[tuple[int, Subset], ...] = ()
    _open_set: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "opens", _dedupe(self.opens))
        object.__setattr__(self, "_open_set", frozenset(self.opens))

    @property
    def full(self) -> Subset:
        return (1 << self.point_count) - 1

    def is_open(self, mask: Subset) -> bool:
        return mask in self._open_set

    @cached_property
    def minimal_opens(self) -> tuple[Subset, ...]:
        """Smallest open neighbourhood of each point."""
        out = []
        for p in range(self.point_count):
            m = self.full
            for U in self.opens:
                if U >> p & 1:
                    m &= U
            out.append(m)
        return tuple(out)

    def subspace_opens(self, Y: Subset) -> frozenset:
        return frozenset(U & Y for U in self.opens)


def verify_topology(T: FiniteTopology) -> ValidationReport:
    """Empty and full sets present, closure under intersection and union, base property."""
    out = []
    opens = T.opens
    present = set(opens)
    if 0 not in present:
        out.append(Violation("empty set absent", ()))
    if T.full not in present:
        out.append(Violation("full set absent", ()))
    bad = [(i, j) for i, U in enumerate(opens) for j, V in enumerate(opens) if U & V not in present]
    if bad:
        out.append(Violation("intersection closure", bad[0]))
    # pairwise unions suffice in a finite family
    bad = [(i, j) for i, U in enumerate(opens) for j, V in enumerate(opens) if U | V not in present]
    if bad:
        out.append(Violation("union closure", bad[0]))
    if T.base:
        stray = [i for i, (_, B) in enumerate(T.base) if B not in present]
        if stray:
            out.append(Violation("base member not open", (stray[0],)))
        for i, U in enumerate(opens):
            cover = 0
            for _, B in T.base:
                if B & ~U == 0:
                    cover |= B
            if cover != U:
                out.append(Violation("base property", (i,)))
                break
    return ValidationReport(tuple(out), check="topology axioms")


@dataclass(frozen=True)
class BaseTopology:
    """A topology given only by a base; open sets are tested, not listed.

    Suitable for total spaces whose full open family is too large to store.
    """

    point_count: int
    base: tuple[Subset, ...]

    def __post_init__(self):
        object.__setattr__(self, "base", _dedupe(self.base))

    @property
    def full(self) -> Subset:
        return (1 << self.point_count) - 1

    def interior(self, mask: Subset) -> Subset:
        cover = 0
        for B in self.base:
            if B & ~mask == 0:
                cover |= B
        return cover

    def is_open(self, mask: Subset) -> bool:
        return self.interior(mask) == mask

    @cached_property
    def minimal_opens(self) -> tuple[Subset, ...]:
        """Intersection of all base sets through each point (full set if none)."""
        out = []
        for p in range(self.point_count):
            m = self.full
            for B in self.base:
                if B >> p & 1:
                    m &= B
            out.append(m)
        return tuple(out)

    def opens(self, limit: Optional[int] = 1 << 16) -> tuple[Subset, ...]:
        """All unions of base sets, as the empty set plus every closure under union.

        Raises ``OverflowError`` once more than ``limit`` opens are found.
        """
        found = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for U in frontier:
                for B in self.base:
                    V = U | B
                    if V not in found:
                        found.add(V)
                        nxt.append(V)
                        if limit is not None and len(found) > limit:
                            raise OverflowError(f"more than {limit} open sets")
            frontier = nxt
        return _dedupe(found)


def verify_base(T: BaseTopology) -> ValidationReport:
    """Base criterion: the base covers the space and refines every pairwise intersection.

    Equivalent finite form: each point's minimal neighbourhood is itself a base set.
    """
    out = []
    covered = 0
    for B in T.base:
        covered |= B
    if covered != T.full:
        missing = (T.full & ~covered & -(T.full & ~covered)).bit_length() - 1
        out.append(Violation("base does not cover", (missing,)))
    members = set(T.base)
    for p, N in enumerate(T.minimal_opens):
        if covered >> p & 1 and N not in members:
            out.append(Violation("base refinement", (p,)))
            break
    return ValidationReport(tuple(out), check="base criterion")

