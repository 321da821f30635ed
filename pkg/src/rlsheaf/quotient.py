"""Quotients of a residuated lattice by the congruence of a filter.

``x ~ y`` modulo F iff ``(x -> y) (x) (y -> x)`` lies in F. Classes are
numbered by their least member and the quotient tables are materialized.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import OPERATIONS, ResiduatedLattice, ValidationReport, Violation
from .bits import Subset, iter_members


class CongruenceError(RuntimeError):
    """The filter congruence is not compatible with an operation (a bug)."""


@dataclass(frozen=True, eq=False)
class QuotientAlgebra:
    base: ResiduatedLattice
    filter: Subset
    classes: tuple[Subset, ...]
    class_of: tuple[int, ...]
    algebra: ResiduatedLattice

    def representative(self, c: int) -> int:
        return (self.classes[c] & -self.classes[c]).bit_length() - 1

    @property
    def size(self) -> int:
        return len(self.classes)


def equivalent(L: ResiduatedLattice, F: Subset, x: int, y: int) -> bool:
    r, t = L.residuum, L.tensor
    return bool(F >> t[r[x][y]][r[y][x]] & 1)


def congruence_classes(L: ResiduatedLattice, F: Subset) -> tuple[tuple[Subset, ...], tuple[int, ...]]:
    n = L.n
    class_of = [-1] * n
    classes: list[Subset] = []
    for x in range(n):
        if class_of[x] >= 0:
            continue
        c = len(classes)
        mask = 0
        for y in range(x, n):
            if class_of[y] < 0 and equivalent(L, F, x, y):
                class_of[y] = c
                mask |= 1 << y
        classes.append(mask)
    return tuple(classes), tuple(class_of)


def _class_name(L: ResiduatedLattice, mask: Subset) -> str:
    return "{" + ",".join(L.names[i] for i in iter_members(mask)) + "}"


def quotient(L: ResiduatedLattice, F: Subset, check: bool = True) -> QuotientAlgebra:
    """The quotient L/F with operations taken on least representatives.

    With ``check`` every choice of representatives is compared and the
    equivalence laws are verified; a mismatch raises :class:`CongruenceError`.
    """
    classes, class_of = congruence_classes(L, F)
    reps = [(m & -m).bit_length() - 1 for m in classes]
    k = len(classes)
    if check:
        report = congruence_report(L, F, classes, class_of)
        if not report.passed:
            v = report.violations[0]
            raise CongruenceError(f"{v.axiom} fails at {v.witness}")
    tables = {
        name: [[class_of[L.op(name)[reps[a]][reps[b]]] for b in range(k)] for a in range(k)]
        for name in OPERATIONS
    }
    algebra = ResiduatedLattice.from_tables(
        [_class_name(L, m) for m in classes],
        tables["meet"], tables["join"], tables["tensor"], tables["residuum"],
        allow_trivial=(k == 1),
    )
    return QuotientAlgebra(L, F, classes, class_of, algebra)


def class_of(Q: QuotientAlgebra, x: int) -> int:
    return Q.class_of[x]


def congruence_report(L, F, classes=None, class_of=None) -> ValidationReport:
    """Equivalence laws of the filter relation and compatibility with all four operations."""
    if classes is None:
        classes, class_of = congruence_classes(L, F)
    n = L.n
    R = range(n)
    out = []
    eq = [[equivalent(L, F, x, y) for y in R] for x in R]
    w = next(((x,) for x in R if not eq[x][x]), None)
    if w:
        out.append(Violation("congruence reflexivity", w))
    w = next(((x, y) for x in R for y in R if eq[x][y] != eq[y][x]), None)
    if w:
        out.append(Violation("congruence symmetry", w))
    w = next(
        ((x, y, z) for x in R for y in R for z in R if eq[x][y] and eq[y][z] and not eq[x][z]),
        None,
    )
    if w:
        out.append(Violation("congruence transitivity", w))
    for name in OPERATIONS:
        op = L.op(name)
        w = next(
            (
                (x, x2, y, y2)
                for x in R for x2 in R if class_of[x] == class_of[x2]
                for y in R for y2 in R if class_of[y] == class_of[y2]
                if class_of[op[x][y]] != class_of[op[x2][y2]]
            ),
            None,
        )
        if w:
            out.append(Violation(f"{name} compatibility", w))
    return ValidationReport(tuple(out), check="filter congruence")


def projection_report(Q: QuotientAlgebra) -> ValidationReport:
    """x |-> x/F preserves the four operations and both bounds."""
    L, A, c = Q.base, Q.algebra, Q.class_of
    out = []
    for name in OPERATIONS:
        op, qop = L.op(name), A.op(name)
        w = next(
            ((x, y) for x in range(L.n) for y in range(L.n) if c[op[x][y]] != qop[c[x]][c[y]]),
            None,
        )
        if w:
            out.append(Violation(f"preserves {name}", w))
    if c[L.bottom] != A.bottom:
        out.append(Violation("preserves bottom", (L.bottom,)))
    if c[L.top] != A.top:
        out.append(Violation("preserves top", (L.top,)))
    return ValidationReport(tuple(out), check="quotient projection morphism")
