"""Finite residuated lattices given by operation tables.

Elements are the integers ``0 .. n-1``; ``names`` are for display only. The
order is read off the meet table (``x <= y`` iff ``meet[x][y] == x``) and the
join table is checked against it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

from . import kernels

Table = tuple[tuple[int, ...], ...]


class MalformedTables(ValueError):
    """Tables have the wrong shape or contain out-of-range entries."""


class NotResiduated(ValueError):
    """The tensor has no residuum on this lattice."""

    def __init__(self, witness: tuple[int, int, int]):
        self.witness = witness
        super().__init__(f"derived residuum violates the adjunction at {witness}")


class InvalidLattice(ValueError):
    def __init__(self, report: "ValidationReport"):
        self.report = report
        first = report.violations[0]
        super().__init__(f"{first.axiom} fails at {first.witness}")


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[int, ...]


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a verification. ``passed`` holds exactly when nothing was violated."""

    violations: tuple[Violation, ...] = ()
    check: str = ""

    @property
    def passed(self) -> bool:
        return not self.violations

    def axioms(self) -> list[str]:
        return [v.axiom for v in self.violations]

    def witness(self, axiom: str) -> Optional[tuple[int, ...]]:
        for v in self.violations:
            if v.axiom == axiom:
                return v.witness
        return None


@dataclass(frozen=True)
class RawTables:
    """Unvalidated input: square tables over ``range(n)``; ``residuum`` may be absent."""

    names: tuple[str, ...]
    meet: Table
    join: Table
    tensor: Table
    residuum: Optional[Table] = None

    @property
    def n(self) -> int:
        return len(self.names)


def _freeze(table: Sequence[Sequence[int]]) -> Table:
    return tuple(tuple(int(v) for v in row) for row in table)


def raw_tables(
    names: Sequence[str],
    meet: Sequence[Sequence[int]],
    join: Sequence[Sequence[int]],
    tensor: Sequence[Sequence[int]],
    residuum: Optional[Sequence[Sequence[int]]] = None,
) -> RawTables:
    return RawTables(
        tuple(str(s) for s in names),
        _freeze(meet),
        _freeze(join),
        _freeze(tensor),
        None if residuum is None else _freeze(residuum),
    )


def _check_shape(tables: RawTables) -> None:
    n = tables.n
    if n == 0:
        raise MalformedTables("empty carrier")
    if len(set(tables.names)) != n:
        raise MalformedTables("element names must be distinct")
    for label in ("meet", "join", "tensor", "residuum"):
        t = getattr(tables, label)
        if t is None:
            continue
        if len(t) != n or any(len(row) != n for row in t):
            raise MalformedTables(f"{label} table must be {n}x{n}")
        for row in t:
            for v in row:
                if not 0 <= v < n:
                    raise MalformedTables(f"{label} table entry {v} outside [0, {n})")


def _order_matrix(meet: Table) -> list[list[int]]:
    n = len(meet)
    return [[1 if meet[x][y] == x else 0 for y in range(n)] for x in range(n)]


def _first(pred, *ranges) -> Optional[tuple[int, ...]]:
    from itertools import product

    for t in product(*ranges):
        if pred(*t):
            return t
    return None


def _lattice_violations(tables: RawTables, allow_trivial: bool) -> list[Violation]:
    n = tables.n
    meet, join = tables.meet, tables.join
    R = range(n)
    out: list[Violation] = []

    def record(axiom, w):
        if w is not None:
            out.append(Violation(axiom, tuple(w)))

    if n < 2 and not allow_trivial:
        out.append(Violation("nontrivial carrier", ()))
    for label, op in (("meet", meet), ("join", join)):
        record(f"{label} idempotence", _first(lambda x: op[x][x] != x, R))
        record(f"{label} commutativity", _first(lambda x, y: op[x][y] != op[y][x], R, R))
        record(f"{label} associativity", kernels.first_assoc_violation(op))
    record(
        "absorption",
        _first(lambda x, y: meet[x][join[x][y]] != x or join[x][meet[x][y]] != x, R, R),
    )
    record(
        "order consistency",
        _first(lambda x, y: (meet[x][y] == x) != (join[x][y] == y), R, R),
    )
    return out


def _bounds(meet: Table) -> tuple[Optional[int], Optional[int]]:
    n = len(meet)
    bottom = next((x for x in range(n) if all(meet[x][y] == x for y in range(n))), None)
    top = next((x for x in range(n) if all(meet[y][x] == y for y in range(n))), None)
    return bottom, top


def _monoid_violations(tables: RawTables, top: int) -> list[Violation]:
    n = tables.n
    t = tables.tensor
    R = range(n)
    out = []
    w = _first(lambda x, y: t[x][y] != t[y][x], R, R)
    if w is not None:
        out.append(Violation("tensor commutativity", w))
    w = kernels.first_assoc_violation(t)
    if w is not None:
        out.append(Violation("tensor associativity", w))
    w = _first(lambda x: t[x][top] != x or t[top][x] != x, R)
    if w is not None:
        out.append(Violation("monoid identity", w))
    return out


def validate(tables: RawTables, allow_trivial: bool = False) -> ValidationReport:
    """Check every residuated-lattice axiom, reporting the least witness of each failure.

    A missing residuum is derived from the tensor once the other axioms hold;
    if no residuum exists the adjunction is reported against the candidate.
    """
    _check_shape(tables)
    violations = _lattice_violations(tables, allow_trivial)
    bottom, top = _bounds(tables.meet)
    if bottom is None:
        violations.append(Violation("least element", ()))
    if top is None:
        violations.append(Violation("greatest element", ()))
    if top is not None:
        violations.extend(_monoid_violations(tables, top))
    if not violations or (tables.residuum is not None and bottom is not None):
        le = _order_matrix(tables.meet)
        res = tables.residuum
        if res is None:
            res = kernels.derive_residuum(tables.tensor, tables.join, le, bottom)
        w = kernels.first_adjunction_violation(tables.tensor, res, le)
        if w is not None:
            violations.append(Violation("adjunction", w))
    return ValidationReport(tuple(violations), check="residuated lattice axioms")


def derive_residuum(tables: RawTables) -> Table:
    """Residuum as the join of ``{w : w (x) y <= z}``, re-verified against the adjunction."""
    _check_shape(tables)
    bottom, _ = _bounds(tables.meet)
    if bottom is None:
        raise MalformedTables("meet table has no least element")
    le = _order_matrix(tables.meet)
    res = kernels.derive_residuum(tables.tensor, tables.join, le, bottom)
    w = kernels.first_adjunction_violation(tables.tensor, res, le)
    if w is not None:
        raise NotResiduated(w)
    return _freeze(res)


@dataclass(frozen=True, eq=False)
class ResiduatedLattice:
    """A validated finite commutative residuated lattice.

    Build one with :meth:`from_tables`; construction always runs :func:`validate`
    and raises :class:`InvalidLattice` on any violation.
    """

    names: tuple[str, ...]
    meet: Table
    join: Table
    tensor: Table
    residuum: Table
    bottom: int
    top: int
    _key: tuple = field(repr=False)
    _hash: int = field(repr=False)

    @classmethod
    def from_tables(
        cls,
        names: Sequence[str],
        meet: Sequence[Sequence[int]],
        join: Sequence[Sequence[int]],
        tensor: Sequence[Sequence[int]],
        residuum: Optional[Sequence[Sequence[int]]] = None,
        allow_trivial: bool = False,
    ) -> "ResiduatedLattice":
        return cls.from_raw(raw_tables(names, meet, join, tensor, residuum), allow_trivial)

    @classmethod
    def from_raw(cls, tables: RawTables, allow_trivial: bool = False) -> "ResiduatedLattice":
        report = validate(tables, allow_trivial=allow_trivial)
        if not report.passed:
            raise InvalidLattice(report)
        res = tables.residuum
        if res is None:
            res = derive_residuum(tables)
        bottom, top = _bounds(tables.meet)
        key = (tables.meet, tables.join, tables.tensor, res)
        return cls(
            tables.names, tables.meet, tables.join, tables.tensor, res,
            bottom, top, key, hash(key),
        )

    def __eq__(self, other):
        if not isinstance(other, ResiduatedLattice):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __hash__(self):
        return self._hash

    @property
    def n(self) -> int:
        return len(self.names)

    def leq(self, x: int, y: int) -> bool:
        return self.meet[x][y] == x

    @cached_property
    def le(self) -> Table:
        return _freeze(_order_matrix(self.meet))

    @cached_property
    def up(self) -> tuple[int, ...]:
        """``up[x]`` is the bit mask of all ``y >= x``."""
        n = self.n
        return tuple(
            sum(1 << y for y in range(n) if self.meet[x][y] == x) for x in range(n)
        )

    @cached_property
    def full(self) -> int:
        return (1 << self.n) - 1

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(name) from None

    def op(self, name: str) -> Table:
        return {"meet": self.meet, "join": self.join, "tensor": self.tensor,
                "residuum": self.residuum}[name]

    def raw(self) -> RawTables:
        return RawTables(self.names, self.meet, self.join, self.tensor, self.residuum)


OPERATIONS = ("meet", "join", "tensor", "residuum")


def leq(L: ResiduatedLattice, x: int, y: int) -> bool:
    return L.meet[x][y] == x


def tables_from_order(le: Sequence[Sequence[int]]) -> tuple[Table, Table]:
    """Meet and join tables of a finite lattice given by its order matrix.

    Raises ``MalformedTables`` if some pair lacks a meet or a join.
    """
    n = len(le)
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            lower = [z for z in range(n) if le[z][x] and le[z][y]]
            upper = [z for z in range(n) if le[x][z] and le[y][z]]
            glb = [z for z in lower if all(le[w][z] for w in lower)]
            lub = [z for z in upper if all(le[z][w] for w in upper)]
            if len(glb) != 1 or len(lub) != 1:
                raise MalformedTables(f"elements {x}, {y} lack a meet or join")
            meet[x][y] = glb[0]
            join[x][y] = lub[0]
    return _freeze(meet), _freeze(join)
