"""The sheaf space over the prime spectrum and the representation by global sections.

The total space is the disjoint union of the stalks ``L/O(P)``; a point is a
pair (prime index, class index) and points are numbered stalk by stalk. The
base of the total space consists of the sets ``D(F, a) = {a_P : P in D(F)}``.

Continuity between finite spaces is decided with minimal open neighbourhoods:
a map f is continuous iff ``f(U_x)`` lies inside ``U_f(x)`` for every point x,
where ``U_x`` is the smallest open set containing x.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import NamedTuple, Optional, Sequence

from . import kernels
from .algebra import OPERATIONS, ResiduatedLattice, ValidationReport, Violation
from .bits import Subset, iter_members
from .filters import PrimeFilter, all_filters, o_of_p, spec
from .quotient import QuotientAlgebra, quotient
from .spectrum import d_set, stone_topology, v_set
from .topology import BaseTopology, FiniteTopology, verify_base

DEFAULT_BUDGET = 10**6
# fits the int64 masks of the compiled kernel
UNCONSTRAINED = (1 << 62) - 1


class SheafConsistencyError(RuntimeError):
    """A property that holds for every residuated lattice failed; names the check."""

    def __init__(self, report: ValidationReport):
        self.report = report
        v = report.violations[0]
        super().__init__(f"{report.check}: {v.axiom} at {v.witness}")


class BudgetExceeded(RuntimeError):
    def __init__(self, product: int, budget: int):
        self.product = product
        self.budget = budget
        super().__init__(f"{product} candidate sections exceed the budget of {budget}")


class StalkPoint(NamedTuple):
    prime_index: int
    class_index: int


class BaseOpen(NamedTuple):
    filter: Subset
    element: int
    points: Subset


@dataclass(frozen=True, eq=False)
class SheafSpace:
    lattice: ResiduatedLattice
    primes: tuple[PrimeFilter, ...]
    base_space: FiniteTopology
    stalks: tuple[QuotientAlgebra, ...]
    points: tuple[StalkPoint, ...]
    offsets: tuple[int, ...]
    total_base: tuple[BaseOpen, ...]
    total: BaseTopology
    projection: tuple[int, ...]

    @property
    def stalk_sizes(self) -> tuple[int, ...]:
        return tuple(Q.size for Q in self.stalks)

    def point(self, prime: int, cls: int) -> int:
        return self.offsets[prime] + cls

    def germ(self, a: int, prime: int) -> int:
        """Point index of the class of ``a`` in the stalk over ``prime``."""
        return self.offsets[prime] + self.stalks[prime].class_of[a]

    def germ_set(self, F: Subset, a: int) -> Subset:
        out = 0
        for P in iter_members(d_set(self.lattice, F)):
            out |= 1 << self.germ(a, P)
        return out

    def fibre(self, prime: int) -> Subset:
        return ((1 << self.stalks[prime].size) - 1) << self.offsets[prime]

    def point_name(self, e: int) -> str:
        P, c = self.points[e]
        return f"{self.stalks[P].algebra.names[c]}@P{P}"


@dataclass(frozen=True)
class GlobalSection:
    """Choice of one stalk class per prime, indexed by prime."""

    classes: tuple[int, ...]

    def points(self, S: SheafSpace) -> tuple[int, ...]:
        return tuple(S.point(P, c) for P, c in enumerate(self.classes))

    def __iter__(self):
        return iter(self.classes)


@dataclass(frozen=True, eq=False)
class SectionAlgebra:
    sections: tuple[GlobalSection, ...]
    algebra: ResiduatedLattice
    index: dict = field(repr=False)

    def __len__(self) -> int:
        return len(self.sections)


def build_sheaf(L: ResiduatedLattice) -> SheafSpace:
    primes = spec(L)
    if not primes:
        raise SheafConsistencyError(
            ValidationReport((Violation("empty spectrum", ()),), check="prime separation")
        )
    T = stone_topology(L)
    stalks = tuple(quotient(L, o_of_p(L, P)) for P in primes)
    offsets, points, projection = [], [], []
    for i, Q in enumerate(stalks):
        offsets.append(len(points))
        for c in range(Q.size):
            points.append(StalkPoint(i, c))
            projection.append(i)
    base = []
    for F in all_filters(L):
        D = d_set(L, F)
        for a in range(L.n):
            mask = 0
            for P in iter_members(D):
                mask |= 1 << (offsets[P] + stalks[P].class_of[a])
            base.append(BaseOpen(F, a, mask))
    S = SheafSpace(
        lattice=L,
        primes=primes,
        base_space=T,
        stalks=stalks,
        points=tuple(points),
        offsets=tuple(offsets),
        total_base=tuple(base),
        total=BaseTopology(len(points), tuple(b.points for b in base)),
        projection=tuple(projection),
    )
    report = verify_base(S.total)
    if not report.passed:
        raise SheafConsistencyError(report)
    return S


# ---------------------------------------------------------------- sheaf-space clauses


def check_base_criterion(S: SheafSpace) -> ValidationReport:
    return verify_base(S.total)


def check_projection(S: SheafSpace) -> ValidationReport:
    """Projection onto the spectrum, its fibres are the stalks, and it maps D(F,a) onto D(F)."""
    out = []
    L = S.lattice
    image = 0
    for p in S.projection:
        image |= 1 << p
    if image != S.base_space.full:
        missing = S.base_space.full & ~image
        out.append(Violation("projection not onto", ((missing & -missing).bit_length() - 1,)))
    for i, Q in enumerate(S.stalks):
        fibre = sum(1 << e for e, p in enumerate(S.projection) if p == i)
        if fibre != S.fibre(i):
            out.append(Violation("fibre is not the stalk", (i,)))
        if Q.algebra.n < 2:
            out.append(Violation("degenerate stalk", (i,)))
    for k, b in enumerate(S.total_base):
        img = 0
        for e in iter_members(b.points):
            img |= 1 << S.projection[e]
        if img != d_set(L, b.filter):
            out.append(Violation("projection of D(F,a) is not D(F)", (k,)))
            break
    return ValidationReport(tuple(out), check="projection and stalks")


def _preimage_in_base(space, U: Subset, V: Subset) -> Subset:
    """Points of U lying over V."""
    out = 0
    for e in iter_members(U):
        if V >> space.projection[e] & 1:
            out |= 1 << e
    return out


def _local_homeomorphism_at(space, U: Subset) -> bool:
    X, E, proj = space.base_space, space.total, space.projection
    image = 0
    for e in iter_members(U):
        image |= 1 << proj[e]
    if image.bit_count() != U.bit_count() or not X.is_open(image):
        return False
    # continuity of the restriction: preimages of base-space opens are open in U
    for V in X.opens:
        if not E.is_open(_preimage_in_base(space, U, V)):
            return False
    # openness: images of basic opens inside U are open
    for B in E.base:
        img = 0
        for e in iter_members(B & U):
            img |= 1 << proj[e]
        if not X.is_open(img):
            return False
    return True


def check_local_homeomorphism(space) -> ValidationReport:
    """Every point has a basic open neighbourhood mapped homeomorphically onto an open set.

    Works on any object with ``base_space`` (FiniteTopology), ``total``
    (BaseTopology) and ``projection`` (point -> base point).
    """
    E = space.total
    out = []
    for e in range(E.point_count):
        if not any(
            B >> e & 1 and _local_homeomorphism_at(space, B) for B in E.base
        ):
            out.append(Violation("no homeomorphic neighbourhood", (e,)))
    return ValidationReport(tuple(out), check="local homeomorphism")


def _pair_layout(S: SheafSpace) -> tuple[list[int], list[tuple[int, int, int]]]:
    offsets, triples = [], []
    for P, Q in enumerate(S.stalks):
        offsets.append(len(triples))
        k = Q.size
        for c1 in range(k):
            for c2 in range(k):
                triples.append((P, c1, c2))
    return offsets, triples


def check_operation_continuity(S: SheafSpace, operations: Sequence[str] = OPERATIONS) -> ValidationReport:
    """The four stalkwise operations are continuous on the fibred product.

    The fibred product carries the base ``{(a_P, b_P) : P in D(F)}``. For each
    pair, the smallest basic neighbourhood must be mapped inside the smallest
    neighbourhood of the result.
    """
    L = S.lattice
    if len(S.primes) == 1:
        return ValidationReport(check="operation continuity")
    poff, triples = _pair_layout(S)
    pair_index = lambda P, c1, c2: poff[P] + c1 * S.stalks[P].size + c2  # noqa: E731
    opens = [D for D in S.base_space.opens if D]
    pair_base = set()
    for D in opens:
        for a in range(L.n):
            for b in range(L.n):
                m = 0
                for P in iter_members(D):
                    co = S.stalks[P].class_of
                    m |= 1 << pair_index(P, co[a], co[b])
                pair_base.add(m)
    full = (1 << len(triples)) - 1
    minimal = [full] * len(triples)
    for B in pair_base:
        for t in iter_members(B):
            minimal[t] &= B
    Emin = S.total.minimal_opens
    out = []
    for name in operations:
        tables = [Q.algebra.op(name) for Q in S.stalks]
        for t, (P, c1, c2) in enumerate(triples):
            target = Emin[S.point(P, tables[P][c1][c2])]
            for u in iter_members(minimal[t]):
                Q, d1, d2 = triples[u]
                if not target >> S.point(Q, tables[Q][d1][d2]) & 1:
                    out.append(Violation(f"{name} not continuous", (P, c1, c2)))
                    break
            else:
                continue
            break
    return ValidationReport(tuple(out), check="operation continuity")


def is_continuous(S: SheafSpace, classes: Sequence[int]) -> bool:
    """Preimage test: every basic open of the total space pulls back to a Stone open."""
    pts = [S.point(P, c) for P, c in enumerate(classes)]
    for B in S.total.base:
        pre = 0
        for P, e in enumerate(pts):
            if B >> e & 1:
                pre |= 1 << P
        if not S.base_space.is_open(pre):
            return False
    return True


def constant_section(S: SheafSpace, a: int) -> GlobalSection:
    return GlobalSection(tuple(Q.class_of[a] for Q in S.stalks))


def check_zero_one_sections(S: SheafSpace) -> ValidationReport:
    out = []
    zero = tuple(Q.algebra.bottom for Q in S.stalks)
    one = tuple(Q.algebra.top for Q in S.stalks)
    if not is_continuous(S, zero):
        out.append(Violation("zero section not continuous", ()))
    if not is_continuous(S, one):
        out.append(Violation("unit section not continuous", ()))
    if zero == one:
        out.append(Violation("zero and unit sections coincide", ()))
    return ValidationReport(tuple(out), check="zero and unit sections")


def hat(L: ResiduatedLattice, S: SheafSpace, a: int) -> GlobalSection:
    """The section P |-> a/O(P), checked against its preimage formula.

    The preimage of ``D(F, b)`` must equal ``D(F) & V(a->b) & V(b->a)``.
    """
    sigma = constant_section(S, a)
    report = hat_report(L, S, a)
    if not report.passed:
        raise SheafConsistencyError(report)
    return sigma


def hat_report(L: ResiduatedLattice, S: SheafSpace, a: int) -> ValidationReport:
    pts = constant_section(S, a).points(S)
    r = L.residuum
    v = [v_set(L, x) for x in range(L.n)]
    out = []
    for k, (F, b, mask) in enumerate(S.total_base):
        pre = 0
        for P, e in enumerate(pts):
            if mask >> e & 1:
                pre |= 1 << P
        expected = d_set(L, F) & v[r[a][b]] & v[r[b][a]]
        if pre != expected:
            out.append(Violation("preimage formula", (a, k)))
            break
        if not S.base_space.is_open(pre):
            out.append(Violation("preimage not open", (a, k)))
            break
    return ValidationReport(tuple(out), check="constant sections")


def _allow_masks(S: SheafSpace) -> list[list[list[int]]]:
    """``allow[P][c][Q]``: classes at Q compatible with choosing class c at P."""
    k = len(S.stalks)
    Umin = S.base_space.minimal_opens
    Emin = S.total.minimal_opens
    allow = []
    for P, QP in enumerate(S.stalks):
        rows = []
        for c in range(QP.size):
            N = Emin[S.point(P, c)]
            row = []
            for Q in range(k):
                if Q != P and Umin[P] >> Q & 1:
                    row.append((N >> S.offsets[Q]) & ((1 << S.stalks[Q].size) - 1))
                else:
                    row.append(UNCONSTRAINED)
            rows.append(row)
        allow.append(rows)
    return allow


def continuous_sections(S: SheafSpace, budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """All global sections as class vectors, in lexicographic order."""
    product = prod(S.stalk_sizes)
    if product > budget:
        raise BudgetExceeded(product, budget)
    return kernels.enumerate_sections(list(S.stalk_sizes), _allow_masks(S))


def _section_tables(S: SheafSpace, vectors: Sequence[tuple[int, ...]], index: dict):
    tables = {}
    stalk_ops = {name: [Q.algebra.op(name) for Q in S.stalks] for name in OPERATIONS}
    for name in OPERATIONS:
        ops = stalk_ops[name]
        table = []
        for i, s in enumerate(vectors):
            row = []
            for j, t in enumerate(vectors):
                v = tuple(ops[P][s[P]][t[P]] for P in range(len(s)))
                k = index.get(v)
                if k is None:
                    raise SheafConsistencyError(
                        ValidationReport((Violation(f"sections not closed under {name}", (i, j)),),
                                         check="section algebra")
                    )
                row.append(k)
            table.append(row)
        tables[name] = table
    return tables


def enumerate_sections(S: SheafSpace, budget: int = DEFAULT_BUDGET) -> SectionAlgebra:
    """Global sections with their pointwise residuated-lattice structure."""
    vectors = continuous_sections(S, budget)
    index = {v: i for i, v in enumerate(vectors)}
    tables = _section_tables(S, vectors, index)
    algebra = ResiduatedLattice.from_tables(
        ["(" + ",".join(map(str, v)) + ")" for v in vectors],
        tables["meet"], tables["join"], tables["tensor"], tables["residuum"],
    )
    zero = tuple(Q.algebra.bottom for Q in S.stalks)
    one = tuple(Q.algebra.top for Q in S.stalks)
    if algebra.bottom != index.get(zero) or algebra.top != index.get(one):
        raise SheafConsistencyError(
            ValidationReport((Violation("bounds are not the zero and unit sections", ()),),
                             check="section algebra")
        )
    return SectionAlgebra(tuple(GlobalSection(v) for v in vectors), algebra, index)


def sections_over(S: SheafSpace, Y: Subset, budget: int = DEFAULT_BUDGET) -> list[dict[int, int]]:
    """Sections over a subset Y of the spectrum, as maps prime -> class.

    Continuity is taken for the subspace topology on Y. Exploration only.
    """
    from itertools import product as cartesian

    primes = list(iter_members(Y))
    sizes = [S.stalks[P].size for P in primes]
    if prod(sizes) > budget:
        raise BudgetExceeded(prod(sizes), budget)
    sub_opens = S.base_space.subspace_opens(Y)
    out = []
    for choice in cartesian(*(range(k) for k in sizes)):
        pts = [S.point(P, c) for P, c in zip(primes, choice)]
        ok = True
        for B in S.total.base:
            pre = 0
            for P, e in zip(primes, pts):
                if B >> e & 1:
                    pre |= 1 << P
            if pre not in sub_opens:
                ok = False
                break
        if ok:
            out.append(dict(zip(primes, choice)))
    return out


def stalk_projection_morphism(S: SheafSpace, G: SectionAlgebra, P: int) -> ValidationReport:
    """Evaluation at P is a residuated lattice morphism from the sections onto the stalk."""
    stalk = S.stalks[P].algebra
    A = G.algebra
    ev = [s.classes[P] for s in G.sections]
    out = []
    m = len(ev)
    for name in OPERATIONS:
        op, sop = A.op(name), stalk.op(name)
        w = next(
            ((i, j) for i in range(m) for j in range(m) if ev[op[i][j]] != sop[ev[i]][ev[j]]),
            None,
        )
        if w:
            out.append(Violation(f"evaluation preserves {name}", w))
    if ev[A.bottom] != stalk.bottom:
        out.append(Violation("evaluation preserves bottom", ()))
    if ev[A.top] != stalk.top:
        out.append(Violation("evaluation preserves top", ()))
    return ValidationReport(tuple(out), check="stalk evaluation morphism")


# ---------------------------------------------------------------- representation


@dataclass(frozen=True, eq=False)
class RepresentationReport:
    sheaf: SheafSpace
    phi: tuple[GlobalSection, ...]
    injective: bool
    surjective: Optional[bool]
    gamma_size: Optional[int]
    image_size: int
    budget: int
    sections: Optional[SectionAlgebra] = None

    @property
    def verdict(self) -> str:
        return {True: "yes", False: "no", None: "unknown"}[self.surjective]


def morphism_report(S: SheafSpace, phi: Sequence[GlobalSection]) -> ValidationReport:
    """phi preserves all four operations stalkwise and maps the bounds to zero and unit."""
    L = S.lattice
    out = []
    for name in OPERATIONS:
        op = L.op(name)
        stalk_ops = [Q.algebra.op(name) for Q in S.stalks]
        w = next(
            (
                (a, b)
                for a in range(L.n)
                for b in range(L.n)
                if any(
                    phi[op[a][b]].classes[P]
                    != stalk_ops[P][phi[a].classes[P]][phi[b].classes[P]]
                    for P in range(len(S.stalks))
                )
            ),
            None,
        )
        if w:
            out.append(Violation(f"preserves {name}", w))
    if phi[L.bottom].classes != tuple(Q.algebra.bottom for Q in S.stalks):
        out.append(Violation("preserves bottom", ()))
    if phi[L.top].classes != tuple(Q.algebra.top for Q in S.stalks):
        out.append(Violation("preserves top", ()))
    if len(set(s.classes for s in phi)) != L.n:
        seen: dict = {}
        for a, s in enumerate(phi):
            if s.classes in seen:
                out.append(Violation("injective", (seen[s.classes], a)))
                break
            seen[s.classes] = a
    return ValidationReport(tuple(out), check="representation morphism")


def represent(
    L: ResiduatedLattice, budget: int = DEFAULT_BUDGET, S: Optional[SheafSpace] = None
) -> RepresentationReport:
    """phi(a) = a-hat, checked to be an injective morphism; surjectivity by enumeration.

    Surjectivity is ``None`` when the candidate sections exceed ``budget``.
    """
    if S is None:
        S = build_sheaf(L)
    phi = tuple(hat(L, S, a) for a in range(L.n))
    report = morphism_report(S, phi)
    if not report.passed:
        raise SheafConsistencyError(report)
    try:
        G = enumerate_sections(S, budget)
    except BudgetExceeded:
        G = None
    image = len(set(s.classes for s in phi))
    if G is not None:
        missing = [s for s in phi if s.classes not in G.index]
        if missing:
            raise SheafConsistencyError(
                ValidationReport((Violation("constant section not global", ()),),
                                 check="representation morphism")
            )
    return RepresentationReport(
        sheaf=S,
        phi=phi,
        injective=image == L.n,
        surjective=None if G is None else len(G) == image,
        gamma_size=None if G is None else len(G),
        image_size=image,
        budget=budget,
        sections=G,
    )
