"""The full battery of structural checks run on one lattice.

Each entry pairs a descriptive check name with a :class:`ValidationReport`.
Every check here is a theorem about all finite residuated lattices, so a
failure on a valid lattice points at a bug.
"""

from __future__ import annotations

from typing import Optional

from .algebra import ResiduatedLattice, ValidationReport, Violation, validate
from .bits import full
from .filters import (
    all_filters,
    generated_filter,
    is_filter,
    is_filter_alt,
    is_prime,
    is_upward_closed,
    o_of_p,
    separate_with_prime,
    spec,
)
from .quotient import congruence_report, projection_report, quotient
from .sheaf import (
    DEFAULT_BUDGET,
    RepresentationReport,
    SheafSpace,
    build_sheaf,
    check_base_criterion,
    check_local_homeomorphism,
    check_operation_continuity,
    check_projection,
    check_zero_one_sections,
    hat_report,
    morphism_report,
    represent,
    stalk_projection_morphism,
)
from .spectrum import d_set, stone_topology, v_set
from .topology import verify_topology

# subset scans are skipped above this size
SCAN_LIMIT = 10


def _report(check: str, violations) -> ValidationReport:
    return ValidationReport(tuple(violations), check=check)


def filter_characterizations(L: ResiduatedLattice) -> ValidationReport:
    out = []
    if L.n <= SCAN_LIMIT:
        for S in range(1, 1 << L.n):
            if not is_upward_closed(L, S):
                if is_filter(L, S):
                    out.append(Violation("filter not upward closed", (S,)))
                continue
            if is_filter(L, S) != is_filter_alt(L, S):
                out.append(Violation("characterizations disagree", (S,)))
                break
    return _report("filter characterizations agree", out)


def identities(L: ResiduatedLattice) -> ValidationReport:
    """``x v (y (x) z) >= (x v y) (x) (x v z)`` and ``<x> & <y> = <x v y>``."""
    j, t = L.join, L.tensor
    R = range(L.n)
    out = []
    w = next(
        ((x, y, z) for x in R for y in R for z in R
         if not L.leq(t[j[x][y]][j[x][z]], j[x][t[y][z]])),
        None,
    )
    if w:
        out.append(Violation("join over tensor", w))
    gen = [generated_filter(L, 1 << x) for x in R]
    w = next(((x, y) for x in R for y in R if gen[x] & gen[y] != gen[j[x][y]]), None)
    if w:
        out.append(Violation("principal filter intersection", w))
    return _report("lattice identities", out)


def prime_by_filters(L: ResiduatedLattice) -> ValidationReport:
    """A proper filter is prime iff it contains F or G whenever it contains F & G."""
    fs = all_filters(L)
    out = []
    for k, P in enumerate(fs):
        if P == L.full:
            continue
        split = all(
            F & ~P == 0 or G & ~P == 0 for F in fs for G in fs if (F & G) & ~P == 0
        )
        if split != is_prime(L, P):
            out.append(Violation("prime iff filter-prime", (k,)))
    return _report("prime filters via filter intersections", out)


def d_set_laws(L: ResiduatedLattice) -> ValidationReport:
    """D is monotone, D(X) = D(<X>), and D turns filter meets and unions into set operations."""
    out = []
    n = L.n
    if n <= SCAN_LIMIT:
        for X in range(1 << n):
            dX = d_set(L, X)
            if dX != d_set(L, generated_filter(L, X)):
                out.append(Violation("D(X) = D(<X>)", (X,)))
                break
            bad = next((y for y in range(n) if dX & ~d_set(L, X | 1 << y)), None)
            if bad is not None:
                out.append(Violation("D monotone", (X, bad)))
                break
    fs = all_filters(L)
    for i, F in enumerate(fs):
        for k, G in enumerate(fs):
            if d_set(L, F) & d_set(L, G) != d_set(L, F & G):
                out.append(Violation("D(F) & D(G) = D(F & G)", (i, k)))
                break
            if d_set(L, F | G) != d_set(L, F) | d_set(L, G):
                out.append(Violation("D(F | G) = D(F) | D(G)", (i, k)))
                break
    if d_set(L, L.full) != full(len(spec(L))) or d_set(L, 1 << L.top) != 0:
        out.append(Violation("D(L) and D(1)", ()))
    return _report("D-set laws", out)


def o_of_p_laws(L: ResiduatedLattice) -> ValidationReport:
    out = []
    for P in spec(L):
        O = o_of_p(L, P)
        if not is_filter(L, O) or O == L.full or O & ~P.mask:
            out.append(Violation("O(P) proper filter inside P", (P.index,)))
    for a in range(L.n):
        if not stone_topology(L).is_open(v_set(L, a)):
            out.append(Violation("V(a) open", (a,)))
    return _report("O(P) and V(a)", out)


def quotient_laws(L: ResiduatedLattice) -> ValidationReport:
    out = []
    for k, F in enumerate(all_filters(L)):
        Q = quotient(L, F, check=False)
        for r in (congruence_report(L, F), projection_report(Q)):
            if not r.passed:
                out.append(Violation(r.violations[0].axiom, (k,)))
        if Q.classes[Q.class_of[L.top]] != F:
            out.append(Violation("class of top is the filter", (k,)))
        if Q.size > 1 and not validate(Q.algebra.raw()).passed:
            out.append(Violation("quotient axioms", (k,)))
    return _report("quotients by filters", out)


def prime_separation(L: ResiduatedLattice) -> ValidationReport:
    out = []
    primes = spec(L)
    meet_p = L.full
    meet_o = L.full
    for P in primes:
        meet_p &= P.mask
        meet_o &= o_of_p(L, P)
    if meet_p != 1 << L.top:
        out.append(Violation("intersection of primes is {1}", ()))
    if meet_o != 1 << L.top:
        out.append(Violation("intersection of O(P) is {1}", ()))
    for k, F in enumerate(all_filters(L)):
        for a in range(L.n):
            if not F >> a & 1 and not separate_with_prime(L, F, a, all=True):
                out.append(Violation("separating prime", (k, a)))
    return _report("prime separation", out)


def sheaf_space_report(results: list[tuple[str, ValidationReport]]) -> ValidationReport:
    out = [Violation(name, ()) for name, r in results if not r.passed]
    return _report("sheaf space", out)


def theorem_suite(
    L: ResiduatedLattice,
    budget: int = DEFAULT_BUDGET,
    sheaf: Optional[SheafSpace] = None,
    representation: Optional[RepresentationReport] = None,
) -> list[tuple[str, ValidationReport]]:
    """Run every check on L, returning ``(name, report)`` pairs in a fixed order."""
    S = sheaf if sheaf is not None else build_sheaf(L)
    rep = representation if representation is not None else represent(L, budget, S=S)
    results: list[tuple[str, ValidationReport]] = []

    def add(report: ValidationReport, name: Optional[str] = None):
        results.append((name or report.check, report))
        return report

    add(validate(L.raw()))
    add(filter_characterizations(L))
    add(identities(L))
    add(quotient_laws(L))
    add(prime_by_filters(L))
    add(d_set_laws(L))
    add(verify_topology(stone_topology(L)), "Stone topology and its base")
    add(o_of_p_laws(L))
    sheaf_part = [
        (r.check, r)
        for r in (
            check_base_criterion(S),
            check_projection(S),
            check_local_homeomorphism(S),
            _merge("constant sections", [hat_report(L, S, a) for a in range(L.n)]),
            check_zero_one_sections(S),
            check_operation_continuity(S),
        )
    ]
    results.extend(sheaf_part)
    add(sheaf_space_report(sheaf_part))
    add(prime_separation(L))
    add(morphism_report(S, rep.phi))
    if rep.sections is not None:
        add(_merge("stalk evaluation morphism",
                   [stalk_projection_morphism(S, rep.sections, P) for P in range(len(S.stalks))]))
    return results


def _merge(check: str, reports) -> ValidationReport:
    return ValidationReport(tuple(v for r in reports for v in r.violations), check=check)
