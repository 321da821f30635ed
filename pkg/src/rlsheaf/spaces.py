"""Hand-built spaces over a finite base, for exercising the sheaf-space checks.

A space document is a JSON object::

    {
      "kind": "space",
      "base_points": ["P"],
      "base_opens": [[], ["P"]],
      "points": ["e0", "e1"],
      "projection": ["P", "P"],
      "total_base": [["e0", "e1"]]
    }

``base_opens`` lists the whole topology of the base; ``total_base`` is a base
for the topology of the total space.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import MalformedTables, ValidationReport, Violation
from .bits import mask_of
from .sheaf import check_local_homeomorphism
from .topology import BaseTopology, FiniteTopology, verify_base, verify_topology


@dataclass(frozen=True)
class SpaceOverBase:
    base_names: tuple[str, ...]
    point_names: tuple[str, ...]
    base_space: FiniteTopology
    total: BaseTopology
    projection: tuple[int, ...]


def _names(doc, key) -> list[str]:
    v = doc.get(key)
    if not isinstance(v, list) or not all(isinstance(s, str) for s in v):
        raise MalformedTables(f"{key} must be a list of names")
    if len(set(v)) != len(v):
        raise MalformedTables(f"{key} must be distinct")
    return v


def _masks(doc, key, names) -> list[int]:
    lookup = {s: i for i, s in enumerate(names)}
    sets = doc.get(key)
    if not isinstance(sets, list):
        raise MalformedTables(f"{key} must be a list of sets")
    try:
        return [mask_of(lookup[s] for s in group) for group in sets]
    except (KeyError, TypeError):
        raise MalformedTables(f"{key} refers to unknown points") from None


def load_space(doc: dict) -> SpaceOverBase:
    base = _names(doc, "base_points")
    pts = _names(doc, "points")
    proj = doc.get("projection")
    lookup = {s: i for i, s in enumerate(base)}
    if not isinstance(proj, list) or len(proj) != len(pts) or any(p not in lookup for p in proj):
        raise MalformedTables("projection must name a base point for every point")
    return SpaceOverBase(
        tuple(base),
        tuple(pts),
        FiniteTopology(len(base), tuple(_masks(doc, "base_opens", base))),
        BaseTopology(len(pts), tuple(_masks(doc, "total_base", pts))),
        tuple(lookup[p] for p in proj),
    )


def projection_onto(space: SpaceOverBase) -> ValidationReport:
    image = 0
    for p in space.projection:
        image |= 1 << p
    missing = [i for i in range(space.base_space.point_count) if not image >> i & 1]
    out = (Violation("projection not onto", (missing[0],)),) if missing else ()
    return ValidationReport(out, check="projection onto")


def space_checks(space: SpaceOverBase) -> list[tuple[str, ValidationReport]]:
    reports = [
        verify_topology(space.base_space),
        verify_base(space.total),
        projection_onto(space),
        check_local_homeomorphism(space),
    ]
    return [(r.check, r) for r in reports]
