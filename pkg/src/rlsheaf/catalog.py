"""Fixture lattices shipped with the package.

``l4`` and ``l5`` carry the worked four- and five-element examples (the square
and the diamond-with-top), including their published residuum tables.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from pathlib import Path

from .algebra import ResiduatedLattice
from .latfile import load

NAMES = ("l2", "l3-chain", "l3-luk", "l4", "l5", "l5-luk", "l6-godel", "l6-mv2x3")


def path(name: str) -> Path:
    if name not in NAMES:
        raise KeyError(name)
    return Path(str(resources.files("rlsheaf") / "data" / f"{name}.lat"))


@lru_cache(maxsize=None)
def get(name: str) -> ResiduatedLattice:
    return load(path(name))


def all_lattices() -> list[tuple[str, ResiduatedLattice]]:
    return [(name, get(name)) for name in NAMES]
