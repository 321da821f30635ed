"""Reading and writing the lattice text format.

A lattice file is a UTF-8 JSON document::

    {
      "elements": ["0", "a", "b", "1"],
      "meet":   [[...], ...],
      "join":   [[...], ...],
      "tensor": [[...], ...],
      "residuum": [[...], ...]      # optional, derived when absent
    }

Tables are row-major with the row index as the left operand. Entries are
element names (strings) or indices (integers).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Sequence, Union

from .algebra import MalformedTables, RawTables, ResiduatedLattice, raw_tables

TABLE_FIELDS = ("meet", "join", "tensor", "residuum")


def _decode_table(rows: Any, label: str, names: Sequence[str]) -> list[list[int]]:
    lookup = {name: i for i, name in enumerate(names)}
    if not isinstance(rows, list):
        raise MalformedTables(f"{label} must be a list of rows")
    out = []
    for row in rows:
        if not isinstance(row, list):
            raise MalformedTables(f"{label} rows must be lists")
        decoded = []
        for v in row:
            if isinstance(v, bool):
                raise MalformedTables(f"{label} entry {v!r} is not an element")
            if isinstance(v, int):
                decoded.append(v)
            elif isinstance(v, str) and v in lookup:
                decoded.append(lookup[v])
            else:
                raise MalformedTables(f"{label} entry {v!r} is not an element")
        out.append(decoded)
    return out


def parse_document(doc: Any) -> RawTables:
    if not isinstance(doc, dict):
        raise MalformedTables("lattice document must be an object")
    missing = [f for f in ("elements", "meet", "join", "tensor") if f not in doc]
    if missing:
        raise MalformedTables(f"missing field(s): {', '.join(missing)}")
    names = doc["elements"]
    if not isinstance(names, list) or not all(isinstance(s, str) for s in names):
        raise MalformedTables("elements must be a list of names")
    tables = {f: _decode_table(doc[f], f, names) for f in TABLE_FIELDS if f in doc}
    return raw_tables(
        names, tables["meet"], tables["join"], tables["tensor"], tables.get("residuum")
    )


def loads(text: str) -> RawTables:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedTables(f"not a JSON document: {exc}") from None
    return parse_document(doc)


def load_raw(path: Union[str, Path]) -> RawTables:
    return loads(Path(path).read_text(encoding="utf-8"))


def load(path: Union[str, Path]) -> ResiduatedLattice:
    return ResiduatedLattice.from_raw(load_raw(path))


def to_document(L: Union[ResiduatedLattice, RawTables], with_residuum: bool = True) -> dict:
    names = list(L.names)
    doc: dict[str, Any] = {"elements": names}
    for label in TABLE_FIELDS:
        table = getattr(L, label)
        if table is None or (label == "residuum" and not with_residuum):
            continue
        doc[label] = [[names[v] for v in row] for row in table]
    return doc


def dumps(L: Union[ResiduatedLattice, RawTables], with_residuum: bool = True) -> str:
    """Serialize with one table row per line; output is byte-stable."""
    doc = to_document(L, with_residuum)
    parts = ["{", f'  "elements": {json.dumps(doc["elements"], ensure_ascii=False)}']
    for label in TABLE_FIELDS:
        if label not in doc:
            continue
        rows = ",\n".join("    " + json.dumps(r, ensure_ascii=False) for r in doc[label])
        parts[-1] += ","
        parts.append(f'  "{label}": [\n{rows}\n  ]')
    parts.append("}")
    return "\n".join(parts) + "\n"


def dump(L: Union[ResiduatedLattice, RawTables], path: Union[str, Path],
         with_residuum: bool = True) -> None:
    Path(path).write_text(dumps(L, with_residuum), encoding="utf-8")


def names_of(L: ResiduatedLattice, mask: int) -> list[str]:
    """Element names of a subset, in element order."""
    return [L.names[i] for i in range(L.n) if mask >> i & 1]

