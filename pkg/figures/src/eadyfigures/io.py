"""Reading of eadyfronts CSV output: metadata line, header, columns."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np


@dataclass(frozen=True)
class Table:
    path: Path
    metadata: dict
    columns: dict  # name -> numpy array (float where possible, else str)

    def __getitem__(self, name):
        return self.columns[name]


def read_table(path) -> Table:
    path = Path(path)
    lines = path.read_text().splitlines()
    if not lines or not lines[0].startswith("# "):
        raise ValueError(f"{path}: missing '# ' metadata header line")
    metadata = json.loads(lines[0][2:])
    header = lines[1].split(",")
    raw = [ln.split(",") for ln in lines[2:] if ln]
    cols = {}
    for j, name in enumerate(header):
        vals = [row[j] for row in raw]
        try:
            cols[name] = np.array([float(v) for v in vals])
        except ValueError:
            cols[name] = np.array(vals)
    return Table(path=path, metadata=metadata, columns=cols)


def require_columns(table: Table, expected: set[str]) -> None:
    """Exact column-set validation; mismatches name the offending file."""
    got = set(table.columns)
    missing = expected - got
    extra = got - expected
    if missing or extra:
        raise ValueError(
            f"column mismatch in {table.path}: "
            f"missing {sorted(missing)}, unexpected {sorted(extra)}"
        )
