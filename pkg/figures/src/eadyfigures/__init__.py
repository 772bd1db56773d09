"""Figure panels rendered from eadyfronts CLI output files."""

__version__ = "0.1.0"

from .io import Table, read_table, require_columns
from .render import EXPECTED_COLUMNS, FIGURE_IDS, FigureSpec, render

__all__ = [
    "Table",
    "read_table",
    "require_columns",
    "EXPECTED_COLUMNS",
    "FIGURE_IDS",
    "FigureSpec",
    "render",
]
