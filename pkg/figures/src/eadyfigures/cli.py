"""Script interface: eadyfigures <figure_id> --input a.csv [--input b.csv] --output fig.png"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import FIGURE_IDS, FigureSpec, render


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="eadyfigures",
        description="Render figure panels from eadyfronts CSV output.",
    )
    ap.add_argument("figure_id", choices=FIGURE_IDS)
    ap.add_argument("--input", action="append", required=True, help="input CSV (repeatable)")
    ap.add_argument("--output", required=True, help="output image path")
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        out = render(
            FigureSpec(
                figure_id=args.figure_id,
                inputs=tuple(Path(p) for p in args.input),
                output=Path(args.output),
            )
        )
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
