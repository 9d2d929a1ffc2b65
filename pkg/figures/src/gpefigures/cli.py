"""Command-line renderer: render_figures <kind> <csv...> -o <png>."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import KINDS, FigureSpec, SchemaMismatch, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render_figures",
        description="Render ptgpe solver CSV outputs as figures",
    )
    parser.add_argument("kind", choices=KINDS)
    parser.add_argument("inputs", nargs="+", type=Path, metavar="CSV")
    parser.add_argument("-o", "--output", required=True, type=Path, metavar="PNG")
    parser.add_argument("--xlabel", default=None)
    parser.add_argument("--ylabel", default=None)
    args = parser.parse_args(argv)

    spec = FigureSpec(
        kind=args.kind,
        inputs=tuple(args.inputs),
        output=args.output,
        xlabel=args.xlabel,
        ylabel=args.ylabel,
    )
    try:
        info = render(spec)
    except SchemaMismatch as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    detail = f"{info.cells} cells" if info.cells else f"{info.points} points"
    print(f"{args.kind}: wrote {info.output} ({detail})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
