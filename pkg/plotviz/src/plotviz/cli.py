"""Command-line entry point: render --kind ... --in ... --out file.png."""
from __future__ import annotations

import argparse
import sys

from .csvio import SchemaError
from .render import KINDS, PlotSpec, render


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="render",
        description="Render regime planes, boundary curves, and rate-region "
                    "overlays from the channel-bounds CSV outputs.")
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--in", dest="inputs", required=True, nargs="+",
                   metavar="CSV", help="input CSV file(s)")
    p.add_argument("--out", required=True, help="output image path")
    p.add_argument("--title", default="")
    p.add_argument("--label", dest="labels", action="append", default=[],
                   help="legend label per input (repeatable, in order)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = PlotSpec(kind=args.kind, inputs=tuple(args.inputs),
                        out_path=args.out, title=args.title,
                        labels=tuple(args.labels))
        render(spec)
    except (SchemaError, ValueError, OSError) as exc:
        print(f"render: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
