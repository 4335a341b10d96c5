"""Command line front end.

    attfig --run-a proposed.csv [--run-b baseline.csv] --out figure.png

Exit codes: 0 success, 2 on bad inputs (missing file, header mismatch,
empty data).
"""

import argparse
import sys

from .figure import PANELS, EmptyInput, FigureSpec, HeaderMismatch, render


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="attfig",
        description="Render a four-panel figure from simulation CSV logs",
    )
    parser.add_argument("--run-a", required=True, help="first CSV (solid)")
    parser.add_argument("--run-b", help="optional second CSV (dashed)")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument(
        "--panels",
        default=",".join(PANELS),
        help=f"comma-separated subset of {','.join(PANELS)}",
    )
    parser.add_argument("--label-a", default="proposed")
    parser.add_argument("--label-b", default="baseline")
    args = parser.parse_args(argv)

    try:
        spec = FigureSpec(
            run_a=args.run_a,
            run_b=args.run_b,
            out=args.out,
            panels=tuple(p.strip() for p in args.panels.split(",")),
            label_a=args.label_a,
            label_b=args.label_b,
        )
        render(spec)
    except (HeaderMismatch, EmptyInput, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
