"""figure-gen command line: render a spec file or ad-hoc flags."""

from __future__ import annotations

import argparse
import sys

from .render import render
from .spec import KINDS, FigureSpec, SpecError


def build_parser():
    parser = argparse.ArgumentParser(
        prog="figure-gen",
        description="Render twsketch experiment results as publication figures.",
    )
    parser.add_argument("spec", nargs="?", help="JSON figure spec file")
    parser.add_argument("--kind", choices=KINDS)
    parser.add_argument("--inputs", nargs="+", help="result CSV files")
    parser.add_argument("--out", help="output path stem (.png and .svg added)")
    parser.add_argument("--titles", nargs="*", default=[])
    parser.add_argument("--layout", help="ROWSxCOLS, e.g. 2x2")
    return parser


def spec_from_args(args) -> FigureSpec:
    if args.spec:
        return FigureSpec.from_json(args.spec)
    if not (args.kind and args.inputs and args.out):
        raise SpecError("either a spec file or --kind/--inputs/--out is required")
    layout = None
    if args.layout:
        try:
            rows, cols = args.layout.lower().split("x")
            layout = (int(rows), int(cols))
        except ValueError:
            raise SpecError(f"cannot parse layout {args.layout!r}; use ROWSxCOLS") from None
    return FigureSpec(kind=args.kind, inputs=args.inputs, out=args.out,
                      titles=args.titles, layout=layout)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = spec_from_args(args)
        written = render(spec)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
