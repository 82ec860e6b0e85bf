"""Standalone renderer: `tension-figures --figure fig2 --in curves=... --out fig2.png`.

Input roles by figure: fig2 needs curves= (survival= optional); fig3/fig4
need curves=; fig5 needs loads=; tvp needs tvp=; network needs network=
(the graph JSON).  Exit 2 on schema mismatches, with column diagnostics.
"""

from __future__ import annotations

import argparse
import sys

from .io import SchemaError
from .render import FIGURE_IDS, FigureSpec, render


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="tension-figures", description=__doc__)
    parser.add_argument("--figure", required=True, choices=FIGURE_IDS)
    parser.add_argument(
        "--in",
        dest="inputs",
        action="append",
        required=True,
        metavar="ROLE=PATH",
        help="input file with its role, e.g. curves=out/curves.csv (repeatable)",
    )
    parser.add_argument("--out", required=True)
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)

    inputs = {}
    for item in args.inputs:
        if "=" not in item:
            parser.error(f"--in expects ROLE=PATH, got {item!r}")
        role, path = item.split("=", 1)
        inputs[role] = path
    try:
        out = render(FigureSpec(figure=args.figure, inputs=inputs, out=args.out, dpi=args.dpi))
    except (SchemaError, FileNotFoundError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
