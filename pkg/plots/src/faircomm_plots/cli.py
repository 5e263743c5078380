"""CLI: ``faircomm-plot <kind> --csv <path> --out <path.png>``.

Exits 2 when the CSV does not match the figure kind's schema.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import FIGURE_KINDS, PlotSpec, SchemaError, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="faircomm-plot",
        description="Render faircomm benchmark CSVs as figures.",
    )
    parser.add_argument("kind", choices=list(FIGURE_KINDS))
    parser.add_argument("--csv", type=Path, required=True)
    parser.add_argument("--out", type=Path, required=True)
    parser.add_argument("--quality", default="nmi",
                        help="aggregate quality metric for scatter grids")
    parser.add_argument("--property", dest="property_name", default="size",
                        choices=["size", "density", "conductance"])
    args = parser.parse_args(argv)

    spec = PlotSpec(
        csv_path=args.csv,
        kind=args.kind,
        out_path=args.out,
        quality_metric=args.quality,
        property_name=args.property_name,
    )
    try:
        metadata = render(spec)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.out} ({metadata['faircomm:kind']}, "
          f"csv sha256 {metadata['faircomm:csv-sha256'][:12]}...)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
