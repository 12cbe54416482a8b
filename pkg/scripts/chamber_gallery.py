"""Render the Weyl chamber arrangement of a rank-2 action file as SVG and
print the chamber/witness table with certified signs.

Example:
    python scripts/chamber_gallery.py fixtures/cartan_t3.json --out cartan.svg
"""

import argparse
import sys

from anosov_forge.cli import load_action_file
from anosov_forge.config import DEFAULT_CONFIG
from anosov_forge.report import chambers_svg
from anosov_forge.weyl import (
    anosov_in_every_chamber,
    coarse_classes,
    lyapunov_data,
    weyl_chambers,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("file")
    ap.add_argument("--out", default=None, help="write SVG here")
    args = ap.parse_args()

    action = load_action_file(args.file)
    cfg = DEFAULT_CONFIG
    classes = coarse_classes(lyapunov_data(action, cfg), cfg)
    if action.rank != 2:
        print(f"rank {action.rank} action: no planar diagram", file=sys.stderr)
        return 2
    chambers = weyl_chambers(classes, 2, cfg)
    ok, table = anosov_in_every_chamber(action, chambers, cfg)

    print(f"{len(classes)} coarse classes, {len(chambers)} chambers")
    for row in table:
        signs = "".join("+" if s > 0 else "-" for s in row["signs"])
        tag = "anosov" if row["anosov"] else "NOT anosov"
        print(f"  chamber {signs}: witness {row['witness']} ({tag})")
    print("every chamber has an Anosov witness" if ok else "some chamber failed")

    if args.out:
        with open(args.out, "w") as fh:
            fh.write(chambers_svg(classes, chambers))
        print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
