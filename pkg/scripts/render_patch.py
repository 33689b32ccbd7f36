#!/usr/bin/env python3
"""Render a substitution patch as an SVG strip.

Materializes the patch of the multiscale substitution at a given time,
draws one rectangle per tile shaded by tile length, and writes the SVG.
Useful for eyeballing how quickly the tile lengths mix for a given
split parameter.
"""
from __future__ import annotations

import argparse
import math
from pathlib import Path

from kakutani import generate_patch
from kakutani.exports import patch_to_svg


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--alpha", type=float, default=1.0 / 3.0, help="split parameter")
    parser.add_argument(
        "--t",
        type=float,
        default=5.0 * math.log(2.0),
        help="semi-flow time; the patch spans an interval of length e**t",
    )
    parser.add_argument(
        "--out",
        type=Path,
        default=Path("artifacts/patch.svg"),
        help="output SVG path",
    )
    args = parser.parse_args()

    patch = generate_patch(args.alpha, args.t)
    config = {
        "command": "generate",
        "alpha": args.alpha,
        "t": args.t,
        "format": "svg",
    }
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(patch_to_svg(patch, config), encoding="utf-8")
    lo, hi = patch.support
    print(
        f"wrote {args.out}: {len(patch.tiles)} tiles on [{lo:.3f}, {hi:.3f}]"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
