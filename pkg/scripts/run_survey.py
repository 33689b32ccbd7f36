#!/usr/bin/env python3
"""Sweep every coprime ratio up to a bound and write the survey table.

Writes one CSV with a row per ratio n/m and prints a short summary:
the ratios whose covering substitution passes the spectral spreadness
test, and the ratios that sit on the unit circle and stay undecided.
The defaults reproduce the table checked into tests/data.
"""
from __future__ import annotations

import argparse
from pathlib import Path

from kakutani import SpreadClass, survey
from kakutani.exports import survey_to_csv


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=12, help="largest numerator")
    parser.add_argument(
        "--out",
        type=Path,
        default=Path("artifacts/survey.csv"),
        help="output CSV path",
    )
    args = parser.parse_args()

    rows = survey(args.max_n)
    config = {"command": "survey", "max_n": args.max_n, "format": "csv"}
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(survey_to_csv(rows, config), encoding="utf-8")

    spread = [(r.n, r.m) for r in rows if r.solomon is SpreadClass.SPREAD]
    boundary = [(r.n, r.m) for r in rows if r.solomon is SpreadClass.BOUNDARY]
    print(f"wrote {args.out} ({len(rows)} ratios, n <= {args.max_n})")
    print(f"spread:   {', '.join(f'{n}/{m}' for n, m in spread)}")
    print(f"boundary: {', '.join(f'{n}/{m}' for n, m in boundary) or 'none'}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
