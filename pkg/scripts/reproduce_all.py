"""Regenerate every artifact: acceptance report, charts and Picard table.

    python scripts/reproduce_all.py --out artifact-out
"""

import argparse
import os
import sys

from artifact.cli import main as cli


def main() -> int:
    p = argparse.ArgumentParser()
    p.add_argument("--out", default=os.environ.get("ARTIFACT_OUT", "artifact-out"))
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    os.environ["ARTIFACT_OUT"] = args.out
    out = args.out
    steps = [
        ["sseq", "chart", "--stems", "-8:16", "--filtrations", "0:12", "--page", "2", "--json",
         "--out", f"{out}/tmf13-E2.svg"],
        ["sseq", "chart", "--stems", "-8:16", "--filtrations", "0:12", "--page", "8", "--json",
         "--out", f"{out}/tmf13-Einf.svg"],
        ["slice", "chart", "--stems", "-24:24", "--json", "--out", f"{out}/slice.svg"],
        ["picard", "compute", "--target", "Tmf13", "--json", "--out", f"{out}/picard-Tmf13.json"],
        ["anderson", "check", "--kmax", "30", "--out", f"{out}/serre.json"],
        ["report", "all", "--seed", str(args.seed), "--out", f"{out}/report.json"],
    ]
    worst = 0
    for argv in steps:
        print("$ artifact " + " ".join(argv), flush=True)
        worst = max(worst, cli(argv))
    return worst


if __name__ == "__main__":
    sys.exit(main())
