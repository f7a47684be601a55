"""Slice E2 chart with the forced differentials on the negative line.

    python scripts/slice_chart.py --stems -24:24 --out slice.svg
"""

import argparse
import collections
import json
import sys
from pathlib import Path

from artifact.cli import _glue_ranges
from artifact.chart import chart_from_groups, render_svg
from artifact.config import ChartSpec, parse_range
from artifact.slice import forced_negative_differentials, slice_cells, slice_e2


def main() -> None:
    p = argparse.ArgumentParser()
    p.add_argument("--stems", default="-24:24")
    p.add_argument("--out", default="slice.svg")
    args = p.parse_args(_glue_ranges(sys.argv[1:]))
    lo, hi = parse_range(args.stems)
    groups = slice_e2(slice_cells(lo - 40, hi + 40), (lo, hi))
    rows = forced_negative_differentials(groups)
    arrows = [(*r["source"], *r["target"], r["r"]) for r in rows if r["status"] == "forced"]
    s_lo = min(0, min(s for _, s in groups))
    s_hi = max(s for _, s in groups)
    spec = ChartSpec(stems=(lo, hi), filtrations=(s_lo, s_hi), title=f"slice E2 {lo}..{hi}")
    out = Path(args.out)
    out.write_text(render_svg(chart_from_groups(spec, groups, arrows)))
    print(f"wrote {out}")
    print(json.dumps(collections.Counter(r["status"] for r in rows), indent=2))


if __name__ == "__main__":
    main()
