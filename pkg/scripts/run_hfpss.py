"""Run the HFPSS of one scenario to its stable page and print a summary.

    python scripts/run_hfpss.py --scenario tmf13 --window 40 --s-max 64
"""

import argparse
import json
import time

from artifact.sseq import run_to_stable
from artifact.tmf13 import SCENARIOS, build_scenario, verify_presentation


def main() -> None:
    p = argparse.ArgumentParser()
    p.add_argument("--scenario", choices=SCENARIOS, default="tmf13")
    p.add_argument("--window", type=int, default=40)
    p.add_argument("--s-max", type=int, default=64)
    p.add_argument("--truncation", type=int, default=4)
    args = p.parse_args()

    sc = build_scenario(args.scenario, args.truncation)
    w = sc.window(args.window, args.s_max)
    t0 = time.perf_counter()
    res = run_to_stable(sc.algebra, list(sc.differentials), w)
    out = {
        "scenario": sc.name,
        "window": w.to_json(),
        "stabilization_page": res.stabilization_page,
        "nonzero_differentials": res.nonzero_differentials,
        "unresolved": len(res.unresolved),
        "seconds": round(time.perf_counter() - t0, 1),
    }
    if sc.name == "tmf13":
        rep = verify_presentation(res.page, w)
        out["presentation"] = {"ok": rep.ok, "keys": rep.keys_checked, "mismatches": len(rep.mismatches)}
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
