"""Picard groups of TMF_1(3), its localizations and Tmf_1(3).

    python scripts/picard_pipeline.py
"""

from artifact.picard import TARGETS, picard_pipeline


def main() -> None:
    for target in TARGETS:
        r = picard_pipeline(target)
        extra = ""
        if "order_bound" in r:
            extra = f" (algebraic {r['algebraic']}, column bound {r['order_bound']}, period {r['smallest_period']})"
        status = "ok" if r["ok"] else "FAILED"
        print(f"{target:8s} {r['pretty']}{extra} [{status}]")


if __name__ == "__main__":
    main()
