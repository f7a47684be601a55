"""Acceptance criteria 1-10, one printed PASS/FAIL line each.

Every comparison is exact: group ranks, invariant factors, orders and
bytes.  There is no floating point anywhere, so the pinned tolerance is 0.

Run directly for the summary alone::

    python tests/test_acceptance.py
"""

import pytest

from artifact.report import CHECKS, EXACT, run_check

SEED = 0
TOLERANCE = EXACT
RESULTS: dict[int, object] = {}


def _run(n: int):
    if n not in RESULTS:
        RESULTS[n] = run_check(n, SEED)
    return RESULTS[n]


@pytest.mark.parametrize("n", sorted(CHECKS))
def test_criterion(n):
    res = _run(n)
    print(res.line())
    assert TOLERANCE == 0
    assert res.ok, res.summary


if __name__ == "__main__":
    import sys

    failed = 0
    for n in sorted(CHECKS):
        res = _run(n)
        print(res.line(), flush=True)
        failed += not res.ok
    print(f"tolerance: exact ({TOLERANCE}); {len(CHECKS) - failed}/{len(CHECKS)} criteria pass")
    sys.exit(1 if failed else 0)
