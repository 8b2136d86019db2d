"""Reproduction table at full size.

Each criterion runs at its stated tolerance and prints one PASS/FAIL line;
the lines are repeated in the pytest terminal summary.  Run directly with
``python3 tests/test_acceptance.py`` to print just the table.
"""

import pytest

from mahlercocycle.verify import CRITERIA, run_all, run_criterion

RESULTS: list[str] = []


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(number):
    result = run_criterion(number)
    RESULTS.append(result.line())
    print(result.line())
    assert result.passed, result.line()


if __name__ == "__main__":
    results = run_all(echo=print)
    print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
