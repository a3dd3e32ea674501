"""One test per acceptance criterion; each prints a single pass/fail line."""

import pytest

from modlie import acceptance


@pytest.mark.parametrize("number", range(1, len(acceptance.CRITERIA) + 1))
def test_criterion(number, acceptance_lines):
    res = acceptance.run_criterion(number, seed=0)
    line = res.line()
    acceptance_lines.append(line)
    print(line)
    assert res.checks, "criterion ran no checks"
    failed = [name for name, ok in res.checks if not ok]
    assert res.passed, f"failed checks: {failed}"


if __name__ == "__main__":
    results = acceptance.run_all(seed=0)
    for r in results:
        print(r.line())
    raise SystemExit(0 if all(r.passed for r in results) else 1)
