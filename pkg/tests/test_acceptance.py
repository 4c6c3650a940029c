"""Acceptance criteria 1-7, one pass/fail line each.

Run with pytest, or directly: ``python3 tests/test_acceptance.py``.
"""

import sys

import pytest

from bchlab.repro import CLAIMS, FAIL, PASS, run_claim, summarize


def _verdict(k):
    entries = run_claim(k)
    status = summarize(entries)[k]
    failed = [e for e in entries if e.status == FAIL]
    line = f"criterion {k}: {status} ({CLAIMS[k][0]}, {len(entries)} checks)"
    return status, line, failed


@pytest.mark.parametrize("k", sorted(CLAIMS))
def test_criterion(k, capsys):
    status, line, failed = _verdict(k)
    with capsys.disabled():
        print(f"\n{line} ", end="")
    assert status == PASS, [(e.label, e.detail) for e in failed]


if __name__ == "__main__":
    bad = 0
    for k in sorted(CLAIMS):
        status, line, _ = _verdict(k)
        print(line)
        bad += status != PASS
    sys.exit(1 if bad else 0)
