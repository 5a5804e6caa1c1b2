"""Acceptance criteria 1-11, run once per session with one pass/fail line each."""

import pytest

from basilica.acceptance import CHECKS, run_all

NAMES = {n: name for n, (name, _) in CHECKS.items()} | {11: "end-to-end"}


@pytest.fixture(scope="module")
def results():
    return {r.number: r for r in run_all()}


def _id(n):
    return f"criterion_{n:02d}_" + NAMES[n].replace(" ", "_").replace("/", "_").replace("-", "_")


@pytest.mark.parametrize("number", sorted(NAMES), ids=_id)
def test_criterion(results, number, capsys):
    r = results[number]
    with capsys.disabled():
        print("\n" + r.line())
    assert r.passed, r.detail
