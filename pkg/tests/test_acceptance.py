"""The eight acceptance criteria, exact and with fixed seeds.

Each test prints one ``criterion N: PASS|FAIL`` line.
"""

import time

import pytest

from morita.acceptance import CRITERIA

RUNTIME_LIMIT = 60.0
_reports = {}


def _run(n):
    if n not in _reports:
        t0 = time.perf_counter()
        rep = CRITERIA[n]()
        _reports[n] = (rep, time.perf_counter() - t0)
    return _reports[n]


def _line(capsys, n, ok, note=""):
    with capsys.disabled():
        print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}{'  ' + note if note else ''}")


def _failures(rep):
    return [(c.name, c.witness) for c in rep.failures()]


def test_criterion_1_axiom_suite(capsys):
    rep, elapsed = _run(1)
    ok = rep.ok and elapsed < RUNTIME_LIMIT
    _line(capsys, 1, ok, f"{len(rep.checks)} groupoids in {elapsed:.1f}s")
    assert rep.ok, _failures(rep)
    assert elapsed < RUNTIME_LIMIT


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_criteria_2_to_7(n, capsys):
    rep, _ = _run(n)
    _line(capsys, n, rep.ok, f"{rep.subject}, {len(rep.checks)} cases")
    assert rep.ok, _failures(rep)


def test_criterion_8_determinism(capsys):
    diffs = []
    for n in CRITERIA:
        first = _run(n)[0].to_json()
        if CRITERIA[n]().to_json() != first:
            diffs.append(n)
    _line(capsys, 8, not diffs, "reruns byte-identical" if not diffs else f"differs: {diffs}")
    assert not diffs
