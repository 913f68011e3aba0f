"""One test per acceptance criterion, each printing a single PASS/FAIL line.

All runs are exact. Two criteria fail on the printed statements themselves and
are marked strict xfail: the failure is the expected, documented outcome, and an
unexpected pass would flag a change in behaviour.
"""

import pytest

from conftest import ACCEPTANCE_LINES
from qtetra import reduction
from qtetra.harness.report import ARITH
from qtetra.harness.suites import _run_task, profile
from qtetra.mixed import CORRECTED, check_rtr01_closed

CRITERIA = {c.number: c for c in profile("acceptance")}

KNOWN_FAILURES = {
    7: "the printed A22 module has k1 = eps1 (-1)^m Q^(2m+1), so k1 e1 k1^-1 = -q^2 e1 and "
       "k1 f1 k1^-1 = -q^-2 f1; every other relation, Serre included, holds",
    11: "the trace is nonzero on W(0) x W(d'>=1) and W(d>=1) x W(0), contradicting the vanishing claim, and "
        "the printed gauge (1 x K^-1) R (K x 1) is off by q^(-/+3) on two diagonal entries; "
        "K^(-1/2) in place of K matches every block",
}


def _run(number):
    ARITH.set("exact")
    reduction.use_block_cache(None)
    crit = CRITERIA[number]
    reports = [r for name, params in crit.tasks for r in _run_task((name, params, "exact", 0, None))]
    ok = all(r.passed for r in reports)
    sectors = sum(len(r.results) for r in reports)
    failed = sum(r.count("FAIL") for r in reports)
    randomized = sum(r.randomized_calls for r in reports)
    return crit, reports, ok, sectors, failed, randomized


def _line(crit, ok, sectors, failed, note=""):
    text = f"criterion {crit.number}: {'PASS' if ok else 'FAIL'}  {crit.title}  ({sectors} sectors, {failed} failing)"
    if note:
        text += f"  [{note}]"
    print(text)
    ACCEPTANCE_LINES.append(text)


def _marks(number):
    if number in KNOWN_FAILURES:
        return [pytest.mark.xfail(strict=True, reason=KNOWN_FAILURES[number])]
    return []


@pytest.mark.parametrize("number", [pytest.param(n, marks=_marks(n), id=f"criterion-{n:02d}") for n in CRITERIA])
def test_criterion(number):
    crit, reports, ok, sectors, failed, randomized = _run(number)
    note = ""
    if number == 7 and not ok:
        names = sorted({f.sector.split()[0] for r in reports for f in r.failures})
        note = "failing relations: " + ", ".join(names)
    if number == 11 and not ok:
        corrected = check_rtr01_closed(10, 3, CORRECTED)
        note = f"corrected gauge over all blocks: {'PASS' if corrected.passed else 'FAIL'}"
    _line(crit, ok, sectors, failed, note)
    assert randomized == 0
    assert ok, "; ".join(f"{r.identity}: {r.failures[0].sector} {r.failures[0].counterexample}"
                         for r in reports if r.failures)


def test_known_failures_are_exactly_the_documented_ones():
    _, reports, _, _, _, _ = _run(7)
    failing = {(r.identity, f.sector.split()[0]) for r in reports for f in r.failures}
    assert {name for _, name in failing} == {"k1e1K1", "k1f1K1"}
    assert {ident for ident, _ in failing} == {"A22 module relations"}
    _, reports, _, _, _, _ = _run(11)
    assert [r.identity for r in reports if not r.passed] == ["closed form of the (0,1) trace operator"]
    assert check_rtr01_closed(10, 3, CORRECTED).passed
