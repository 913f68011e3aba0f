import pytest

import qtetra.reduction as R
from qtetra.exactalg import LedgerError, RatFunc, q, z
from qtetra.reduction import (
    CLOSED_SPECS, build_M, check_21_12_relation, check_closed_form, check_parity_split, check_ybe,
    checked_element, closed_over_rho_series, denominator_audit, reduced_element_series,
)

from qtetra.harness.reference import EXAMPLE_MATRICES


@pytest.mark.parametrize("key", sorted(EXAMPLE_MATRICES))
def test_example_matrices(key):
    spec, d = key
    expected = EXAMPLE_MATRICES[key]()
    got = build_M(spec, d)
    for r in range(d + 1):
        for c in range(d + 1):
            assert got[r][c] == expected[r][c], (spec, d, r, c, got[r][c].to_text())


@pytest.mark.parametrize("spec", CLOSED_SPECS)
def test_trivial_block_is_one(spec):
    assert build_M(spec, 0) == [[RatFunc(1)]]
    assert checked_element(spec, 0, 0, 0, 0) == 1


def test_single_elements():
    assert checked_element((1, 1), 0, 1, 0, 1) == (1 + q) * z / (q * z + 1)
    assert checked_element((2, 2), 0, 1, 1, 0) == 1 / (1 - z)
    assert checked_element((1, 2), 1, 0, 1, 0) == (1 + q) * z / (q * z**2 + 1)


def test_series_conservation_and_parity():
    assert reduced_element_series((1, 1), 1, 0, 0, 0, 3) == [RatFunc(0)] * 4
    # (a,b,i,j) with a+b = i+j and b-j odd
    for elem in [(1, 1, 2, 0), (0, 2, 1, 1), (3, 0, 2, 1)]:
        assert all(c.is_zero() for c in reduced_element_series((2, 2), *elem, 5))


def test_series_leading_term():
    # z^0 of R^{1,1}(z)^{0,0}_{0,0} is the single c = k = 0 contribution R^{000}_{000} = 1
    series = reduced_element_series((1, 1), 0, 0, 0, 0, 2)
    assert series[0] == 1
    assert series == closed_over_rho_series((1, 1), 0, 0, 0, 0, 2)


@pytest.mark.parametrize("spec,order", [((1, 1), 6), ((2, 2), 6), ((1, 2), 8)])
def test_closed_form_matches_series(spec, order):
    assert check_closed_form(spec, 2, order).passed


def test_closed_form_detects_wrong_rho_branch(monkeypatch):
    R.reduced_element_closed.cache_clear()
    monkeypatch.setattr(R, "parity_signs", lambda i, j: 1)
    try:
        rep = check_closed_form((2, 2), 1, 4)
        assert not rep.passed
    except LedgerError:
        pass
    finally:
        monkeypatch.undo()
        R.reduced_element_closed.cache_clear()
    assert check_closed_form((2, 2), 1, 4).passed


def test_parity_split():
    assert check_parity_split(5).passed


def test_21_12_relation():
    assert check_21_12_relation(2, 6).passed


@pytest.mark.parametrize("spec", CLOSED_SPECS)
def test_ybe_braid_form(spec):
    rep = check_ybe(spec, 2)
    assert rep.passed and rep.count("PASS") == 3


def test_ybe_as_printed_fails():
    rep = check_ybe((1, 1), 1, printed=True)
    assert not rep.passed
    assert rep.failures[0].counterexample is not None


@pytest.mark.parametrize("spec", CLOSED_SPECS)
def test_denominators_are_binomials(spec):
    assert denominator_audit(spec, 4) == []


def test_unknown_spec_rejected():
    with pytest.raises(ValueError):
        R.reduced_element_closed(2, 1, 0, 0, 0, 0)
