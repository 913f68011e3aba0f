import itertools

import pytest

from qtetra.exactalg import RatFunc, q, x, y, z
from qtetra.harness.report import CheckReport
from qtetra.mixed import (
    CORRECTED, PRINTED, EpsilonString, FreeFermionR, SChain, _run_series_ybe, block_pattern, check_ffR_ybe,
    check_rtr01_closed, check_theorem_gen, remark_nsite_series, rst_series, rtr01_closed_entry, rtr01_prefactor,
    rtr_series,
)
from qtetra.reduction import reduced_element_series

GEOMETRIC = [RatFunc(1)] * 5


def test_epsilon_parsing():
    assert EpsilonString.parse("0,1").eps == (0, 1)
    assert EpsilonString.parse((1,)).n == 1
    with pytest.raises(ValueError):
        EpsilonString.parse("0,2")
    with pytest.raises(ValueError):
        EpsilonString(())


def test_chain_places_sites_on_shared_leg():
    factors = SChain(EpsilonString((0, 1))).factors()
    assert [p.legs for p in factors] == [(0, 2, 4), (1, 3, 4)]


@pytest.mark.parametrize("eps,vac", [("1", (0, 0)), ("0,1", (0, 0, 0, 0)), ("0", (0, 0))])
def test_vacuum_trace_is_geometric(eps, vac):
    assert rtr_series(eps, 4).entry(vac, vac) == GEOMETRIC


def test_single_l_trace_is_diagonal():
    op = rtr_series("1", 5)
    assert op.entry((0, 1), (0, 1)) == [q**m for m in range(6)]
    assert op.entry((1, 0), (1, 0)) == [-(q ** (m + 1)) for m in range(6)]
    assert op.column((0, 1)) == [((0, 1), op.column((0, 1))[0][1])]


def test_level_cutoff_limits_exact_order():
    op = rtr_series("0", 6, level_cutoff=3)
    assert op.exact_order == 3
    assert len(op.entry((0, 0), (0, 0))) == 4


@pytest.mark.parametrize("s,t", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_boundary_single_site_matches_reduction(s, t):
    op = rst_series(s, t, "0", 6)
    for a, b, i in itertools.product(range(3), repeat=3):
        j = a + b - i
        if 0 <= j and a + b <= 2:
            assert op.entry((a, b), (i, j)) == reduced_element_series((s, t), a, b, i, j, 6)


def test_boundary_rejects_bad_spec():
    with pytest.raises(ValueError):
        rst_series(3, 1, "0", 2)


def test_nsite_formula_runs_sites_in_reverse():
    op = rst_series(1, 1, "0,0", 4)
    checked = 0
    for a1, a2, b1, b2, i1, i2 in itertools.product(range(2), repeat=6):
        j1, j2 = a1 + b1 - i1, a2 + b2 - i2
        if j1 < 0 or j2 < 0:
            continue
        chain = op.entry((a1, a2, b1, b2), (i1, i2, j1, j2))
        assert chain == remark_nsite_series(1, 1, (a2, a1), (b2, b1), (i2, i1), (j2, j1), 4)
        checked += 1
    assert checked > 20


@pytest.mark.parametrize("eps", ["0", "1", "0,1", "1,1", "0,0"])
def test_trace_family_ybe(eps):
    rep = check_theorem_gen("tr", eps, 4, 2)
    assert rep.passed and rep.count("PASS") > 0


@pytest.mark.parametrize("s,t", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_boundary_family_ybe(s, t):
    assert check_theorem_gen("st", "0", 4, 2, s=s, t=t).passed


def test_gauged_trace_still_solves_ybe():
    assert check_theorem_gen("tr", "0,1", 3, 2, gauge=True).passed


def test_series_ybe_detects_broken_spectral_relation():
    eps = EpsilonString.parse("0,1")
    series = rtr_series(eps, 4)

    class Skewed:
        def op(self, arg):
            return series.op(x * x * y if arg == x * y else arg)

    rep = _run_series_ybe(CheckReport("mutant", "", {}), Skewed(), eps, 4, 2)
    assert rep.count("FAIL") > 0


def test_theorem_gen_limits():
    with pytest.raises(ValueError):
        check_theorem_gen("tr", "0,0,0")
    with pytest.raises(ValueError):
        check_theorem_gen("xx", "0")


def test_free_fermion_matrix_entries():
    mu, nu = q, q**2
    M = FreeFermionR(mu, nu).matrix()
    assert M[0][0] == z - q**3
    assert M[1][1] == nu - mu * z and M[2][1] == 1 - mu**2
    assert M[1][2] == (1 - nu**2) * z and M[3][3] == 1 - q**3 * z
    assert M[0][1].is_zero() and M[3][0].is_zero()


def test_free_fermion_ybe():
    rep = check_ffR_ybe()
    assert rep.passed and rep.count("PASS") == 27


def test_prefactor_low_blocks():
    assert rtr01_prefactor(1, 1) == 1 / ((1 - z) * (1 - q**2 * z))
    assert rtr01_prefactor(0, 0) == 1 / ((z - 1) * (1 - z))


def test_printed_closed_form_vacuum_and_vanishing():
    assert rtr01_closed_entry(0, 0, (0, 0), (0, 0)) == 1 / (1 - z)
    assert rtr01_closed_entry(0, 2, (0, 1), (0, 1)).is_zero()


def test_printed_closed_form_disagrees_with_trace():
    rep = check_rtr01_closed(6, 2, PRINTED)
    assert not rep.passed
    failing = {r.sector for r in rep.failures}
    # every block except the vacuum one is off
    assert "d=0,d'=0" not in failing and len(failing) == 8


def test_trace_blocks_with_one_empty_side_are_nonzero():
    assert (0, 1) in block_pattern(1) and (1, 0) in block_pattern(1)
    vac = (0, 0, 1, 0)
    assert rtr_series("0,1", 3).entry(vac, vac) == [-q, -(q**2), -(q**3), -(q**4)]


def test_corrected_gauge_matches_every_block():
    assert check_rtr01_closed(10, 3, CORRECTED).passed


def test_corrected_and_printed_agree_off_diagonal():
    for out, inp in [((1, 0), (0, 1)), ((0, 1), (1, 0)), ((0, 0), (0, 0)), ((1, 1), (1, 1))]:
        assert rtr01_closed_entry(2, 1, out, inp, PRINTED) == rtr01_closed_entry(2, 1, out, inp, CORRECTED)
    assert rtr01_closed_entry(2, 1, (0, 1), (0, 1), PRINTED) == q**3 * rtr01_closed_entry(2, 1, (0, 1), (0, 1), CORRECTED)


def test_unknown_gauge():
    with pytest.raises(ValueError):
        rtr01_closed_entry(1, 1, (0, 0), (0, 0), "other")
