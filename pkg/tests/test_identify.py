import pytest

from qtetra.exactalg import IM, RatFunc, q, z
from qtetra.identify import (
    R_SCALAR, GaugeOp, certify, check_corollary, check_gauge_ybe, check_theorem_i, check_theorem_ii,
    check_theorem_iii, corollary_iii_list, extraction, odd_m22_audit, sigma_i_product, sigma_tilde,
)
from qtetra.qaffine import A11, eigenvalue
from qtetra.reduction import build_M, checked_element

from qtetra.harness.reference import m22_2


def test_theorem_i():
    rep = check_theorem_i(3)
    assert rep.passed and rep.count("PASS") == 4


def test_theorem_ii():
    rep = check_theorem_ii(2)
    assert rep.passed
    assert rep.count("PASS") == 4 * 4


def test_theorem_ii_scalar_is_corner_entry():
    assert checked_element((2, 2), 1, 0, 0, 1) == R_SCALAR[(1, -1)]
    assert R_SCALAR[(1, -1)] == q / (z - 1)


def test_theorem_iii():
    assert check_theorem_iii(3).passed


def test_theorem_iii_block_one_against_example():
    M = build_M((1, 2), 1)
    M_sub = [[v.subst({"q": -(q**2)}) for v in row] for row in M]
    rep = check_theorem_iii(1)
    assert rep.passed
    assert M_sub[0][0] == (1 - q**2) * z / (1 - q**2 * z**2)


@pytest.mark.parametrize("signs", list(R_SCALAR))
def test_extraction_is_bijective(signs):
    for D in range(4):
        outs, ins = extraction(D, signs)
        assert len(outs) == len(ins) == D + 1


def test_theorem_detects_wrong_gauge(monkeypatch):
    monkeypatch.setattr(GaugeOp, "factor", lambda self, b, j: RatFunc(1))
    assert not check_theorem_iii(1).passed


def test_corollary():
    assert check_corollary(3, 2).passed


def test_stated_product_forms():
    for j in range(4):
        assert eigenvalue(A11, j, q, -IM * q, -IM * q) == sigma_i_product(j)
        assert eigenvalue(A11, j, q**2, q, q) == sigma_tilde(j)
    assert corollary_iii_list(0) == [RatFunc(1)]
    assert len(corollary_iii_list(3)) == 4 and len(corollary_iii_list(4)) == 5


def test_m22_2_spectrum_from_printed_matrix():
    M = m22_2()
    lam = (q**2 - z) / (q**2 * z - 1)
    assert certify(M, 2, {(1, 1): RatFunc(1)}, lam) is None
    # the even-even corner block [[(q^2-1)z, z-1], [q^2(z-1), q^2-1]] / (q^2 z - 1), solved by hand
    assert certify(M, 2, {(0, 2): RatFunc(1), (2, 0): RatFunc(1)}, RatFunc(1)) is None
    assert certify(M, 2, {(0, 2): RatFunc(1), (2, 0): -(q**2)}, lam) is None


def test_certify_rejects_non_eigenvector():
    M = m22_2()
    assert certify(M, 2, {(0, 2): RatFunc(1)}, RatFunc(1)) is not None
    assert certify(M, 2, {}, RatFunc(1)) is not None


def test_odd_m22_structure():
    for d in (1, 3, 5):
        assert odd_m22_audit(d) == []


def test_gauge_keeps_ybe():
    assert check_gauge_ybe((1, 1), q**3, 2).passed
