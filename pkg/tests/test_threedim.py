import pytest

import qtetra.threedim as T
from qtetra.exactalg import RatFunc, q, x, y
from qtetra.threedim import (
    BoundaryVector, L3, check_boundary_eigen, check_RLLL, check_tetrahedron, check_threedR_symmetry,
    structural_audit, threedL_column, threedR_element,
)


def test_element_examples():
    assert threedR_element(0, 0, 0, 0, 0, 0) == 1
    assert threedR_element(0, 1, 0, 1, 0, 1) == 1 - q**2
    assert threedR_element(1, 0, 1, 0, 1, 0) == 1


def test_element_hand_value():
    # (a,b,c;i,j,k) = (1,1,1;1,1,1): lambda=0,mu=1 gives (1-q^4); lambda=1,mu=0 gives -q^2
    assert threedR_element(1, 1, 1, 1, 1, 1) == (1 - q**4) - q**2


def test_conservation_and_integrality():
    assert structural_audit(3) == []
    assert threedR_element(1, 0, 0, 0, 0, 0) == 0


def test_symmetry():
    assert check_threedR_symmetry(0).count("PASS") == 1
    # the pair ((0,1,0),(1,0,1)): (q^2)_1 * (1-q^2) on both sides
    assert (1 - q**2) * threedR_element(0, 1, 0, 1, 0, 1) == (1 - q**2) ** 2 * threedR_element(1, 0, 1, 0, 1, 0)
    assert check_threedR_symmetry(4).passed


def test_tetrahedron_small():
    rep = check_tetrahedron(0)
    assert rep.passed and rep.count("PASS") == 1
    assert check_tetrahedron(2).passed


def test_tetrahedron_detects_mutation(monkeypatch):
    orig = T.threedR_element

    def bad(a, b, c, i, j, k):
        v = orig(a, b, c, i, j, k)
        return v.subst({"q": -q}) if (a, b, c) == (1, 1, 1) else v

    monkeypatch.setattr(T, "threedR_element", bad)
    rep = check_tetrahedron(3)
    assert not rep.passed
    cx = rep.failures[0].counterexample
    assert {"index", "lhs", "rhs", "in"} <= set(cx)


def test_L_six_entries():
    entries = {}
    for a in (0, 1):
        for b in (0, 1):
            for out, c in threedL_column(a, b, 2):
                entries[(out[0], out[1], a, b)] = (out[2], c)
    assert len(entries) == 6
    assert entries[(0, 0, 0, 0)] == (2, RatFunc(1))
    assert entries[(0, 1, 0, 1)] == (2, q**2)
    assert entries[(1, 0, 1, 0)] == (2, -(q**3))
    assert entries[(0, 1, 1, 0)] == (1, 1 - q**4)
    assert entries[(1, 0, 0, 1)] == (3, RatFunc(1))
    assert threedL_column(1, 0, 0) == [((1, 0, 0), -q)]


def test_L_conservation():
    assert L3.audit([(a, b, m) for a in (0, 1) for b in (0, 1) for m in range(5)]) == []


def test_RLLL_small():
    rep = check_RLLL(2)
    assert rep.passed
    assert rep.results[0].sector.startswith("a+b+c=0,b+c+n1+n2=0,c+n2+n3=0")


def test_boundary_vectors():
    v2 = BoundaryVector(2, "ket", x)
    assert v2.support(6) == [0, 2, 4, 6]
    assert v2.weight(2) == x / (1 - q**4)
    assert BoundaryVector(1).weight(1) == RatFunc.var("z") / (1 - q)
    with pytest.raises(ValueError):
        BoundaryVector(3)


def test_boundary_component_101():
    rep = check_boundary_eigen(1, 2)
    assert rep.passed
    assert any(r.sector == "component=(1,0,1)" and r.status == "PASS" for r in rep.results)


@pytest.mark.parametrize("s", [1, 2])
@pytest.mark.parametrize("side", ["ket", "bra"])
def test_boundary_cutoff4(s, side):
    assert check_boundary_eigen(s, 4, side).passed


def test_boundary_wrong_weight_fails(monkeypatch):
    from qtetra.exactalg import qfac

    def wrong(s, level, arg):
        return RatFunc.coerce(arg) ** level / qfac(q**2, level)

    monkeypatch.setattr(T, "boundary_weight", wrong)
    assert not check_boundary_eigen(1, 2).passed
