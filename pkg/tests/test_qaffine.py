import pytest

from qtetra.exactalg import IM, RatFunc, alpha, beta, curly, q, qint, x, z
from qtetra.qaffine import (
    A11, A22, ModuleAction, ParameterError, build_hw_vector, build_quantum_R, check_block_structure,
    check_eigenvectors, check_hw_vectors, check_intertwiner, check_inversion, check_qybe, coproduct_apply,
    eigenvalue, hw_conditions, mat_mul, module_apply, solve_right, verify_module_relations,
)

SPECIALIZATIONS = [-IM * q, q, q**2]


def test_a11_module_values():
    mod = ModuleAction(A11, q, alpha)
    assert module_apply(mod, "e1", 1) == [(0, -curly(alpha))]
    assert module_apply(mod, "e1", 0) == []
    assert module_apply(mod, "k1", 2) == [(2, alpha.inverse() * q**-4)]
    assert module_apply(mod, "e0", 3) == [(4, x)]


def test_a22_module_values():
    mod = ModuleAction(A22)
    assert module_apply(mod, "k1", 1) == [(1, -(q**3))]
    assert module_apply(mod, "f1", 2) == [(1, x.inverse() * qint(4) / qint(2))]
    assert module_apply(mod, "e0", 1) == []
    assert module_apply(mod, "k0", 0) == [(0, q**-2)]


def test_a11_relations_generic():
    rep = verify_module_relations(ModuleAction(A11, q, alpha), 6)
    assert rep.passed


def test_a11_commutator_on_vacuum():
    mod = ModuleAction(A11, q, alpha)
    ef = module_apply(mod, "f1", 0)
    (lv, c), = module_apply(mod, "e1", ef[0][0])
    assert lv == 0 and c == (alpha.inverse() - alpha) / (q - q.inverse())


def test_a22_relations_all_but_k1_conjugation():
    rep = verify_module_relations(ModuleAction(A22), 6)
    failing = {r.sector.split()[0] for r in rep.failures}
    assert failing == {"k1e1K1", "k1f1K1"}
    serre = [r for r in rep.results if r.sector.startswith("Serre")]
    assert serre and all(r.status == "PASS" for r in serre)


def test_a22_k1_sign_is_intrinsic():
    # the level shift by e1 flips (-1)^m, so k1 e1 k1^{-1} = -q^2 e1 on every |m>
    mod = ModuleAction(A22)
    for m in range(4):
        (_, k_m), = module_apply(mod, "k1", m)
        (_, k_next), = module_apply(mod, "k1", m + 1)
        assert k_next / k_m == -(q**2)


def test_coproduct_of_k_is_grouplike():
    left, right = ModuleAction(A11, q, alpha, x), ModuleAction(A11, q, beta, z)
    v = {(1, 2): RatFunc(1)}
    out = coproduct_apply("k1", left, right, v)
    assert out == {(1, 2): (alpha * beta).inverse() * q**-6}


@pytest.mark.parametrize("d", range(4))
def test_hw_vectors_generic(d):
    assert hw_conditions(A11, d, q, alpha, beta) is None
    assert hw_conditions(A22, d, sign=1) is None
    assert hw_conditions(A22, d, sign=-1) is None


def test_hw_vector_small():
    v = build_hw_vector(A11, 1, q, alpha, beta)
    assert v[(1, 0)] == 1
    assert v[(0, 1)] == -beta.inverse() * curly(alpha) / curly(beta)
    assert build_hw_vector(A22, 1, sign=1) == {(0, 1): RatFunc(1), (1, 0): RatFunc(1)}
    assert build_hw_vector(A22, 1, sign=-1) == {(0, 1): RatFunc(1), (1, 0): RatFunc(-1)}


def test_hw_vector_singular_parameter():
    with pytest.raises(ParameterError):
        build_hw_vector(A11, 2, q, alpha, RatFunc(1))


def test_eigenvalues():
    assert eigenvalue(A22, 1) == (q + z) / (1 + q * z)
    assert eigenvalue(A11, 0, q, alpha, beta) == 1
    s1 = eigenvalue(A11, 1, q, alpha, beta)
    assert s1 == beta * z / alpha * (1 - alpha**2) * (1 - alpha * beta / z) / ((1 - beta**2) * (1 - alpha * beta * z))


def test_solve_right_roundtrip():
    B = [[q, RatFunc(1)], [z, RatFunc(2)]]
    C = [[RatFunc(1), q], [z, RatFunc(0)]]
    X = solve_right(B, C)
    assert mat_mul(X, B) == C
    with pytest.raises(ParameterError):
        solve_right([[q, q], [q, q]], C)


def test_a22_block_one():
    R = build_quantum_R(A22, 1)
    assert R.blocks[0] == [[RatFunc(1)]]
    s = eigenvalue(A22, 1)
    t = -eigenvalue(A22, 1, spectral=-z)
    # u_+ = |0,1>+|1,0>, u_- = |0,1>-|1,0>
    assert R.blocks[1][0][0] + R.blocks[1][0][1] == s
    assert R.blocks[1][0][0] - R.blocks[1][0][1] == t


@pytest.mark.parametrize("p", SPECIALIZATIONS)
def test_a11_specializations(p):
    assert check_block_structure(A11, 3, q, p, p).passed
    assert check_intertwiner(A11, 2, q, p, p).passed
    assert check_inversion(A11, 3, q, p, p).passed
    assert check_eigenvectors(A11, 3, q, p, p).passed


def test_a11_generic_parameters():
    assert check_intertwiner(A11, 1, q, alpha, beta).passed
    assert check_inversion(A11, 2, q, alpha, beta).passed


def test_a22_spectral_checks():
    assert check_block_structure(A22, 4).passed
    assert check_intertwiner(A22, 2).passed
    assert check_inversion(A22, 3).passed
    assert check_eigenvectors(A22, 3).passed


def test_intertwiner_detects_wrong_eigenvalue(monkeypatch):
    import qtetra.qaffine as QA

    QA._block.cache_clear()
    real = QA.eigenvalue
    monkeypatch.setattr(QA, "eigenvalue", lambda kind, d, *a, **k: real(kind, d, *a, **k) * (q if d == 1 else 1))
    try:
        assert not check_intertwiner(A22, 1).passed
    finally:
        monkeypatch.undo()
        QA._block.cache_clear()


def test_quantum_ybe():
    assert check_qybe(A22, 2).passed
    assert check_qybe(A11, 2, q, q, q).passed
