import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qtetra.exactalg import RatFunc, q
from qtetra.fock import (
    FOCK, QUBIT, Charge, GradedOp, LocalOp, SectorError, apply_product, basis_vec, compose,
    enumerate_sector, identity_op, pairing, qosc_apply, sectors_up_to, swap_op,
)
from qtetra.threedim import R3, R3_CHARGES


def test_enumerate_two_legs():
    s = enumerate_sector((FOCK, FOCK), [Charge((1, 1))], [2])
    assert s.basis == ((0, 2), (1, 1), (2, 0))
    assert enumerate_sector((FOCK, FOCK), [Charge((1, 1))], [0]).basis == ((0, 0),)


def test_enumerate_three_legs_finite():
    for v1 in range(2):
        for v2 in range(2):
            s = enumerate_sector((FOCK,) * 3, R3_CHARGES, [v1, v2])
            assert all(a + b == v1 and b + c == v2 for a, b, c in s.basis)
            assert len(set(s.basis)) == len(s.basis)


def test_unbounded_sector():
    with pytest.raises(SectorError):
        enumerate_sector((FOCK, FOCK), [Charge((1, 0))], [1])


def test_qubit_legs_bounded():
    s = enumerate_sector((QUBIT, QUBIT, FOCK), [Charge((0, 1, 1))], [1])
    assert s.basis == ((0, 0, 1), (0, 1, 0), (1, 0, 1), (1, 1, 0))


def test_qosc():
    assert qosc_apply("a+", 3) == [(4, RatFunc(1))]
    assert qosc_apply("a-", 1) == [(0, 1 - q**2)]
    assert qosc_apply("a-", 0) == []
    assert qosc_apply("k", 2) == [(2, q**2)]
    assert qosc_apply("h", 3) == [(3, RatFunc(3))]


def test_qosc_commutation():
    # a- a+ - q^2 a+ a- = 1 - q^2 on every level
    for m in range(6):
        lhs = dict((lv, c) for lv, c in qosc_apply("a-", m + 1))[m]
        down = qosc_apply("a-", m)
        rhs = q**2 * (down[0][1] if down else 0)
        assert lhs - rhs == 1 - q**2


def test_pairing():
    assert pairing(2, 2) == (1 - q**2) * (1 - q**4)
    assert pairing(1, 2) == 0


def _sectors(maxv=2):
    return sectors_up_to((FOCK, FOCK), [Charge((1, 1))], maxv)


def test_identity_and_swap():
    secs = _sectors()
    ident = GradedOp.from_product("Id", [identity_op((FOCK, FOCK)).on(0, 1)], secs)
    P = GradedOp.from_product("P", [swap_op().on(0, 1)], secs)
    PP = compose([P, P], secs)
    II = compose([ident, ident], secs)
    for key, blk in PP.blocks.items():
        assert blk.entries == ident.blocks[key].entries == II.blocks[key].entries
    assert not P.conservation_audit()


def test_R_inverse_block():
    # R is an involution on F^3
    secs = sectors_up_to((FOCK,) * 3, R3_CHARGES, 3)
    RR = GradedOp.from_product("RR", [R3.on(0, 1, 2), R3.on(0, 1, 2)], secs)
    for (inv, outv), blk in RR.blocks.items():
        for i, r in enumerate(blk.rows):
            for j, c in enumerate(blk.cols):
                assert blk.entries[i][j] == (1 if r == c else 0)


def test_conservation_audit():
    secs = sectors_up_to((FOCK,) * 3, R3_CHARGES, 3)
    assert R3.audit([b for s in secs for b in s.basis]) == []
    op = GradedOp.from_product("R", [R3.on(0, 1, 2)], secs)
    assert op.conservation_audit() == []


def _rand_op(seed):
    def kernel(idx, seed=seed):
        i, j = idx
        out = [((i, j), q ** ((seed + i) % 3))]
        if i > 0:
            out.append(((i - 1, j + 1), RatFunc(seed + 1) * q**j))
        return out

    return LocalOp(f"X{seed}", (FOCK, FOCK), kernel, (Charge((1, 1)),))


@given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 5))
@settings(max_examples=15, deadline=None)
def test_compose_associative(s1, s2, s3):
    secs = _sectors(3)
    A, B, C = (GradedOp.from_product(f"X{s}", [_rand_op(s).on(0, 1)], secs) for s in (s1, s2, s3))
    left = compose([compose([A, B], secs), C], secs)
    right = compose([A, compose([B, C], secs)], secs)
    for key in set(left.blocks) | set(right.blocks):
        assert left.blocks[key].entries == right.blocks[key].entries


def test_product_order():
    # rightmost factor acts first
    up = LocalOp("up", (FOCK,), lambda idx: [((idx[0] + 1,), RatFunc(1))])
    k = LocalOp("k", (FOCK,), lambda idx: [(idx, q ** idx[0])])
    assert apply_product([k.on(0), up.on(0)], basis_vec((0,))) == {(1,): q}
    assert apply_product([up.on(0), k.on(0)], basis_vec((0,))) == {(1,): RatFunc(1)}


def test_block_json():
    secs = _sectors(1)
    P = GradedOp.from_product("P", [swap_op().on(0, 1)], secs)
    data = json.loads(P.block_json((1,)))
    assert data["rows"] == [[0, 1], [1, 0]]
    assert data["entries"] == [["0", "1"], ["1", "0"]]
