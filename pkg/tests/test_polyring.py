import pytest
from hypothesis import given, strategies as st

from qtoroidal.coeff import ONE, Q, ZERO, vpow
from qtoroidal.polyring import (
    MPoly,
    antisymmetrize,
    perm_sign,
    qbracket_poly,
    serre_f_check,
    serre_poly_k1,
    sym_action,
    symmetrize,
)

VARS = ("x", "y", "z")
monos = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
    st.integers(-4, 4).filter(bool),
    max_size=5,
)


@given(monos)
def test_antisymmetrizer_changes_sign_under_transpositions(terms):
    p = MPoly(VARS, {e: c for e, c in terms.items()})
    a = antisymmetrize(p, VARS)
    assert sym_action((1, 0, 2), a, VARS) == -a
    assert sym_action((0, 2, 1), a, VARS) == -a
    s = symmetrize(p, VARS)
    assert sym_action((2, 0, 1), s, VARS) == s


def test_perm_sign():
    assert perm_sign((0, 1, 2)) == 1
    assert perm_sign((1, 0, 2)) == -1
    assert perm_sign((1, 2, 0)) == 1


def test_qbracket():
    p = qbracket_poly("z", "w", 2)
    z, w = MPoly.var("z", ("z", "w")), MPoly.var("w", ("z", "w"))
    assert p == (z - w) * (z - w.scale(Q * Q))
    with pytest.raises(ValueError):
        qbracket_poly("z", "w", 0)


@pytest.mark.parametrize("k", [2, 3])
def test_serre_f_antisymmetrizes_to_zero(k):
    assert serre_f_check(k).is_zero()


def test_serre_f_rejects_small_k():
    with pytest.raises(ValueError):
        serre_f_check(1)


def test_cubic_bracket_value():
    # the symmetrized cubic bracket, exactly as built, is -4 (q - q^-1) q^-2 w^3 (z1-z2)^2 (z1+z2)
    vars = ("z1", "z2", "w")
    z1, z2, w = (MPoly.var(v, vars) for v in vars)
    expected = (w ** 3 * (z1 - z2) ** 2 * (z1 + z2)).scale((Q - Q.inverse()) * vpow(-4) * -4)
    assert serre_poly_k1() == expected


def test_specialize_q1():
    p = serre_poly_k1()
    assert all(v == 0 for v in p.specialize_q1().values())
