import pytest
from hypothesis import given, strategies as st

from qtoroidal.coeff import ONE, Q, ZERO, QRat, qpow, vpow
from qtoroidal.series import (
    TruncSeries,
    contraction,
    g_series,
    ope_factor,
    qpow_homog,
    qpow_homog_product,
    qpow_twisted,
    series_exp,
    series_log,
)
from conftest import qrats


@given(st.lists(qrats, min_size=1, max_size=6))
def test_exp_log_round_trip(tail):
    s = TruncSeries((ZERO, *tail), "z")
    assert series_log(series_exp(s)) == s


def test_exp_rejects_constant_term():
    with pytest.raises(ValueError):
        series_exp(TruncSeries((ONE, ONE)))
    with pytest.raises(ValueError):
        series_log(TruncSeries((ZERO, ONE)))


@pytest.mark.parametrize("r", [-2, -1, 0, 1, 2])
def test_homogeneous_against_euler_product(r):
    assert qpow_homog(r, 10) == qpow_homog_product(r, 10)


@given(st.integers(-4, 4))
def test_negating_r_inverts(r):
    one = TruncSeries.one(6)
    assert qpow_homog(r, 6) * qpow_homog(-r, 6) == one
    assert qpow_twisted(r, 6) * qpow_twisted(-r, 6) == one


def test_r_one_is_classical():
    assert qpow_homog(1, 6) == TruncSeries.from_terms({0: ONE, 1: -ONE}, 6)


def test_twisted_r1_is_classical():
    tw = qpow_twisted(1, 15)
    assert tw[0] == ONE
    assert all(tw[n] == QRat(2 * (-1) ** n) for n in range(1, 16))


def test_g_series_leading_terms():
    a = -1
    g = g_series(a, 4)
    assert g[0] == ONE
    assert g[1] == (qpow(-a) - qpow(a)) * 2
    # G(x) G(1/x) = 1 makes G(x)^-1 the series of G with q -> q^-1 orientation
    assert (g * g_series(a, 4).map_coeffs(lambda c: c.v_reflect())) == TruncSeries.one(4, "x")


def test_pairing_minus_one_closed_forms():
    same = ope_factor(-1, 1, 1, 6)
    assert all(same[k] == vpow(-2 * k) * 2 for k in range(1, 7))
    mixed = ope_factor(-1, 1, -1, 6)
    assert all(mixed[k] == QRat(2 * (-1) ** k) for k in range(1, 7))
    with pytest.raises(ValueError):
        contraction(1, "other", 0, 3)


def test_inverse_and_errors():
    s = TruncSeries.from_terms({0: Q, 1: ONE}, 5)
    assert s * s.inverse() == TruncSeries.one(5)
    with pytest.raises(ZeroDivisionError):
        TruncSeries.from_terms({1: ONE}, 3).inverse()
    with pytest.raises(IndexError):
        s[6]
