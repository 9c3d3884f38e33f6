import pytest

from qtoroidal.coeff import ONE, vpow
from qtoroidal.fock import BasisState, FockVector, vacuum
from qtoroidal.vertex import normal_pair_mode, phi_psi_mode, product_mode, vertex_mode


def test_first_mode_on_vacuum(A1):
    out = vertex_mode(A1, (1,), 1, -1, vacuum((0,)))
    assert out == FockVector({BasisState(((0, 1),), (1,)): vpow(-1) * 2})


def test_modes_vanish_above_degree(A2):
    v = vacuum((0, 0))
    assert not vertex_mode(A2, (1, 0), 1, 1, v)
    assert vertex_mode(A2, (1, 0), -1, 0, v) == vacuum((-1, 0))


def test_phi_psi_zero_modes_are_identity(A2):
    v = FockVector({BasisState(((0, 1), (1, 3)), (0, 0)): ONE})
    assert phi_psi_mode(A2, (1, 0), "phi", 0, v) == v
    assert phi_psi_mode(A2, (1, 0), "psi", 0, v) == v
    assert not phi_psi_mode(A2, (1, 0), "psi", 5, v)
    with pytest.raises(ValueError):
        phi_psi_mode(A2, (1, 0), "phi", -1, v)
    with pytest.raises(ValueError):
        phi_psi_mode(A2, (1, 0), "chi", 0, v)


def test_normal_order_of_orthogonal_operators_is_the_product(A3):
    # (a1|a3) = 0 so the contraction is 1
    v = vacuum((0, 0, 0))
    for m in (-2, -1, 0):
        for n in (-2, -1, 0):
            assert normal_pair_mode(A3, ((1, 0, 0), 1), ((0, 0, 1), 1), m, n, v) == product_mode(
                A3, [((1, 0, 0), 1), ((0, 0, 1), 1)], [m, n], v
            )


def test_product_mode_errors(A1):
    with pytest.raises(ValueError):
        product_mode(A1, [], [], vacuum((0,)))
    with pytest.raises(ValueError):
        product_mode(A1, [((1,), 1)], [0, 1], vacuum((0,)))
    with pytest.raises(ValueError):
        vertex_mode(A1, (1,), 2, 0, vacuum((0,)))
