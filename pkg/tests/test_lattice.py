import json

import pytest
from hypothesis import given, strategies as st

from qtoroidal.lattice import CartanData, CartanValidationError, cartan_load, cocycle, pairing


def test_builtin_types():
    assert cartan_load("A3").matrix == ((2, -1, 0), (-1, 2, -1), (0, -1, 2))
    d4 = cartan_load("D4").matrix
    assert sum(a == -1 for row in d4 for a in row) == 6
    e8 = cartan_load("E8")
    assert e8.rank == 8
    with pytest.raises(CartanValidationError):
        cartan_load("B2")


@pytest.mark.parametrize(
    "matrix",
    [((2, -1), (0, 2)), ((2, 1), (1, 2)), ((1, 0), (0, 2)), ((2, 0),)],
)
def test_validation_rejects(matrix):
    with pytest.raises(CartanValidationError):
        CartanData(matrix)


def test_json_file(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"matrix": [[2, -1], [-1, 2]]}))
    assert cartan_load(str(path)).matrix == cartan_load("A2").matrix
    path.write_text(json.dumps([[2]]))
    with pytest.raises(CartanValidationError):
        cartan_load(str(path))


def test_extra_node(A2):
    ext = A2.with_extra_node(0, (-1, -1))
    assert ext.nodes()[-1] == (0, (-1, -1))
    assert pairing(ext, (-1, -1), (-1, -1)) == 2
    with pytest.raises(CartanValidationError):
        A2.with_extra_node(0, (1,))


elts = st.tuples(*[st.integers(-5, 5)] * 3)


@given(elts, elts, elts)
def test_cocycle_bimultiplicative(a, b, c):
    A3 = cartan_load("A3")
    ab = tuple(x + y for x, y in zip(a, b))
    assert cocycle(A3, ab, c) == cocycle(A3, a, c) * cocycle(A3, b, c)
    assert cocycle(A3, c, ab) == cocycle(A3, c, a) * cocycle(A3, c, b)


@given(elts, elts)
def test_cocycle_commutator(a, b):
    A3 = cartan_load("A3")
    assert cocycle(A3, a, b) * cocycle(A3, b, a) == (-1) ** (pairing(A3, a, b) % 2)


def test_rank_mismatch(A2):
    with pytest.raises(ValueError):
        pairing(A2, (1,), (1, 0))
