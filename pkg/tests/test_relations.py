import json

import pytest

from qtoroidal.coeff import ONE, vpow
from qtoroidal.fock import FockVector, vacuum
from qtoroidal.polyring import MPoly
from qtoroidal.relations import (
    DELTA_SCALAR,
    MUTATIONS,
    check_cocycle,
    check_delta,
    check_heisenberg,
    check_locality,
    check_normal_ordered,
    check_ope,
    check_phipsi,
    check_serre_operator,
    check_serre_symbolic,
    check_series_oracle,
    test_vectors as make_vectors,
)
from qtoroidal.relations import _vec_label
from qtoroidal.vertex import phi_psi_mode, product_mode, vertex_mode


def small_checks(c):
    """Every checker at a window small enough for the unit suite."""
    return {
        "heisenberg": lambda m=None: check_heisenberg(c, 3, 3, mutate=m),
        "cocycle": lambda m=None: check_cocycle(c, 50, mutate=m),
        "series-oracle": lambda m=None: check_series_oracle(6, 8, mutate=m),
        "ope": lambda m=None: check_ope(c, 2, 1, mutate=m),
        "locality": lambda m=None: check_locality(c, 2, 1, mutate=m),
        "delta": lambda m=None: check_delta(c, 1, 2, 1, mutate=m),
        "phipsi": lambda m=None: check_phipsi(c, 2, 1, None, mutate=m),
        "normal-ordered": lambda m=None: check_normal_ordered(c, 3, mutate=m),
        "serre-sym": lambda m=None: check_serre_symbolic(2, mutate=m),
        "serre-op": lambda m=None: check_serre_operator(c, 2, mutate=m),
    }


@pytest.mark.parametrize("suite", [s for s in MUTATIONS if s != "serre-op"])
def test_small_windows_pass(A2, suite):
    report = small_checks(A2)[suite]()
    assert report.status == "pass", report.summary_line()
    assert report.details["compared"] > 0


@pytest.mark.parametrize("suite", list(MUTATIONS))
def test_mutations_are_detected(A2, suite):
    for name in MUTATIONS[suite]:
        report = small_checks(A2)[suite](name)
        assert report.status == "fail"
        assert report.witness is not None


@pytest.mark.parametrize("D", [1, 2, 3])
def test_window_monotonicity(A1, D):
    assert check_ope(A1, D, 1).passed
    assert check_delta(A1, 1, D, 1).passed


def test_flipped_psi_exponent_fails(A1):
    assert check_phipsi(A1, 2, 1, None).passed
    assert check_phipsi(A1, 2, 1, None, psi_exponent=1).status == "fail"
    with pytest.raises(ValueError):
        check_phipsi(A1, psi_exponent=2)


def test_locality_skips_missing_branches(A1):
    report = check_locality(A1, 2, 1)
    assert report.passed
    assert report.details["branches"]["orthogonal"].startswith("skipped")
    assert check_serre_operator(A1).details["skipped"]


def test_report_json_schema(A1):
    doc = check_delta(A1, 1, 1, 1, mutate="scalar_one").to_json()
    json.dumps(doc)
    assert set(doc) >= {"suite", "params", "status", "witness", "ms"}
    assert set(doc["witness"]) >= {"modes", "state", "expected", "actual"}


def _vector(c, label, degree):
    for v in make_vectors(c, degree):
        if _vec_label(v, c.labels) == label:
            return v
    raise LookupError(label)


def _coeff_at(vec: FockVector, rendered: str, c) -> str:
    for st, cf in vec:
        if st.render(c.labels) == rendered:
            return str(cf)
    return "0"


def test_delta_witness_recomputes(A2):
    report = check_delta(A2, 1, 2, 2, mutate="scalar_one")
    w = report.witness
    v = _vector(A2, w.vector, 2)
    a = (1, 0)
    m, n = w.modes["m"], w.modes["n"]
    lhs = vertex_mode(A2, a, 1, m, vertex_mode(A2, a, -1, n, v)) - vertex_mode(A2, a, -1, n, vertex_mode(A2, a, 1, m, v))
    N = m + n
    rhs = FockVector()
    if N >= 0:
        rhs = rhs + phi_psi_mode(A2, a, "psi", N, v).scale(vpow(N - 2 * n))
    if N <= 0:
        rhs = rhs - phi_psi_mode(A2, a, "phi", -N, v).scale(vpow(2 * n - N))
    assert _coeff_at(lhs, w.state, A2) == w.actual
    assert _coeff_at(rhs, w.state, A2) == w.expected
    # the unmutated scalar reconciles the two sides
    assert lhs == rhs.scale(DELTA_SCALAR)


def test_heisenberg_witness_recomputes(A2):
    w = check_heisenberg(A2, 1, 1, mutate="drop_half").witness
    assert (w.modes["m"], w.modes["n"]) == (1, -1)
    assert w.state == "|0>"


def test_serre_operator_witness_recomputes(A2):
    report = check_serre_operator(A2, 3)
    w = report.witness
    assert report.status == "fail"
    n1, n2, n3 = w.modes["n"]
    s = w.modes["sign"]
    vars = ("z1", "z2")
    z1, z2 = MPoly.var("z1", vars), MPoly.var("z2", vars)
    a, b = (1, 0), (0, 1)
    prefactor = (z1 + z2.scale(vpow(-4 * s))) * (z2 - z1.scale(vpow(-4 * s)))
    total = FockVector()
    for first, second in (("z1", "z2"), ("z2", "z1")):
        x1, x2 = MPoly.var(first, vars), MPoly.var(second, vars)
        p = prefactor
        if first == "z2":
            p = MPoly(vars, {(e[1], e[0]): cf for e, cf in prefactor.terms.items()})
        pieces = [
            (p * x2, [(a, s, first), (a, s, second), (b, s, "w")]),
            (-(p * (x1 + x2)), [(a, s, first), (b, s, "w"), (a, s, second)]),
            (p * x1, [(b, s, "w"), (a, s, first), (a, s, second)]),
        ]
        for poly, order in pieces:
            for e, cf in poly.terms.items():
                shift = {"z1": e[0], "z2": e[1], "w": 0}
                base = {"z1": n1, "z2": n2, "w": n3}
                modes = [base[x] + shift[x] for _, _, x in order]
                ops = [(al, sg) for al, sg, _ in order]
                total = total + product_mode(A2, ops, modes, vacuum((0, 0))).scale(cf)
    assert total
    assert _coeff_at(total, w.state, A2) == w.actual


def test_symbolic_serre_witness(A2):
    report = check_serre_symbolic(1)
    assert report.status == "fail"
    assert report.witness.modes["monomial"] == {"z1": 3, "z2": 0, "w": 3}
    with pytest.raises(ValueError):
        check_serre_symbolic(0)
