"""Acceptance suite: one numbered PASS/FAIL line per criterion, exact comparisons throughout.

Criteria 1 and 11 are expected to fail: the symmetrized cubic Serre bracket
is not the zero polynomial, and the representation agrees with that.
"""
import time

from qtoroidal.coeff import QRat
from qtoroidal.polyring import serre_f_check, serre_poly_k1
from qtoroidal.relations import (
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
)
from qtoroidal.series import qpow_homog, qpow_homog_product, qpow_twisted


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_criterion_01_cubic_serre_polynomial(criterion):
    poly, secs = timed(serre_poly_k1)
    ok = poly.is_zero() and secs < 1
    criterion(1, f"symmetrized cubic Serre bracket is zero ({len(poly)} nonzero terms, {secs:.2f}s)", ok)
    assert ok, f"nonzero: {poly}"


def test_criterion_02_higher_serre_polynomials(criterion):
    results = {}
    for k in (2, 3):
        poly, secs = timed(lambda: serre_f_check(k))
        results[k] = (poly.is_zero(), secs)
    ok = all(z for z, _ in results.values()) and results[3][1] < 60
    criterion(2, f"antisymmetrized f vanishes for k=2,3 (k=3 in {results[3][1]:.2f}s)", ok)
    assert ok


def test_criterion_03_series_oracles(criterion):
    homog = all(qpow_homog(r, 12) == qpow_homog_product(r, 12) for r in range(-2, 3))
    tw = qpow_twisted(1, 20)
    classical = all(tw[n] == QRat(1 if n == 0 else 2 * (-1) ** n) for n in range(21))
    ok = homog and classical and check_series_oracle(12, 20).passed
    criterion(3, "exponential vs product forms for r in -2..2 at order 12; twisted r=1 to order 20", ok)
    assert ok


def test_criterion_04_heisenberg(criterion, A1, A2):
    reports = [check_heisenberg(c, 5, 7) for c in (A1, A2)]
    secs = sum(r.ms for r in reports) / 1000
    ok = all(r.passed for r in reports) and secs < 30
    criterion(4, f"Heisenberg brackets on A1, A2 with M=5, D=7 ({secs:.1f}s)", ok)
    assert ok, [r.summary_line() for r in reports]


def test_criterion_05_cocycle(criterion, A3):
    r = check_cocycle(A3, 1000)
    criterion(5, "bimultiplicativity and commutator sign on 1000 random A3 pairs", r.passed)
    assert r.passed, r.summary_line()


def test_criterion_06_ope(criterion, A1, A2):
    reports = [check_ope(c, 5) for c in (A1, A2)]
    secs = sum(r.ms for r in reports) / 1000
    ok = all(r.passed for r in reports) and secs < 120
    criterion(6, f"operator products on A1, A2 at D=5, all sign pairs ({secs:.1f}s)", ok)
    assert ok, [r.summary_line() for r in reports]


def test_criterion_07_normal_ordered_phi_psi(criterion, A1, A2):
    reports = [check_normal_ordered(c, 8) for c in (A1, A2)]
    ok = all(r.passed for r in reports)
    n = sum(r.details["coefficients"] for r in reports)
    criterion(7, f"normal-ordered X+X- equals phi/psi to degree 8 on A1, A2 ({n} coefficients)", ok)
    assert ok, [r.summary_line() for r in reports]


def test_criterion_08_delta(criterion, A1, A2):
    reports = [check_delta(c, None, 3, 3) for c in (A1, A2)]
    ok = all(r.passed for r in reports)
    criterion(8, "[X+, X-] delta terms with scalar 2(q+q^-1)/(q-q^-1), M=3, D=3", ok)
    assert ok, [r.summary_line() for r in reports]


def test_criterion_09_locality(criterion, A3):
    r = check_locality(A3, 4)
    branches = r.details.get("branches", {})
    ok = r.passed and branches.get("orthogonal") == "pass" and branches.get("adjacent") == "pass"
    criterion(9, f"locality on A3 at D=4, branches {branches}", ok)
    assert ok, r.summary_line()


def test_criterion_10_conjugation(criterion, A2):
    r = check_phipsi(A2, 6, normal_degree=None)
    criterion(10, "phi/psi commutation and conjugation of X on A2 at D=6", r.passed)
    assert r.passed, r.summary_line()


def test_criterion_11_operator_serre(criterion, A2):
    r, secs = timed(lambda: check_serre_operator(A2, 3))
    sym = check_serre_symbolic(1)
    agree = r.passed == sym.passed
    ok = r.passed and agree and secs < 300
    text = f"cubic Serre relation on the A2 vacuum at D=3 (symbolic and operator agree: {agree})"
    criterion(11, text, ok)
    assert ok, r.summary_line()


def test_criterion_12_mutations(criterion, A2):
    mutated = {
        "heisenberg": check_heisenberg(A2, 5, 3, mutate="drop_half"),
        "cocycle": check_cocycle(A2, 1000, mutate="commutator_sign"),
        "series-oracle": check_series_oracle(mutate="exp_sign"),
        "ope": check_ope(A2, 5, mutate="pairing_sign"),
        "locality": check_locality(A2, 4, mutate="z_minus_w"),
        "delta": check_delta(A2, None, 3, 3, mutate="scalar_one"),
        "phipsi": check_phipsi(A2, 6, normal_degree=None, mutate="g1_negated"),
        "normal-ordered": check_normal_ordered(A2, 8, mutate="shift_sign"),
        "serre-sym k=1": check_serre_symbolic(1, mutate="q_slot"),
        "serre-sym k=2": check_serre_symbolic(2, mutate="q_slot"),
        "serre-sym k=3": check_serre_symbolic(3, mutate="q_slot"),
        "serre-op": check_serre_operator(A2, 3, mutate="prefactor"),
    }
    missed = [k for k, r in mutated.items() if r.status != "fail" or r.witness is None]
    ok = not missed
    criterion(12, f"every mutated checker fails with a witness (missed: {missed or 'none'})", ok)
    assert ok
