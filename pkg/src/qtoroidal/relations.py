"""Verification suites for the level-one Fock representation.

Every checker compares exact coefficients and stops at the first mismatch,
which is returned as the report's witness.  Relations involving formal
distributions are checked mode by mode after multiplying through, so no
delta function or two-variable series division is ever materialized.

Each checker accepts ``mutate=<name>`` to perturb the scalar or prefactor
that the relation hinges on; the perturbed checker must fail.  This guards
against checks that pass vacuously.
"""
from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass, field
from itertools import product
from typing import Callable, Iterable, Sequence

from .coeff import ONE, ZERO, Q, QRat, qint, vpow
from .fock import (
    BasisState,
    FockVector,
    basis_states,
    degree,
    group_apply,
    heis_apply,
    vacuum,
)
from .lattice import CartanData, cocycle, pairing
from .polyring import MPoly, serre_f_check, serre_poly_k1
from .series import (
    TruncSeries,
    g_series,
    ope_factor,
    qpow_homog,
    qpow_homog_product,
    qpow_twisted,
)
from .vertex import normal_pair_mode, phi_psi_mode, product_mode, vertex_mode

__all__ = [
    "CheckReport",
    "Witness",
    "test_vectors",
    "check_heisenberg",
    "check_cocycle",
    "check_series_oracle",
    "check_ope",
    "check_locality",
    "check_delta",
    "check_phipsi",
    "check_normal_ordered",
    "check_serre_symbolic",
    "check_serre_operator",
    "MUTATIONS",
]

MUTATIONS = {
    "heisenberg": ("drop_half",),
    "cocycle": ("commutator_sign",),
    "series-oracle": ("exp_sign",),
    "ope": ("pairing_sign",),
    "locality": ("z_minus_w",),
    "delta": ("scalar_one",),
    "phipsi": ("g1_negated",),
    "normal-ordered": ("shift_sign",),
    "serre-sym": ("q_slot",),
    "serre-op": ("prefactor",),
}


@dataclass
class Witness:
    modes: dict
    state: str
    expected: str
    actual: str
    vector: str = ""


@dataclass
class CheckReport:
    suite: str
    params: dict
    status: str = "pass"
    witness: Witness | None = None
    ms: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "params": self.params,
            "status": self.status,
            "witness": asdict(self.witness) if self.witness else None,
            "ms": round(self.ms, 1),
        }
        if self.details:
            out["details"] = self.details
        return out

    def summary_line(self) -> str:
        line = f"[{self.status:>12}] {self.suite} {self.params}"
        if self.witness:
            w = self.witness
            line += f"\n    first mismatch at {w.modes} on {w.state}: expected {w.expected}, got {w.actual}"
        return line


class _Mismatch(Exception):
    def __init__(self, witness: Witness):
        self.witness = witness


class _Run:
    """Counts comparisons and raises on the first mismatch."""

    def __init__(self, labels: Sequence[int] = ()):
        self.count = 0
        self.labels = tuple(labels) or None

    def vectors(self, actual: FockVector, expected: FockVector, modes: dict, vector: str = "") -> None:
        self.count += 1
        if actual == expected:
            return
        states = set(actual.terms) | set(expected.terms)
        for st in sorted(states, key=lambda s: (degree(s), s)):
            a, e = actual[st], expected[st]
            if a != e:
                raise _Mismatch(Witness(modes, st.render(self.labels), str(e), str(a), vector))

    def scalars(self, actual, expected, modes: dict, state: str = "", vector: str = "") -> None:
        self.count += 1
        if actual != expected:
            raise _Mismatch(Witness(modes, state, str(expected), str(actual), vector))


def _finish(suite: str, params: dict, body: Callable[[_Run], dict | None], labels=()) -> CheckReport:
    t0 = time.perf_counter()
    run = _Run(labels)
    report = CheckReport(suite, params)
    try:
        extra = body(run) or {}
        report.details.update(extra)
    except _Mismatch as exc:
        report.status = "fail"
        report.witness = exc.witness
    report.details["compared"] = run.count
    report.ms = (time.perf_counter() - t0) * 1000
    return report


def _vec_label(v: FockVector, labels=None) -> str:
    return " + ".join(
        (s.render(labels) if c == ONE else f"({c})*{s.render(labels)}") for s, c in v.sorted_terms()
    )


def test_vectors(
    c: CartanData, max_degree: int, lattice_degree: int | None = None
) -> list[FockVector]:
    """Heisenberg monomials on a few lattice vacua.

    Monomials of degree ``<= max_degree`` sit on the zero lattice vector;
    the lattice vectors ``alpha_i`` and ``alpha_i + alpha_j`` carry monomials
    of degree ``<= lattice_degree`` (default: vacuum only).
    """
    if lattice_degree is None:
        lattice_degree = 0
    zero = tuple(0 for _ in range(c.rank))
    lattices = [zero]
    nodes = [vec for _, vec in c.nodes()]
    for i, a in enumerate(nodes):
        lattices.append(a)
        for b in nodes[i + 1:]:
            lattices.append(tuple(x + y for x, y in zip(a, b)))
    states = basis_states(c.rank, max_degree, [zero])
    for lat in dict.fromkeys(lattices[1:]):
        states += basis_states(c.rank, lattice_degree, [lat])
    return [FockVector._wrap({s: ONE}) for s in dict.fromkeys(states)]


def _node_pairs(c: CartanData):
    nodes = c.nodes()
    return [(a, b) for a in nodes for b in nodes]


def _status_for(c: CartanData, report: CheckReport) -> CheckReport:
    if c.extra_nodes:
        report.params["extra_nodes"] = {str(lab): list(vec) for lab, vec in c.extra_nodes}
        report.details["outcome"] = report.status
        report.status = "beyond-paper"
    return report


def _odd_modes(bound: int) -> list[int]:
    out = []
    for m in range(1, bound + 1, 2):
        out += [m, -m]
    return out


# -- Heisenberg and lattice -----------------------------------------------------

def _heis_expected(a_ij: int, m: int, mutate: str | None) -> QRat:
    # [(a_i|a_j) m]/(2m) * (gamma^m - gamma^-m)/(q - q^-1) at gamma = q
    gamma_part = (Q ** m - Q ** (-m)) / (Q - Q.inverse())
    denom = m if mutate == "drop_half" else 2 * m
    return qint(a_ij * m) / denom * gamma_part


def check_heisenberg(c: CartanData, modes: int = 5, degree_bound: int = 7, mutate: str | None = None) -> CheckReport:
    """``[a_i(m), a_j(n)] v = delta_{m,-n} [a_ij m]/(2m) [m] v`` on all states up to degree."""
    zero = tuple(0 for _ in range(c.rank))
    states = basis_states(c.rank, degree_bound, [zero])
    mlist = _odd_modes(modes)

    def body(run: _Run):
        for (li, ai), (lj, aj) in _node_pairs(c):
            a_ij = pairing(c, ai, aj)
            for m in mlist:
                for n in mlist:
                    scalar = _heis_expected(a_ij, m, mutate) if m == -n else ZERO
                    for st in states:
                        v = FockVector._wrap({st: ONE})
                        lhs = heis_apply(c, ai, m, heis_apply(c, aj, n, v)) - heis_apply(
                            c, aj, n, heis_apply(c, ai, m, v)
                        )
                        run.vectors(lhs, v.scale(scalar), {"i": li, "j": lj, "m": m, "n": n}, str(st))
        # the central element acts by the fixed scalar q, so [a_i(m), gamma] = 0 holds by construction
        return {"states": len(states), "central": "gamma -> q (scalar)"}

    params = {"cartan": c.name, "modes": modes, "degree": degree_bound}
    if mutate:
        params["mutate"] = mutate
    return _status_for(c, _finish("heisenberg", params, body, c.labels))


def check_cocycle(c: CartanData, samples: int = 1000, seed: int = 0, mutate: str | None = None) -> CheckReport:
    """Bimultiplicativity of the section and the twisted commutator of group elements."""
    rng = random.Random(seed)

    def rand_elt():
        return tuple(rng.randint(-4, 4) for _ in range(c.rank))

    def body(run: _Run):
        for _ in range(samples):
            a, b, g = rand_elt(), rand_elt(), rand_elt()
            ab = tuple(x + y for x, y in zip(a, b))
            run.scalars(cocycle(c, ab, g), cocycle(c, a, g) * cocycle(c, b, g), {"a": a, "b": b, "c": g}, "left")
            run.scalars(cocycle(c, g, ab), cocycle(c, g, a) * cocycle(c, g, b), {"a": a, "b": b, "c": g}, "right")
            expected = (-1) ** (pairing(c, a, b) % 2)
            if mutate == "commutator_sign":
                expected = -expected
            run.scalars(cocycle(c, a, b) * cocycle(c, b, a), expected, {"a": a, "b": b}, "commutator")
            # operator form: e^a e^b = (-1)^(a|b) e^b e^a on a random vacuum
            v = vacuum(g)
            lhs = group_apply(c, a, 1, group_apply(c, b, 1, v))
            rhs = group_apply(c, b, 1, group_apply(c, a, 1, v)).scale(expected)
            run.vectors(lhs, rhs, {"a": a, "b": b}, f"|{g}>")
        return {"samples": samples, "seed": seed}

    params = {"cartan": c.name, "samples": samples}
    if mutate:
        params["mutate"] = mutate
    return _finish("cocycle", params, body, c.labels)


# -- series -----------------------------------------------------------------------

def check_series_oracle(bound: int = 12, twisted_bound: int = 20, mutate: str | None = None) -> CheckReport:
    """Exponential vs product forms of ``(1-z)^r_{q^2}``, and the twisted analogue."""

    def body(run: _Run):
        for r in range(-2, 3):
            lhs = qpow_homog(r, bound)
            if mutate == "exp_sign":
                lhs = qpow_homog(-r, bound)
            rhs = qpow_homog_product(r, bound)
            for n in range(bound + 1):
                run.scalars(lhs[n], rhs[n], {"r": r, "n": n}, "homogeneous")
            tw = qpow_twisted(r, bound)
            flipped = lhs.substitute_scale(-ONE)
            ratio = lhs / flipped
            for n in range(bound + 1):
                run.scalars(tw[n], ratio[n], {"r": r, "n": n}, "twisted = homog(z)/homog(-z)")
        tw1 = qpow_twisted(1, twisted_bound)
        if mutate == "exp_sign":
            tw1 = qpow_twisted(-1, twisted_bound)
        for n in range(twisted_bound + 1):
            classical = QRat(1 if n == 0 else 2 * (-1) ** n)
            run.scalars(tw1[n], classical, {"r": 1, "n": n}, "(1-z)/(1+z)")
        return {"r": [-2, -1, 0, 1, 2]}

    params = {"bound": bound, "twisted_bound": twisted_bound}
    if mutate:
        params["mutate"] = mutate
    return _finish("series-oracle", params, body)


# -- vertex operators ---------------------------------------------------------------

def _specialization_checks(run: _Run, bound: int) -> None:
    """Pairing -1 contractions against their closed rational forms."""
    for s in (1, -1):
        # (z + q^-s w)/(z - q^-s w) = 1 + 2 sum_{k>=1} (q^-s x)^k
        ser = ope_factor(-1, s, s, bound)
        for k in range(bound + 1):
            expected = ONE if k == 0 else vpow(-2 * s * k) * 2
            run.scalars(ser[k], expected, {"pairing": -1, "signs": (s, s), "k": k}, "closed form")
        # (z - w)/(z + w) = 1 + 2 sum_{k>=1} (-x)^k
        ser = ope_factor(-1, s, -s, bound)
        for k in range(bound + 1):
            expected = ONE if k == 0 else QRat(2 * (-1) ** k)
            run.scalars(ser[k], expected, {"pairing": -1, "signs": (s, -s), "k": k}, "closed form")


def check_ope(c: CartanData, degree_bound: int = 5, vector_degree: int = 2, mutate: str | None = None) -> CheckReport:
    """``X_a^s(z) X_b^t(w) = :X_a^s(z) X_b^t(w): * contraction(w/z)`` coefficientwise.

    For test vector ``v`` of degree ``d`` and ``|m|, |n| <= degree_bound``
    with ``d - m - n >= 0``:

        X_a(m) X_b(n) v = sum_{k=0}^{d-n} C_k :X_a X_b:(m - k, n + k) v
    """
    vectors = test_vectors(c, vector_degree)
    D = degree_bound
    cbound = vector_degree + D + 1

    def body(run: _Run):
        _specialization_checks(run, 8)
        for (la, a), (lb, b) in _node_pairs(c):
            p = pairing(c, a, b)
            for s, t in product((1, -1), repeat=2):
                C = ope_factor(-p if mutate == "pairing_sign" else p, s, t, cbound)
                for v in vectors:
                    d = max(v.degrees())
                    for m in range(-D, D + 1):
                        for n in range(-D, D + 1):
                            if d - m - n < 0:
                                continue
                            lhs = vertex_mode(c, a, s, m, vertex_mode(c, b, t, n, v))
                            rhs = FockVector()
                            for k in range(0, d - n + 1):
                                if C[k]:
                                    rhs = rhs + normal_pair_mode(c, (a, s), (b, t), m - k, n + k, v).scale(C[k])
                            run.vectors(
                                lhs, rhs,
                                {"i": la, "j": lb, "signs": (s, t), "m": m, "n": n},
                                _vec_label(v, c.labels),
                            )
        return {"vectors": len(vectors)}

    params = {"cartan": c.name, "degree": degree_bound, "vector_degree": vector_degree}
    if mutate:
        params["mutate"] = mutate
    return _status_for(c, _finish("ope", params, body, c.labels))


def _commutator(c, first, second, m, n, v) -> FockVector:
    (a, s), (b, t) = first, second
    return vertex_mode(c, a, s, m, vertex_mode(c, b, t, n, v)) - vertex_mode(
        c, b, t, n, vertex_mode(c, a, s, m, v)
    )


def check_locality(c: CartanData, degree_bound: int = 4, vector_degree: int | None = None, mutate: str | None = None) -> CheckReport:
    """Orthogonal pairs commute; for pairing -1, ``(z + w)[X_i^+(z), X_j^-(w)] = 0``.

    The second relation in modes: ``[X_i^+(m+1), X_j^-(n)] + [X_i^+(m), X_j^-(n+1)] = 0``.
    """
    D = degree_bound
    vectors = test_vectors(c, D if vector_degree is None else vector_degree)
    nodes = c.nodes()
    orth = [(x, y) for x in nodes for y in nodes if x[0] != y[0] and pairing(c, x[1], y[1]) == 0]
    adj = [(x, y) for x in nodes for y in nodes if x[0] != y[0] and pairing(c, x[1], y[1]) == -1]
    w_sign = -1 if mutate == "z_minus_w" else 1

    def window(v):
        d = max(v.degrees())
        for m in range(-D, D + 1):
            for n in range(-D, D + 1):
                if 0 <= d - m - n <= D:
                    yield m, n

    def body(run: _Run):
        branches = {}
        for (li, ai), (lj, aj) in orth:
            for s, t in ((1, 1), (-1, -1), (1, -1)):
                for v in vectors:
                    for m, n in window(v):
                        lhs = _commutator(c, (ai, s), (aj, t), m, n, v)
                        run.vectors(lhs, FockVector(), {"i": li, "j": lj, "signs": (s, t), "m": m, "n": n}, _vec_label(v, c.labels))
        branches["orthogonal"] = "pass" if orth else "skipped (no orthogonal pair)"
        for (li, ai), (lj, aj) in adj:
            for v in vectors:
                for m, n in window(v):
                    lhs = _commutator(c, (ai, 1), (aj, -1), m + 1, n, v)
                    lhs = lhs + _commutator(c, (ai, 1), (aj, -1), m, n + 1, v).scale(w_sign)
                    run.vectors(lhs, FockVector(), {"i": li, "j": lj, "m": m, "n": n}, _vec_label(v, c.labels))
        branches["adjacent"] = "pass" if adj else "skipped (no pair with pairing -1)"
        return {"branches": branches, "vectors": len(vectors)}

    params = {"cartan": c.name, "degree": degree_bound}
    if mutate:
        params["mutate"] = mutate
    return _status_for(c, _finish("locality", params, body, c.labels))


DELTA_SCALAR = (Q + Q.inverse()) * 2 / (Q - Q.inverse())


def check_delta(c: CartanData, node: int | None = None, modes: int = 3, degree_bound: int = 3, mutate: str | None = None) -> CheckReport:
    """``[X_i^+(z), X_i^-(w)]`` against the psi/phi delta-function terms at level one.

    With ``psi(q^-1/2 z) delta(q w/z)`` and ``phi(q^1/2 z) delta(q^-1 w/z)``
    the coefficient of ``z^-m w^-n`` is, writing ``N = m + n``,

        C * ( q^(N/2 - n) psi_N  -  q^(n - N/2) phi_{-(-N)} )

    with ``psi_N = 0`` for ``N < 0`` and the phi term absent for ``N > 0``.
    """
    nodes = c.nodes() if node is None else [x for x in c.nodes() if x[0] == node]
    scalar = ONE if mutate == "scalar_one" else DELTA_SCALAR
    vectors = test_vectors(c, degree_bound)
    M = modes
    pairs = sorted(product(range(-M, M + 1), repeat=2), key=lambda mn: (abs(mn[0]) + abs(mn[1]), mn))

    def body(run: _Run):
        for li, a in nodes:
            for v in vectors:
                for m, n in pairs:
                    N = m + n
                    lhs = _commutator(c, (a, 1), (a, -1), m, n, v)
                    rhs = FockVector()
                    if N >= 0:
                        rhs = rhs + phi_psi_mode(c, a, "psi", N, v).scale(vpow(N - 2 * n))
                    if N <= 0:
                        rhs = rhs - phi_psi_mode(c, a, "phi", -N, v).scale(vpow(2 * n - N))
                    run.vectors(lhs, rhs.scale(scalar), {"i": li, "m": m, "n": n}, _vec_label(v, c.labels))
        return {"nodes": [li for li, _ in nodes], "vectors": len(vectors)}

    params = {"cartan": c.name, "node": node, "modes": modes, "degree": degree_bound}
    if mutate:
        params["mutate"] = mutate
    return _status_for(c, _finish("delta", params, body, c.labels))


def _g(a: int, shift: int, power: int, bound: int, mutate: str | None) -> TruncSeries:
    """``G_a(q^(shift/2) x)^power``."""
    g = g_series(a, bound)
    if mutate == "g1_negated":
        g = TruncSeries((g[0], -g[1]) + g.coeffs[2:], g.var)
    g = g.substitute_scale(vpow(shift))
    return g ** power


def check_phipsi(
    c: CartanData,
    degree_bound: int = 6,
    vector_degree: int = 2,
    normal_degree: int | None = 8,
    mutate: str | None = None,
    psi_exponent: int = -1,
) -> CheckReport:
    """Relations among phi, psi and the vertex operators, in multiplied-through form.

    * ``phi_i`` modes commute among themselves, likewise ``psi_i``;
    * ``phi_i(z) psi_j(w) G_ij(q z/w) = psi_j(w) phi_i(z) G_ij(q^-1 z/w)``;
    * ``phi_i(z) X_j^s(w) = X_j^s(w) phi_i(z) G_ij(q^(-s/2) z/w)^s``;
    * ``psi_i(z) X_j^s(w) = X_j^s(w) psi_i(z) G_ij(q^(-s/2) w/z)^(-s)``
      (``psi_exponent=+1`` gives the exponent ``+s`` instead, which does not hold);
    * ``:X_i^+(z q^-1) X_i^-(z): = phi_i(z q^-1/2)`` and
      ``:X_i^+(z q) X_i^-(z): = psi_i(z q^1/2)`` (skipped when ``normal_degree`` is falsy).
    """
    if psi_exponent not in (1, -1):
        raise ValueError("psi_exponent must be +1 or -1")
    D = degree_bound
    vectors = test_vectors(c, vector_degree)
    gb = D + 1

    def body(run: _Run):
        pairs = _node_pairs(c)
        for (li, ai), (lj, aj) in pairs:
            a = pairing(c, ai, aj)
            gp = _g(a, 2, 1, gb, mutate)   # G(q x)
            gm = _g(a, -2, 1, gb, mutate)  # G(q^-1 x)
            for v in vectors:
                lab = _vec_label(v, c.labels)
                for A in range(D + 1):
                    for B in range(D + 1):
                        for kind in ("phi", "psi"):
                            lhs = phi_psi_mode(c, ai, kind, A, phi_psi_mode(c, aj, kind, B, v))
                            rhs = phi_psi_mode(c, aj, kind, B, phi_psi_mode(c, ai, kind, A, v))
                            run.vectors(lhs, rhs, {"rel": f"{kind}-{kind}", "i": li, "j": lj, "a": A, "b": B}, lab)
                        lhs, rhs = FockVector(), FockVector()
                        for k in range(min(A, B) + 1):
                            if gp[k]:
                                lhs = lhs + phi_psi_mode(c, ai, "phi", A - k, phi_psi_mode(c, aj, "psi", B - k, v)).scale(gp[k])
                            if gm[k]:
                                rhs = rhs + phi_psi_mode(c, aj, "psi", B - k, phi_psi_mode(c, ai, "phi", A - k, v)).scale(gm[k])
                        run.vectors(lhs, rhs, {"rel": "phi-psi", "i": li, "j": lj, "a": A, "b": B}, lab)
            for s in (1, -1):
                h_phi = _g(a, -s, s, gb, mutate)
                h_psi = _g(a, -s, psi_exponent * s, gb, mutate)
                for v in vectors:
                    lab = _vec_label(v, c.labels)
                    d = max(v.degrees())
                    for A in range(D + 1):
                        for n in range(-D, D + 1):
                            if d - n < 0:
                                continue
                            lhs = phi_psi_mode(c, ai, "phi", A, vertex_mode(c, aj, s, n, v))
                            rhs = FockVector()
                            for k in range(A + 1):
                                if h_phi[k]:
                                    rhs = rhs + vertex_mode(c, aj, s, n - k, phi_psi_mode(c, ai, "phi", A - k, v)).scale(h_phi[k])
                            run.vectors(lhs, rhs, {"rel": "phi-X", "i": li, "j": lj, "sign": s, "a": A, "n": n}, lab)
                            lhs = phi_psi_mode(c, ai, "psi", A, vertex_mode(c, aj, s, n, v))
                            rhs = FockVector()
                            for k in range(A + 1):
                                if h_psi[k]:
                                    rhs = rhs + vertex_mode(c, aj, s, n + k, phi_psi_mode(c, ai, "psi", A - k, v)).scale(h_psi[k])
                            run.vectors(lhs, rhs, {"rel": "psi-X", "i": li, "j": lj, "sign": s, "a": A, "n": n}, lab)
        out = {"vectors": len(vectors)}
        if normal_degree:
            out["normal_ordered_coefficients"] = _normal_ordered_phi_psi(run, c, test_vectors(c, normal_degree), normal_degree, mutate)
        return out

    params = {"cartan": c.name, "degree": degree_bound}
    if psi_exponent != -1:
        params["psi_exponent"] = psi_exponent
    if mutate:
        params["mutate"] = mutate
    return _status_for(c, _finish("phipsi", params, body, c.labels))


def check_normal_ordered(c: CartanData, degree_bound: int = 8, mutate: str | None = None) -> CheckReport:
    """``:X_i^+(z q^-+1) X_i^-(z):`` against ``phi_i``/``psi_i``, coefficientwise up to degree."""

    def body(run: _Run):
        vectors = test_vectors(c, degree_bound)
        return {"vectors": len(vectors), "coefficients": _normal_ordered_phi_psi(run, c, vectors, degree_bound, mutate)}

    params = {"cartan": c.name, "degree": degree_bound}
    if mutate:
        params["mutate"] = mutate
    return _status_for(c, _finish("normal-ordered", params, body, c.labels))


def _normal_ordered_phi_psi(run: _Run, c: CartanData, vectors, bound: int, mutate: str | None = None) -> int:
    """Coefficient of ``z^-p`` in ``:X^+(z q^e) X^-(z):`` equals the shifted phi/psi mode.

    ``sum_{m+n=p} q^(-e m) N(m, n) v`` with ``N`` the normal-ordered modes;
    the right side is ``q^(p/2) phi_{-(-p)}`` for ``e = -1`` and
    ``q^(-p/2) psi_p`` for ``e = +1``.
    """
    count = 0
    for li, a in c.nodes():
        for v in vectors:
            d = max(v.degrees())
            lab = _vec_label(v, c.labels)
            for p in range(-bound, bound + 1):
                if not 0 <= d - p <= bound:
                    continue
                for e, kind in ((-1, "phi"), (1, "psi")):
                    shift = -e if mutate == "shift_sign" else e
                    lhs = FockVector()
                    for m in range(p - d, d + 1):
                        lhs = lhs + normal_pair_mode(c, (a, 1), (a, -1), m, p - m, v).scale(vpow(-2 * shift * m))
                    if kind == "phi":
                        rhs = phi_psi_mode(c, a, "phi", -p, v).scale(vpow(p)) if p <= 0 else FockVector()
                    else:
                        rhs = phi_psi_mode(c, a, "psi", p, v).scale(vpow(-p)) if p >= 0 else FockVector()
                    run.vectors(lhs, rhs, {"rel": f"normal-ordered {kind}", "i": li, "p": p}, lab)
                    count += 1
    return count


# -- Serre relations --------------------------------------------------------------

def _first_nonzero(run: _Run, p: MPoly, label: str) -> None:
    for e, coeff in p.sorted_terms():
        mono = "*".join(f"{v}^{x}" for v, x in zip(p.vars, e) if x) or "1"
        run.scalars(coeff, ZERO, {"monomial": dict(zip(p.vars, e))}, f"{label}: {mono}")
    run.count += 1


def check_serre_symbolic(k: int, mutate: str | None = None, slot: int = 0) -> CheckReport:
    """The Serre polynomial identity for ``(a_i|a_j) = -k`` is the zero polynomial."""
    if k < 1:
        raise ValueError("k >= 1 is required")

    def body(run: _Run):
        if k == 1:
            qinv = None
            if mutate == "q_slot":
                qinv = [vpow(-2)] * 12
                qinv[slot] = vpow(-4)
            p = serre_poly_k1(qinv)
            _first_nonzero(run, p, "symmetrized cubic bracket")
        elif mutate == "q_slot":
            # a distinct power per z_s breaks the symmetry inside each bracket group
            qk = [vpow(-2 * k - 2 * ((s + slot) % (k + 1))) for s in range(k + 1)]
            p = serre_f_check(k, qk)
            _first_nonzero(run, p, "antisymmetrized f")
        elif mutate:
            raise ValueError(f"mutation {mutate!r} does not apply to k = {k}")
        else:
            p = serre_f_check(k)
            _first_nonzero(run, p, "antisymmetrized f")
        return {"terms": len(p)}

    params = {"k": k}
    if mutate:
        params["mutate"] = mutate
        params["slot"] = slot
    return _finish("serre-sym", params, body)


def _serre_k1_terms(s: int, mutate: str | None):
    """``Sym_{z1,z2} P(z1,z2) (z2 X X X - (z1+z2) X X X + z1 X X X)`` as monomial-weighted orderings.

    ``P(z1, z2) = (z1 + q^(-2s) z2)(z2 - q^(-2s) z1)``.  Returns a list of
    ``(exponents {var: e}, coeff, operator order)``.
    """
    vars = ("z1", "z2")
    z1, z2 = MPoly.var("z1", vars), MPoly.var("z2", vars)
    first_q = vpow(-2 * s) if mutate == "prefactor" else vpow(-4 * s)
    P = (z1 + z2.scale(first_q)) * (z2 - z1.scale(vpow(-4 * s)))
    inner = [
        (z2, ("z1", "z2", "w")),
        (-(z1 + z2), ("z1", "w", "z2")),
        (z1, ("w", "z1", "z2")),
    ]
    out = []
    for swap in (False, True):
        ren = {"z1": "z2", "z2": "z1", "w": "w"} if swap else {"z1": "z1", "z2": "z2", "w": "w"}
        for weight, order in inner:
            poly = P * weight
            for e, coeff in poly.terms.items():
                exps = {ren["z1"]: e[0], ren["z2"]: e[1]}
                out.append((exps, coeff, tuple(ren[o] for o in order)))
    return out


def check_serre_operator(c: CartanData, degree_bound: int = 3, mutate: str | None = None, signs: Sequence[int] = (1, -1)) -> CheckReport:
    """Cubic Serre relation for ``(a_i|a_j) = -1`` evaluated on the lattice vacuum.

    The coefficient of ``z1^-n1 z2^-n2 w^-n3`` is a finite sum of products
    ``X(n1 + e1) X(n2 + e2) X(n3)`` over the prefactor monomials.  All
    ``|n_r| <= degree_bound`` with output degree in ``[0, degree_bound]`` are
    checked.
    """
    D = degree_bound
    nodes = c.nodes()
    adj = [(x, y) for x in nodes for y in nodes if x[0] != y[0] and pairing(c, x[1], y[1]) == -1]
    vac = vacuum(tuple(0 for _ in range(c.rank)))

    def body(run: _Run):
        if not adj:
            return {"skipped": "no pair with pairing -1"}
        triples = sorted(
            (t for t in product(range(-D, D + 1), repeat=3) if 0 <= -sum(t) - 3 <= D),
            key=lambda t: (-sum(t), t),
        )
        for (li, ai), (lj, aj) in adj:
            for s in signs:
                terms = _serre_k1_terms(s, mutate)
                ops = {"z1": (ai, s), "z2": (ai, s), "w": (aj, s)}
                for n1, n2, n3 in triples:
                    base = {"z1": n1, "z2": n2, "w": n3}
                    total = FockVector()
                    for exps, coeff, order in terms:
                        mds = [base[o] + exps.get(o, 0) for o in order]
                        total = total + product_mode(c, [ops[o] for o in order], mds, vac).scale(coeff)
                    run.vectors(total, FockVector(), {"i": li, "j": lj, "sign": s, "n": (n1, n2, n3)}, "vacuum")
        return {"pairs": [(x[0], y[0]) for x, y in adj]}

    params = {"cartan": c.name, "degree": degree_bound}
    if mutate:
        params["mutate"] = mutate
    return _status_for(c, _finish("serre-op", params, body, c.labels))
