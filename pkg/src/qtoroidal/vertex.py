"""Twisted vertex operators and their modes on the Fock space.

``X_alpha^s(z) = E_-^s(alpha, z) E_+^s(alpha, z) e^(s alpha)`` with

    E_-^s(alpha, z) = exp( s sum_{n odd > 0} 2 q^(-s n/2) / [n] a_alpha(-n) z^n )
    E_+^s(alpha, z) = exp(-s sum_{n odd > 0} 2 q^(-s n/2) / [n] a_alpha(n) z^-n )

All modes are computed exactly.  The annihilation exponential terminates at
the degree of the input state; the creation exponential is only expanded to
the order that the requested mode needs.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Callable, Sequence

from .coeff import ONE, ZERO, QRat, qint, vpow, Q
from .fock import (
    BasisState,
    FockVector,
    accumulate,
    add_term,
    annihilate_terms,
    degree,
    group_apply,
)
from .lattice import CartanData

__all__ = [
    "vertex_coeff",
    "vertex_mode",
    "phi_psi_mode",
    "normal_pair_mode",
    "product_mode",
    "Exponential",
]

Lattice = tuple[int, ...]


@lru_cache(maxsize=None)
def vertex_coeff(s: int, n: int) -> QRat:
    """``2 q^(-s n/2) / [n]``."""
    return vpow(-s * n) * 2 / qint(n)


class Exponential:
    """``exp(sum_{n odd > 0} b_n a_alpha(+-n) t^n)`` acting on basis states.

    ``b`` maps a positive odd ``n`` to its coefficient.  Results are cached
    per basis state, so one instance should be reused across calls.
    """

    def __init__(self, c: CartanData, alpha: Sequence[int], b: Callable[[int], QRat]):
        self.c = c
        self.alpha = tuple(alpha)
        self.b = b
        self._bcache: dict[int, QRat] = {}
        self._ann: dict[BasisState, list[dict]] = {}
        self._cre: list[dict] = [{(): ONE}]

    def coeff(self, n: int) -> QRat:
        if n not in self._bcache:
            self._bcache[n] = self.b(n)
        return self._bcache[n]

    def annihilation(self, state: BasisState) -> list[dict]:
        """``[E_k state for k = 0..degree(state)]`` for the annihilating exponential."""
        hit = self._ann.get(state)
        if hit is not None:
            return hit
        d = degree(state)
        out = [{state: ONE}]
        for k in range(1, d + 1):
            acc: dict = {}
            for m in range(1, k + 1, 2):
                bm = self.coeff(m)
                if not bm:
                    continue
                scale = bm * m
                for st, cf in out[k - m].items():
                    for new, s in annihilate_terms(self.c, self.alpha, m, st):
                        add_term(acc, new, cf * s * scale)
            out.append({st: cf / k for st, cf in acc.items()})
        self._ann[state] = out
        return out

    def creation(self, k: int) -> dict:
        """Degree-``k`` part of the creating exponential as a creator polynomial."""
        while len(self._cre) <= k:
            j = len(self._cre)
            acc: dict = {}
            for m in range(1, j + 1, 2):
                bm = self.coeff(m)
                if not bm:
                    continue
                scale = bm * m
                for mono, cf in self._cre[j - m].items():
                    for i, ci in enumerate(self.alpha):
                        if ci:
                            new = tuple(sorted(mono + ((i, m),)))
                            add_term(acc, new, cf * scale * ci)
            self._cre.append({mono: cf / j for mono, cf in acc.items()})
        return self._cre[k]


def times_creators(poly: dict, state: BasisState, cf: QRat, out: dict) -> None:
    for mono, c in poly.items():
        new = BasisState(tuple(sorted(state.creators + mono)), state.lattice)
        add_term(out, new, c * cf)


class VertexOperator:
    """Mode access for ``X_alpha^s`` with cached exponential expansions."""

    def __init__(self, c: CartanData, alpha: Sequence[int], s: int):
        if s not in (1, -1):
            raise ValueError("vertex operator sign must be +1 or -1")
        self.c, self.alpha, self.s = c, tuple(alpha), s
        self.minus = Exponential(c, alpha, lambda n: vertex_coeff(s, n) * s)
        self.plus = Exponential(c, alpha, lambda n: vertex_coeff(s, n) * (-s))

    def mode(self, n: int, v: FockVector) -> FockVector:
        """Coefficient of ``z^-n`` in ``X(z) v``."""
        shifted = group_apply(self.c, self.alpha, self.s, v)
        out: dict = {}
        for state, cf in shifted:
            ann = self.plus.annihilation(state)
            for k in range(max(0, n), len(ann)):
                if ann[k]:
                    poly = self.minus.creation(k - n)
                    for st, c2 in ann[k].items():
                        times_creators(poly, st, cf * c2, out)
        return FockVector._wrap(out)


_OPS: dict = {}


def vertex_operator(c: CartanData, alpha: Sequence[int], s: int) -> VertexOperator:
    key = (c.matrix, tuple(alpha), s)
    op = _OPS.get(key)
    if op is None:
        op = _OPS[key] = VertexOperator(c, alpha, s)
    return op


def vertex_mode(c: CartanData, alpha: Sequence[int], s: int, n: int, v: FockVector) -> FockVector:
    """``X_alpha^s(n) v``: the coefficient of ``z^-n`` in ``X_alpha^s(z) v``."""
    return vertex_operator(c, alpha, s).mode(n, v)


def product_mode(
    c: CartanData,
    ops: Sequence[tuple[Sequence[int], int]],
    modes: Sequence[int],
    v: FockVector,
) -> FockVector:
    """``X_1(n_1) ... X_k(n_k) v`` applied right to left."""
    if not ops:
        raise ValueError("empty operator list")
    if len(ops) != len(modes):
        raise ValueError("one mode per operator is required")
    for (alpha, s), n in zip(reversed(ops), reversed(modes)):
        v = vertex_mode(c, alpha, s, n, v)
        if not v:
            break
    return v


_TWO_QQ = (Q - Q.inverse()) * 2


def _phi_psi_exp(c: CartanData, alpha: Lattice, kind: str) -> Exponential:
    key = (c.matrix, alpha, kind)
    op = _OPS.get(key)
    if op is None:
        # phi(z) = exp(2(q^-1 - q) sum a(-m) z^m), psi(z) = exp(2(q - q^-1) sum a(m) z^-m)
        coeff = -_TWO_QQ if kind == "phi" else _TWO_QQ
        op = _OPS[key] = Exponential(c, alpha, lambda n: coeff)
    return op


def phi_psi_mode(c: CartanData, alpha: Sequence[int], kind: str, n: int, v: FockVector) -> FockVector:
    """``phi_{-n} v`` (``kind='phi'``) or ``psi_n v`` (``kind='psi'``) with ``h_im -> a_i(m)``."""
    if n < 0:
        raise ValueError("phi/psi modes are indexed by n >= 0")
    if kind not in ("phi", "psi"):
        raise ValueError(f"kind must be 'phi' or 'psi', not {kind!r}")
    ex = _phi_psi_exp(c, tuple(alpha), kind)
    out: dict = {}
    if kind == "phi":
        poly = ex.creation(n)
        for state, cf in v:
            times_creators(poly, state, cf, out)
    else:
        for state, cf in v:
            ann = ex.annihilation(state)
            if n < len(ann):
                accumulate(out, ann[n], cf)
    return FockVector._wrap(out)


def normal_pair_mode(
    c: CartanData,
    first: tuple[Sequence[int], int],
    second: tuple[Sequence[int], int],
    m: int,
    n: int,
    v: FockVector,
) -> FockVector:
    """Coefficient of ``z^-m w^-n`` in ``:X_first(z) X_second(w): v``.

    Normal order: both creating exponentials, then both annihilating ones,
    then the group elements in their original order.
    """
    (alpha, s), (beta, t) = first, second
    A = vertex_operator(c, alpha, s)
    B = vertex_operator(c, beta, t)
    shifted = group_apply(c, alpha, s, group_apply(c, beta, t, v))
    out: dict = {}
    for state, cf in shifted:
        for k2, part2 in enumerate(B.plus.annihilation(state)):
            j2 = k2 - n
            if j2 < 0 or not part2:
                continue
            for st2, c2 in part2.items():
                for k1, part1 in enumerate(A.plus.annihilation(st2)):
                    j1 = k1 - m
                    if j1 < 0 or not part1:
                        continue
                    poly = _joint_creation(A, B, j1, j2)
                    for st1, c1 in part1.items():
                        times_creators(poly, st1, cf * c2 * c1, out)
    return FockVector._wrap(out)


def _joint_creation(A: VertexOperator, B: VertexOperator, j1: int, j2: int) -> dict:
    out: dict = {}
    for m1, c1 in A.minus.creation(j1).items():
        for m2, c2 in B.minus.creation(j2).items():
            add_term(out, tuple(sorted(m1 + m2)), c1 * c2)
    return out
