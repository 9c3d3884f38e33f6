"""The level-one Fock space ``S(H^-) (x) T``.

A basis state is a monomial in the creation operators ``a_i(-n)`` (``n``
positive odd) together with a lattice element.  The sign of the twisted
group algebra is absorbed into the coefficient, so a :class:`FockVector`
is a plain ``BasisState -> QRat`` map with no zero entries.

The central element acts by ``q`` throughout (level one).
"""
from __future__ import annotations

from bisect import insort
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, NamedTuple, Sequence

from .coeff import ZERO, QRat, qint
from .lattice import CartanData, cocycle

__all__ = [
    "BasisState",
    "FockVector",
    "vacuum",
    "heis_scalar",
    "heis_apply",
    "group_apply",
    "degree",
    "odd_partitions",
    "creator_monomials",
    "basis_states",
]

Creators = tuple[tuple[int, int], ...]


class BasisState(NamedTuple):
    """``prod a_i(-n) |lattice>``; ``creators`` holds sorted ``(i, n)`` pairs, 0-based ``i``."""

    creators: Creators
    lattice: tuple[int, ...]

    def render(self, labels: Sequence[int] | None = None) -> str:
        def lab(i):
            return labels[i] if labels else i + 1

        mono = "".join(f"a{lab(i)}({-n})" for i, n in self.creators)
        lat = "+".join(
            (f"a{lab(i)}" if c == 1 else f"{c}a{lab(i)}")
            for i, c in enumerate(self.lattice) if c
        ).replace("+-", "-") or "0"
        return f"{mono}|{lat}>"

    def __str__(self) -> str:
        return self.render()


def degree(state: BasisState) -> int:
    return sum(n for _, n in state.creators)


class FockVector:
    """Finite linear combination of basis states."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[BasisState, QRat] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def _wrap(cls, terms: dict) -> "FockVector":
        obj = object.__new__(cls)
        obj.terms = terms
        return obj

    def __iter__(self) -> Iterator[tuple[BasisState, QRat]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __getitem__(self, state: BasisState) -> QRat:
        return self.terms.get(state, ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self.terms)
        accumulate(out, other.terms)
        return FockVector._wrap(out)

    def __sub__(self, other: "FockVector") -> "FockVector":
        out = dict(self.terms)
        accumulate(out, other.terms, -1)
        return FockVector._wrap(out)

    def __neg__(self) -> "FockVector":
        return FockVector._wrap({k: -v for k, v in self.terms.items()})

    def scale(self, c) -> "FockVector":
        if not c:
            return FockVector()
        return FockVector._wrap({k: v * c for k, v in self.terms.items()})

    __mul__ = __rmul__ = scale

    def degrees(self) -> set[int]:
        return {degree(s) for s in self.terms}

    def sorted_terms(self) -> list[tuple[BasisState, QRat]]:
        return sorted(self.terms.items(), key=lambda kv: (degree(kv[0]), kv[0]))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{s}" for s, c in self.sorted_terms())


def accumulate(out: dict, terms: dict, scale=1) -> None:
    """``out += scale * terms`` in place, dropping cancelled entries."""
    for k, v in terms.items():
        if scale != 1:
            v = v * scale
        old = out.get(k)
        if old is None:
            if v:
                out[k] = v
        else:
            new = old + v
            if new:
                out[k] = new
            else:
                del out[k]


def add_term(out: dict, key, v: QRat) -> None:
    old = out.get(key)
    if old is None:
        if v:
            out[key] = v
    else:
        new = old + v
        if new:
            out[key] = new
        else:
            del out[key]


def vacuum(lattice: Sequence[int]) -> FockVector:
    return FockVector._wrap({BasisState((), tuple(lattice)): QRat(1)})


@lru_cache(maxsize=None)
def heis_scalar(a_ij: int, m: int) -> QRat:
    """``[a_i(m), a_j(-m)]`` at level one: ``[a_ij m]/(2m) * [m]``."""
    return qint(a_ij * m) * qint(m) / (2 * m)


def _check_mode(m: int) -> None:
    if m % 2 == 0:
        raise ValueError(f"Heisenberg modes are odd, got {m}")


def create(state: BasisState, i: int, n: int) -> BasisState:
    cr = list(state.creators)
    insort(cr, (i, n))
    return BasisState(tuple(cr), state.lattice)


def annihilate_terms(c: CartanData, alpha: Sequence[int], m: int, state: BasisState):
    """Yield ``(state', coeff)`` for ``a_alpha(m) state`` with ``m > 0``."""
    cr = state.creators
    seen = set()
    for pos, (j, n) in enumerate(cr):
        if n != m or (j, n) in seen:
            continue
        seen.add((j, n))
        mult = cr.count((j, n))
        coeff = ZERO
        for i, ci in enumerate(alpha):
            if ci:
                coeff = coeff + heis_scalar(c.matrix[i][j], m) * ci
        if coeff:
            yield BasisState(cr[:pos] + cr[pos + 1:], state.lattice), coeff * mult


def heis_apply(c: CartanData, alpha: Sequence[int], m: int, v: FockVector) -> FockVector:
    """Apply ``a_alpha(m) = sum_i alpha_i a_i(m)`` for odd ``m``."""
    _check_mode(m)
    out: dict = {}
    if m < 0:
        for state, coeff in v:
            for i, ci in enumerate(alpha):
                if ci:
                    add_term(out, create(state, i, -m), coeff * ci)
    else:
        for state, coeff in v:
            for new, s in annihilate_terms(c, alpha, m, state):
                add_term(out, new, coeff * s)
    return FockVector._wrap(out)


def group_apply(c: CartanData, alpha: Sequence[int], exponent: int, v: FockVector) -> FockVector:
    """Apply ``e^alpha`` (exponent +1) or its inverse (exponent -1).

    ``e^alpha |b> = eps(alpha, b) |b + alpha>``; the inverse sends ``|b>`` to
    ``eps(alpha, b - alpha) |b - alpha>``.
    """
    if exponent not in (1, -1):
        raise ValueError("group exponent must be +1 or -1")
    out = {}
    for state, coeff in v:
        if exponent == 1:
            lat = tuple(b + a for a, b in zip(alpha, state.lattice))
            sign = cocycle(c, alpha, state.lattice)
        else:
            lat = tuple(b - a for a, b in zip(alpha, state.lattice))
            sign = cocycle(c, alpha, lat)
        out[BasisState(state.creators, lat)] = coeff if sign == 1 else -coeff
    return FockVector._wrap(out)


def odd_partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` into odd parts, parts non-increasing."""
    if largest is None:
        largest = n if n % 2 else n - 1
    if n == 0:
        yield ()
        return
    for p in range(min(largest, n if n % 2 else n - 1), 0, -2):
        for rest in odd_partitions(n - p, p):
            yield (p,) + rest


def creator_monomials(rank: int, deg: int) -> list[Creators]:
    """All creator multisets of exact principal degree ``deg``."""
    out = set()
    for part in odd_partitions(deg):
        for colours in product(range(rank), repeat=len(part)):
            out.add(tuple(sorted(zip(colours, part))))
    return sorted(out)


def basis_states(rank: int, max_degree: int, lattices: Iterable[Sequence[int]]) -> list[BasisState]:
    lattices = [tuple(b) for b in lattices]
    return [
        BasisState(mono, lat)
        for lat in lattices
        for d in range(max_degree + 1)
        for mono in creator_monomials(rank, d)
    ]
