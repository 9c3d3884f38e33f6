"""Simply-laced Cartan data, the root lattice and the sign cocycle of its double cover."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

__all__ = [
    "CartanValidationError",
    "CartanData",
    "cartan_load",
    "pairing",
    "cocycle",
    "simple_root",
]

LatticeElt = tuple[int, ...]


class CartanValidationError(ValueError):
    pass


@dataclass(frozen=True)
class CartanData:
    """Symmetric generalized Cartan matrix ``a_ij = (alpha_i|alpha_j)``.

    ``labels`` are the node names used in reports; ``roots`` optionally
    attaches extra lattice vectors (e.g. an affine node written in the
    simple-root basis) that the relation checks treat as additional,
    beyond-paper nodes.
    """

    matrix: tuple[tuple[int, ...], ...]
    name: str = "custom"
    labels: tuple[int, ...] = ()
    extra_nodes: tuple[tuple[int, LatticeElt], ...] = field(default=())

    def __post_init__(self):
        _validate(self.matrix)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, len(self.matrix) + 1)))

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def simple(self, i: int) -> LatticeElt:
        """Lattice vector of the node with 1-based index ``i``."""
        return simple_root(self.rank, i)

    def nodes(self) -> list[tuple[int, LatticeElt]]:
        """All (label, lattice vector) pairs: simple nodes then extra nodes."""
        out = [(lab, self.simple(k + 1)) for k, lab in enumerate(self.labels)]
        out.extend(self.extra_nodes)
        return out

    def with_extra_node(self, label: int, vector: Sequence[int]) -> "CartanData":
        vector = tuple(int(x) for x in vector)
        if len(vector) != self.rank:
            raise CartanValidationError(
                f"node {label} vector has {len(vector)} entries, rank is {self.rank}"
            )
        return CartanData(
            self.matrix, self.name, self.labels, self.extra_nodes + ((label, vector),)
        )


def _validate(matrix) -> None:
    n = len(matrix)
    if n == 0:
        raise CartanValidationError("empty Cartan matrix")
    for i, row in enumerate(matrix):
        if len(row) != n:
            raise CartanValidationError(f"row {i} has length {len(row)}, expected {n}")
        if row[i] != 2:
            raise CartanValidationError(f"diagonal entry ({i},{i}) is {row[i]}, expected 2")
        for j, a in enumerate(row):
            if a != matrix[j][i]:
                raise CartanValidationError(
                    f"asymmetric entry ({i},{j})={a} vs ({j},{i})={matrix[j][i]}"
                )
            if i != j and a > 0:
                raise CartanValidationError(f"positive off-diagonal entry ({i},{j})={a}")


def _chain(n: int, edges: list[tuple[int, int]]) -> tuple[tuple[int, ...], ...]:
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        m[i][j] = m[j][i] = -1
    return tuple(tuple(r) for r in m)


def _builtin(name: str) -> tuple[tuple[int, ...], ...]:
    m = re.fullmatch(r"([ADE])_?(\d+)", name.strip().upper())
    if not m:
        raise CartanValidationError(f"unknown Cartan type {name!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "A" and n >= 1:
        return _chain(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "D" and n >= 4:
        return _chain(n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)])
    if kind == "E" and n in (6, 7, 8):
        # Bourbaki labelling: 1-3-4-5-6(-7-8), 2 attached to 4
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
        return _chain(n, edges)
    raise CartanValidationError(f"unsupported Cartan type {name!r}")


def cartan_load(source) -> CartanData:
    """Load Cartan data from a builtin name, a matrix, or a JSON file path.

    >>> cartan_load("A2").matrix
    ((2, -1), (-1, 2))
    """
    if isinstance(source, CartanData):
        return source
    if isinstance(source, Path) or (isinstance(source, str) and source.endswith(".json")):
        with open(source) as fh:
            data = json.load(fh)
        try:
            matrix = data["matrix"]
        except (TypeError, KeyError):
            raise CartanValidationError(f"{source}: expected an object with a 'matrix' key")
        return CartanData(tuple(tuple(int(a) for a in row) for row in matrix), name=str(source))
    if isinstance(source, str):
        return CartanData(_builtin(source), name=source.strip().upper().replace("_", ""))
    return CartanData(tuple(tuple(int(a) for a in row) for row in source))


def simple_root(rank: int, i: int) -> LatticeElt:
    return tuple(1 if k == i - 1 else 0 for k in range(rank))


def pairing(c: CartanData, alpha: Sequence[int], beta: Sequence[int]) -> int:
    if len(alpha) != c.rank or len(beta) != c.rank:
        raise ValueError(f"lattice vectors must have {c.rank} entries")
    return sum(
        x * c.matrix[i][j] * y
        for i, x in enumerate(alpha) if x
        for j, y in enumerate(beta) if y
    )


def cocycle(c: CartanData, alpha: Sequence[int], beta: Sequence[int]) -> int:
    """Bimultiplicative sign with ``eps(a,b) eps(b,a) = (-1)^(a|b)``.

    On simple roots ``eps(i, j) = 1`` for ``i <= j`` and ``(-1)^a_ij`` for
    ``i > j``.
    """
    if len(alpha) != c.rank or len(beta) != c.rank:
        raise ValueError(f"lattice vectors must have {c.rank} entries")
    e = 0
    for i, x in enumerate(alpha):
        if not x:
            continue
        for j in range(i):
            y = beta[j]
            if y:
                e += x * y * c.matrix[i][j]
    return -1 if e % 2 else 1
