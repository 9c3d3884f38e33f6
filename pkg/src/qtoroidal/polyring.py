"""Sparse multivariate Laurent polynomials with symmetric-group actions.

Also builds the polynomial identities behind the Serre relations: the
symmetrized cubic bracket for ``(a_i|a_j) = -1`` and the antisymmetrized
``f(z_1, ..., z_(k+1))`` built from ``[z, w; k]_{q^2}`` for ``k >= 2``.
"""
from __future__ import annotations

from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .coeff import ONE, ZERO, QRat, specialize_q1, vpow

__all__ = [
    "MPoly",
    "sym_action",
    "symmetrize",
    "antisymmetrize",
    "perm_sign",
    "qbracket_poly",
    "serre_bracket_k1",
    "serre_poly_k1",
    "serre_f_terms",
    "serre_f",
    "serre_f_check",
]

Exponent = tuple[int, ...]


class MPoly:
    """Polynomial in named variables with exponents allowed to be negative."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exponent, QRat] | None = None):
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"repeated variable in {self.vars}")
        self.terms: dict[Exponent, QRat] = {}
        for e, c in (terms or {}).items():
            if len(e) != len(self.vars):
                raise ValueError(f"exponent {e} does not match variables {self.vars}")
            c = c if isinstance(c, QRat) else QRat(c)
            if c:
                self.terms[tuple(e)] = c

    @classmethod
    def _wrap(cls, vars: tuple[str, ...], terms: dict) -> "MPoly":
        obj = object.__new__(cls)
        obj.vars, obj.terms = vars, terms
        return obj

    @classmethod
    def var(cls, name: str, vars: Sequence[str] | None = None, coeff=ONE) -> "MPoly":
        vars = tuple(vars) if vars else (name,)
        e = tuple(1 if v == name else 0 for v in vars)
        if name not in vars:
            raise ValueError(f"{name} is not among {vars}")
        return cls(vars, {e: coeff})

    @classmethod
    def const(cls, c, vars: Sequence[str] = ()) -> "MPoly":
        return cls(vars, {tuple(0 for _ in vars): c})

    @classmethod
    def monomial(cls, vars: Sequence[str], exps: Mapping[str, int], coeff=ONE) -> "MPoly":
        return cls(vars, {tuple(exps.get(v, 0) for v in vars): coeff})

    # -- variable handling --------------------------------------------------
    def extend(self, vars: Sequence[str]) -> "MPoly":
        """Re-express over ``vars`` (a superset of the current variables)."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        missing = set(self.vars) - set(vars)
        if missing:
            raise ValueError(f"cannot drop variables {sorted(missing)}")
        pos = [self.vars.index(v) if v in self.vars else -1 for v in vars]
        terms = {
            tuple(e[p] if p >= 0 else 0 for p in pos): c for e, c in self.terms.items()
        }
        return MPoly._wrap(vars, terms)

    def _common(self, other: "MPoly"):
        if self.vars == other.vars:
            return self, other
        vars = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return self.extend(vars), other.extend(vars)

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            other = MPoly.const(other, self.vars)
        a, b = self._common(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            _add(out, e, c)
        return MPoly._wrap(a.vars, out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._wrap(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            other = MPoly.const(other, self.vars)
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        return (-self) + other

    def __mul__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            return self.scale(other)
        a, b = self._common(other)
        out: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                _add(out, tuple(x + y for x, y in zip(e1, e2)), c1 * c2)
        return MPoly._wrap(a.vars, out)

    __rmul__ = __mul__

    def scale(self, c) -> "MPoly":
        c = c if isinstance(c, QRat) else QRat(c)
        if not c:
            return MPoly._wrap(self.vars, {})
        return MPoly._wrap(self.vars, {e: x * c for e, x in self.terms.items()})

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative powers of polynomials are not supported")
        out = MPoly.const(ONE, self.vars)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, QRat)):
            other = MPoly.const(other, self.vars)
        if not isinstance(other, MPoly):
            return NotImplemented
        a, b = self._common(other)
        return a.terms == b.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    # -- inspection -------------------------------------------------------------
    def coefficient(self, exps: Mapping[str, int]) -> QRat:
        e = tuple(exps.get(v, 0) for v in self.vars)
        return self.terms.get(e, ZERO)

    def coefficients_in(self, name: str) -> dict[int, "MPoly"]:
        """Split into ``{power of name: polynomial in the other variables}``."""
        k = self.vars.index(name)
        rest = self.vars[:k] + self.vars[k + 1:]
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            out.setdefault(e[k], {})[e[:k] + e[k + 1:]] = c
        return {p: MPoly._wrap(rest, t) for p, t in sorted(out.items())}

    def total_degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def map_coeffs(self, f) -> "MPoly":
        return MPoly(self.vars, {e: f(c) for e, c in self.terms.items()})

    def specialize_q1(self) -> dict[Exponent, object]:
        """Coefficients at ``q = 1`` (rational numbers), zero terms dropped."""
        out = {}
        for e, c in self.terms.items():
            val = specialize_q1(c)
            if val:
                out[e] = val
        return out

    def sorted_terms(self) -> list[tuple[Exponent, QRat]]:
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (v if x == 1 else f"{v}^{x}") for v, x in zip(self.vars, e) if x
            )
            if not mono:
                parts.append(str(c))
            elif c == ONE:
                parts.append(mono)
            elif c == -ONE:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MPoly({self.vars}, {self})"


def _add(out: dict, e: Exponent, c: QRat) -> None:
    old = out.get(e)
    if old is None:
        out[e] = c
    else:
        new = old + c
        if new:
            out[e] = new
        else:
            del out[e]


def perm_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _positions(p: MPoly, vars: Sequence[str]) -> list[int]:
    missing = [v for v in vars if v not in p.vars]
    if missing:
        raise ValueError(f"variables {missing} are not in {p.vars}")
    return [p.vars.index(v) for v in vars]


def _permute_terms(p: MPoly, pos: list[int], perm: Sequence[int], out: dict, sign: int) -> None:
    for e, c in p.terms.items():
        new = list(e)
        for i, src in enumerate(pos):
            new[pos[perm[i]]] = e[src]
        _add(out, tuple(new), c if sign == 1 else -c)


def sym_action(perm: Sequence[int], p: MPoly, vars: Sequence[str]) -> MPoly:
    """Substitute ``vars[i] -> vars[perm[i]]`` (0-based permutation).

    >>> z = MPoly.var("z1", ("z1", "z2"))
    >>> str(sym_action((1, 0), z, ("z1", "z2")))
    'z2'
    """
    if sorted(perm) != list(range(len(vars))):
        raise ValueError(f"{perm} is not a permutation of {len(vars)} variables")
    out: dict = {}
    _permute_terms(p, _positions(p, vars), perm, out, 1)
    return MPoly._wrap(p.vars, out)


def symmetrize(p: MPoly, vars: Sequence[str]) -> MPoly:
    """``sum over sigma of sigma.p``."""
    pos = _positions(p, vars)
    out: dict = {}
    for perm in permutations(range(len(vars))):
        _permute_terms(p, pos, perm, out, 1)
    return MPoly._wrap(p.vars, out)


def antisymmetrize(p: MPoly, vars: Sequence[str]) -> MPoly:
    """``sum over sigma of sgn(sigma) sigma.p``."""
    pos = _positions(p, vars)
    out: dict = {}
    for perm in permutations(range(len(vars))):
        _permute_terms(p, pos, perm, out, perm_sign(perm))
    return MPoly._wrap(p.vars, out)


def _as_poly(x, vars: Sequence[str]) -> MPoly:
    if isinstance(x, MPoly):
        return x
    return MPoly.var(x, vars)


def qbracket_poly(z, w, k: int, vars: Sequence[str] | None = None) -> MPoly:
    """``[z, w; k]_{q^2} = (z - w)(z - w q^2) ... (z - w q^(2(k-1)))``.

    ``z`` and ``w`` are variable names or (linear) polynomials.
    """
    if k < 1:
        raise ValueError(f"[z, w; k] needs k >= 1, got {k}")
    if vars is None:
        names = [x for x in (z, w) if isinstance(x, str)]
        vars = tuple(names) if len(names) == 2 else None
    z, w = _as_poly(z, vars), _as_poly(w, vars)
    out = None
    for j in range(k):
        factor = z - w.scale(vpow(4 * j))
        out = factor if out is None else out * factor
    return out


# -- Serre polynomial identities ------------------------------------------------

K1_VARS = ("z1", "z2", "w")


def serre_bracket_k1(qinv: Sequence[QRat] | None = None) -> MPoly:
    """``(z1 - z2) (z2 T1 + (z1 + z2) T2 + z1 T3)`` before symmetrization.

    T1..T3 are the three five-factor products obtained by clearing the
    denominators of the cubic vertex-operator bracket.  ``qinv`` lists the
    twelve ``q^-1`` slots in reading order; passing a modified list is how
    the mutation tests perturb single factors.
    """
    if qinv is None:
        qinv = [vpow(-2)] * 12
    if len(qinv) != 12:
        raise ValueError("twelve q^-1 slots are expected")
    z1, z2, w = (MPoly.var(v, K1_VARS) for v in K1_VARS)
    s = iter(qinv)
    T1 = z2 * (z1 + w.scale(next(s))) * (z2 + w.scale(next(s))) * (w - z1.scale(next(s))) * (
        w - z2.scale(next(s))
    )
    T2 = (z1 + z2) * (z1 + w.scale(next(s))) * (z2 - w.scale(next(s))) * (
        w - z1.scale(next(s))
    ) * (w + z2.scale(next(s)))
    T3 = z1 * (z1 - w.scale(next(s))) * (z2 - w.scale(next(s))) * (w + z1.scale(next(s))) * (
        w + z2.scale(next(s))
    )
    return (z1 - z2) * (T1 + T2 + T3)


def serre_poly_k1(qinv: Sequence[QRat] | None = None) -> MPoly:
    """Symmetrization over ``z1, z2`` of :func:`serre_bracket_k1`."""
    return symmetrize(serre_bracket_k1(qinv), ("z1", "z2"))


def _fvars(k: int) -> tuple[str, ...]:
    return tuple(f"z{s}" for s in range(1, k + 2)) + ("w",)


def serre_f_terms(k: int, qk: Sequence[QRat] | None = None) -> list[MPoly]:
    """The ``k + 2`` summands of ``f(z_1, ..., z_(k+1))``.

    Summand ``r`` carries ``[z_s, -w q^-k][w, z_s q^-k]`` for ``s <= r`` and
    ``[w, -z_s q^-k][z_s, w q^-k]`` for ``s > r``, all brackets of length k.
    ``qk`` overrides the ``q^-k`` used for each ``z_s`` (mutation hook).
    """
    if k < 2:
        raise ValueError(f"f is defined for k >= 2, got {k}")
    vars = _fvars(k)
    w = MPoly.var("w", vars)
    zs = [MPoly.var(f"z{s}", vars) for s in range(1, k + 2)]
    if qk is None:
        qk = [vpow(-2 * k)] * (k + 1)
    if len(qk) != k + 1:
        raise ValueError(f"one q-power per z_s is expected, got {len(qk)}")
    first = [qbracket_poly(z, w.scale(-c), k) * qbracket_poly(w, z.scale(c), k) for z, c in zip(zs, qk)]
    second = [qbracket_poly(w, z.scale(-c), k) * qbracket_poly(z, w.scale(c), k) for z, c in zip(zs, qk)]
    terms = []
    for r in range(k + 2):
        t = MPoly.const(ONE, vars)
        for s in range(k + 1):
            t = t * (first[s] if s < r else second[s])
        terms.append(t)
    return terms


def serre_f(k: int) -> MPoly:
    out = None
    for t in serre_f_terms(k):
        out = t if out is None else out + t
    return out


def serre_f_check(k: int, qk: Sequence[QRat] | None = None) -> MPoly:
    """Antisymmetrizer of ``f`` over ``z_1..z_(k+1)``; zero when the identity holds.

    Every summand is symmetric under swapping two ``z`` inside the same
    bracket group, so each one is annihilated separately.
    """
    if k < 2:
        raise ValueError(f"f is defined for k >= 2, got {k}")
    out: dict = {}
    vars = _fvars(k)
    pos = list(range(k + 1))
    perms = [(perm, perm_sign(perm)) for perm in permutations(range(k + 1))]
    for term in serre_f_terms(k, qk):
        for perm, sign in perms:
            _permute_terms(term, pos, perm, out, sign)
    return MPoly._wrap(vars, out)
