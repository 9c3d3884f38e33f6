"""Truncated power series over the coefficient field.

Besides the ring operations this module carries the q-analogues of
``(1-z)^r`` used by the operator product expansions, the Taylor series of
``G_ij`` and the contraction factors between two twisted vertex operators.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .coeff import ONE, ZERO, QRat, qint, qpow

__all__ = [
    "TruncSeries",
    "series_exp",
    "series_log",
    "qpow_homog",
    "qpow_homog_product",
    "qpow_twisted",
    "q_pochhammer",
    "g_series",
    "contraction",
    "ope_factor",
]


@dataclass(frozen=True)
class TruncSeries:
    """``c_0 + c_1 x + ... + c_D x^D + O(x^(D+1))`` with exact coefficients."""

    coeffs: tuple[QRat, ...]
    var: str = "z"

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a truncated series needs at least one coefficient")
        object.__setattr__(
            self, "coeffs", tuple(c if isinstance(c, QRat) else QRat(c) for c in self.coeffs)
        )

    @classmethod
    def from_terms(cls, terms: dict[int, QRat] | Sequence, bound: int, var: str = "z"):
        out = [ZERO] * (bound + 1)
        items = terms.items() if isinstance(terms, dict) else enumerate(terms)
        for n, c in items:
            if 0 <= n <= bound:
                out[n] = out[n] + c
        return cls(tuple(out), var)

    @classmethod
    def one(cls, bound: int, var: str = "z") -> "TruncSeries":
        return cls.from_terms({0: ONE}, bound, var)

    @property
    def bound(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> QRat:
        if n < 0:
            return ZERO
        if n > self.bound:
            raise IndexError(f"coefficient {n} is beyond the truncation bound {self.bound}")
        return self.coeffs[n]

    def truncate(self, bound: int) -> "TruncSeries":
        return TruncSeries(self.coeffs[: bound + 1], self.var)

    def _align(self, other: "TruncSeries"):
        if self.var != other.var:
            raise ValueError(f"series in {self.var} and {other.var} cannot be combined")
        d = min(self.bound, other.bound)
        return self.coeffs[: d + 1], other.coeffs[: d + 1], d

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        a, b, _ = self._align(other)
        return TruncSeries(tuple(x + y for x, y in zip(a, b)), self.var)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def __mul__(self, other) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        a, b, d = self._align(other)
        out = []
        for n in range(d + 1):
            acc = ZERO
            for k in range(n + 1):
                if a[k] and b[n - k]:
                    acc = acc + a[k] * b[n - k]
            out.append(acc)
        return TruncSeries(tuple(out), self.var)

    def scale(self, c) -> "TruncSeries":
        return TruncSeries(tuple(x * c for x in self.coeffs), self.var)

    __rmul__ = scale

    def inverse(self) -> "TruncSeries":
        c0 = self.coeffs[0]
        if not c0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = c0.inverse()
        out = [inv0]
        for n in range(1, self.bound + 1):
            acc = ZERO
            for k in range(1, n + 1):
                if self.coeffs[k]:
                    acc = acc + self.coeffs[k] * out[n - k]
            out.append(-acc * inv0)
        return TruncSeries(tuple(out), self.var)

    def __truediv__(self, other: "TruncSeries") -> "TruncSeries":
        return self * other.inverse()

    def __pow__(self, n: int) -> "TruncSeries":
        if n < 0:
            return self.inverse() ** (-n)
        out = TruncSeries.one(self.bound, self.var)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def substitute_scale(self, c: QRat) -> "TruncSeries":
        """``x -> c x``."""
        out, p = [], ONE
        for a in self.coeffs:
            out.append(a * p)
            p = p * c
        return TruncSeries(tuple(out), self.var)

    def map_coeffs(self, f: Callable[[QRat], QRat]) -> "TruncSeries":
        return TruncSeries(tuple(f(c) for c in self.coeffs), self.var)

    def derivative(self) -> "TruncSeries":
        """Formal derivative; the result loses one degree of precision."""
        if self.bound == 0:
            return TruncSeries((ZERO,), self.var)
        return TruncSeries(tuple(self.coeffs[n] * n for n in range(1, self.bound + 1)), self.var)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __str__(self) -> str:
        parts = []
        for n, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if n == 0 else (self.var if n == 1 else f"{self.var}^{n}")
            parts.append(str(c) if not mono else (mono if c == ONE else f"{c}*{mono}"))
        body = " + ".join(parts) or "0"
        return f"{body} + O({self.var}^{self.bound + 1})"


def series_exp(s: TruncSeries) -> TruncSeries:
    """``exp(s)`` for ``s_0 = 0`` via ``n e_n = sum_k k s_k e_(n-k)``."""
    if s.coeffs[0]:
        raise ValueError("exp needs a series with zero constant term")
    e = [ONE]
    for n in range(1, s.bound + 1):
        acc = ZERO
        for k in range(1, n + 1):
            if s.coeffs[k]:
                acc = acc + s.coeffs[k] * k * e[n - k]
        e.append(acc / n)
    return TruncSeries(tuple(e), s.var)


def series_log(s: TruncSeries) -> TruncSeries:
    """``log(s)`` for ``s_0 = 1``, as the integral of ``s'/s``."""
    if s.coeffs[0] != ONE:
        raise ValueError("log needs a series with constant term 1")
    # n l_n = n s_n - sum_{k=1}^{n-1} k l_k s_(n-k)
    lg = [ZERO]
    for n in range(1, s.bound + 1):
        acc = s.coeffs[n] * n
        for k in range(1, n):
            if lg[k] and s.coeffs[n - k]:
                acc = acc - lg[k] * k * s.coeffs[n - k]
        lg.append(acc / n)
    return TruncSeries(tuple(lg), s.var)


def qpow_homog(r: int, bound: int, var: str = "z") -> TruncSeries:
    """``(1-z)^r_{q^2} = exp(-sum_{n>=1} [rn]/(n[n]) z^n)``."""
    expo = {n: -qint(r * n) / (qint(n) * n) for n in range(1, bound + 1)}
    return series_exp(TruncSeries.from_terms(expo, bound, var))


def qpow_twisted(r: int, bound: int, var: str = "z") -> TruncSeries:
    """``((1-z)/(1+z))^r_{q^2} = exp(-sum_{n odd} 2[rn]/(n[n]) z^n)``."""
    expo = {n: -2 * qint(r * n) / (qint(n) * n) for n in range(1, bound + 1, 2)}
    return series_exp(TruncSeries.from_terms(expo, bound, var))


def q_pochhammer(a: QRat, base: QRat, bound: int, var: str = "z") -> TruncSeries:
    """``(a z; p)_inf`` expanded in ``z`` by Euler's identity.

    ``(x; p)_inf = sum_n (-1)^n p^(n(n-1)/2) x^n / (p; p)_n``; each
    coefficient is an exact rational function of ``q``.
    """
    out, pn_fact, an = [ONE], ONE, ONE
    for n in range(1, bound + 1):
        pn_fact = pn_fact * (ONE - base ** n)
        an = an * a
        out.append(an * base ** (n * (n - 1) // 2) * (-1) ** n / pn_fact)
    return TruncSeries(tuple(out), var)


def qpow_homog_product(r: int, bound: int, var: str = "z") -> TruncSeries:
    """``(q^(1-r) z; q^2)_inf / (q^(1+r) z; q^2)_inf`` from the product side."""
    p = qpow(2)
    num = q_pochhammer(qpow(1 - r), p, bound, var)
    den = q_pochhammer(qpow(1 + r), p, bound, var)
    return num / den


_G_CACHE: dict[tuple[int, int], TruncSeries] = {}


def g_series(a: int, bound: int, var: str = "x") -> TruncSeries:
    """Taylor series at 0 of ``(q^a x - 1)(x + q^a) / ((q^a x + 1)(x - q^a))``."""
    key = (a, bound)
    if key not in _G_CACHE:
        qa = qpow(a)
        num = TruncSeries.from_terms({0: -ONE, 1: qa}, bound, var) * TruncSeries.from_terms(
            {0: qa, 1: ONE}, bound, var
        )
        den = TruncSeries.from_terms({0: ONE, 1: qa}, bound, var) * TruncSeries.from_terms(
            {0: -qa, 1: ONE}, bound, var
        )
        _G_CACHE[key] = num / den
    s = _G_CACHE[key]
    return s if s.var == var else TruncSeries(s.coeffs, var)


def contraction(pairing: int, sign_pair: str, q_shift: int, bound: int, var: str = "x") -> TruncSeries:
    """Contraction factor of an operator product expansion, as a series in ``x = w/z``.

    ``same``:  ``((1 - y)/(1 + y))^pairing_{q^2}`` with ``y = q^q_shift x``.
    ``mixed``: ``((1 + y)/(1 - y))^pairing_{q^2}`` with ``y = q^q_shift x``.
    """
    if sign_pair == "same":
        base = qpow_twisted(pairing, bound, var)
    elif sign_pair == "mixed":
        base = qpow_twisted(-pairing, bound, var)
    else:
        raise ValueError(f"sign_pair must be 'same' or 'mixed', not {sign_pair!r}")
    return base.substitute_scale(qpow(q_shift)) if q_shift else base


def ope_factor(pairing: int, s: int, t: int, bound: int, var: str = "x") -> TruncSeries:
    """Contraction for ``X^s(z) X^t(w)``: same signs shift by ``q^(-s)``."""
    if s == t:
        return contraction(pairing, "same", -s, bound, var)
    return contraction(pairing, "mixed", 0, bound, var)
