"""Exact arithmetic in the coefficient field.

Elements are reduced fractions of integer Laurent polynomials in ``v``, where
``v = q^(1/2)``.  Working in ``v`` keeps every ``q^(n/2)`` that appears in the
twisted vertex operators inside the field.  Rendering is always in ``q``.

Values are immutable; equality is structural because the form is canonical:

* numerator and denominator are coprime over ``Z[v]`` (content included),
* neither has a zero constant term (powers of ``v`` live in ``shift``),
* the denominator has a positive leading coefficient.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Union

from flint import fmpz_poly

__all__ = [
    "QRat",
    "vpow",
    "SpecializationError",
    "ZERO",
    "ONE",
    "Q",
    "V",
    "qpow",
    "qint",
    "specialize_q1",
    "qrat_arith",
]

_P1 = fmpz_poly([1])
_P0 = fmpz_poly([])

Scalar = Union["QRat", int, Fraction]


class SpecializationError(ArithmeticError):
    """Raised when a value has a pole at the requested specialization."""


def _valuation(p: fmpz_poly) -> int:
    k = 0
    while p[k] == 0:
        k += 1
    return k


class QRat:
    __slots__ = ("num", "den", "shift", "_key")

    def __init__(self, value: Scalar = 0):
        if isinstance(value, QRat):
            self.num, self.den, self.shift = value.num, value.den, value.shift
        elif isinstance(value, int):
            self.num = fmpz_poly([value]) if value else _P0
            self.den, self.shift = _P1, 0
        elif isinstance(value, Fraction):
            self.num = fmpz_poly([value.numerator]) if value else _P0
            self.den, self.shift = fmpz_poly([value.denominator]), 0
        else:
            raise TypeError(f"cannot build QRat from {type(value).__name__}")
        self._key = None

    @classmethod
    def _raw(cls, num: fmpz_poly, den: fmpz_poly, shift: int) -> "QRat":
        obj = object.__new__(cls)
        obj.num, obj.den, obj.shift, obj._key = num, den, shift, None
        return obj

    @classmethod
    def make(cls, num: fmpz_poly, den: fmpz_poly = _P1, shift: int = 0) -> "QRat":
        """Build ``v^shift * num / den`` in canonical form."""
        if num.is_zero():
            return ZERO
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        k = _valuation(num)
        if k:
            num = num.right_shift(k)
            shift += k
        k = _valuation(den)
        if k:
            den = den.right_shift(k)
            shift -= k
        if not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num = num // g
                den = den // g
            if den.leading_coefficient() < 0:
                num, den = -num, -den
        return cls._raw(num, den, shift)

    @classmethod
    def laurent(cls, coeffs: dict[int, int]) -> "QRat":
        """Laurent polynomial in v from ``{v_exponent: integer}``."""
        coeffs = {e: c for e, c in coeffs.items() if c}
        if not coeffs:
            return ZERO
        lo = min(coeffs)
        dense = [0] * (max(coeffs) - lo + 1)
        for e, c in coeffs.items():
            dense[e - lo] = c
        return cls.make(fmpz_poly(dense), _P1, lo)

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def key(self) -> tuple:
        if self._key is None:
            self._key = (
                tuple(int(c) for c in self.num.coeffs()),
                tuple(int(c) for c in self.den.coeffs()),
                self.shift,
            )
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, QRat):
            if isinstance(other, (int, Fraction)):
                other = QRat(other)
            else:
                return NotImplemented
        return (
            self.shift == other.shift
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash(self.key())

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: Scalar) -> "QRat":
        if not isinstance(other, QRat):
            other = QRat(other)
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        s1, s2 = self.shift, other.shift
        lo = min(s1, s2)
        n1 = self.num.left_shift(s1 - lo) if s1 != lo else self.num
        n2 = other.num.left_shift(s2 - lo) if s2 != lo else other.num
        if self.den.is_one() and other.den.is_one():
            return QRat.make(n1 + n2, _P1, lo)
        if self.den == other.den:
            return QRat.make(n1 + n2, self.den, lo)
        return QRat.make(n1 * other.den + n2 * self.den, self.den * other.den, lo)

    __radd__ = __add__

    def __neg__(self) -> "QRat":
        if self.num.is_zero():
            return self
        return QRat._raw(-self.num, self.den, self.shift)

    def __sub__(self, other: Scalar) -> "QRat":
        if not isinstance(other, QRat):
            other = QRat(other)
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "QRat":
        return QRat(other) + (-self)

    def __mul__(self, other: Scalar) -> "QRat":
        if not isinstance(other, QRat):
            if isinstance(other, int):
                if other == 0:
                    return ZERO
                if other == 1:
                    return self
            other = QRat(other)
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        shift = self.shift + other.shift
        if self.den.is_one() and other.den.is_one():
            return QRat._raw(self.num * other.num, _P1, shift)
        # cross-cancel so the products stay small
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        g = n1.gcd(d2)
        if not g.is_one():
            n1, d2 = n1 // g, d2 // g
        g = n2.gcd(d1)
        if not g.is_one():
            n2, d1 = n2 // g, d1 // g
        num, den = n1 * n2, d1 * d2
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return QRat._raw(num, den, shift)

    __rmul__ = __mul__

    def inverse(self) -> "QRat":
        if self.num.is_zero():
            raise ZeroDivisionError("QRat division by zero")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return QRat._raw(num, den, -self.shift)

    def __truediv__(self, other: Scalar) -> "QRat":
        if not isinstance(other, QRat):
            other = QRat(other)
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> "QRat":
        return QRat(other) * self.inverse()

    def __pow__(self, n: int) -> "QRat":
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return ONE
        if self.num.is_zero():
            return ZERO
        return QRat._raw(self.num ** n, self.den ** n, self.shift * n)

    # -- substitution -----------------------------------------------------
    def at_v(self, value: Fraction) -> Fraction:
        """Evaluate at a rational value of ``v``."""
        value = Fraction(value)

        def ev(p: fmpz_poly) -> Fraction:
            acc = Fraction(0)
            for c in reversed(p.coeffs()):
                acc = acc * value + int(c)
            return acc

        d = ev(self.den)
        if d == 0:
            raise SpecializationError(f"pole of {self} at v={value}")
        if value == 0 and self.shift < 0:
            raise SpecializationError(f"pole of {self} at v=0")
        return ev(self.num) / d * value ** self.shift

    def v_reflect(self) -> "QRat":
        """The bar involution ``v -> v^-1``."""
        if self.num.is_zero():
            return self
        dn, dd = self.num.degree(), self.den.degree()
        num = fmpz_poly(list(reversed(self.num.coeffs())))
        den = fmpz_poly(list(reversed(self.den.coeffs())))
        return QRat.make(num, den, -self.shift - dn + dd)

    # -- rendering --------------------------------------------------------
    def __repr__(self) -> str:
        return f"QRat({self})"

    def __str__(self) -> str:
        if self.num.is_zero():
            return "0"
        num = _render_laurent(self.num, self.shift)
        if self.den.is_one():
            return num
        return f"{num}/{_render_laurent(self.den, 0)}"


def _render_q_power(e: int) -> str:
    if e % 2 == 0:
        e //= 2
        return "q" if e == 1 else f"q^{e}"
    return f"q^({e}/2)"


def _render_laurent(p: fmpz_poly, shift: int) -> str:
    """Render ``v^shift * p`` as a Laurent polynomial in q, highest power first."""
    terms = []
    coeffs = p.coeffs()
    for i in range(len(coeffs) - 1, -1, -1):
        c = int(coeffs[i])
        if not c:
            continue
        e = i + shift
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if e == 0:
            body = str(c)
        else:
            body = _render_q_power(e) if c == 1 else f"{c}*{_render_q_power(e)}"
        terms.append((sign, body))
    text = "".join(f"{s}{b}" for s, b in terms)
    if text.startswith("+"):
        text = text[1:]
    return f"({text})" if len(terms) > 1 or text.startswith("-") else text


ZERO = QRat._raw(_P0, _P1, 0)
ONE = QRat._raw(_P1, _P1, 0)
V = QRat._raw(_P1, _P1, 1)
Q = QRat._raw(_P1, _P1, 2)


def vpow(e: int) -> QRat:
    """``v^e = q^(e/2)``."""
    return QRat._raw(_P1, _P1, e)


def qpow(e: Union[int, Fraction]) -> QRat:
    """``q^e`` for integer or half-integer ``e``."""
    twice = Fraction(e) * 2
    if twice.denominator != 1:
        raise ValueError(f"q^{e} is outside Q(q^(1/2))")
    return vpow(int(twice))


_QINT_CACHE: dict[int, QRat] = {}


def qint(n: int) -> QRat:
    """Symmetric q-integer ``[n] = (q^n - q^-n)/(q - q^-1)``."""
    try:
        return _QINT_CACHE[n]
    except KeyError:
        pass
    if n == 0:
        val = ZERO
    elif n < 0:
        val = -qint(-n)
    else:
        # q^(n-1) + q^(n-3) + ... + q^(1-n)
        val = QRat.laurent({2 * (n - 1 - 2 * j): 1 for j in range(n)})
    _QINT_CACHE[n] = val
    return val


def specialize_q1(a: QRat) -> Fraction:
    """Value at ``q = 1`` (equivalently ``v = 1``)."""
    try:
        return a.at_v(Fraction(1))
    except SpecializationError:
        raise SpecializationError(f"{a} has a pole at q=1") from None


def qrat_arith(a: QRat, b: QRat, op: str) -> QRat:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")
