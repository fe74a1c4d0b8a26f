"""Exact arithmetic in cyclotomic fields Q(zeta_e).

A value of order e is a rational polynomial in zeta_e = exp(2*pi*i/e), kept
reduced modulo the e-th cyclotomic polynomial, i.e. expressed in the power
basis 1, zeta, ..., zeta^(phi(e)-1) with fractions.Fraction coefficients.
Operations on values of different orders lift both sides to the lcm exactly.
No floating point enters any computation; to_complex exists for display only.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .errors import DivisionByZero, SchemaError


def divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _polydiv_exact(num: list[int], den: tuple[int, ...]) -> list[int]:
    """Exact division of integer polynomials (den monic); asserts remainder 0."""
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        out[i - dd] = c
        for j, dj in enumerate(den):
            num[i - dd + j] -= c * dj
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> tuple[int, ...]:
    """Coefficients of Phi_e (ascending degree, monic, integral)."""
    if e == 1:
        return (-1, 1)
    poly = [-1] + [0] * (e - 1) + [1]
    for d in divisors(e)[:-1]:
        poly = _polydiv_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def euler_phi(e: int) -> int:
    return len(cyclotomic_polynomial(e)) - 1


def _reduce(order: int, raw: dict[int, Fraction]) -> dict[int, Fraction]:
    """Canonical coefficients: exponents folded mod order, then mod Phi_order."""
    phi_coeffs = cyclotomic_polynomial(order)
    deg = len(phi_coeffs) - 1
    dense = [Fraction(0)] * max(order, deg + 1)
    for k, v in raw.items():
        dense[k % order] += v
    for i in range(len(dense) - 1, deg - 1, -1):
        c = dense[i]
        if c:
            dense[i] = Fraction(0)
            for j in range(deg):
                dense[i - deg + j] -= c * phi_coeffs[j]
    return {k: v for k, v in enumerate(dense[:deg]) if v}


class Cyclotomic:
    """Immutable exact cyclotomic number."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: dict[int, Fraction], reduce: bool = True):
        if order < 1:
            raise ValueError(f"order must be positive, got {order}")
        if reduce:
            coeffs = _reduce(order, {k: Fraction(v) for k, v in coeffs.items()})
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("Cyclotomic is immutable")

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def from_rational(q) -> "Cyclotomic":
        q = Fraction(q)
        return Cyclotomic(1, {0: q} if q else {})

    @staticmethod
    def zero() -> "Cyclotomic":
        return Cyclotomic.from_rational(0)

    @staticmethod
    def one() -> "Cyclotomic":
        return Cyclotomic.from_rational(1)

    @staticmethod
    def root_of_unity(e: int, k: int = 1) -> "Cyclotomic":
        return Cyclotomic(e, {k % e: Fraction(1)})

    # -- structure -------------------------------------------------------------

    def lift(self, target_order: int) -> "Cyclotomic":
        """The same value written in Q(zeta_target); order must divide target."""
        if target_order == self.order:
            return self
        if target_order % self.order != 0:
            raise ValueError(f"cannot lift order {self.order} to {target_order}")
        step = target_order // self.order
        return Cyclotomic(target_order, {k * step: v for k, v in self.coeffs.items()})

    def _common(self, other: "Cyclotomic"):
        e = lcm(self.order, other.order)
        return self.lift(e), other.lift(e)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_rational(self) -> bool:
        return all(k == 0 for k in self.coeffs)

    def to_fraction(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        if self.is_rational:
            return self.coeffs[0]
        raise ValueError(f"{self!r} is not rational")

    def to_int(self) -> int:
        q = self.to_fraction()
        if q.denominator != 1:
            raise ValueError(f"{self!r} is not an integer")
        return q.numerator

    def dense(self, order: int | None = None) -> tuple[Fraction, ...]:
        """Coefficient vector of length phi(order) (defaults to own order)."""
        v = self if order is None else self.lift(order)
        deg = euler_phi(v.order)
        return tuple(v.coeffs.get(k, Fraction(0)) for k in range(deg))

    def sort_key(self, order: int | None = None):
        return tuple(
            (c.numerator, c.denominator) for c in self.dense(order)
        )

    # -- arithmetic --------------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic.from_rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Cyclotomic")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._common(other)
        out = dict(a.coeffs)
        for k, v in b.coeffs.items():
            s = out.get(k, Fraction(0)) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Cyclotomic(a.order, out, reduce=False)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(
            self.order, {k: -v for k, v in self.coeffs.items()}, reduce=False
        )

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._common(other)
        raw: dict[int, Fraction] = {}
        for ka, va in a.coeffs.items():
            for kb, vb in b.coeffs.items():
                k = ka + kb
                raw[k] = raw.get(k, Fraction(0)) + va * vb
        return Cyclotomic(a.order, raw)

    __rmul__ = __mul__

    def galois(self, t: int) -> "Cyclotomic":
        """Image under the automorphism zeta -> zeta^t (t coprime to order)."""
        if gcd(t, self.order) != 1:
            raise ValueError(f"{t} is not coprime to the order {self.order}")
        return Cyclotomic(
            self.order, {(k * t) % self.order: v for k, v in self.coeffs.items()}
        )

    def conjugate(self) -> "Cyclotomic":
        return Cyclotomic(
            self.order, {(-k) % self.order: v for k, v in self.coeffs.items()}
        )

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse via the product of Galois conjugates."""
        if self.is_zero:
            raise DivisionByZero("inverse of zero")
        if self.is_rational:
            return Cyclotomic.from_rational(1 / self.coeffs[0])
        num = Cyclotomic.one()
        for t in range(2, self.order + 1):
            if gcd(t, self.order) == 1:
                num = num * self.galois(t)
        norm = (self * num).to_fraction()
        return num * Cyclotomic.from_rational(1 / norm)

    def __truediv__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    __hash__ = None  # compare via lifting; not suitable as a dict key

    def __bool__(self) -> bool:
        return not self.is_zero

    def to_complex(self) -> complex:
        """Float approximation (display/debug only; never used in decisions)."""
        return sum(
            (complex(v) * cmath.exp(2j * cmath.pi * k / self.order)
             for k, v in self.coeffs.items()),
            0j,
        )

    def __repr__(self) -> str:
        if self.is_rational:
            return f"Cyc({self.to_fraction()})"
        terms = ", ".join(f"{k}: {v}" for k, v in sorted(self.coeffs.items()))
        return f"Cyc(zeta{self.order}; {{{terms}}})"

    # -- JSON -----------------------------------------------------------------

    def to_json(self, order: int | None = None) -> dict:
        v = self if order is None else self.lift(order)
        return {
            "order": v.order,
            "coeffs": {str(k): _format_fraction(c) for k, c in sorted(v.coeffs.items())},
        }

    @staticmethod
    def from_json(obj) -> "Cyclotomic":
        if not isinstance(obj, dict) or "order" not in obj or "coeffs" not in obj:
            raise SchemaError(f"bad cyclotomic payload: {obj!r}")
        order = obj["order"]
        if not isinstance(order, int) or order < 1:
            raise SchemaError(f"bad cyclotomic order: {order!r}")
        coeffs = {}
        for k, v in obj["coeffs"].items():
            try:
                kk = int(k)
            except ValueError:
                raise SchemaError(f"bad exponent {k!r}") from None
            if not 0 <= kk < order:
                raise SchemaError(f"exponent {kk} out of range for order {order}")
            coeffs[kk] = _parse_fraction(v)
        return Cyclotomic(order, coeffs)


def _format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _parse_fraction(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"bad rational literal {s!r}") from None
    raise SchemaError(f"bad rational literal {s!r}")


def zeta(e: int, k: int = 1) -> Cyclotomic:
    return Cyclotomic.root_of_unity(e, k)


CYC_ZERO = Cyclotomic.zero()
CYC_ONE = Cyclotomic.one()
