"""Exact Laurent polynomials in the weight symbol ``L`` over the rationals."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Mapping


class NotInvertibleError(ArithmeticError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


class Laurent:
    """An element of ``Q[L, 1/L]``, stored as ``{exponent: coefficient}``.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            c = _frac(c)
            if c:
                clean[int(e)] = c
        self._terms = dict(sorted(clean.items()))
        self._hash = hash(tuple(self._terms.items()))

    @classmethod
    def const(cls, c) -> "Laurent":
        return cls({0: c})

    @classmethod
    def lam(cls, e: int = 1, c=1) -> "Laurent":
        return cls({e: c})

    @staticmethod
    def coerce(x) -> "Laurent":
        if isinstance(x, Laurent):
            return x
        if isinstance(x, (int, Rational)):
            return Laurent.const(x)
        raise TypeError(f"cannot use {type(x).__name__} as a coefficient")

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __hash__(self) -> int:
        return self._hash

    def __reduce__(self):
        return (Laurent, (self._terms,))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Laurent):
            try:
                other = Laurent.coerce(other)
            except TypeError:
                return NotImplemented
        return self._terms == other._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other) -> "Laurent":
        other = Laurent.coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self) -> "Laurent":
        return Laurent({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Laurent":
        return self + (-Laurent.coerce(other))

    def __rsub__(self, other) -> "Laurent":
        return Laurent.coerce(other) - self

    def __mul__(self, other) -> "Laurent":
        other = Laurent.coerce(other)
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            return self.inverse() ** (-n)
        out = Laurent.const(1)
        for _ in range(n):
            out = out * self
        return out

    def is_unit(self) -> bool:
        """Units of ``Q[L, 1/L]`` are exactly the nonzero monomials ``q L^e``."""
        return len(self._terms) == 1

    def inverse(self) -> "Laurent":
        if not self.is_unit():
            raise NotInvertibleError(
                f"{self} is not invertible in Q[L, 1/L]; only nonzero monomials q*L^e are units"
            )
        (e, c), = self._terms.items()
        return Laurent({-e: 1 / c})

    def __truediv__(self, other) -> "Laurent":
        return self * Laurent.coerce(other).inverse()

    def __rtruediv__(self, other) -> "Laurent":
        return Laurent.coerce(other) * self.inverse()

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get(0, Fraction(0))

    def has_negative_powers(self) -> bool:
        return any(e < 0 for e in self._terms)

    def evaluate(self, r) -> Fraction:
        """The rational value at ``L = r``."""
        r = _frac(r)
        if r == 0 and self.has_negative_powers():
            raise ZeroDivisionError(f"cannot evaluate {self} at L = 0")
        return sum((c * r**e for e, c in self._terms.items()), Fraction(0))

    def specialize(self, r) -> "Laurent":
        return Laurent.const(self.evaluate(r))

    def __repr__(self) -> str:
        return f"Laurent({self})"

    def __str__(self) -> str:
        return render_laurent(self)


ZERO = Laurent()
ONE = Laurent.const(1)
LAMBDA = Laurent.lam(1)


def _render_monomial(e: int, c: Fraction) -> str:
    """``c * L^e`` with ``c`` nonzero; the sign is included."""
    sign = "-" if c < 0 else ""
    a = abs(c)
    num = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
    if e == 0:
        return sign + num
    lam = "L" if e == 1 else f"L^{e}"
    if a == 1:
        return sign + lam
    return f"{sign}{num} {lam}"


def render_laurent(c: Laurent) -> str:
    if not c._terms:
        return "0"
    items = sorted(c._terms.items(), key=lambda t: -t[0])
    parts = []
    for idx, (e, q) in enumerate(items):
        mono = _render_monomial(e, q)
        if idx == 0:
            parts.append(mono)
        elif mono.startswith("-"):
            parts.append("- " + mono[1:])
        else:
            parts.append("+ " + mono)
    return " ".join(parts)
