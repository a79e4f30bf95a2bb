"""Operated polynomials: finite combinations of bracketed words."""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from .coeffs import Laurent, NotInvertibleError
from .orders import OrderKind, sort_key
from .terms import ONE, Mode, ModeError, Op, Word, check_mode


class OpPoly:
    """An immutable element of ``k M(X)`` (or ``k S(X)`` in nonunitary mode).

    The coefficient ring is ``Q[L, 1/L]``.  Every operand of an arithmetic
    operation must share this polynomial's :class:`Mode`.
    """

    __slots__ = ("_terms", "mode", "_hash")

    def __init__(
        self,
        terms: Mapping[Word, object] | Iterable[tuple[Word, object]] = (),
        mode: Mode = Mode.UNITARY,
        *,
        _trusted: bool = False,
    ):
        self.mode = mode
        self._hash = None
        if _trusted:
            self._terms = terms
            return
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, Laurent] = {}
        for w, c in items:
            c = Laurent.coerce(c)
            if c.is_zero():
                continue
            check_mode(w, mode)
            acc[w] = acc[w] + c if w in acc else c
        self._terms = {w: c for w, c in acc.items() if not c.is_zero()}

    @classmethod
    def monomial(cls, w: Word, c=1, mode: Mode = Mode.UNITARY) -> "OpPoly":
        return cls({w: c}, mode)

    @classmethod
    def scalar(cls, c, mode: Mode = Mode.UNITARY) -> "OpPoly":
        if mode is Mode.NONUNITARY and Laurent.coerce(c):
            raise ModeError("nonzero scalars do not exist in nonunitary mode")
        return cls({ONE: c}, mode)

    @classmethod
    def zero(cls, mode: Mode = Mode.UNITARY) -> "OpPoly":
        return cls({}, mode)

    def _check(self, other: "OpPoly") -> None:
        if other.mode is not self.mode:
            raise ModeError(f"cannot mix {self.mode.value} and {other.mode.value} polynomials")

    # -- container protocol -------------------------------------------------
    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Word]:
        return iter(self._terms)

    def __contains__(self, w: Word) -> bool:
        return w in self._terms

    def items(self):
        return self._terms.items()

    def coeff(self, w: Word) -> Laurent:
        return self._terms.get(w, Laurent())

    def words(self) -> list[Word]:
        return list(self._terms)

    def sorted_items(self, kind: OrderKind = OrderKind.PLL) -> list[tuple[Word, Laurent]]:
        """Terms in descending order."""
        return sorted(self._terms.items(), key=lambda t: sort_key(t[0], kind), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, OpPoly):
            return self.mode is other.mode and self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __reduce__(self):
        return (OpPoly, (list(self._terms.items()), self.mode))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.mode, frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic ------------------------------------------------------------
    def __add__(self, other: "OpPoly") -> "OpPoly":
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out[w] + c if w in out else c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return OpPoly(out, self.mode, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "OpPoly":
        return OpPoly({w: -c for w, c in self._terms.items()}, self.mode, _trusted=True)

    def __sub__(self, other: "OpPoly") -> "OpPoly":
        return self + (-other)

    def scale(self, c) -> "OpPoly":
        c = Laurent.coerce(c)
        if c.is_zero():
            return OpPoly.zero(self.mode)
        return OpPoly({w: c * d for w, d in self._terms.items()}, self.mode, _trusted=True)

    def __mul__(self, other) -> "OpPoly":
        if not isinstance(other, OpPoly):
            return self.scale(other)
        self._check(other)
        out: dict[Word, Laurent] = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                w = u * v
                s = out[w] + a * b if w in out else a * b
                out[w] = s
        return OpPoly({w: c for w, c in out.items() if not c.is_zero()}, self.mode, _trusted=True)

    def __rmul__(self, other) -> "OpPoly":
        return self.scale(other)

    def op(self) -> "OpPoly":
        """Apply the bracket linearly."""
        if self.mode is Mode.NONUNITARY and ONE in self._terms:
            raise ModeError("cannot bracket the unit in nonunitary mode")
        return OpPoly(
            {Word((Op(w),)): c for w, c in self._terms.items()}, self.mode, _trusted=True
        )

    def map_words(self, fn) -> "OpPoly":
        """Linear extension of a word map (results may collide)."""
        return OpPoly([(fn(w), c) for w, c in self._terms.items()], self.mode)

    def map_coeffs(self, fn) -> "OpPoly":
        return OpPoly([(w, fn(c)) for w, c in self._terms.items()], self.mode)

    def specialize(self, r) -> "OpPoly":
        """Evaluate ``L = r`` in every coefficient."""
        return self.map_coeffs(lambda c: c.specialize(r))

    # -- leading data ------------------------------------------------------------
    def is_scalar(self) -> bool:
        return all(w.is_unit for w in self._terms)

    def leading(self, kind: OrderKind = OrderKind.PLL) -> tuple[Word, Laurent]:
        """Largest monomial and its coefficient; scalars lead with ``1``."""
        if not self._terms:
            raise ValueError("the zero polynomial has no leading monomial")
        w = max(self._terms, key=lambda w: sort_key(w, kind))
        return w, self._terms[w]

    def leading_monomial(self, kind: OrderKind = OrderKind.PLL) -> Word:
        return self.leading(kind)[0]

    def is_monic(self, kind: OrderKind = OrderKind.PLL) -> bool:
        if not self._terms or self.is_scalar():
            return False
        return self.leading(kind)[1] == 1

    def make_monic(self, kind: OrderKind = OrderKind.PLL) -> "OpPoly":
        _, c = self.leading(kind)
        try:
            inv = c.inverse()
        except NotInvertibleError as exc:
            raise NotInvertibleError(
                f"cannot make monic: leading coefficient {c} is not a unit "
                "of Q[L, 1/L] (only q*L^e with q != 0 are invertible)"
            ) from exc
        return self.scale(inv)

    def __repr__(self) -> str:
        from .syntax import render

        return f"OpPoly({render(self)!r})"

    def __str__(self) -> str:
        from .syntax import render

        return render(self)


def poly_add(f: OpPoly, g: OpPoly) -> OpPoly:
    return f + g


def poly_scale(c, f: OpPoly) -> OpPoly:
    return f.scale(c)


def poly_mul(f: OpPoly, g: OpPoly) -> OpPoly:
    return f * g


def poly_op(f: OpPoly) -> OpPoly:
    return f.op()


def leading(f: OpPoly, kind: OrderKind = OrderKind.PLL) -> tuple[Word, Laurent]:
    if f.mode is Mode.NONUNITARY and f.is_scalar():
        raise ModeError("scalars have no leading monomial in nonunitary mode")
    return f.leading(kind)


def is_monic(f: OpPoly, kind: OrderKind = OrderKind.PLL) -> bool:
    return f.is_monic(kind)


def make_monic(f: OpPoly, kind: OrderKind = OrderKind.PLL) -> OpPoly:
    return f.make_monic(kind)
