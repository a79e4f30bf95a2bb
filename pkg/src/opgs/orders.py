"""Path words and the two path-lexicographic orders PLl and PLr.

Every occurrence of a letter (or of a bracketed unit ``[1]``) in a word gets
a path word over ``X + {P, mu}`` recording the operators (``P``) and
multiplications (``mu``) passed on the way from the root.  Words are
compared by ``degx`` first and then by the tuple of path words, read left
to right (PLl) or right to left (PLr), each path word compared by dlex.

(degx, paths) does not separate all words (``[a b][c d]e`` and
``[a b c d]e`` share it), so a structural comparison breaks remaining ties.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from typing import Union

from .terms import Letter, Word, breadth, degx, depth


class OrderKind(enum.Enum):
    PLL = "pll"
    PLR = "plr"


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


class PathOp(enum.Enum):
    """The two non-letter path symbols; every letter < P < MU."""

    P = "P"
    MU = "μ"

    def __str__(self) -> str:
        return self.value


P = PathOp.P
MU = PathOp.MU

PathSymbol = Union[Letter, PathOp]
PathWord = tuple[PathSymbol, ...]


def render_path(p: PathWord) -> str:
    if not p:
        return "1"
    return "".join(str(s) for s in p)


@lru_cache(maxsize=None)
def _prime_paths(p) -> tuple[PathWord, ...]:
    if isinstance(p, Letter):
        return ((p,),)
    if p.body.is_unit:
        return ((P,),)
    return tuple((P,) + path for path in letter_paths(p.body))


@lru_cache(maxsize=None)
def letter_paths(w: Word) -> tuple[PathWord, ...]:
    """One path word per letter of ``X + {[1]}`` in ``w``, left to right."""
    if len(w.factors) == 1:
        return _prime_paths(w.factors[0])
    return tuple((MU,) + path for p in w.factors for path in _prime_paths(p))


def patl(w: Word) -> tuple[PathWord, ...]:
    return letter_paths(w)


def patr(w: Word) -> tuple[PathWord, ...]:
    return letter_paths(w)[::-1]


def _symbol_key(s: PathSymbol) -> tuple[int, int]:
    if isinstance(s, Letter):
        return (0, s.rank)
    return (1, 0) if s is P else (2, 0)


def dlex_key(p: PathWord) -> tuple:
    return (len(p), tuple(_symbol_key(s) for s in p))


def _sign(a, b) -> Ordering:
    if a < b:
        return Ordering.LT
    if a > b:
        return Ordering.GT
    return Ordering.EQ


def dlex_cmp(p: PathWord, q: PathWord) -> Ordering:
    """Degree-lexicographic comparison of two path words."""
    return _sign(dlex_key(p), dlex_key(q))


@lru_cache(maxsize=None)
def structural_key(w: Word) -> tuple:
    """Total, injective fallback key: depth, breadth, then the factors."""
    return (
        depth(w),
        breadth(w),
        tuple(
            (0, f.rank) if isinstance(f, Letter) else (1, structural_key(f.body))
            for f in w.factors
        ),
    )


@lru_cache(maxsize=None)
def path_key(w: Word, kind: OrderKind) -> tuple:
    """``(degx, path tuple)`` as a plain sortable tuple."""
    paths = letter_paths(w)
    if kind is OrderKind.PLR:
        paths = paths[::-1]
    return (degx(w), tuple(dlex_key(p) for p in paths))


@lru_cache(maxsize=None)
def sort_key(w: Word, kind: OrderKind) -> tuple:
    """Key realizing the order: ``u < v`` iff ``sort_key(u) < sort_key(v)``."""
    return path_key(w, kind) + (structural_key(w),)


def cmp(kind: OrderKind, u: Word, v: Word) -> Ordering:
    if u == v:
        return Ordering.EQ
    return _sign(sort_key(u, kind), sort_key(v, kind))


def max_word(words, kind: OrderKind) -> Word:
    return max(words, key=lambda w: sort_key(w, kind))


def sort_words(words, kind: OrderKind, descending: bool = False) -> list[Word]:
    return sorted(words, key=lambda w: sort_key(w, kind), reverse=descending)


def parse_order(text: str | OrderKind) -> OrderKind:
    if isinstance(text, OrderKind):
        return text
    try:
        return OrderKind(text.lower())
    except ValueError:
        raise ValueError(f"unknown order {text!r}; expected 'pll' or 'plr'") from None
