"""Bracketed words: the free operated monoid and its nonunitary variant.

A word is an immutable sequence of prime factors.  A prime is either a
:class:`Letter` or an :class:`Op` (a bracketed subword).  The empty word is
the unit ``1``; it only exists in :attr:`Mode.UNITARY`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Sequence, Union


class ModeError(ValueError):
    """A unit appeared where the nonunitary (semigroup) mode forbids it."""


class Mode(enum.Enum):
    UNITARY = "unitary"
    NONUNITARY = "nonunitary"


@dataclass(frozen=True, slots=True)
class Letter:
    """A letter of the alphabet; letters are compared by ``rank``."""

    name: str
    rank: int

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Op:
    """The bracket ``[body]`` as a prime factor."""

    body: "Word"

    def __str__(self) -> str:
        return f"[{self.body}]"


Prime = Union[Letter, Op]


class Word:
    __slots__ = ("factors", "_hash")

    def __init__(self, factors: Sequence[Prime] = ()):
        self.factors: tuple[Prime, ...] = tuple(factors)
        self._hash = hash(self.factors)

    def __hash__(self) -> int:
        return self._hash

    def __reduce__(self):
        # the cached hash depends on the interpreter's string-hash seed
        return (Word, (self.factors,))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self._hash == other._hash and self.factors == other.factors

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self) -> Iterator[Prime]:
        return iter(self.factors)

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.factors + other.factors)

    def __bool__(self) -> bool:
        return bool(self.factors)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __str__(self) -> str:
        return render_word(self)

    @property
    def is_unit(self) -> bool:
        return not self.factors

    @property
    def is_prime(self) -> bool:
        return len(self.factors) == 1


ONE = Word()
BRACKETED_ONE = Op(ONE)


def render_word(w: Word) -> str:
    """Render in the ASCII surface syntax: ``[x y]z``, ``x[y]``, ``1``."""
    if not w.factors:
        return "1"
    out = []
    prev_letter = False
    for p in w.factors:
        if isinstance(p, Letter):
            if prev_letter:
                out.append(" ")
            out.append(p.name)
            prev_letter = True
        else:
            out.append("[")
            out.append(render_word(p.body))
            out.append("]")
            prev_letter = False
    return "".join(out)


def word(*factors: Prime) -> Word:
    return Word(factors)


def check_mode(w: Word, mode: Mode) -> None:
    """Raise :class:`ModeError` if ``w`` is not a word of ``mode``."""
    if mode is Mode.UNITARY:
        return
    if w.is_unit:
        raise ModeError("the unit 1 does not exist in nonunitary mode")
    for p in w.factors:
        if isinstance(p, Op):
            check_mode(p.body, mode)


def concat(u: Word, v: Word, mode: Mode = Mode.UNITARY) -> Word:
    if mode is Mode.NONUNITARY and (u.is_unit or v.is_unit):
        raise ModeError("cannot multiply by the unit in nonunitary mode")
    return Word(u.factors + v.factors)


def bracket(u: Word, mode: Mode = Mode.UNITARY) -> Word:
    if mode is Mode.NONUNITARY and u.is_unit:
        raise ModeError("cannot bracket the unit in nonunitary mode")
    return Word((Op(u),))


def breadth(w: Word) -> int:
    return len(w.factors)


def depth(w: Word) -> int:
    """Maximal bracket nesting; letters have depth 0."""
    d = 0
    for p in w.factors:
        if isinstance(p, Op):
            d = max(d, 1 + depth(p.body))
    return d


def degx(w: Word) -> int:
    """Number of letters plus number of bracketed units ``[1]``."""
    n = 0
    for p in w.factors:
        if isinstance(p, Letter):
            n += 1
        elif p.body.is_unit:
            n += 1
        else:
            n += degx(p.body)
    return n


def letter_count(w: Word) -> int:
    return sum(1 if isinstance(p, Letter) else letter_count(p.body) for p in w.factors)


def bracket_count(w: Word) -> int:
    return sum(0 if isinstance(p, Letter) else 1 + bracket_count(p.body) for p in w.factors)


def letters(w: Word) -> Iterator[Letter]:
    """Letters of ``w`` from left to right."""
    for p in w.factors:
        if isinstance(p, Letter):
            yield p
        else:
            yield from letters(p.body)


def rename_letters(w: Word, mapping: dict[Letter, Letter]) -> Word:
    out = []
    for p in w.factors:
        if isinstance(p, Letter):
            out.append(mapping.get(p, p))
        else:
            out.append(Op(rename_letters(p.body, mapping)))
    return Word(out)


Frame = tuple[tuple[Prime, ...], tuple[Prime, ...]]


@dataclass(frozen=True, slots=True)
class Context:
    """A word with exactly one hole ``*``.

    ``frames[0]`` holds the factors left and right of the hole (or of the
    bracket enclosing it) at the top level; each further frame sits one
    bracket deeper.  ``Context(((), ()),)`` is the bare hole.
    """

    frames: tuple[Frame, ...] = (((), ()),)

    def __post_init__(self):
        if not self.frames:
            raise ValueError("a context needs at least one frame")

    def substitute(self, u: Word, mode: Mode = Mode.UNITARY) -> Word:
        if mode is Mode.NONUNITARY and u.is_unit:
            raise ModeError("cannot substitute the unit in nonunitary mode")
        left, right = self.frames[-1]
        body = left + u.factors + right
        for left, right in reversed(self.frames[:-1]):
            body = left + (Op(Word(body)),) + right
        return Word(body)

    def __call__(self, u: Word) -> Word:
        return self.substitute(u)

    @property
    def is_hole(self) -> bool:
        return len(self.frames) == 1 and self.frames[0] == ((), ())

    def compose(self, inner: "Context") -> "Context":
        """The context ``self|_{inner}``: plug ``inner`` into the hole."""
        left, right = self.frames[-1]
        ileft, iright = inner.frames[0]
        merged = (left + ileft, iright + right)
        return Context(self.frames[:-1] + (merged,) + inner.frames[1:])

    def __str__(self) -> str:
        return render_context(self)

    def __repr__(self) -> str:
        return f"Context({str(self)!r})"


HOLE = Context()


def render_context(q: Context) -> str:
    marker = Letter("*", -1)
    return render_word(q.substitute(Word((marker,))))


def substitute(q: Context, u: Word, mode: Mode = Mode.UNITARY) -> Word:
    return q.substitute(u, mode)


def _runs(w: Word):
    """Yield ``(frames, factors, i, j)`` for every nonempty contiguous run.

    Levels are visited outermost first (breadth-first over brackets, left to
    right); within a level the full product comes first, then proper runs by
    start position and then by length.
    """
    queue: list[tuple[tuple[Frame, ...], tuple[Prime, ...]]] = [((), w.factors)]
    head = 0
    while head < len(queue):
        frames, facs = queue[head]
        head += 1
        n = len(facs)
        if n == 0:
            continue
        yield frames, facs, 0, n
        for i in range(n):
            for j in range(i + 1, n + 1):
                if i == 0 and j == n:
                    continue
                yield frames, facs, i, j
        for p, f in enumerate(facs):
            if isinstance(f, Op) and f.body.factors:
                queue.append((frames + ((facs[:p], facs[p + 1:]),), f.body.factors))


def run_context(frames: tuple[Frame, ...], facs: tuple[Prime, ...], i: int, j: int) -> Context:
    return Context(frames + ((facs[:i], facs[j:]),))


def enumerate_contexts(w: Word) -> list[tuple[Context, Word]]:
    """All ``(q, s)`` with ``q|_s == w`` and ``s`` a nonempty sub-product."""
    return [
        (run_context(frames, facs, i, j), Word(facs[i:j]))
        for frames, facs, i, j in _runs(w)
    ]


def make_alphabet(names: Sequence[str]) -> dict[str, Letter]:
    """Letters ranked by declaration order."""
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate letters in alphabet {list(names)}")
    return {name: Letter(name, rank) for rank, name in enumerate(names)}


def fresh_letters(n: int, start: int = 0) -> list[Letter]:
    """``a, b, c, ...`` then ``a1, b1, ...`` for large ``n``."""
    out = []
    for k in range(start, start + n):
        q, r = divmod(k, 26)
        name = chr(ord("a") + r) + (str(q) if q else "")
        out.append(Letter(name, k))
    return out


def words_by_multidegree(
    n: int,
    k: int,
    alphabet: Sequence[Letter],
    mode: Mode = Mode.UNITARY,
    max_depth: int | None = None,
) -> list[Word]:
    """Every word with exactly ``n`` letters and ``k`` brackets."""
    return [
        Word(seq)
        for seq in _seqs(n, k, tuple(alphabet), mode, max_depth)
        if seq or mode is Mode.UNITARY
    ]


_SEQ_CACHE: dict = {}


def _seqs(n, k, alphabet, mode, max_depth):
    key = (n, k, alphabet, mode, max_depth, "seq")
    if key in _SEQ_CACHE:
        return _SEQ_CACHE[key]
    out: list[tuple[Prime, ...]] = []
    if n == 0 and k == 0:
        out.append(())
    else:
        for n1 in range(n + 1):
            for k1 in range(k + 1):
                if n1 == 0 and k1 == 0:
                    continue
                rests = _seqs(n - n1, k - k1, alphabet, mode, max_depth)
                if not rests:
                    continue
                for p in _primes(n1, k1, alphabet, mode, max_depth):
                    for rest in rests:
                        out.append((p,) + rest)
    _SEQ_CACHE[key] = out
    return out


def _primes(n, k, alphabet, mode, max_depth):
    key = (n, k, alphabet, mode, max_depth, "prime")
    if key in _SEQ_CACHE:
        return _SEQ_CACHE[key]
    out: list[Prime] = []
    if n == 1 and k == 0:
        out.extend(alphabet)
    elif k >= 1 and (max_depth is None or max_depth >= 1):
        inner_depth = None if max_depth is None else max_depth - 1
        if n == 0 and k == 1:
            if mode is Mode.UNITARY:
                out.append(BRACKETED_ONE)
        else:
            for body in _seqs(n, k - 1, alphabet, mode, inner_depth):
                if body:
                    out.append(Op(Word(body)))
    _SEQ_CACHE[key] = out
    return out
