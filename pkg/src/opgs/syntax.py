"""ASCII surface syntax for words, contexts and operated polynomials.

    poly   := term (('+'|'-') term)*
    term   := coeff? word | coeff
    coeff  := '(' cexpr ')' | rat | lam | coeff '*'? coeff
    lam    := ('L'|'λ'|'lambda') ('^' int)?
    word   := atom+ | '1'
    atom   := ident | '[' word ']'

Inside parentheses a coefficient may use ``+ - * /``; division is only
allowed by units of ``Q[L, 1/L]``.  Contexts use ``*`` for the hole.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Mapping

from .coeffs import Laurent, NotInvertibleError
from .orders import OrderKind
from .poly import OpPoly
from .terms import (
    Context,
    Letter,
    Mode,
    Op,
    Word,
    make_alphabet,
    render_context,
    render_word,
)


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.text = text
        self.pos = pos
        if pos is not None:
            message = f"{message} at position {pos}"
            if text:
                message += f"\n  {text}\n  {' ' * pos}^"
        super().__init__(message)


LAMBDA_NAMES = frozenset({"L", "λ", "lambda"})

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<ident>[^\W\d]\w*)
  | (?P<sym>[\[\]()+\-*/^])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            if kind == "ident" and value in LAMBDA_NAMES:
                kind = "lam"
            out.append((kind, value, pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def _as_alphabet(alphabet) -> dict[str, Letter] | None:
    if alphabet is None:
        return None
    if isinstance(alphabet, Mapping):
        return dict(alphabet)
    if isinstance(alphabet, str):
        alphabet = [a.strip() for a in alphabet.split(",") if a.strip()]
    return make_alphabet(list(alphabet))


def identifiers(text: str) -> list[str]:
    """Letter names used in ``text`` (weight symbol excluded), sorted."""
    names = {v for k, v, _ in _tokenize(text) if k == "ident"}
    return sorted(names)


class _Parser:
    def __init__(self, text: str, alphabet: dict[str, Letter] | None, hole: bool = False):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        if alphabet is None:
            alphabet = make_alphabet(identifiers(text))
        self.alphabet = alphabet
        self.hole = hole
        self.holes = 0

    # -- helpers -----------------------------------------------------------------
    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, message: str, tok=None):
        tok = tok or self.tok
        raise ParseError(message, self.text, tok[2])

    def accept(self, kind: str, value: str | None = None):
        k, v, _ = self.tok
        if k == kind and (value is None or v == value):
            self.i += 1
            return True
        return False

    def expect(self, kind: str, value: str | None = None):
        if not self.accept(kind, value):
            want = value or kind
            got = self.tok[1] or "end of input"
            self.error(f"expected {want!r}, got {got!r}")

    def at_sym(self, *values: str) -> bool:
        k, v, _ = self.tok
        return k == "sym" and v in values

    def at_word_start(self) -> bool:
        k, v, _ = self.tok
        return k == "ident" or (k == "sym" and v == "[") or (self.hole and k == "sym" and v == "*")

    def at_coeff_start(self) -> bool:
        k, v, _ = self.tok
        return k in ("int", "lam") or (k == "sym" and v == "(")

    # -- words -------------------------------------------------------------------
    def word(self) -> Word:
        if self.tok[0] == "int":
            if self.tok[1] != "1":
                self.error(f"a word cannot start with the number {self.tok[1]}")
            self.i += 1
            return Word()
        factors = []
        while self.at_word_start():
            factors.append(self.atom())
        if not factors:
            self.error("expected a word")
        return Word(factors)

    def atom(self):
        k, v, pos = self.tok
        if k == "ident":
            if v not in self.alphabet:
                self.error(f"unknown letter {v!r}")
            self.i += 1
            return self.alphabet[v]
        if self.hole and k == "sym" and v == "*":
            self.i += 1
            self.holes += 1
            return _HOLE_MARK
        self.expect("sym", "[")
        inner = self.word()
        self.expect("sym", "]")
        return Op(inner)

    # -- coefficients ------------------------------------------------------------
    def catom(self) -> Laurent:
        k, v, _ = self.tok
        if k == "int":
            self.i += 1
            return Laurent.const(int(v))
        if k == "lam":
            self.i += 1
            e = 1
            if self.accept("sym", "^"):
                neg = self.accept("sym", "-")
                if self.tok[0] != "int":
                    self.error("expected an integer exponent")
                e = int(self.tok[1]) * (-1 if neg else 1)
                self.i += 1
            return Laurent.lam(e)
        if self.accept("sym", "("):
            c = self.cexpr()
            self.expect("sym", ")")
            return c
        self.error("expected a coefficient")

    def cunary(self) -> Laurent:
        if self.accept("sym", "-"):
            return -self.cunary()
        return self.catom()

    def cproduct(self, inside: bool) -> Laurent:
        c = self.cunary() if inside else self.catom()
        while True:
            if self.at_sym("*"):
                self.i += 1
                if self.at_word_start():
                    break
                c = c * (self.cunary() if inside else self.catom())
            elif self.at_sym("/"):
                tok = self.tok
                self.i += 1
                d = self.cunary() if inside else self.catom()
                try:
                    c = c / d
                except NotInvertibleError as exc:
                    raise ParseError(str(exc), self.text, tok[2]) from None
            elif self.at_coeff_start():
                c = c * self.catom()
            else:
                break
        return c

    def cexpr(self) -> Laurent:
        c = self.cproduct(inside=True)
        while self.at_sym("+", "-"):
            sign = self.tok[1]
            self.i += 1
            d = self.cproduct(inside=True)
            c = c + d if sign == "+" else c - d
        return c

    # -- polynomials -------------------------------------------------------------
    def term(self) -> tuple[Word, Laurent]:
        c = Laurent.const(1)
        has_coeff = False
        if self.at_coeff_start():
            # a bare "1" followed by nothing word-like is the unit word
            c = self.cproduct(inside=False)
            has_coeff = True
        if self.at_word_start():
            return self.word(), c
        if not has_coeff:
            self.error("expected a term")
        return Word(), c

    def poly(self) -> list[tuple[Word, Laurent]]:
        terms = []
        sign = 1
        if self.at_sym("+", "-"):
            sign = -1 if self.tok[1] == "-" else 1
            self.i += 1
        while True:
            w, c = self.term()
            terms.append((w, c if sign > 0 else -c))
            if self.at_sym("+", "-"):
                sign = -1 if self.tok[1] == "-" else 1
                self.i += 1
                continue
            break
        if self.tok[0] != "end":
            self.error(f"unexpected {self.tok[1]!r}")
        return terms


_HOLE_MARK = Letter("*", -1)


def parse_poly(text: str, alphabet=None, mode: Mode = Mode.UNITARY) -> OpPoly:
    """Parse an operated polynomial.

    ``alphabet`` is a sequence of names (declaration order is the letter
    order), a comma-separated string, a name->Letter mapping, or ``None`` to
    use the identifiers of ``text`` in sorted order.
    """
    p = _Parser(text, _as_alphabet(alphabet))
    return OpPoly(p.poly(), mode)


def parse_word(text: str, alphabet=None, mode: Mode = Mode.UNITARY) -> Word:
    p = _Parser(text, _as_alphabet(alphabet))
    w = p.word()
    if p.tok[0] != "end":
        p.error(f"unexpected {p.tok[1]!r}")
    from .terms import check_mode

    check_mode(w, mode)
    return w


def _split_hole(w: Word, text: str):
    """Turn a word containing the hole marker into a :class:`Context`."""
    for idx, f in enumerate(w.factors):
        if f == _HOLE_MARK:
            return Context(((w.factors[:idx], w.factors[idx + 1:]),))
        if isinstance(f, Op):
            inner = _split_hole(f.body, text)
            if inner is not None:
                return Context(((w.factors[:idx], w.factors[idx + 1:]),) + inner.frames)
    return None


def parse_context(text: str, alphabet=None) -> Context:
    p = _Parser(text, _as_alphabet(alphabet), hole=True)
    w = p.word()
    if p.tok[0] != "end":
        p.error(f"unexpected {p.tok[1]!r}")
    if p.holes != 1:
        raise ParseError(f"a context needs exactly one '*', found {p.holes}", text)
    return _split_hole(w, text)


# -- rendering ---------------------------------------------------------------------
def _coeff_prefix(c: Laurent) -> tuple[str, str]:
    """Split a coefficient into ``(sign, magnitude text)`` for a term."""
    items = list(c.items())
    if len(items) == 1:
        (e, q), = items
        sign = "-" if q < 0 else "+"
        q = abs(q)
        if e == 0:
            mag = "" if q == 1 else (str(q.numerator) if q.denominator == 1 else str(q))
        else:
            lam = "L" if e == 1 else f"L^{e}"
            if q == 1:
                mag = lam
            else:
                num = str(q.numerator) if q.denominator == 1 else str(q)
                mag = f"{num} {lam}"
        return sign, mag
    return "+", f"({c})"


def render_term(w: Word, c: Laurent) -> tuple[str, str]:
    sign, mag = _coeff_prefix(c)
    if w.is_unit:
        body = mag or "1"
    elif mag:
        body = f"{mag} {render_word(w)}"
    else:
        body = render_word(w)
    return sign, body


def render(f: OpPoly, fmt: str = "text", kind: OrderKind = OrderKind.PLL) -> str:
    """Render ``f`` with terms in descending order."""
    if fmt == "json":
        return json.dumps(poly_to_json(f, kind), ensure_ascii=False)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    if f.is_zero():
        return "0"
    out = []
    for idx, (w, c) in enumerate(f.sorted_items(kind)):
        sign, body = render_term(w, c)
        if idx == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


def word_to_json(w: Word):
    if w.is_unit:
        return ["one"]
    return ["cat"] + [
        f.name if isinstance(f, Letter) else ["op", word_to_json(f.body)] for f in w.factors
    ]


def word_from_json(obj, alphabet: Mapping[str, Letter]) -> Word:
    if obj == ["one"]:
        return Word()
    if not isinstance(obj, list) or not obj or obj[0] != "cat":
        raise ParseError(f"malformed JSON word {obj!r}")
    factors = []
    for a in obj[1:]:
        if isinstance(a, str):
            if a not in alphabet:
                raise ParseError(f"unknown letter {a!r}")
            factors.append(alphabet[a])
        elif isinstance(a, list) and len(a) == 2 and a[0] == "op":
            factors.append(Op(word_from_json(a[1], alphabet)))
        else:
            raise ParseError(f"malformed JSON atom {a!r}")
    return Word(factors)


def coeff_to_json(c: Laurent) -> dict[str, str]:
    return {str(e): str(q) for e, q in sorted(c.items())}


def coeff_from_json(obj: Mapping[str, str]) -> Laurent:
    return Laurent({int(e): Fraction(q) for e, q in obj.items()})


def poly_to_json(f: OpPoly, kind: OrderKind = OrderKind.PLL) -> list:
    return [
        {"coeff": coeff_to_json(c), "word": word_to_json(w)} for w, c in f.sorted_items(kind)
    ]


def poly_from_json(obj, alphabet, mode: Mode = Mode.UNITARY) -> OpPoly:
    alphabet = _as_alphabet(alphabet)
    if isinstance(obj, str):
        obj = json.loads(obj)
    return OpPoly(
        [(word_from_json(t["word"], alphabet), coeff_from_json(t["coeff"])) for t in obj], mode
    )


__all__ = [
    "ParseError",
    "parse_poly",
    "parse_word",
    "parse_context",
    "render",
    "render_word",
    "render_context",
    "render_term",
    "identifiers",
    "word_to_json",
    "word_from_json",
    "poly_to_json",
    "poly_from_json",
    "coeff_to_json",
    "coeff_from_json",
]
