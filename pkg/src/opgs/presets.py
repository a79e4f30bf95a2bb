"""Named rule systems, quotient-algebra operations and basis enumeration."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from math import comb

from .coeffs import Laurent
from .orders import OrderKind, parse_order
from .poly import OpPoly
from .rewrite import (
    Composition,
    Instance,
    ReductionTrace,
    RuleSchema,
    RuleSet,
    inclusion_composition,
    intersection_composition,
)
from .terms import Letter, Mode, Word, bracket_count, letter_count, make_alphabet, words_by_multidegree

U, N = Mode.UNITARY, Mode.NONUNITARY
PLL, PLR = OrderKind.PLL, OrderKind.PLR

# name -> (mode, default order, allowed orders, identity, [(rule name, text)])
_TABLE = {
    "diff0l": (U, PLL, (PLL,), "diff", [
        ("f", "[X]Y - [X Y] + X[Y]"),
        ("one", "[1]"),
    ]),
    "diff0r": (U, PLR, (PLR,), "diff", [
        ("f", "X[Y] - [X Y] + [X]Y"),
        ("one", "[1]"),
    ]),
    "difflambda": (U, PLL, (PLL, PLR), "diff-weight", [
        ("f", "[X][Y] - L^-1 [X Y] + L^-1 [X]Y + L^-1 X[Y]"),
        ("one", "[1]"),
    ]),
    "mdiffl": (U, PLL, (PLL,), "mdiff", [
        ("f", "[X]Y - [X Y] + X[Y] + L X Y"),
        ("one", "[1] + L"),
    ]),
    "mdiffr": (U, PLR, (PLR,), "mdiff", [
        ("f", "X[Y] - [X Y] + [X]Y + L X Y"),
        ("one", "[1] + L"),
    ]),
    "rbl": (N, PLL, (PLL,), "rb", [
        ("f", "[[X]Y] + [X[Y]] + L[X Y] - [X][Y]"),
    ]),
    "rbr": (N, PLR, (PLR,), "rb", [
        ("f", "[X[Y]] + [[X]Y] + L[X Y] - [X][Y]"),
    ]),
    "mrbl": (N, PLL, (PLL,), "mrb", [
        ("f", "[[X]Y] + [X[Y]] + L X Y - [X][Y]"),
    ]),
    "mrbr": (N, PLR, (PLR,), "mrb", [
        ("f", "[X[Y]] + [[X]Y] + L X Y - [X][Y]"),
    ]),
    # The Rota-Baxter identity over all of M(X).  Setting a variable to 1
    # changes the leading word, so each unit case is its own monic schema.
    "rb-unitary": (U, PLL, (PLL,), "rb", [
        ("f", "[[X]Y] + [X[Y]] + L[X Y] - [X][Y]"),
        ("f.y1", "[X][1] - [X[1]] - [[X]] - L[X]"),
        ("f.x1", "[[1]Y] + [[Y]] + L[Y] - [1][Y]"),
        ("f.11", "[1][1] - 2[[1]] - L[1]"),
    ]),
}

PRESET_NAMES = tuple(n for n in _TABLE if n != "rb-unitary")
ALL_NAMES = tuple(_TABLE)
GS_PRESETS = PRESET_NAMES


@dataclass(frozen=True)
class Preset:
    name: str
    mode: Mode
    kind: OrderKind
    identity: str
    rules: RuleSet

    @property
    def is_gs(self) -> bool:
        return self.name in GS_PRESETS


@lru_cache(maxsize=None)
def _schemas(name: str) -> tuple[RuleSchema, ...]:
    return tuple(RuleSchema.parse(f"{name}.{r}", text) for r, text in _TABLE[name][4])


def get_preset(name: str, order: str | OrderKind | None = None, lam=None) -> Preset:
    """Look up a preset; ``lam`` evaluates the weight to a rational."""
    key = name.lower()
    if key not in _TABLE:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(ALL_NAMES)}")
    mode, default, allowed, identity, _ = _TABLE[key]
    kind = default if order is None else parse_order(order)
    if kind not in allowed:
        raise ValueError(
            f"preset {key} is oriented for {'/'.join(k.value for k in allowed)}, not {kind.value}"
        )
    rules = RuleSet(key, _schemas(key), mode, kind)
    if lam is not None:
        rules = rules.specialize(lam)
    return Preset(key, mode, kind, identity, rules)


def _preset(p) -> Preset:
    return p if isinstance(p, Preset) else get_preset(p)


# -- quotient algebra --------------------------------------------------------------
def _require_irreducible(p: Preset, *words: Word) -> None:
    for w in words:
        if not p.rules.is_irreducible(w):
            raise ValueError(f"{w} is reducible for {p.name}; quotient operations take basis words")


def quotient_mul(preset, u: Word, v: Word) -> OpPoly:
    p = _preset(preset)
    _require_irreducible(p, u, v)
    return p.rules.normal_form(OpPoly.monomial(u * v, 1, p.mode))


def quotient_op(preset, u: Word) -> OpPoly:
    p = _preset(preset)
    _require_irreducible(p, u)
    return p.rules.normal_form(OpPoly.monomial(u, 1, p.mode).op())


def axiom_sides(preset, u: Word, v: Word) -> tuple[OpPoly, OpPoly]:
    """Both sides of the preset's defining identity at ``(u, v)``, unreduced."""
    p = _preset(preset)
    m = p.mode
    fu = _mono(u, m)
    fv = _mono(v, m)
    lam = Laurent.lam()
    D = lambda f: f.op()  # noqa: E731
    if p.identity == "diff":
        return D(fu * fv), D(fu) * fv + fu * D(fv)
    if p.identity == "diff-weight":
        return D(fu * fv), D(fu) * fv + fu * D(fv) + (D(fu) * D(fv)).scale(lam)
    if p.identity == "mdiff":
        return D(fu * fv), D(fu) * fv + fu * D(fv) + (fu * fv).scale(lam)
    if p.identity == "rb":
        return D(fu) * D(fv), D(D(fu) * fv) + D(fu * D(fv)) + D(fu * fv).scale(lam)
    if p.identity == "mrb":
        return D(fu) * D(fv), D(D(fu) * fv + fu * D(fv)) + (fu * fv).scale(lam)
    raise ValueError(f"no identity for {p.name}")


def _mono(w: Word, mode: Mode) -> OpPoly:
    return OpPoly.monomial(w, 1, mode)


def verify_axiom(preset, u: Word, v: Word) -> bool:
    """Whether the defining identity holds at ``(u, v)`` after reduction."""
    p = _preset(preset)
    lhs, rhs = axiom_sides(p, u, v)
    return p.rules.normal_form(lhs) == p.rules.normal_form(rhs)


# -- irreducible bases -----------------------------------------------------------
@dataclass(frozen=True, order=True)
class Multidegree:
    """``n`` letters and ``k`` brackets (a bracketed unit counts as a bracket)."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 0 or self.k < 0:
            raise ValueError("multidegree entries are non-negative")

    def __add__(self, other: "Multidegree") -> "Multidegree":
        return Multidegree(self.n + other.n, self.k + other.k)

    @classmethod
    def of(cls, w: Word) -> "Multidegree":
        return cls(letter_count(w), bracket_count(w))


def _alphabet(alphabet) -> list[Letter]:
    """Letters from a count, a comma-separated string or a sequence."""
    if isinstance(alphabet, int):
        alphabet = ["x", "y", "z", "u", "v", "w"][:alphabet]
    elif isinstance(alphabet, str):
        alphabet = [a.strip() for a in alphabet.split(",") if a.strip()]
    if alphabet and isinstance(alphabet[0], Letter):
        return list(alphabet)
    return list(make_alphabet(list(alphabet)).values())


def enumerate_irr(preset, d: Multidegree, alphabet) -> list[Word]:
    p = _preset(preset)
    return [
        w
        for w in words_by_multidegree(d.n, d.k, _alphabet(alphabet), p.mode)
        if p.rules.is_irreducible(w)
    ]


def count_irr(preset, d: Multidegree, alphabet) -> int:
    return len(enumerate_irr(preset, d, alphabet))


def differential_count(n: int, k: int, size: int) -> int:
    """``size**n * C(n+k-1, n-1)``: monomials ``d^k1 x1 ... d^kn xn`` with ``sum k_i = k``."""
    if n == 0:
        return 1 if k == 0 else 0
    return size**n * comb(n + k - 1, n - 1)


# -- catalogue of worked compositions ------------------------------------------------
@lru_cache(maxsize=None)
def catalogue() -> dict[str, dict]:
    text = resources.files("opgs").joinpath("data/catalogue.json").read_text(encoding="utf-8")
    return {e["id"]: e for e in json.loads(text)["computations"]}


@dataclass
class ReplayReport:
    id: str
    expected: str
    composition: Composition
    normal_form: OpPoly
    trace: ReductionTrace
    kind: OrderKind
    reference_residue: OpPoly | None = None

    @property
    def actual(self) -> str:
        return "TRIVIAL" if self.normal_form.is_zero() else "NONTRIVIAL"

    @property
    def ok(self) -> bool:
        return self.actual == self.expected

    def to_text(self) -> str:
        from .syntax import render

        c = self.composition
        lines = [
            f"{self.actual}",
            f"id: {self.id}",
            f"ambiguity: {c.w} ({c.kind})",
            f"composition: {c.describe()}",
            f"  = {render(c.poly, kind=self.kind)}",
            f"normal form: {render(self.normal_form, kind=self.kind)}",
            f"steps: {len(self.trace)}",
            f"expected: {self.expected}" + ("" if self.ok else "  MISMATCH"),
        ]
        return "\n".join(lines)

    def to_json(self) -> dict:
        from .syntax import poly_to_json, word_to_json

        return {
            "id": self.id,
            "ambiguity": word_to_json(self.composition.w),
            "kind": self.composition.kind,
            "composition": poly_to_json(self.composition.poly, self.kind),
            "normal_form": poly_to_json(self.normal_form, self.kind),
            "result": self.actual,
            "expected": self.expected,
            "ok": self.ok,
            "steps": len(self.trace),
        }


def build_composition(entry: dict) -> tuple[Preset, Composition]:
    from .syntax import parse_context, parse_word

    p = get_preset(entry["preset"], entry.get("order"))
    alpha = make_alphabet(entry.get("alphabet", "x,y,z").split(","))

    def instance(spec) -> Instance:
        schema = p.rules.schema(f"{p.name}.{spec['rule']}")
        binding = tuple(sorted((k, parse_word(v, alpha, p.mode)) for k, v in spec.get("binding", {}).items()))
        return Instance(schema, binding)

    f, g = instance(entry["f"]), instance(entry["g"])
    if entry["type"] == "intersection":
        v = parse_word(entry["left"], alpha, p.mode)
        u = parse_word(entry["right"], alpha, p.mode)
        comp = intersection_composition(p.rules, f, g, v, u)
    else:
        comp = inclusion_composition(p.rules, f, g, parse_context(entry["context"], alpha))
    if "ambiguity" in entry and parse_word(entry["ambiguity"], alpha, p.mode) != comp.w:
        raise ValueError(f"catalogue entry {entry['id']}: ambiguity does not match")
    return p, comp


def replay_paper_computation(id: str) -> ReplayReport:
    from .syntax import parse_poly

    cat = catalogue()
    if id not in cat:
        raise KeyError(f"unknown computation {id!r}")
    entry = cat[id]
    p, comp = build_composition(entry)
    nf, tr = p.rules.normal_form(comp.poly, trace=True)
    residue = None
    if "reference_residue" in entry:
        alpha = make_alphabet(entry.get("alphabet", "x,y,z").split(","))
        residue = parse_poly(entry["reference_residue"], alpha, p.mode)
    return ReplayReport(id, entry["expected"], comp, nf, tr, p.kind, residue)


def catalogue_ids(prefix: str | None = None) -> list[str]:
    return [i for i in catalogue() if prefix is None or i.startswith(prefix)]
