"""Rule schemas, matching, normal forms and bounded composition checks.

A rule schema is a polynomial identity in metavariables ``X, Y, ...``
whose first term is the leading pattern, e.g. ``[X]Y - [X Y] + X[Y]``.
An instance replaces every metavariable by a word (concatenated in place,
so ``[X Y]`` with ``X = a``, ``Y = [b]c`` gives ``[a[b]c]``).

Reduction rewrites ``q|lead`` to ``q|tail`` and is driven by the
``find_matches`` enumeration order, which makes it deterministic.
"""

from __future__ import annotations

import heapq
import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .coeffs import Laurent
from .orders import OrderKind, cmp, sort_key
from .poly import OpPoly
from .terms import (
    Context,
    Letter,
    Mode,
    ModeError,
    Op,
    Word,
    _runs,
    check_mode,
    degx,
    fresh_letters,
    run_context,
    words_by_multidegree,
)

DEFAULT_STEP_LIMIT = 10**6


class ReductionLimitError(RuntimeError):
    """Raised when a reduction exceeds its step budget.

    This points at a rule set whose orientation does not terminate, not at
    bad user input.
    """


# -- schemas -----------------------------------------------------------------------
Binding = tuple[tuple[str, Word], ...]


def _binding(d: dict[Letter, Word]) -> Binding:
    return tuple(sorted((v.name, w) for v, w in d.items()))


def instantiate_word(pattern: Word, values: dict[Letter, Word]) -> Word:
    out = []
    for p in pattern.factors:
        if isinstance(p, Letter):
            if p in values:
                out.extend(values[p].factors)
            else:
                out.append(p)
        else:
            out.append(Op(instantiate_word(p.body, values)))
    return Word(out)


@dataclass(frozen=True)
class RuleSchema:
    """``lead -> sum(c * t for c, t in tail)`` over metavariables.

    ``variables`` maps each metavariable letter to ``True`` when it must be
    bound to a nonunit word.
    """

    name: str
    lead: Word
    tail: tuple[tuple[Laurent, Word], ...]
    variables: tuple[tuple[Letter, bool], ...]

    @classmethod
    def parse(cls, name: str, text: str, variables: Sequence[str] = ("X", "Y"), nonunit: bool = True):
        """Build a schema from ``lead +- ...`` where the first term is the lead."""
        from .syntax import parse_poly

        metas = {v: Letter(v, -1 - i) for i, v in enumerate(variables)}
        poly = parse_poly(text, metas, Mode.UNITARY)
        (lead, c), *rest = list(poly.items())
        if c != 1:
            raise ValueError(f"rule {name!r}: the leading pattern must have coefficient 1")
        used = set()
        for w in poly.words():
            used.update(_metas_in(w))
        vars_ = tuple((m, nonunit) for m in metas.values() if m in used)
        return cls(name, lead, tuple((-d, t) for t, d in rest), vars_)

    @property
    def var_names(self) -> list[str]:
        return [v.name for v, _ in self.variables]

    def _values(self, binding) -> dict[Letter, Word]:
        if isinstance(binding, dict):
            binding = binding.items()
        by_name = {v.name: v for v, _ in self.variables}
        out = {}
        for k, w in binding:
            if isinstance(k, Letter):
                k = k.name
            if k not in by_name:
                raise KeyError(f"rule {self.name!r} has no metavariable {k!r}")
            out[by_name[k]] = w
        missing = [v.name for v, _ in self.variables if v not in out]
        if missing:
            raise KeyError(f"rule {self.name!r}: unbound metavariables {missing}")
        for v, nonunit in self.variables:
            if nonunit and out[v].is_unit:
                raise ModeError(f"metavariable {v.name} of rule {self.name!r} must be nonunit")
        return out

    def instantiate(self, binding) -> tuple[Word, tuple[tuple[Laurent, Word], ...]]:
        values = self._values(binding)
        return (
            instantiate_word(self.lead, values),
            tuple((c, instantiate_word(t, values)) for c, t in self.tail),
        )

    def instance_poly(self, binding, mode: Mode = Mode.UNITARY) -> OpPoly:
        """The rule polynomial ``lead - tail`` at ``binding``."""
        lead, tail = self.instantiate(binding)
        return OpPoly([(lead, 1)] + [(t, -c) for c, t in tail], mode)

    def specialize(self, r) -> "RuleSchema":
        return RuleSchema(
            self.name, self.lead, tuple((c.specialize(r), t) for c, t in self.tail), self.variables
        )

    def __str__(self) -> str:
        from .syntax import render

        return f"{self.name}: {render(self.pattern_poly())}"

    def pattern_poly(self) -> OpPoly:
        return OpPoly([(self.lead, 1)] + [(t, -c) for c, t in self.tail])


def _metas_in(w: Word) -> Iterator[Letter]:
    for p in w.factors:
        if isinstance(p, Letter):
            if p.rank < 0:
                yield p
        else:
            yield from _metas_in(p.body)


def _match_seq(pats, facs, variables: dict[Letter, bool], bound: dict) -> Iterator[dict]:
    """Bindings making ``pats`` equal ``facs``; shorter variable values first."""
    if not pats:
        if not facs:
            yield bound
        return
    p = pats[0]
    rest = pats[1:]
    if isinstance(p, Letter):
        if p in variables:
            if p in bound:
                n = len(bound[p].factors)
                if facs[:n] == bound[p].factors:
                    yield from _match_seq(rest, facs[n:], variables, bound)
                return
            lo = 1 if variables[p] else 0
            hi = len(facs) - _min_len(rest, variables)
            for n in range(lo, hi + 1):
                yield from _match_seq(rest, facs[n:], variables, {**bound, p: Word(facs[:n])})
        elif facs and facs[0] == p:
            yield from _match_seq(rest, facs[1:], variables, bound)
        return
    if not facs or not isinstance(facs[0], Op):
        return
    for b in _match_seq(p.body.factors, facs[0].body.factors, variables, bound):
        yield from _match_seq(rest, facs[1:], variables, b)


def _min_len(pats, variables) -> int:
    return sum(0 if isinstance(p, Letter) and p in variables and not variables[p] else 1 for p in pats)


def match_schema(schema: RuleSchema, w: Word) -> Iterator[Binding]:
    """Bindings under which ``schema.lead`` equals ``w`` exactly."""
    variables = dict(schema.variables)
    for b in _match_seq(schema.lead.factors, w.factors, variables, {}):
        yield _binding(b)


# -- rule sets -----------------------------------------------------------------------
@dataclass(frozen=True)
class Match:
    """``schema`` instantiated at ``binding`` sits in ``context``."""

    schema: RuleSchema
    context: Context
    binding: Binding

    @property
    def rule(self) -> str:
        return self.schema.name

    def binding_dict(self) -> dict[str, Word]:
        return dict(self.binding)

    def lead(self, mode: Mode = Mode.UNITARY) -> Word:
        return self.context.substitute(self.schema.instantiate(self.binding)[0], mode)

    def __str__(self) -> str:
        vals = ", ".join(f"{k}={v}" for k, v in self.binding)
        return f"{self.schema.name}({vals}) at {self.context}"


@dataclass(frozen=True)
class Step:
    word: Word
    coeff: Laurent
    match: Match


@dataclass
class ReductionTrace:
    """The division steps turning ``source`` into ``result``.

    ``source - result == sum(step.coeff * step.match.context|rule)``, which
    is the triangular expression of ``source - result`` in the ideal.
    """

    source: OpPoly
    steps: list[Step] = field(default_factory=list)
    result: OpPoly | None = None

    def replay(self, rules: "RuleSet") -> OpPoly:
        f = self.source
        for s in self.steps:
            f = f - rules.placed_rule(s.match).scale(s.coeff)
        return f

    def is_strictly_decreasing(self, kind: OrderKind) -> bool:
        return all(
            cmp(kind, a.word, b.word) > 0 for a, b in zip(self.steps, self.steps[1:])
        )

    def __len__(self) -> int:
        return len(self.steps)


class _Desc:
    """Heap entry ordering words from largest to smallest."""

    __slots__ = ("key", "word")

    def __init__(self, key, word):
        self.key = key
        self.word = word

    def __lt__(self, other: "_Desc") -> bool:
        return self.key > other.key


class RuleSet:
    """A finite family of schemas read under one mode and one order."""

    def __init__(self, name: str, schemas: Iterable[RuleSchema], mode: Mode, kind: OrderKind):
        self.name = name
        self.schemas = tuple(schemas)
        self.mode = mode
        self.kind = kind
        self._matches: dict[Word, tuple[Match, ...]] = {}
        self._rewrite: dict[Word, tuple[tuple[Word, Laurent], ...]] = {}

    def __getstate__(self):
        return {"name": self.name, "schemas": self.schemas, "mode": self.mode, "kind": self.kind}

    def __setstate__(self, state):
        self.__init__(state["name"], state["schemas"], state["mode"], state["kind"])

    def __repr__(self) -> str:
        return f"RuleSet({self.name!r}, {len(self.schemas)} schemas, {self.mode.value}, {self.kind.value})"

    def schema(self, name: str) -> RuleSchema:
        for s in self.schemas:
            if s.name == name:
                return s
        raise KeyError(f"rule set {self.name!r} has no rule {name!r}")

    def with_schemas(self, schemas, name: str | None = None) -> "RuleSet":
        return RuleSet(name or self.name, schemas, self.mode, self.kind)

    def specialize(self, r) -> "RuleSet":
        """Evaluate the weight at ``L = r`` in every rule."""
        try:
            schemas = [s.specialize(r) for s in self.schemas]
        except ZeroDivisionError:
            raise ValueError(
                f"cannot set L = {r} in {self.name}: its rules divide by L, "
                "so the weight must be invertible"
            ) from None
        return RuleSet(self.name, schemas, self.mode, self.kind)

    # -- matching ------------------------------------------------------------
    def find_matches(self, w: Word) -> tuple[Match, ...]:
        """Every occurrence of a rule lead in ``w``, in canonical order.

        Sub-products are visited outermost level first, the whole run of a
        level before its proper runs (by start, then length); schemas in
        declaration order; bindings with shorter leading values first.
        """
        hit = self._matches.get(w)
        if hit is not None:
            return hit
        out = []
        for frames, facs, i, j in _runs(w):
            run = Word(facs[i:j])
            for s in self.schemas:
                for b in match_schema(s, run):
                    out.append(Match(s, run_context(frames, facs, i, j), b))
        hit = tuple(out)
        self._matches[w] = hit
        return hit

    def first_match(self, w: Word) -> Match | None:
        m = self.find_matches(w)
        return m[0] if m else None

    def is_irreducible(self, w: Word) -> bool:
        return not self.find_matches(w)

    def placed_rule(self, m: Match) -> OpPoly:
        """``q|(lead - tail)`` for a match."""
        lead, tail = m.schema.instantiate(m.binding)
        q = m.context
        terms = [(q.substitute(lead, self.mode), 1)]
        terms += [(q.substitute(t, self.mode), -c) for c, t in tail]
        return OpPoly(terms, self.mode)

    def _rewrite_terms(self, m: Match) -> tuple[tuple[Word, Laurent], ...]:
        lead, tail = m.schema.instantiate(m.binding)
        q = m.context
        return tuple((q.substitute(t, self.mode), c) for c, t in tail)

    # -- reduction -----------------------------------------------------------
    def normal_form(
        self,
        f: OpPoly,
        *,
        rng: random.Random | None = None,
        limit: int = DEFAULT_STEP_LIMIT,
        trace: bool = False,
    ):
        """Reduce ``f`` to a combination of irreducible words.

        The canonical strategy rewrites the largest reducible monomial at its
        first match.  Passing ``rng`` picks a random reducible monomial and a
        random match instead.  Returns the normal form, or ``(nf, trace)``
        when ``trace`` is set.
        """
        if f.mode is not self.mode:
            raise ModeError(f"{self.name} works in {self.mode.value} mode, got a {f.mode.value} polynomial")
        terms: dict[Word, Laurent] = dict(f.items())
        tr = ReductionTrace(f) if trace else None
        pending: set[Word] = set()
        heap: list[_Desc] = []

        def consider(w: Word) -> None:
            if w not in pending and self.find_matches(w):
                pending.add(w)
                if rng is None:
                    heapq.heappush(heap, _Desc(sort_key(w, self.kind), w))

        for w in terms:
            consider(w)
        steps = 0
        while pending:
            if rng is None:
                w = heapq.heappop(heap).word
                pending.discard(w)
                if w not in terms:
                    continue
                m = self.find_matches(w)[0]
                rewrite = self._rewrite.get(w)
                if rewrite is None:
                    rewrite = self._rewrite_terms(m)
                    self._rewrite[w] = rewrite
            else:
                live = sorted((u for u in pending if u in terms), key=lambda u: sort_key(u, self.kind))
                pending.difference_update([u for u in pending if u not in terms])
                if not live:
                    break
                w = rng.choice(live)
                pending.discard(w)
                m = rng.choice(self.find_matches(w))
                rewrite = self._rewrite_terms(m)
            steps += 1
            if steps > limit:
                raise ReductionLimitError(
                    f"{self.name}: no normal form after {limit} steps; the rules do not terminate "
                    "under this strategy"
                )
            c = terms.pop(w)
            if tr is not None:
                tr.steps.append(Step(w, c, m))
            for t, d in rewrite:
                s = terms.get(t)
                s = c * d if s is None else s + c * d
                if s.is_zero():
                    terms.pop(t, None)
                else:
                    terms[t] = s
                    consider(t)
        nf = OpPoly(terms, self.mode, _trusted=True)
        if tr is not None:
            tr.result = nf
            return nf, tr
        return nf

    def reduce(self, f: OpPoly, **kw) -> OpPoly:
        return self.normal_form(f, **kw)

    def ideal_member(self, f: OpPoly) -> tuple[bool, ReductionTrace]:
        nf, tr = self.normal_form(f, trace=True)
        return nf.is_zero(), tr


def find_matches(rules: RuleSet, w: Word) -> tuple[Match, ...]:
    check_mode(w, rules.mode)
    return rules.find_matches(w)


def is_irreducible(rules: RuleSet, w: Word) -> bool:
    return rules.is_irreducible(w)


def normal_form(rules: RuleSet, f: OpPoly, **kw):
    """``(nf, trace)`` for ``f``; see :meth:`RuleSet.normal_form`."""
    return rules.normal_form(f, trace=True, **kw)


def ideal_member(rules: RuleSet, f: OpPoly) -> tuple[bool, ReductionTrace]:
    return rules.ideal_member(f)


# -- termination ledger --------------------------------------------------------------
def tail_violations(schema: RuleSchema, kind: OrderKind, binding) -> list[Word]:
    """Remainder words of an instance that are not below its lead."""
    lead, tail = schema.instantiate(binding)
    return [t for _, t in tail if cmp(kind, t, lead) >= 0]


# -- compositions --------------------------------------------------------------------
@dataclass(frozen=True)
class Instance:
    schema: RuleSchema
    binding: Binding

    def __str__(self) -> str:
        vals = ", ".join(f"{k}={v}" for k, v in self.binding)
        return f"{self.schema.name}({vals})"


@dataclass(frozen=True)
class Composition:
    """``f*u - v*g`` (intersection) or ``f - q|g`` (inclusion) at ambiguity ``w``."""

    kind: str
    w: Word
    f: Instance
    g: Instance
    poly: OpPoly
    left: Word | None = None
    right: Word | None = None
    context: Context | None = None

    def sort_key(self):
        return (str(self.w), self.kind, str(self.f), str(self.g), str(self.context or ""))

    def describe(self) -> str:
        if self.kind == "intersection":
            return f"({self.f})*{self.right} - {self.left}*({self.g})"
        return f"({self.f}) - {self.context} <- ({self.g})"


def intersection_composition(rules: RuleSet, f: Instance, g: Instance, v: Word, u: Word) -> Composition:
    mode = rules.mode
    fp = f.schema.instance_poly(f.binding, mode)
    gp = g.schema.instance_poly(g.binding, mode)
    flead = f.schema.instantiate(f.binding)[0]
    glead = g.schema.instantiate(g.binding)[0]
    w = flead * u
    if v * glead != w:
        raise ValueError(f"{flead}*{u} != {v}*{glead}: not an ambiguity")
    poly = fp * OpPoly.monomial(u, 1, mode) - OpPoly.monomial(v, 1, mode) * gp
    return Composition("intersection", w, f, g, poly, left=v, right=u)


def inclusion_composition(rules: RuleSet, f: Instance, g: Instance, q: Context) -> Composition:
    mode = rules.mode
    fp = f.schema.instance_poly(f.binding, mode)
    flead = f.schema.instantiate(f.binding)[0]
    m = Match(g.schema, q, g.binding)
    if m.lead(mode) != flead:
        raise ValueError(f"{q} with {g} does not reproduce {flead}")
    return Composition("inclusion", flead, f, g, fp - rules.placed_rule(m), context=q)


_PLACEHOLDER = Letter("_", 0)


def _value_shapes(mode: Mode, budget: int, max_depth: int) -> list[Word]:
    """Nonunit words over one placeholder letter with ``degx <= budget``."""
    out = []
    for n in range(budget + 1):
        for k in range(budget * max(max_depth, 1) + 1):
            for w in words_by_multidegree(n, k, [_PLACEHOLDER], mode, max_depth):
                if w and degx(w) <= budget:
                    out.append(w)
    return sorted(set(out), key=lambda w: (degx(w), str(w)))


def _fill(shape: Word, letters: Iterator[Letter]) -> Word:
    out = []
    for p in shape.factors:
        if isinstance(p, Letter):
            out.append(next(letters))
        else:
            out.append(Op(_fill(p.body, letters)))
    return Word(out)


def _lead_order(schema: RuleSchema) -> list[Letter]:
    seen = []
    for m in _metas_in(schema.lead):
        if m not in seen:
            seen.append(m)
    return seen


def enumerate_instances(rules: RuleSet, fresh: int = 3, max_depth: int = 1):
    """Yield ``(instance, lead, next_letter)`` with ``degx(lead) <= fresh``.

    Metavariables take placeholder shapes of depth ``<= max_depth``; the
    letters are then numbered left to right through the lead.
    """
    shapes = _value_shapes(rules.mode, fresh, max_depth)
    for s in rules.schemas:
        order = _lead_order(s)
        nonunit = dict(s.variables)
        pools = [
            [w for w in shapes] + ([] if nonunit[v] or rules.mode is Mode.NONUNITARY else [Word()])
            for v in order
        ]
        for combo in itertools.product(*pools):
            if sum(degx(w) for w in combo) > fresh:
                continue
            letters = iter(fresh_letters(fresh))
            values = {v: _fill(w, letters) for v, w in zip(order, combo)}
            inst = Instance(s, _binding(values))
            lead = s.instantiate(inst.binding)[0]
            if degx(lead) > fresh:
                continue
            used = sum(1 for w in combo for _ in _placeholders(w))
            yield inst, lead, used


def _placeholders(w: Word):
    for p in w.factors:
        if isinstance(p, Letter):
            yield p
        else:
            yield from _placeholders(p.body)


def including_compositions(rules: RuleSet, fresh: int = 3, max_depth: int = 1) -> list[Composition]:
    out = []
    for f, lead, _ in enumerate_instances(rules, fresh, max_depth):
        for m in rules.find_matches(lead):
            if m.context.is_hole and m.schema == f.schema and m.binding == f.binding:
                continue
            out.append(inclusion_composition(rules, f, Instance(m.schema, m.binding), m.context))
    return sorted(out, key=Composition.sort_key)


def intersection_compositions(rules: RuleSet, fresh: int = 3, max_depth: int = 1) -> list[Composition]:
    out = []
    mode = rules.mode
    for f, lead, used in enumerate_instances(rules, fresh, max_depth):
        room = fresh - degx(lead)
        if room < 1 or len(lead) < 2:
            continue
        for shape in _value_shapes(mode, room, max_depth):
            u = _fill(shape, iter(fresh_letters(fresh)[used:]))
            w = lead * u
            n = len(lead.factors)
            for i in range(1, n):
                suffix = Word(w.factors[i:])
                v = Word(w.factors[:i])
                for s in rules.schemas:
                    for b in match_schema(s, suffix):
                        out.append(intersection_composition(rules, f, Instance(s, b), v, u))
    return sorted(out, key=Composition.sort_key)


@dataclass
class GSEntry:
    composition: Composition
    normal_form: OpPoly

    @property
    def trivial(self) -> bool:
        return self.normal_form.is_zero()


SOUNDNESS_NOTE = (
    "triviality is certified by normal form 0 (each division step rewrites a "
    "monomial below the ambiguity); this is bounded evidence over fresh-letter "
    "instances, not a proof for all instances"
)


@dataclass
class GSReport:
    rules: str
    order: str
    mode: str
    fresh_letters: int
    max_depth: int
    entries: list[GSEntry]

    @property
    def all_trivial(self) -> bool:
        return all(e.trivial for e in self.entries)

    @property
    def failures(self) -> list[GSEntry]:
        return [e for e in self.entries if not e.trivial]

    def to_text(self) -> str:
        from .syntax import render

        lines = [
            f"# rules={self.rules} order={self.order} mode={self.mode} "
            f"fresh-letters={self.fresh_letters} max-depth={self.max_depth}",
            f"# {SOUNDNESS_NOTE}",
        ]
        for e in self.entries:
            c = e.composition
            flag = "TRIVIAL" if e.trivial else "NONTRIVIAL"
            lines.append(
                f"{flag}\t{c.kind}\t{c.w}\t{c.describe()}\t{render(c.poly, kind=self.kind)}"
                f"\t-> {render(e.normal_form, kind=self.kind)}"
            )
        n_bad = len(self.failures)
        lines.append(
            f"# {len(self.entries)} compositions, {len(self.entries) - n_bad} trivial, {n_bad} nontrivial"
        )
        return "\n".join(lines)

    @property
    def kind(self) -> OrderKind:
        return OrderKind(self.order)

    def to_json(self) -> dict:
        from .syntax import poly_to_json, word_to_json

        return {
            "rules": self.rules,
            "order": self.order,
            "mode": self.mode,
            "fresh_letters": self.fresh_letters,
            "max_depth": self.max_depth,
            "note": SOUNDNESS_NOTE,
            "all_trivial": self.all_trivial,
            "compositions": [
                {
                    "ambiguity": word_to_json(e.composition.w),
                    "ambiguity_text": str(e.composition.w),
                    "kind": e.composition.kind,
                    "rules": [e.composition.f.schema.name, e.composition.g.schema.name],
                    "instances": [str(e.composition.f), str(e.composition.g)],
                    "composition": poly_to_json(e.composition.poly, self.kind),
                    "normal_form": poly_to_json(e.normal_form, self.kind),
                    "trivial": e.trivial,
                }
                for e in self.entries
            ],
        }


def _reduce_batch(args):
    rules, polys = args
    return [rules.normal_form(p) for p in polys]


def check_gs_bounded(
    rules: RuleSet, fresh: int = 3, max_depth: int = 1, workers: int = 1
) -> GSReport:
    """Reduce every bounded composition of ``rules``; see :data:`SOUNDNESS_NOTE`."""
    comps = intersection_compositions(rules, fresh, max_depth) + including_compositions(
        rules, fresh, max_depth
    )
    comps.sort(key=Composition.sort_key)
    polys = [c.poly for c in comps]
    if workers > 1 and len(polys) > 1:
        size = max(1, len(polys) // (workers * 4))
        chunks = [polys[i : i + size] for i in range(0, len(polys), size)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            nfs = [nf for batch in ex.map(_reduce_batch, [(rules, c) for c in chunks]) for nf in batch]
    else:
        nfs = [rules.normal_form(p) for p in polys]
    entries = [GSEntry(c, nf) for c, nf in zip(comps, nfs)]
    return GSReport(rules.name, rules.kind.value, rules.mode.value, fresh, max_depth, entries)


def report_json(report: GSReport) -> str:
    return json.dumps(report.to_json(), ensure_ascii=False, indent=1)
