"""Command-line front end: ``opgs <command> ...``.

Exit status is 0 on success, 1 when a computed result disagrees with its
expectation (replay mismatch, nontrivial composition, failed identity) and
2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .coeffs import NotInvertibleError
from .orders import OrderKind, cmp, patl, patr, render_path
from .poly import OpPoly
from .presets import (
    ALL_NAMES,
    Multidegree,
    catalogue_ids,
    enumerate_irr,
    get_preset,
    replay_paper_computation,
    verify_axiom,
)
from .rewrite import (
    Composition,
    Instance,
    ReductionLimitError,
    check_gs_bounded,
    inclusion_composition,
    intersection_composition,
    match_schema,
)
from .syntax import (
    ParseError,
    coeff_to_json,
    identifiers,
    parse_poly,
    parse_word,
    poly_to_json,
    render,
    word_to_json,
)
from .terms import Mode, ModeError, Word, make_alphabet


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser, preset: bool = False) -> None:
    if preset:
        p.add_argument("--preset", required=True, choices=ALL_NAMES)
    p.add_argument("--order", choices=["pll", "plr"], help="monomial order (default: preset's)")
    p.add_argument("--alphabet", help="comma-separated letters; declaration order is the letter order")
    p.add_argument("--mode", choices=["unitary", "nonunitary"], help="default: preset's mode")
    p.add_argument("--lambda", dest="lam", help="evaluate the weight L at this rational")
    p.add_argument("--json", action="store_true", help="structured output")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="opgs", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="normal form modulo a preset")
    _common(p, preset=True)
    p.add_argument("expr")
    p.add_argument("--trace", action="store_true", help="print the division steps")

    p = sub.add_parser("compare", help="compare two words (LT, EQ or GT)")
    _common(p)
    p.add_argument("u")
    p.add_argument("v")

    p = sub.add_parser("path", help="path words of every letter of a word")
    _common(p)
    p.add_argument("word")

    p = sub.add_parser("leading", help="leading monomial and coefficient")
    _common(p)
    p.add_argument("expr")

    p = sub.add_parser("check-gs", help="bounded check that all compositions reduce to 0")
    _common(p, preset=True)
    p.add_argument("--fresh-letters", type=int, default=3)
    p.add_argument("--max-depth", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("compose", help="compositions at a given ambiguity and their normal forms")
    _common(p, preset=True)
    p.add_argument("ambiguity")

    p = sub.add_parser("enumerate-irr", help="irreducible words of a multidegree")
    _common(p, preset=True)
    p.add_argument("-n", type=int, required=True, help="number of letters")
    p.add_argument("-k", type=int, required=True, help="number of brackets")
    p.add_argument("--count", action="store_true", help="print only the number of words")

    p = sub.add_parser("replay", help="replay a catalogued composition")
    p.add_argument("id", nargs="?")
    p.add_argument("--all", action="store_true")
    p.add_argument("--list", action="store_true")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify-axiom", help="check the preset's defining identity at (u, v)")
    _common(p, preset=True)
    p.add_argument("u")
    p.add_argument("v")
    return ap


# -- helpers ---------------------------------------------------------------------------
def _alphabet(args, *texts: str):
    if args.alphabet:
        names = [a.strip() for a in args.alphabet.split(",") if a.strip()]
        return make_alphabet(names)
    names = sorted({n for t in texts for n in identifiers(t)})
    return make_alphabet(names)


def _mode(args, default: Mode = Mode.UNITARY) -> Mode:
    return Mode(args.mode) if getattr(args, "mode", None) else default


def _kind(args, default: OrderKind = OrderKind.PLL) -> OrderKind:
    return OrderKind(args.order) if getattr(args, "order", None) else default


def _lam(args):
    if not getattr(args, "lam", None):
        return None
    try:
        return Fraction(args.lam)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--lambda expects a rational such as 2 or -1/3, got {args.lam!r}") from None


def _preset(args):
    lam = _lam(args)
    if lam == 0 and args.preset == "difflambda":
        raise UsageError(
            "--lambda 0 is not allowed for difflambda: its rules divide by L, "
            "so the weight must be invertible"
        )
    p = get_preset(args.preset, args.order, lam)
    if args.mode and Mode(args.mode) is not p.mode:
        raise UsageError(f"preset {p.name} works in {p.mode.value} mode")
    return p


def _specialized(f: OpPoly, args) -> OpPoly:
    lam = _lam(args)
    return f if lam is None else f.specialize(lam)


def _emit(obj) -> None:
    print(json.dumps(obj, ensure_ascii=False, sort_keys=True))


# -- commands --------------------------------------------------------------------------
def cmd_reduce(args) -> int:
    p = _preset(args)
    f = _specialized(parse_poly(args.expr, _alphabet(args, args.expr), p.mode), args)
    nf, tr = p.rules.normal_form(f, trace=True)
    if args.json:
        out = {"input": poly_to_json(f, p.kind), "normal_form": poly_to_json(nf, p.kind)}
        if args.trace:
            out["steps"] = [
                {"word": word_to_json(s.word), "coeff": coeff_to_json(s.coeff), "rule": str(s.match)}
                for s in tr.steps
            ]
        _emit(out)
    else:
        if args.trace:
            for s in tr.steps:
                print(f"# {s.word}  coeff {s.coeff}  by {s.match}")
        print(render(nf, kind=p.kind))
    return 0


def cmd_compare(args) -> int:
    alpha = _alphabet(args, args.u, args.v)
    mode = _mode(args)
    u, v = parse_word(args.u, alpha, mode), parse_word(args.v, alpha, mode)
    res = cmp(_kind(args), u, v).name
    if args.json:
        _emit({"order": _kind(args).value, "u": str(u), "v": str(v), "result": res})
    else:
        print(res)
    return 0


def cmd_path(args) -> int:
    w = parse_word(args.word, _alphabet(args, args.word), _mode(args))
    paths = patr(w) if _kind(args) is OrderKind.PLR else patl(w)
    rendered = [render_path(p) for p in paths]
    if args.json:
        _emit({"word": str(w), "order": _kind(args).value, "paths": rendered})
    else:
        print("(" + ", ".join(rendered) + ")")
    return 0


def cmd_leading(args) -> int:
    mode = _mode(args)
    f = _specialized(parse_poly(args.expr, _alphabet(args, args.expr), mode), args)
    if f.is_zero():
        raise UsageError("the zero polynomial has no leading monomial")
    if mode is Mode.NONUNITARY and f.is_scalar():
        raise UsageError("scalars have no leading monomial in nonunitary mode")
    w, c = f.leading(_kind(args))
    if args.json:
        _emit({"word": word_to_json(w), "coeff": coeff_to_json(c), "monic": f.is_monic(_kind(args))})
    else:
        print(f"{w}\t{c}")
    return 0


def cmd_check_gs(args) -> int:
    p = _preset(args)
    report = check_gs_bounded(p.rules, args.fresh_letters, args.max_depth, args.workers)
    if args.json:
        _emit(report.to_json())
    else:
        print(report.to_text())
    return 0 if report.all_trivial else 1


def compositions_at(rules, w) -> list[Composition]:
    """Every composition whose ambiguity is exactly ``w``."""
    out = []
    matches = rules.find_matches(w)
    roots = [m for m in matches if m.context.is_hole]
    for f in roots:
        fi = Instance(f.schema, f.binding)
        for g in matches:
            if g is f:
                continue
            out.append(inclusion_composition(rules, fi, Instance(g.schema, g.binding), g.context))
    # intersections: a lead on a proper prefix overlapping a lead on a proper suffix
    n = len(w.factors)
    for j in range(2, n):
        for fs in rules.schemas:
            for fb in match_schema(fs, Word(w.factors[:j])):
                for i in range(1, j):
                    for gs in rules.schemas:
                        for gb in match_schema(gs, Word(w.factors[i:])):
                            out.append(
                                intersection_composition(
                                    rules,
                                    Instance(fs, fb),
                                    Instance(gs, gb),
                                    Word(w.factors[:i]),
                                    Word(w.factors[j:]),
                                )
                            )
    return sorted(out, key=Composition.sort_key)


def cmd_compose(args) -> int:
    p = _preset(args)
    w = parse_word(args.ambiguity, _alphabet(args, args.ambiguity), p.mode)
    comps = compositions_at(p.rules, w)
    rows = []
    status = 0
    for c in comps:
        nf = p.rules.normal_form(c.poly)
        status |= 0 if nf.is_zero() else 1
        rows.append((c, nf))
    if args.json:
        _emit([
            {
                "kind": c.kind,
                "instances": [str(c.f), str(c.g)],
                "composition": poly_to_json(c.poly, p.kind),
                "normal_form": poly_to_json(nf, p.kind),
                "trivial": nf.is_zero(),
            }
            for c, nf in rows
        ])
    else:
        if not rows:
            print(f"no compositions at {w}")
        for c, nf in rows:
            flag = "TRIVIAL" if nf.is_zero() else "NONTRIVIAL"
            print(f"{flag}\t{c.kind}\t{c.describe()}\t{render(c.poly, kind=p.kind)}\t-> {render(nf, kind=p.kind)}")
    return status


def cmd_enumerate_irr(args) -> int:
    p = _preset(args)
    names = args.alphabet or "x"
    words = enumerate_irr(p, Multidegree(args.n, args.k), names)
    if args.json:
        _emit({"preset": p.name, "n": args.n, "k": args.k, "count": len(words),
               "words": None if args.count else [word_to_json(w) for w in words]})
    elif args.count:
        print(len(words))
    else:
        for w in words:
            print(w)
    return 0


def cmd_replay(args) -> int:
    if args.list:
        for i in catalogue_ids():
            print(i)
        return 0
    if args.all:
        ids = catalogue_ids()
    elif args.id:
        ids = [args.id]
    else:
        raise UsageError("replay needs an id, --all or --list")
    status = 0
    for i in ids:
        try:
            r = replay_paper_computation(i)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
        status |= 0 if r.ok else 1
        if args.json:
            _emit(r.to_json())
        elif args.all:
            print(f"{'ok ' if r.ok else 'BAD'}\t{i}\t{r.actual}\t{render(r.normal_form, kind=r.kind)}")
        else:
            print(r.to_text())
    return status


def cmd_verify_axiom(args) -> int:
    p = _preset(args)
    alpha = _alphabet(args, args.u, args.v)
    u, v = parse_word(args.u, alpha, p.mode), parse_word(args.v, alpha, p.mode)
    ok = verify_axiom(p, u, v)
    if args.json:
        _emit({"preset": p.name, "u": str(u), "v": str(v), "holds": ok})
    else:
        print("true" if ok else "false")
    return 0 if ok else 1


COMMANDS = {
    "reduce": cmd_reduce,
    "compare": cmd_compare,
    "path": cmd_path,
    "leading": cmd_leading,
    "check-gs": cmd_check_gs,
    "compose": cmd_compose,
    "enumerate-irr": cmd_enumerate_irr,
    "replay": cmd_replay,
    "verify-axiom": cmd_verify_axiom,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ParseError, ModeError, NotInvertibleError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"opgs {args.command}: error: {msg}", file=sys.stderr)
        return 2
    except ReductionLimitError as exc:
        print(f"opgs {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
