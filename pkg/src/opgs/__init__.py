"""Rewriting in free operated algebras over bracketed words.

Words, contexts and the path-lexicographic orders live in :mod:`opgs.terms`
and :mod:`opgs.orders`; polynomials over ``Q[L, 1/L]`` in :mod:`opgs.poly`;
rule schemas, normal forms and composition checks in :mod:`opgs.rewrite`;
the named rule systems in :mod:`opgs.presets`.
"""

from .coeffs import LAMBDA, Laurent, NotInvertibleError
from .orders import OrderKind, Ordering, cmp, dlex_cmp, letter_paths, patl, patr, sort_words
from .poly import OpPoly, is_monic, leading, make_monic, poly_add, poly_mul, poly_op, poly_scale
from .presets import (
    Multidegree,
    Preset,
    count_irr,
    enumerate_irr,
    get_preset,
    quotient_mul,
    quotient_op,
    replay_paper_computation,
    verify_axiom,
)
from .rewrite import (
    GSReport,
    Match,
    ReductionLimitError,
    ReductionTrace,
    RuleSchema,
    RuleSet,
    check_gs_bounded,
    find_matches,
    ideal_member,
    including_compositions,
    intersection_compositions,
    is_irreducible,
    normal_form,
)
from .syntax import ParseError, parse_context, parse_poly, parse_word, render
from .terms import (
    HOLE,
    Context,
    Letter,
    Mode,
    ModeError,
    Op,
    Word,
    bracket,
    breadth,
    concat,
    degx,
    depth,
    enumerate_contexts,
    make_alphabet,
    substitute,
)

__version__ = "0.1.0"
