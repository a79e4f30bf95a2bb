"""Random words and polynomials for property checks and strategy comparisons."""

from __future__ import annotations

import random
from typing import Sequence

from .coeffs import Laurent
from .poly import OpPoly
from .terms import Letter, Mode, Op, Word


def random_word(
    rng: random.Random,
    alphabet: Sequence[Letter],
    mode: Mode = Mode.UNITARY,
    max_letters: int = 4,
    max_depth: int = 3,
    allow_unit: bool = False,
) -> Word:
    """A random word with at most ``max_letters`` letters and depth ``<= max_depth``.

    The unit itself is only produced when ``allow_unit`` is set (and the mode
    permits it); bracketed units ``[1]`` appear freely in unitary mode.
    """
    unitary = mode is Mode.UNITARY
    if allow_unit and unitary and rng.random() < 0.1:
        return Word()
    letters = rng.randint(1, max(1, max_letters))
    return _gen(rng, alphabet, unitary, letters, max_depth)


def _gen(rng, alphabet, unitary, letters, depth) -> Word:
    # split the letter budget over a few prime factors
    parts = []
    budget = letters
    while budget > 0 and len(parts) < 3:
        take = rng.randint(1, budget)
        parts.append(take)
        budget -= take
    if budget:
        parts[-1] += budget
    factors = []
    for n in parts:
        if depth > 0 and rng.random() < 0.45:
            factors.append(Op(_gen(rng, alphabet, unitary, n, depth - 1)))
        elif n == 1:
            factors.append(rng.choice(alphabet))
        else:
            factors.extend(_gen(rng, alphabet, unitary, n, 0).factors)
    if unitary and depth > 0 and rng.random() < 0.15:
        factors.insert(rng.randint(0, len(factors)), Op(Word()))
    return Word(factors)


def random_coeff(rng: random.Random, max_exp: int = 2, negative: bool = False) -> Laurent:
    lo = -max_exp if negative else 0
    terms = {}
    for _ in range(rng.randint(1, 2)):
        terms[rng.randint(lo, max_exp)] = rng.choice([-3, -2, -1, 1, 1, 2, 3])
    c = Laurent(terms)
    return c if c else Laurent.const(1)


def random_poly(
    rng: random.Random,
    alphabet: Sequence[Letter],
    mode: Mode = Mode.UNITARY,
    max_terms: int = 4,
    max_letters: int = 4,
    max_depth: int = 3,
    negative_powers: bool = False,
) -> OpPoly:
    terms = [
        (
            random_word(rng, alphabet, mode, max_letters, max_depth, allow_unit=True),
            random_coeff(rng, negative=negative_powers),
        )
        for _ in range(rng.randint(1, max_terms))
    ]
    return OpPoly(terms, mode)
