import pickle

import pytest
from hypothesis import given

from conftest import W
from opgs.terms import (
    HOLE,
    Context,
    Letter,
    Mode,
    ModeError,
    Op,
    Word,
    bracket,
    bracket_count,
    breadth,
    check_mode,
    concat,
    degx,
    depth,
    enumerate_contexts,
    letter_count,
    make_alphabet,
    words_by_multidegree,
)
from strategies import contexts, words, words_or_unit

N = Mode.NONUNITARY


def test_measures():
    w = W("[x[y]z][1]")
    assert breadth(w) == 2
    assert depth(w) == 2
    assert degx(w) == 4
    assert letter_count(w) == 3 and bracket_count(w) == 3
    assert breadth(Word()) == 0 and depth(Word()) == 0 and degx(Word()) == 0
    assert degx(W("[[1]]")) == 1


def test_prime_and_unit():
    assert W("x").is_prime and W("[x y]").is_prime
    assert not W("x y").is_prime
    assert Word().is_unit and not Word().is_prime


def test_alphabet_ranks():
    a = make_alphabet(["b", "a"])
    assert a["b"].rank < a["a"].rank
    with pytest.raises(ValueError):
        make_alphabet(["a", "a"])


def test_nonunitary_mode_rejects_units():
    with pytest.raises(ModeError):
        check_mode(Word(), N)
    with pytest.raises(ModeError):
        check_mode(W("x[1]"), N)
    with pytest.raises(ModeError):
        bracket(Word(), N)
    with pytest.raises(ModeError):
        HOLE.substitute(Word(), N)
    assert bracket(Word()) == W("[1]")
    assert concat(W("x"), Word()) == W("x")


def test_substitution_example():
    q = Context(((( ), (W("z").factors[0],)), ((W("x").factors[0],), ())))
    assert str(q) == "[x *]z"
    assert q(W("y")) == W("[x y]z")
    assert HOLE(W("x y")) == W("x y")


def test_context_order_for_xy():
    got = [(str(q), str(s)) for q, s in enumerate_contexts(W("x y"))]
    assert got == [("*", "x y"), ("* y", "x"), ("x *", "y")]


def _brute_contexts(w: Word):
    """Every (q, s): mark each contiguous run at each level, recursively."""
    out = set()

    def go(facs, wrap):
        n = len(facs)
        for i in range(n):
            for j in range(i + 1, n + 1):
                out.add((wrap(facs[:i], facs[j:]), Word(facs[i:j])))
        for p, f in enumerate(facs):
            if isinstance(f, Op) and f.body.factors:
                left, right = facs[:p], facs[p + 1:]
                go(f.body.factors, lambda l, r, left=left, right=right, wrap=wrap: wrap(left, right) + (("[", l, r),))

    go(w.factors, lambda l, r: (("top", l, r),))
    return out


@given(words())
def test_enumerate_contexts_matches_brute_force(w):
    got = enumerate_contexts(w)
    for q, s in got:
        assert q(s) == w
    as_frames = {(tuple((k, l, r) for k, (l, r) in zip(["top"] + ["["] * 9, q.frames)), s) for q, s in got}
    assert as_frames == _brute_contexts(w)
    assert len(got) == len(as_frames)


@given(contexts(), words())
def test_substitution_adds_degx(q, s):
    hole_free = q(Word())
    assert degx(q(s)) == degx(hole_free) + degx(s) - _fills_empty_bracket(q)


def _fills_empty_bracket(q):
    # filling an otherwise empty bracket turns a counted [1] into a non-unit bracket
    left, right = q.frames[-1]
    return 1 if len(q.frames) > 1 and not left and not right else 0


@given(contexts(), contexts(), words())
def test_context_composition(q1, q2, s):
    assert q1.compose(q2)(s) == q1(q2(s))


@given(words_or_unit(), words_or_unit(), words_or_unit())
def test_concat_associative_and_degx_additive(u, v, w):
    assert (u * v) * w == u * (v * w)
    assert degx(u * v) == degx(u) + degx(v)
    assert breadth(u * v) == breadth(u) + breadth(v)


@given(words())
def test_bracket_measures(w):
    b = bracket(w)
    assert depth(b) == depth(w) + 1
    assert degx(b) == degx(w)
    assert breadth(b) == 1


@given(words_or_unit())
def test_pickle_round_trip(w):
    assert pickle.loads(pickle.dumps(w)) == w


def test_words_by_multidegree():
    a = list(make_alphabet(["x"]).values())
    assert sorted(str(w) for w in words_by_multidegree(1, 1, a)) == ["[1]x", "[x]", "x[1]"]
    assert [str(w) for w in words_by_multidegree(1, 1, a, N)] == ["[x]"]
    ws = words_by_multidegree(2, 2, a, max_depth=1)
    assert all(depth(w) <= 1 and letter_count(w) == 2 and bracket_count(w) == 2 for w in ws)
    assert len(set(ws)) == len(ws)
    assert words_by_multidegree(0, 0, a) == [Word()]
    assert words_by_multidegree(0, 0, a, N) == []


def test_letter_repr():
    assert str(Letter("x", 0)) == "x"
    assert str(W("[x[1]]y")) == "[x[1]]y"
