import random

from opgs.sampling import random_coeff, random_poly, random_word
from opgs.terms import Mode, depth, letter_count, make_alphabet

LETTERS = list(make_alphabet(["x", "y"]).values())


def test_random_word_bounds():
    rng = random.Random(3)
    for _ in range(300):
        w = random_word(rng, LETTERS, Mode.NONUNITARY, max_letters=4, max_depth=2)
        assert 1 <= letter_count(w) <= 4 and depth(w) <= 2
        assert "[1]" not in str(w)


def test_seeded_generation_is_reproducible():
    a = [random_poly(random.Random(9), LETTERS) for _ in range(3)]
    b = [random_poly(random.Random(9), LETTERS) for _ in range(3)]
    assert a == b
    assert not random_coeff(random.Random(0)).is_zero()
    assert any(
        random_coeff(random.Random(i), negative=True).has_negative_powers() for i in range(50)
    )
