"""
Path words and the two path-lexicographic orders
================================================

Every letter of a bracketed word gets a path word over ``X + {P, mu}``:
``P`` for each bracket it sits under and ``mu`` for each product it is a
factor of.  Words are compared by degree, then by their tuple of paths.
"""

from opgs import OrderKind, cmp, letter_paths, parse_word, patr, sort_words
from opgs.orders import render_path

PLL, PLR = OrderKind.PLL, OrderKind.PLR
w = lambda text: parse_word(text, "x,y,z")  # noqa: E731

# one path per letter (and per bracketed unit), read left to right
u = w("[x[y]z][1]")
print("patl", u, "=", [render_path(p) for p in letter_paths(u)])
print("patr", u, "=", [render_path(p) for p in patr(u)])

# the three degree-2 words with one bracket, in both orders
words = [w("[x]y"), w("[x y]"), w("x[y]")]
for kind in (PLL, PLR):
    ranked = sort_words(words, kind, descending=True)
    print(kind.value, " > ".join(str(v) for v in ranked))

# the leading monomials of the Rota-Baxter identity
chain = [w("[[x]y]"), w("[x][y]"), w("[x[y]]"), w("[x y]")]
assert all(cmp(PLL, a, b) > 0 for a, b in zip(chain, chain[1:]))
print("pll", " > ".join(map(str, chain)))

# Multiplying by z does not always preserve the order.  A product prefixes
# mu to the paths of a prime factor but leaves a product's paths alone, so
# [x]y beats [x y] while z[x]y loses to z[x y].
a, b, z = w("[x]y"), w("[x y]"), w("z")
print(f"{a} vs {b}: {cmp(PLL, a, b).name};  z{a} vs z{b}: {cmp(PLL, z * a, z * b).name}")
