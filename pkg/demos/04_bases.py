"""
Counting basis words
====================

For the weight-0 differential presets the irreducible words with n letters
and k brackets are the differential monomials, so their number is
``|X|^n * C(n+k-1, n-1)``.  The Rota-Baxter bases grow differently.
"""

from opgs import Multidegree, count_irr, enumerate_irr
from opgs.presets import differential_count

print(" n  k   diff0l  closed   rbl")
for n in range(1, 4):
    for k in range(4):
        d = Multidegree(n, k)
        print(f"{n:2d} {k:2d} {count_irr('diff0l', d, 2):8d} {differential_count(n, k, 2):7d}"
              f" {count_irr('rbl', d, 2):5d}")

# the words themselves, for one small multidegree
print("diff0l (2, 2):", ", ".join(map(str, enumerate_irr("diff0l", Multidegree(2, 2), "x"))))
print("rbl    (2, 2):", ", ".join(map(str, enumerate_irr("rbl", Multidegree(2, 2), "x"))))
