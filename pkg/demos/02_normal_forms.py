"""
Normal forms in the free operated algebras
==========================================

Each preset is a rule system for one operator identity.  Reducing a
polynomial rewrites the largest reducible word until only irreducible words
(basis elements of the quotient) remain.
"""

from opgs import get_preset, parse_poly, render


def show(preset, text, **kw):
    p = get_preset(preset, **kw)
    f = parse_poly(text, "x,y,z", p.mode)
    nf, trace = p.rules.normal_form(f, trace=True)
    print(f"{preset:10s} {text:18s} -> {render(nf, kind=p.kind)}   ({len(trace)} steps)")
    return trace

# Leibniz rule, weight 0: brackets move to the right end
show("diff0l", "[x]y")
show("diff0l", "[[x]y]z")
# weight L: the rule divides by L, so Laurent coefficients appear
show("difflambda", "[x][y]")
# modified differential: D(1) = -L
show("mdiffl", "[1]")
show("mdiffl", "[x]y")
# Rota-Baxter and modified Rota-Baxter, no unit
show("rbl", "[[x]y]")
show("mrbr", "[x[y]]")

# A weight can be fixed to a number; at L = 0 the modified rule is Leibniz.
show("mdiffl", "[x]y", lam=0)

# The trace is a certificate: replaying its steps reproduces the result.
p = get_preset("diff0l")
trace = show("diff0l", "[x][y][z]")
for step in trace.steps:
    print("   ", step.coeff, step.word, "via", step.match)
assert trace.replay(p.rules) == trace.result
