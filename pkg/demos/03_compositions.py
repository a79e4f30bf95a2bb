"""
Compositions: checking that a rule system is a Groebner-Shirshov basis
=====================================================================

Two rule leads that overlap (or one inside the other) give a composition.
The system is a basis when every composition reduces to zero.  Here we
replay the hand-worked overlaps, then enumerate all small ones.
"""

from opgs import check_gs_bounded, get_preset, render, replay_paper_computation
from opgs.presets import GS_PRESETS, catalogue_ids

# the catalogued overlaps, one line each
for cid in catalogue_ids():
    r = replay_paper_computation(cid)
    print(f"{cid:28s} {r.composition.w!s:18s} {r.actual}")

# bounded search: all instances with up to 3 letters, values of depth <= 1
for name in GS_PRESETS:
    report = check_gs_bounded(get_preset(name).rules, 3, 1)
    print(f"{name:10s} {len(report.entries):4d} compositions, all trivial: {report.all_trivial}")

# Without the nonunitary restriction, Rota-Baxter fails: at [x][1][1] two
# reductions disagree, so the irreducible words are not a basis.
r = replay_paper_computation("rb-unitary.counterexample")
print("rb-unitary at", r.composition.w, "->", render(r.normal_form))
report = check_gs_bounded(get_preset("rb-unitary").rules, 3, 1)
print(f"rb-unitary: {len(report.failures)} of {len(report.entries)} compositions are nontrivial")
