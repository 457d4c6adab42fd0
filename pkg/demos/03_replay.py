"""
Replaying the argument step by step
===================================

Constraints are added in the order a hand proof would use them, and each
step's claimed identities are checked on the cumulative solution space.
"""

from superder import catalog
from superder.replay import SCHRODINGER_FACTS, replay_lemmas, without_probe

S = catalog("super-schrodinger")
tr = replay_lemmas(S)
for step in tr.steps:
    print(f"{step.id:22s} dim {step.dim:3d}  {'ok' if step.passed else 'FAILED'}")
print("final:", tr.final_dim, "equals span{ad h, ad G}:", tr.final_is_inner_h_G)
print(tr.formula, all(r.ok for r in tr.reconstructions))

# drop one probe and watch the chain break where it is needed
ablated = replay_lemmas(S, without_probe(SCHRODINGER_FACTS, {"e": 1, "f": 1, "E": 1, "F": 1}))
for step in ablated.steps:
    bad = [a.label for a in step.assertions if not a.passed]
    if bad:
        print(step.id, "->", bad)
