"""
Certifying that local super-derivations are derivations
=======================================================

Each probe x restricts a candidate map to Δ(x) ∈ Der·x. Once the
intersection has the dimension of Der, nothing else is left.
"""

from superder import catalog
from superder.derivations import derivation_space, identity_map
from superder.localder import builtin_probes, certify, orbit, refute

S = catalog("super-schrodinger")
der = derivation_space(S)

# orbits can be small: z is only ever sent to a multiple of itself
print("Der.z :", orbit(S, der, S.element({"z": 1})).dim)
print("Der.h :", orbit(S, der, S.element({"h": 1})).dim)

report = certify(S, builtin_probes(S), der)
print(report.verdict, report.dim_closure, "/", report.dim_der)

# without the extra probe h+q+E+G one direction survives
partial = certify(S, builtin_probes(S, repair=False), der, refute_trials=1000, seed=0)
print(partial.verdict, partial.dim_closure, "/", partial.dim_der)
for g, witness in partial.refutations:
    print("  gap", g, "refuted at trial", witness.trial, "x =", S.format(witness.element))

# the identity map fails quickly too
print("identity refuted at trial", refute(S, der, identity_map(S.dim), 100, 0).trial)
