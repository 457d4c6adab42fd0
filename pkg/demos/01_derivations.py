"""
Derivations of the super Schrödinger algebra
============================================

Build the 9-dimensional superalgebra, check its axioms, and compute Der.
"""

from superder import catalog, validate
from superder.derivations import ad, decompose, delta_map, derivation_space, inner_space, verify_theorem_der

S = catalog("super-schrodinger")
print(S.names, S.parities)

# all 729 ordered basis triples satisfy graded Jacobi
print("violations:", validate(S))

der = derivation_space(S)
print("dim Der_0 =", der.even.dim, " dim Der_1 =", der.odd.dim)
print("dim IDer  =", inner_space(S).dim)

# the single outer direction
delta = delta_map(S)
for name in S.names:
    img = delta(S.element({name: 1}))
    if any(img):
        print(f"delta({name}) = {S.format(img)}")

print(verify_theorem_der(S, der))

# any derivation splits as ad(b) + lambda * delta
D = ad(S, S.element({"h": 1, "G": 2})) + delta.scale(-3)
coords = decompose(S, D)
print("b =", S.format(coords.inner), " lambda =", coords.outer)
