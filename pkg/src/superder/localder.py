"""Local super-derivations: evaluation orbits, probe closures, certification.

A linear map Δ is a local super-derivation when Δ(x) lies in the orbit
Der·x = {D(x) : D ∈ Der} for every x. Each probe x cuts the n^2-dimensional
space of all maps down to {Δ : Δ(x) ∈ Der·x}; intersecting over finitely many
probes gives a subspace that always contains LocDer ⊇ Der. When its dimension
drops to dim Der, LocDer = Der is proven. The converse fails: a probe set
that does not collapse proves nothing about pure local derivations.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import exactla as la
from .derivations import DerivationSpace, LinearMap, derivation_space
from .exactla import ZERO, Subspace
from .superalg import SuperAlgebra

CERTIFIED = "Certified"
INCONCLUSIVE = "Inconclusive"

SOUNDNESS_NOTE = (
    "Der ⊆ LocDer ⊆ closure always holds, so dim closure = dim Der proves LocDer = Der. "
    "A larger closure is not evidence of a pure local derivation; candidates can only be refuted one at a time."
)


def orbit(alg: SuperAlgebra, der: DerivationSpace, x: Sequence) -> Subspace:
    """{D(x) : D ∈ Der} as a subspace of the algebra."""
    n = alg.dim
    x = la.vector(x)
    images = []
    for v in der.total.basis:
        img = [ZERO] * n
        for i, a in enumerate(x):
            if a:
                block = v[i * n:(i + 1) * n]
                for k, c in enumerate(block):
                    if c:
                        img[k] += a * c
        images.append(img)
    return la.span(images, n)


def is_local_value(alg: SuperAlgebra, der: DerivationSpace, x: Sequence, v: Sequence) -> bool:
    return la.contains(orbit(alg, der, x), v)


def evaluation_rows(x: Sequence, functionals: Iterable[Sequence], n: int) -> list:
    """Rows φ(Δ(x)) = 0 written as functionals on the flattened Δ."""
    rows = []
    for phi in functionals:
        row = [ZERO] * (n * n)
        for i, a in enumerate(x):
            if a:
                for k, c in enumerate(phi):
                    if c:
                        row[i * n + k] = a * c
        rows.append(row)
    return rows


def constraint_rows(alg: SuperAlgebra, der: DerivationSpace, x: Sequence) -> list:
    """Equations cutting out {Δ : Δ(x) ∈ Der·x}; one per annihilator of the orbit."""
    x = la.vector(x)
    ann = la.annihilator(orbit(alg, der, x))
    return evaluation_rows(x, ann.basis, alg.dim)


def pin_rows(alg: SuperAlgebra, x: Sequence, value: Optional[Sequence] = None) -> list:
    """Equations Δ(x) = value, homogeneous only when value is 0."""
    n = alg.dim
    if value is not None and any(value):
        raise ValueError("only Δ(x) = 0 pins keep the constrained set a subspace")
    return evaluation_rows(la.vector(x), la.identity(n), n)


def _solution_space(rows: list, n2: int) -> Subspace:
    rows = [r for r in rows if any(r)]
    return la.nullspace(rows, n2) if rows else la.full_space(n2)


def probe_constraint(alg: SuperAlgebra, der: DerivationSpace, x: Sequence) -> Subspace:
    x = la.vector(x)
    if not any(x):
        raise ValueError("probe must be nonzero")
    return _solution_space(constraint_rows(alg, der, x), alg.dim ** 2)


def probe_closure(
    alg: SuperAlgebra,
    der: DerivationSpace,
    probes: Sequence[Sequence],
    pins: Sequence[Sequence] = (),
) -> Subspace:
    """Intersection of the probe constraints, optionally with Δ(pin) = 0.

    The rows of all probes are stacked and solved once, which is the same
    subspace as intersecting the individual constraints.
    """
    if not probes and not pins:
        raise ValueError("need at least one probe")
    rows: list = []
    for x in probes:
        x = la.vector(x)
        if not any(x):
            raise ValueError("probe must be nonzero")
        rows.extend(constraint_rows(alg, der, x))
    for x in pins:
        rows.extend(pin_rows(alg, x))
    return _solution_space(rows, alg.dim ** 2)


@dataclass(frozen=True)
class Refutation:
    trial: int
    element: tuple
    value: tuple


def random_element(rng: random.Random, n: int) -> tuple:
    """Coordinates num/den with num in [-10, 10] and den in {1, 2, 3}."""
    return tuple(Fraction(rng.randint(-10, 10), rng.choice((1, 2, 3))) for _ in range(n))


def refute(
    alg: SuperAlgebra,
    der: DerivationSpace,
    candidate: LinearMap,
    trials: int,
    seed: int,
) -> Optional[Refutation]:
    """Search for x with candidate(x) ∉ Der·x; None means nothing was found.

    Finding nothing is not a proof that the candidate is a local derivation.
    """
    rng = random.Random(seed)
    n = alg.dim
    for t in range(trials):
        x = random_element(rng, n)
        if not any(x):
            continue
        v = candidate(x)
        if not la.contains(orbit(alg, der, x), v):
            return Refutation(t, x, v)
    return None


@dataclass
class CertificationReport:
    algebra: str
    dim_der: int
    dim_closure: int
    probes: list
    verdict: str
    gap: list = field(default_factory=list)  # flattened maps spanning closure / Der
    refutations: list = field(default_factory=list)  # (gap index, Refutation or None)
    note: str = SOUNDNESS_NOTE


def certify(
    alg: SuperAlgebra,
    probes: Sequence[Sequence],
    der: Optional[DerivationSpace] = None,
    refute_trials: int = 0,
    seed: int = 0,
) -> CertificationReport:
    der = der or derivation_space(alg)
    closure = probe_closure(alg, der, probes)
    verdict = CERTIFIED if closure.dim == der.total.dim else INCONCLUSIVE
    report = CertificationReport(
        algebra=alg.name,
        dim_der=der.total.dim,
        dim_closure=closure.dim,
        probes=[la.vector(p) for p in probes],
        verdict=verdict,
    )
    if verdict == INCONCLUSIVE:
        report.gap = la.complement_basis(closure, der.total)
        if refute_trials:
            for g, vec in enumerate(report.gap):
                cand = LinearMap.from_vector(vec, alg.dim)
                report.refutations.append((g, refute(alg, der, cand, refute_trials, seed)))
    return report


# -- the built-in probe set --------------------------------------------------

SCHRODINGER_PROBES = (
    {"h": 1, "z": 1},
    {"h": 1, "e": 1},
    {"h": 1, "f": 1},
    {"h": 1, "p": 1},
    {"h": 1, "q": 1},
    {"e": 1, "p": 1},
    {"f": 1, "q": 1},
    {"h": 1, "E": 1},
    {"h": 1, "F": 1},
    {"e": 1, "f": -1, "h": 1},
    {"E": 1, "F": 1},
    {"E": 1, "G": 1},
    {"F": 1, "G": 1},
    {"e": 1, "f": 1, "E": 1, "F": 1},
    {"e": 1, "f": 1},
    {"e": 1, "G": 1},
    {"f": 1, "G": 1},
    {"E": 1, "F": 1, "G": 1},
    {"e": 1, "p": 1, "E": 1},
    {"q": 1, "F": 1},
    {"f": 1, "p": 1, "E": 1},
    {"e": 1, "F": 1},
    {"f": 1, "E": 1},
    {"E": 1, "F": -1, "G": 1},
    {"f": 1, "q": 1, "z": "-1/2"},
    {"e": 1, "p": 1, "z": "1/2"},
    {"p": 1, "q": 1, "E": 1, "F": -1, "G": 1},
)

# G is in the orbit of p+q+E-F+G, so the probes above leave the projection
# G -> G (modulo Der) alive; this one removes it.
REPAIR_PROBE = {"h": 1, "q": 1, "E": 1, "G": 1}


def builtin_probes(alg: SuperAlgebra, repair: bool = True) -> list:
    """The 27 proof probes, the repair probe, then the basis vectors of ``alg``.

    Probes naming basis elements that ``alg`` lacks are skipped, so the same
    set serves the catalog subalgebras.
    """
    names = set(alg.names)
    chosen = SCHRODINGER_PROBES + ((REPAIR_PROBE,) if repair else ())
    out = [alg.element(p) for p in chosen if names.issuperset(p)]
    return out + [alg.basis_vector(i) for i in range(alg.dim)]


def probes_to_json(alg: SuperAlgebra, probes: Sequence[Sequence]) -> list:
    return [{alg.names[i]: str(c) for i, c in enumerate(p) if c} for p in probes]


def builtin_probe_maps() -> list:
    return [{k: str(la.as_fraction(v)) for k, v in p.items()} for p in SCHRODINGER_PROBES + (REPAIR_PROBE,)]
