"""Step-by-step replay of the local-derivation argument for the super Schrödinger algebra.

The argument fixes Δ(h+z) = 0 and then shrinks the set of admissible Δ one
probe at a time. Every step here is data: the probes it adds and the linear
facts about Δ it claims. A fact is a linear functional on the flattened Δ
that must vanish on the whole constrained space.

Facts are phrased with two kinds of references:

``("b", y, x)``
    the coefficient of y in an element b_x with Δ(x) = [b_x, x], read off
    from the one component of Δ(x) that [y, x] reaches. This only makes
    sense when no other basis element (and not δ) reaches that component;
    the reader refuses ambiguous cases.
``("c", x, k)``
    the k-component of Δ(x), used where δ and an inner term overlap.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import exactla as la
from .derivations import (
    DerivationSpace,
    LinearMap,
    ad,
    decompose,
    delta_map,
    derivation_space,
    flatten,
)
from .exactla import ZERO
from .localder import REPAIR_PROBE, constraint_rows, pin_rows
from .superalg import SuperAlgebra, same_structure, super_schrodinger


class ReplayInputError(ValueError):
    pass


@dataclass(frozen=True)
class Assertion:
    """sum(coef * ref) = 0; ``label`` is the human form, e.g. ``b_{p,f} = b_{q,e}``."""

    label: str
    terms: tuple  # ((coef, ref), ...)


@dataclass(frozen=True)
class LemmaFact:
    id: str
    title: str
    probes: tuple  # coefficient dicts over basis names
    assertions: tuple
    pins: tuple = ()  # elements x with Δ(x) = 0


def b(y: str, x: str):
    return ("b", y, x)


def c(x: str, k: str):
    return ("c", x, k)


def eq(label: str, lhs, rhs=None) -> Assertion:
    """``lhs = rhs`` (rhs defaults to 0); each side is a ref or list of (coef, ref)."""
    def side(s):
        if s is None:
            return []
        if isinstance(s, tuple) and isinstance(s[0], str):
            return [(Fraction(1), s)]
        return [(Fraction(k), r) for k, r in s]

    terms = side(lhs) + [(-k, r) for k, r in side(rhs)]
    return Assertion(label, tuple(terms))


def _vanish_all(x: str, names) -> list:
    return [eq(f"Δ({x})_{k} = 0", c(x, k)) for k in names]


_NAMES = ("e", "f", "h", "p", "q", "z", "E", "F", "G")
_BASIS = tuple({s: 1} for s in _NAMES)


SCHRODINGER_FACTS = (
    LemmaFact(
        "h-and-z-vanish",
        "Δ(h+z) = 0 forces Δ(h) = Δ(z) = 0",
        _BASIS + ({"h": 1, "z": 1},),
        tuple(_vanish_all("h", _NAMES) + _vanish_all("z", _NAMES)),
        pins=({"h": 1, "z": 1},),
    ),
    LemmaFact(
        "no-h-in-e-f",
        "Δ(e), Δ(f) have no h-component",
        ({"h": 1, "e": 1}, {"h": 1, "f": 1}),
        (eq("b_{f,e} = 0", b("f", "e")), eq("b_{e,f} = 0", b("e", "f"))),
    ),
    LemmaFact(
        "odd-free-e-f-p-q",
        "Δ(e), Δ(f), Δ(p), Δ(q) lose their odd and cross terms",
        ({"h": 1, "p": 1}, {"h": 1, "q": 1}, {"e": 1, "p": 1}, {"f": 1, "q": 1}),
        (
            eq("b_{F,p} = 0", b("F", "p")),
            eq("b_{E,q} = 0", b("E", "q")),
            eq("b_{F,e} = 0", b("F", "e")),
            eq("b_{f,p} = 0", b("f", "p")),
            eq("b_{E,f} = 0", b("E", "f")),
            eq("b_{e,q} = 0", b("e", "q")),
        ),
    ),
    LemmaFact(
        "odd-images-linked",
        "coefficients of Δ(E), Δ(F), Δ(G) are tied together",
        (
            {"h": 1, "E": 1},
            {"h": 1, "F": 1},
            {"e": 1, "f": -1, "h": 1},
            {"E": 1, "F": 1},
            {"E": 1, "G": 1},
            {"F": 1, "G": 1},
        ),
        (
            eq("b_{q,E} = 0", b("q", "E")),
            eq("b_{p,F} = 0", b("p", "F")),
            eq("b_{p,f} = b_{q,e}", b("p", "f"), b("q", "e")),
            eq("b_{G,E} = b_{G,F}", b("G", "E"), b("G", "F")),
            eq("b_{F,E} = b_{F,G}", b("F", "E"), b("F", "G")),
            eq("b_{E,F} = b_{E,G}", b("E", "F"), b("E", "G")),
        ),
    ),
    LemmaFact(
        "e-f-diagonal",
        "Δ(e) = 2b_{h,e} e and Δ(f) = -2b_{h,e} f",
        ({"e": 1, "f": 1, "E": 1, "F": 1}, {"e": 1, "f": 1}),
        (
            eq("b_{q,e} = 0", b("q", "e")),
            eq("b_{h,e} = b_{h,f}", b("h", "e"), b("h", "f")),
        ),
    ),
    LemmaFact(
        "odd-images-reduced",
        "Δ(E) = b_{G,E} [G,E] + b_{h,e} [h,E] and similarly for F, G",
        (
            {"e": 1, "G": 1},
            {"f": 1, "G": 1},
            {"E": 1, "F": 1, "G": 1},
            {"e": 1, "p": 1, "E": 1},
            {"q": 1, "F": 1},
            {"f": 1, "p": 1, "E": 1},
            {"e": 1, "F": 1},
            {"f": 1, "E": 1},
        ),
        (
            eq("b_{F,E} = 0", b("F", "E")),
            eq("b_{E,F} = 0", b("E", "F")),
            eq("b_{E,E} = b_{F,F}", b("E", "E"), b("F", "F")),
            eq("b_{f,E} = 0", b("f", "E")),
            eq("b_{q,p} = 0", b("q", "p")),
            eq("b_{e,F} = 0", b("e", "F")),
            eq("b_{p,q} = 0", b("p", "q")),
            eq("b_{E,E} = 0", b("E", "E")),
            eq("b_{F,F} = 0", b("F", "F")),
            eq("b_{h,F} = b_{h,e}", b("h", "F"), b("h", "e")),
            eq("b_{h,E} = b_{h,e}", b("h", "E"), b("h", "e")),
        ),
    ),
    LemmaFact(
        "scalars-fixed",
        "Δ(p), Δ(q), Δ(G) are fixed by b_{h,e} and b_{G,E}",
        (
            {"E": 1, "F": -1, "G": 1},
            {"f": 1, "q": 1, "z": "-1/2"},
            {"e": 1, "p": 1, "z": "1/2"},
            {"p": 1, "q": 1, "E": 1, "F": -1, "G": 1},
            REPAIR_PROBE,
        ),
        (
            eq("b_{G,G} = b_{G,E}", b("G", "G"), b("G", "E")),
            eq("-b_{h,q} + λ_q = -b_{h,e}", c("q", "q"), [(-1, b("h", "e"))]),
            eq("b_{h,p} + λ_p = b_{h,e}", c("p", "p"), b("h", "e")),
            eq("λ_G = 0", c("G", "G")),
        ),
    ),
)


def readout(alg: SuperAlgebra, ref, outer: Optional[LinearMap] = None) -> tuple:
    """The functional (length n^2) that ``ref`` denotes."""
    n = alg.dim
    vec = [ZERO] * (n * n)
    kind = ref[0]
    if kind == "c":
        x, k = alg.index(ref[1]), alg.index(ref[2])
        vec[x * n + k] = Fraction(1)
        return tuple(vec)
    if kind != "b":
        raise ReplayInputError(f"unknown reference kind {kind!r}")
    y, x = alg.index(ref[1]), alg.index(ref[2])
    terms = alg.bracket_basis(y, x)
    if len(terms) != 1:
        raise ReplayInputError(f"b_{{{ref[1]},{ref[2]}}}: [{ref[1]},{ref[2]}] is not a single basis term")
    k, coef = terms[0]
    for other in range(n):
        if other != y and any(kk == k for kk, _ in alg.bracket_basis(other, x)):
            raise ReplayInputError(
                f"b_{{{ref[1]},{ref[2]}}} is ambiguous: [{alg.names[other]},{ref[2]}] also reaches {alg.names[k]}"
            )
    outer = outer if outer is not None else delta_map(alg)
    if outer(alg.basis_vector(x))[k]:
        raise ReplayInputError(f"b_{{{ref[1]},{ref[2]}}} is ambiguous: δ({ref[2]}) reaches {alg.names[k]}")
    vec[x * n + k] = 1 / coef
    return tuple(vec)


def functional(alg: SuperAlgebra, a: Assertion) -> tuple:
    n2 = alg.dim ** 2
    out = [ZERO] * n2
    for coef, ref in a.terms:
        for i, v in enumerate(readout(alg, ref)):
            if v:
                out[i] += coef * v
    return tuple(out)


@dataclass
class AssertionResult:
    label: str
    passed: bool
    failing_basis_index: Optional[int] = None
    value: Optional[Fraction] = None


@dataclass
class StepResult:
    id: str
    title: str
    probes_added: list
    dim: int
    assertions: list

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)


@dataclass
class Reconstruction:
    """nabla = D_{h+z} + ad(b_{h,e} h + b_{G,E} G) for one closure basis map."""

    d_inner: tuple
    d_outer: Fraction
    b_he: Fraction
    b_GE: Fraction
    ok: bool


@dataclass
class ReplayTranscript:
    steps: list
    final_dim: int
    final_is_inner_h_G: bool
    reconstructions: list = field(default_factory=list)
    formula: str = "nabla = D_{h+z} + ad(b_{h,e} h + b_{G,E} G)"

    @property
    def passed(self) -> bool:
        return (
            all(s.passed for s in self.steps)
            and self.final_dim == 2
            and self.final_is_inner_h_G
            and all(r.ok for r in self.reconstructions)
        )


def _check(alg: SuperAlgebra, space: la.Subspace, a: Assertion) -> AssertionResult:
    phi = functional(alg, a)
    for idx, v in enumerate(space.basis):
        val = sum((p * x for p, x in zip(phi, v) if p and x), ZERO)
        if val:
            return AssertionResult(a.label, False, idx, val)
    return AssertionResult(a.label, True)


def replay_lemmas(
    alg: Optional[SuperAlgebra] = None,
    facts: Sequence[LemmaFact] = SCHRODINGER_FACTS,
    der: Optional[DerivationSpace] = None,
) -> ReplayTranscript:
    """Run the facts in order, each on the space cut out by all probes so far."""
    alg = alg or super_schrodinger()
    if not same_structure(alg, super_schrodinger()):
        raise ReplayInputError("lemma replay is defined for the super Schrödinger algebra only")
    der = der or derivation_space(alg)
    n = alg.dim
    n2 = n * n

    probe_rows: list = []
    pinned: list = []
    probes_seen: list = []
    steps = []
    space = la.full_space(n2)
    for fact in facts:
        for p in fact.probes:
            x = alg.element(p)
            probes_seen.append(x)
            probe_rows.extend(constraint_rows(alg, der, x))
        for p in fact.pins:
            pinned.extend(pin_rows(alg, alg.element(p)))
        rows = [r for r in probe_rows + pinned if any(r)]
        space = la.nullspace(rows, n2) if rows else la.full_space(n2)
        results = [_check(alg, space, a) for a in fact.assertions]
        steps.append(StepResult(fact.id, fact.title, [alg.format(alg.element(p)) for p in fact.probes], space.dim, results))

    h, G = alg.basis_vector("h"), alg.basis_vector("G")
    target = la.span([flatten(ad(alg, h).matrix), flatten(ad(alg, G).matrix)], n2)
    transcript = ReplayTranscript(steps, space.dim, space == target)

    # Every map allowed by the same probes (without the pin) splits as a
    # derivation matching it on h+z plus an inner derivation by b_he h + b_GE G.
    unpinned_rows = [r for r in probe_rows if any(r)]
    closure = la.nullspace(unpinned_rows, n2) if unpinned_rows else la.full_space(n2)
    hz = alg.element({"h": 1, "z": 1})
    der_images = [LinearMap.from_vector(v, n)(hz) for v in der.total.basis]
    cols = list(zip(*der_images)) if der_images else []
    b_he = readout(alg, ("b", "h", "e"))
    b_GE = readout(alg, ("b", "G", "E"))
    for vec in closure.basis:
        nabla = LinearMap.from_vector(vec, n)
        coeffs = la.solve(cols, nabla(hz), len(der_images))
        if coeffs is la.INCONSISTENT:
            transcript.reconstructions.append(Reconstruction((), ZERO, ZERO, ZERO, False))
            continue
        d_vec = [sum((cf * v[i] for cf, v in zip(coeffs, der.total.basis)), ZERO) for i in range(n2)]
        d = LinearMap.from_vector(d_vec, n)
        rest = nabla - d
        rv = rest.vec()
        he = sum((a * x for a, x in zip(b_he, rv) if a), ZERO)
        ge = sum((a * x for a, x in zip(b_GE, rv) if a), ZERO)
        inner = tuple(he * u + ge * w for u, w in zip(h, G))
        ok = rest.vec() == ad(alg, inner).vec()
        dc = decompose(alg, d)
        transcript.reconstructions.append(Reconstruction(dc.inner, dc.outer, he, ge, ok))
    return transcript


# -- (de)serialization of fact lists ----------------------------------------

def _ref_to_json(ref) -> str:
    return f"{ref[0]}:{ref[1]},{ref[2]}"


def _ref_from_json(s: str):
    try:
        kind, rest = s.split(":", 1)
        a, bb = rest.split(",")
    except ValueError:
        raise ReplayInputError(f"bad reference {s!r}; expected 'b:y,x' or 'c:x,k'") from None
    if kind not in ("b", "c"):
        raise ReplayInputError(f"bad reference kind in {s!r}")
    return (kind, a.strip(), bb.strip())


def _coeffs_to_json(p: dict) -> dict:
    return {k: str(la.as_fraction(v)) for k, v in p.items()}


def facts_to_json(facts: Sequence[LemmaFact] = SCHRODINGER_FACTS) -> list:
    return [
        {
            "id": f.id,
            "title": f.title,
            "probes": [_coeffs_to_json(p) for p in f.probes],
            "pins": [_coeffs_to_json(p) for p in f.pins],
            "assertions": [
                {"label": a.label, "terms": [[str(k), _ref_to_json(r)] for k, r in a.terms]}
                for a in f.assertions
            ],
        }
        for f in facts
    ]


def facts_from_json(data) -> tuple:
    if isinstance(data, dict):
        data = data.get("facts")
    if not isinstance(data, list):
        raise ReplayInputError("fact file must be a list of facts or {'facts': [...]}")
    out = []
    for i, f in enumerate(data):
        try:
            assertions = tuple(
                Assertion(a["label"], tuple((la.as_fraction(k), _ref_from_json(r)) for k, r in a["terms"]))
                for a in f.get("assertions", [])
            )
            out.append(
                LemmaFact(
                    f["id"],
                    f.get("title", ""),
                    tuple(dict(p) for p in f.get("probes", [])),
                    assertions,
                    tuple(dict(p) for p in f.get("pins", [])),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ReplayInputError(f"fact {i}: {exc}") from None
    return tuple(out)


def without_probe(facts: Sequence[LemmaFact], probe: dict) -> tuple:
    """Copy of ``facts`` with every occurrence of ``probe`` removed."""
    key = _coeffs_to_json(probe)
    return tuple(
        LemmaFact(f.id, f.title, tuple(p for p in f.probes if _coeffs_to_json(p) != key), f.assertions, f.pins)
        for f in facts
    )


__all__ = [
    "Assertion",
    "LemmaFact",
    "REPAIR_PROBE",
    "ReplayInputError",
    "ReplayTranscript",
    "SCHRODINGER_FACTS",
    "facts_from_json",
    "facts_to_json",
    "readout",
    "replay_lemmas",
    "without_probe",
]
