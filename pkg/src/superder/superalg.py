"""Finite-dimensional Lie superalgebras given by structure constants."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from . import exactla as la
from .exactla import ZERO, Subspace


class InconsistentBracketError(ValueError):
    """Both orientations of a bracket were given and disagree with skew-symmetry."""


class UnknownAlgebraError(KeyError):
    pass


def sign(k: int) -> int:
    return -1 if k % 2 else 1


@dataclass(frozen=True)
class SuperAlgebra:
    """Basis names, parities and the completed structure-constant table.

    ``structure[(i, j)]`` is a tuple of ``(k, c)`` pairs with c != 0 meaning
    [x_i, x_j] = sum c x_k. Both orientations of every pair are stored.
    """

    name: str
    names: tuple
    parities: tuple
    structure: Mapping = field(repr=False)

    def __post_init__(self):
        if len(self.names) != len(self.parities):
            raise ValueError("names and parities differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis names must be unique")
        if any(p not in (0, 1) for p in self.parities):
            raise ValueError("parities must be 0 or 1")

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown basis element {name!r} in {self.name}") from None

    def basis_vector(self, i) -> tuple:
        if isinstance(i, str):
            i = self.index(i)
        v = [ZERO] * self.dim
        v[i] = Fraction(1)
        return tuple(v)

    def element(self, coeffs: Mapping) -> tuple:
        """Build coordinates from ``{"f": 1, "q": 1, "z": "-1/2"}``."""
        v = [ZERO] * self.dim
        for name, c in coeffs.items():
            v[self.index(name)] += la.as_fraction(c)
        return tuple(v)

    def format(self, x: Sequence) -> str:
        """Human-readable form such as ``f + q - 1/2*z``."""
        parts = []
        for name, c in zip(self.names, x):
            if not c:
                continue
            mag = abs(c)
            term = name if mag == 1 else f"{mag}*{name}"
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        return " ".join(parts) if parts else "0"

    def bracket_basis(self, i: int, j: int) -> tuple:
        return self.structure.get((i, j), ())

    def parity_of(self, x: Sequence) -> Optional[int]:
        """Parity of a homogeneous element; None if x is zero or mixed."""
        ps = {self.parities[i] for i, c in enumerate(x) if c}
        return ps.pop() if len(ps) == 1 else None

    def ad_matrix(self, x: Sequence) -> la.Matrix:
        """Matrix of y -> [x, y], acting on coordinate columns."""
        n = self.dim
        m = [[ZERO] * n for _ in range(n)]
        for i, a in enumerate(x):
            if not a:
                continue
            for j in range(n):
                for k, c in self.bracket_basis(i, j):
                    m[k][j] += a * c
        return tuple(tuple(r) for r in m)

    def table(self) -> list:
        """One orientation per bracket (i <= j), as ``(i, j, ((k, c), ...))``."""
        return [(i, j, terms) for (i, j), terms in sorted(self.structure.items()) if i <= j and terms]

    def subalgebra(self, names: Sequence[str], name: Optional[str] = None) -> "SuperAlgebra":
        """Restriction to the span of some basis elements (must be closed)."""
        idx = [self.index(s) for s in names]
        pos = {i: r for r, i in enumerate(idx)}
        brackets = []
        for a in idx:
            for b in idx:
                terms = self.bracket_basis(a, b)
                if any(k not in pos for k, _ in terms):
                    raise ValueError(f"[{self.names[a]},{self.names[b]}] leaves the span of {list(names)}")
                if terms:
                    brackets.append((self.names[a], self.names[b], {self.names[k]: c for k, c in terms}))
        basis = [(self.names[i], self.parities[i]) for i in idx]
        return from_table(name or f"{self.name}|{','.join(names)}", basis, brackets)


def bracket(alg: SuperAlgebra, x: Sequence, y: Sequence) -> tuple:
    """Bilinear bracket [x, y] of coordinate vectors."""
    n = alg.dim
    if len(x) != n or len(y) != n:
        raise ValueError(f"elements must have length {n}")
    out = [ZERO] * n
    for i, a in enumerate(x):
        if not a:
            continue
        for j, b in enumerate(y):
            if not b:
                continue
            ab = a * b
            for k, c in alg.bracket_basis(i, j):
                out[k] += ab * c
    return tuple(out)


def from_table(name: str, basis: Iterable, brackets: Iterable, strict: bool = True) -> SuperAlgebra:
    """Build an algebra from one-orientation bracket data.

    ``basis`` is a sequence of ``(name, parity)``; ``brackets`` a sequence of
    ``(left, right, {result_name: coefficient})``. The missing orientation of
    each bracket is filled in by graded skew-symmetry. When both orientations
    are given they must agree, otherwise :class:`InconsistentBracketError` is
    raised; with ``strict=False`` the given values are kept as they are so the
    disagreement shows up in :func:`validate`.
    """
    basis = list(basis)
    names = tuple(b[0] for b in basis)
    parities = tuple(int(b[1]) for b in basis)
    lookup = {s: i for i, s in enumerate(names)}
    if len(lookup) != len(names):
        raise ValueError("basis names must be unique")

    given: dict = {}
    for left, right, result in brackets:
        for s in (left, right, *result):
            if s not in lookup:
                raise KeyError(f"unknown basis element {s!r}")
        i, j = lookup[left], lookup[right]
        if (i, j) in given:
            raise ValueError(f"bracket [{left},{right}] given twice")
        acc: dict = {}
        for s, c in result.items():
            c = la.as_fraction(c)
            k = lookup[s]
            acc[k] = acc.get(k, ZERO) + c
        given[(i, j)] = acc

    structure: dict = {}
    for (i, j), terms in given.items():
        structure[(i, j)] = tuple(sorted((k, c) for k, c in terms.items() if c))
    for (i, j), terms in given.items():
        if i == j:
            continue
        s = sign(parities[i] * parities[j])
        mirrored = tuple((k, -s * c) for k, c in structure[(i, j)])
        if (j, i) in given:
            if structure[(j, i)] != mirrored and strict:
                raise InconsistentBracketError(
                    f"[{names[i]},{names[j]}] and [{names[j]},{names[i]}] violate graded skew-symmetry"
                )
        else:
            structure[(j, i)] = mirrored
    structure = {key: val for key, val in sorted(structure.items()) if val}
    return SuperAlgebra(name, names, parities, structure)


def complete(alg: SuperAlgebra) -> SuperAlgebra:
    """Re-run skew completion on an algebra's own table."""
    brackets = [
        (alg.names[i], alg.names[j], {alg.names[k]: c for k, c in terms})
        for (i, j), terms in sorted(alg.structure.items())
    ]
    return from_table(alg.name, zip(alg.names, alg.parities), brackets)


@dataclass(frozen=True)
class Violation:
    kind: str  # "grading" | "skew" | "jacobi"
    triple: tuple  # basis indices involved
    residual: tuple

    def describe(self, alg: SuperAlgebra) -> str:
        names = ",".join(alg.names[i] for i in self.triple)
        return f"{self.kind} ({names}): residual {alg.format(self.residual)}"


def validate(alg: SuperAlgebra) -> list:
    """All grading, graded skew-symmetry and graded Jacobi violations.

    The Jacobi check runs over every ordered basis triple and uses the form
    [x,[y,z]] = [[x,y],z] + (-1)^{|z|(|x|+|y|)} [[z,x],y].
    """
    n = alg.dim
    par = alg.parities
    out = []
    for (i, j), terms in sorted(alg.structure.items()):
        want = (par[i] + par[j]) % 2
        bad = [(k, c) for k, c in terms if par[k] != want]
        if bad:
            res = [ZERO] * n
            for k, c in bad:
                res[k] = c
            out.append(Violation("grading", (i, j), tuple(res)))
    for i in range(n):
        for j in range(i, n):
            s = sign(par[i] * par[j])
            res = [ZERO] * n
            for k, c in alg.bracket_basis(i, j):
                res[k] += c
            for k, c in alg.bracket_basis(j, i):
                res[k] += s * c
            if any(res):
                out.append(Violation("skew", (i, j), tuple(res)))

    basis = [alg.basis_vector(i) for i in range(n)]
    br = [[bracket(alg, basis[i], basis[j]) for j in range(n)] for i in range(n)]
    for a in range(n):
        for b in range(n):
            for c in range(n):
                lhs = bracket(alg, basis[a], br[b][c])
                t1 = bracket(alg, br[a][b], basis[c])
                t2 = bracket(alg, br[c][a], basis[b])
                s = sign(par[c] * (par[a] + par[b]))
                res = tuple(l - u - s * v for l, u, v in zip(lhs, t1, t2))
                if any(res):
                    out.append(Violation("jacobi", (a, b, c), res))
    return out


def is_ideal(alg: SuperAlgebra, subset: Iterable) -> bool:
    """True iff [x_i, x_s] stays in span(subset) for every basis x_i, s in subset."""
    idx = [alg.index(s) if isinstance(s, str) else int(s) for s in subset]
    for s in idx:
        if not 0 <= s < alg.dim:
            raise IndexError(f"basis index {s} out of range")
    sub = la.span([alg.basis_vector(s) for s in idx], alg.dim)
    for i in range(alg.dim):
        for s in idx:
            if not la.contains(sub, bracket(alg, alg.basis_vector(i), alg.basis_vector(s))):
                return False
    return True


def is_subalgebra(alg: SuperAlgebra, subset: Iterable) -> bool:
    idx = [alg.index(s) if isinstance(s, str) else int(s) for s in subset]
    sub = la.span([alg.basis_vector(s) for s in idx], alg.dim)
    return all(
        la.contains(sub, bracket(alg, alg.basis_vector(a), alg.basis_vector(b)))
        for a in idx
        for b in idx
    )


def center(alg: SuperAlgebra) -> Subspace:
    """{x : [x, y] = 0 for all y}, the nullspace of the stacked ad-evaluations."""
    n = alg.dim
    # Row (j, k): coefficient of x_i is the k-component of [x_i, x_j].
    rows = []
    for j in range(n):
        for k in range(n):
            row = [ZERO] * n
            for i in range(n):
                for kk, c in alg.bracket_basis(i, j):
                    if kk == k:
                        row[i] += c
            if any(row):
                rows.append(row)
    if not rows:
        return la.full_space(n)
    return la.nullspace(rows, n)


# -- catalog ---------------------------------------------------------------

SCHRODINGER_BASIS = (
    ("e", 0), ("f", 0), ("h", 0), ("p", 0), ("q", 0), ("z", 0),
    ("E", 1), ("F", 1), ("G", 1),
)

# The twenty non-vanishing brackets of the N=1 super Schrödinger algebra.
# [E,F] = +h: with -h the graded Jacobi identity fails on (E,E,F) and 35
# further triples, so -h cannot be the intended sign.
SCHRODINGER_BRACKETS = (
    ("h", "e", {"e": 2}), ("h", "f", {"f": -2}), ("e", "f", {"h": 1}),
    ("h", "p", {"p": 1}), ("h", "q", {"q": -1}), ("p", "q", {"z": 1}),
    ("e", "q", {"p": 1}), ("p", "f", {"q": -1}), ("h", "E", {"E": 1}),
    ("h", "F", {"F": -1}), ("e", "F", {"E": -1}), ("f", "E", {"F": -1}),
    ("p", "F", {"G": 1}), ("q", "E", {"G": 1}), ("E", "E", {"e": 2}),
    ("F", "F", {"f": -2}), ("G", "G", {"z": 1}), ("E", "F", {"h": 1}),
    ("E", "G", {"p": -1}), ("F", "G", {"q": 1}),
)

_SUBALGEBRAS = {
    "osp12": ("h", "e", "f", "E", "F"),
    "super-heisenberg": ("p", "q", "z", "G"),
    "even-schrodinger": ("e", "f", "h", "p", "q", "z"),
}

CATALOG_NAMES = ("super-schrodinger", "osp12", "super-heisenberg", "even-schrodinger")


def super_schrodinger() -> SuperAlgebra:
    return from_table("super-schrodinger", SCHRODINGER_BASIS, SCHRODINGER_BRACKETS)


def abelian(n: int, parities: Optional[Sequence[int]] = None, name: Optional[str] = None) -> SuperAlgebra:
    parities = tuple(parities) if parities is not None else (0,) * n
    basis = [(f"x{i}", parities[i]) for i in range(n)]
    return from_table(name or f"abelian-{n}", basis, ())


def catalog(name: str) -> SuperAlgebra:
    """A built-in algebra by name; see :data:`CATALOG_NAMES`."""
    if name == "super-schrodinger":
        return super_schrodinger()
    if name in _SUBALGEBRAS:
        return super_schrodinger().subalgebra(_SUBALGEBRAS[name], name=name)
    raise UnknownAlgebraError(f"unknown catalog algebra {name!r}; known: {', '.join(CATALOG_NAMES)}")


def same_structure(a: SuperAlgebra, b: SuperAlgebra) -> bool:
    """Equal basis names, parities and structure constants (names of algebras ignored)."""
    return a.names == b.names and a.parities == b.parities and dict(a.structure) == dict(b.structure)
