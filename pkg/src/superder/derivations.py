"""Super-derivations: the solver for Der(L), inner derivations, the outer map δ.

Linear maps act on coordinate columns: ``matrix[k][i]`` is the x_k-component
of D(x_i). To reuse the subspace machinery a map is flattened column-major,
``vec[i * n + k] = matrix[k][i]``, so block ``i`` of the vector is D(x_i).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import exactla as la
from .exactla import ZERO, Subspace
from .superalg import SuperAlgebra, center, sign, validate


class NotADerivationError(ValueError):
    pass


class InvalidAlgebraError(ValueError):
    pass


def flatten(m: Sequence[Sequence]) -> tuple:
    n = len(m)
    return tuple(m[k][i] for i in range(n) for k in range(n))


def unflatten(v: Sequence, n: int) -> la.Matrix:
    return tuple(tuple(v[i * n + k] for i in range(n)) for k in range(n))


@dataclass(frozen=True)
class LinearMap:
    """An endomorphism of the algebra's underlying space.

    ``degree`` is 0 or 1 for a map declared homogeneous, None otherwise.
    """

    matrix: la.Matrix
    degree: Optional[int] = None

    @classmethod
    def from_vector(cls, v: Sequence, n: int, degree: Optional[int] = None) -> "LinearMap":
        return cls(unflatten(la.vector(v), n), degree)

    @classmethod
    def from_images(cls, alg: SuperAlgebra, images: dict, degree: Optional[int] = None) -> "LinearMap":
        """Map given by basis-name -> coefficient dict; unlisted basis vectors go to 0."""
        n = alg.dim
        m = [[ZERO] * n for _ in range(n)]
        for src, img in images.items():
            i = alg.index(src)
            for k, c in enumerate(alg.element(img)):
                m[k][i] = c
        return cls(tuple(tuple(r) for r in m), degree)

    @property
    def n(self) -> int:
        return len(self.matrix)

    def __call__(self, x: Sequence) -> tuple:
        return la.mat_vec(self.matrix, la.vector(x))

    def vec(self) -> tuple:
        return flatten(self.matrix)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        deg = self.degree if self.degree == other.degree else None
        return LinearMap(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix)), deg)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return self + other.scale(-1)

    def scale(self, c) -> "LinearMap":
        c = la.as_fraction(c)
        return LinearMap(tuple(tuple(c * a for a in r) for r in self.matrix), self.degree)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        deg = None
        if self.degree is not None and other.degree is not None:
            deg = (self.degree + other.degree) % 2
        return LinearMap(la.mat_mul(self.matrix, other.matrix), deg)

    def part(self, parities: Sequence[int], degree: int) -> "LinearMap":
        """The homogeneous component of the given degree."""
        n = self.n
        return LinearMap(
            tuple(
                tuple(self.matrix[k][i] if parities[k] == (parities[i] + degree) % 2 else ZERO for i in range(n))
                for k in range(n)
            ),
            degree,
        )

    def is_homogeneous_of(self, parities: Sequence[int], degree: int) -> bool:
        n = self.n
        return all(
            not self.matrix[k][i]
            for k in range(n)
            for i in range(n)
            if parities[k] != (parities[i] + degree) % 2
        )


def zero_map(n: int) -> LinearMap:
    return LinearMap(tuple((ZERO,) * n for _ in range(n)), 0)


def identity_map(n: int) -> LinearMap:
    return LinearMap(la.identity(n), 0)


def ad(alg: SuperAlgebra, x: Sequence) -> LinearMap:
    return LinearMap(alg.ad_matrix(la.vector(x)), alg.parity_of(x))


def supercommutator(a: LinearMap, b: LinearMap) -> LinearMap:
    """[a, b] = ab - (-1)^{|a||b|} ba for homogeneous maps."""
    if a.degree is None or b.degree is None:
        raise ValueError("supercommutator needs homogeneous maps")
    return (a @ b) - (b @ a).scale(sign(a.degree * b.degree))


@dataclass(frozen=True)
class DerivationSpace:
    algebra: SuperAlgebra
    even: Subspace
    odd: Subspace
    total: Subspace

    def part(self, degree) -> Subspace:
        return {0: self.even, 1: self.odd, None: self.total, "all": self.total}[degree]

    def maps(self, degree=None) -> list:
        n = self.algebra.dim
        deg = degree if degree in (0, 1) else None
        return [LinearMap.from_vector(v, n, deg) for v in self.part(degree).basis]


def _admissible(parities: Sequence[int], degree: int) -> list:
    """Flattened indices (i*n + k) of entries a degree-``degree`` map may use."""
    n = len(parities)
    return [
        i * n + k
        for i in range(n)
        for k in range(n)
        if parities[k] == (parities[i] + degree) % 2
    ]


def leibniz_rows(alg: SuperAlgebra, degree: int, columns: Sequence[int]) -> list:
    """Rows of the super-Leibniz system on the given unknown columns.

    For every ordered basis pair (i, j) and output component m:
    D[x_i,x_j] - [D x_i, x_j] - (-1)^{degree*|x_i|} [x_i, D x_j] = 0.
    """
    n = alg.dim
    par = alg.parities
    pos = {c: r for r, c in enumerate(columns)}
    width = len(columns)
    rows = []
    for i in range(n):
        s = sign(degree * par[i])
        for j in range(n):
            eqs: dict = {}
            # D[x_i, x_j]: entry (m, k) weighted by c_ij^k
            for k, c in alg.bracket_basis(i, j):
                for m in range(n):
                    eqs.setdefault(m, {})
                    key = k * n + m
                    eqs[m][key] = eqs[m].get(key, ZERO) + c
            # -[D x_i, x_j]: entry (k, i) weighted by c_kj^m
            for k in range(n):
                for m, c in alg.bracket_basis(k, j):
                    eqs.setdefault(m, {})
                    key = i * n + k
                    eqs[m][key] = eqs[m].get(key, ZERO) - c
            # -s [x_i, D x_j]: entry (k, j) weighted by c_ik^m
            for k in range(n):
                for m, c in alg.bracket_basis(i, k):
                    eqs.setdefault(m, {})
                    key = j * n + k
                    eqs[m][key] = eqs[m].get(key, ZERO) - s * c
            for m in sorted(eqs):
                row = [ZERO] * width
                for key, c in eqs[m].items():
                    if c and key in pos:
                        row[pos[key]] += c
                if any(row):
                    rows.append(row)
    return rows


def _embed(sub: Subspace, columns: Sequence[int], n2: int) -> Subspace:
    vecs = []
    for row in sub.basis:
        v = [ZERO] * n2
        for c, x in zip(columns, row):
            v[c] = x
        vecs.append(v)
    return la.span(vecs, n2)


def homogeneous_derivations(alg: SuperAlgebra, degree: int) -> Subspace:
    n = alg.dim
    cols = _admissible(alg.parities, degree)
    if not cols:
        return la.zero_subspace(n * n)
    rows = leibniz_rows(alg, degree, cols)
    sub = la.nullspace(rows, len(cols)) if rows else la.full_space(len(cols))
    return _embed(sub, cols, n * n)


def derivation_space(alg: SuperAlgebra, check: bool = True) -> DerivationSpace:
    """Der(L) = Der_0 + Der_1 as subspaces of the n^2-dimensional map space."""
    if check:
        bad = validate(alg)
        if bad:
            raise InvalidAlgebraError(f"{alg.name} is not a Lie superalgebra: {bad[0].describe(alg)}")
    even = homogeneous_derivations(alg, 0)
    odd = homogeneous_derivations(alg, 1)
    return DerivationSpace(alg, even, odd, la.subspace_sum(even, odd))


def inner_space(alg: SuperAlgebra) -> Subspace:
    n = alg.dim
    return la.span([flatten(alg.ad_matrix(alg.basis_vector(i))) for i in range(n)], n * n)


def leibniz_counterexample(alg: SuperAlgebra, d: LinearMap):
    """First (degree, i, j, residual) where super-Leibniz fails, else None.

    Non-homogeneous maps are split into their even and odd parts and each
    part is checked with its own sign.
    """
    from .superalg import bracket

    n = alg.dim
    basis = [alg.basis_vector(i) for i in range(n)]
    for degree in (0, 1):
        part = d.part(alg.parities, degree)
        images = [part(b) for b in basis]
        for i in range(n):
            s = sign(degree * alg.parities[i])
            for j in range(n):
                lhs = part(bracket(alg, basis[i], basis[j]))
                r1 = bracket(alg, images[i], basis[j])
                r2 = bracket(alg, basis[i], images[j])
                res = tuple(a - b - s * c for a, b, c in zip(lhs, r1, r2))
                if any(res):
                    return degree, i, j, res
    return None


def is_derivation(alg: SuperAlgebra, d: LinearMap) -> bool:
    return leibniz_counterexample(alg, d) is None


def delta_map(alg: Optional[SuperAlgebra] = None) -> LinearMap:
    """The outer derivation of the super Schrödinger algebra.

    Zero on osp(1|2) = span{h, e, f, E, F}; p -> p, q -> q, z -> 2z, G -> G.
    """
    from .superalg import super_schrodinger

    alg = alg or super_schrodinger()
    return LinearMap.from_images(alg, {"p": {"p": 1}, "q": {"q": 1}, "z": {"z": 2}, "G": {"G": 1}}, degree=0)


@dataclass(frozen=True)
class TheoremDerReport:
    delta_is_derivation: bool
    delta_not_inner: bool
    inner_plus_delta_is_der: bool
    dim_formula: bool
    dim_der: int
    dim_inner: int
    dim_even: int
    dim_odd: int

    @property
    def ok(self) -> bool:
        return self.delta_is_derivation and self.delta_not_inner and self.inner_plus_delta_is_der and self.dim_formula


def verify_theorem_der(alg: SuperAlgebra, der: Optional[DerivationSpace] = None) -> TheoremDerReport:
    """Check Der = IDer + Qδ with δ outer, for the super Schrödinger algebra."""
    der = der or derivation_space(alg)
    inner = inner_space(alg)
    delta = delta_map(alg)
    dvec = delta.vec()
    with_delta = la.subspace_sum(inner, la.span([dvec], inner.ambient_dim))
    return TheoremDerReport(
        delta_is_derivation=is_derivation(alg, delta) and la.contains(der.total, dvec),
        delta_not_inner=not la.contains(inner, dvec),
        inner_plus_delta_is_der=with_delta == der.total,
        dim_formula=der.total.dim == inner.dim + 1,
        dim_der=der.total.dim,
        dim_inner=inner.dim,
        dim_even=der.even.dim,
        dim_odd=der.odd.dim,
    )


@dataclass(frozen=True)
class DerivationCoordinates:
    """D = ad(inner) + outer * δ."""

    inner: tuple
    outer: Fraction


def decompose(alg: SuperAlgebra, d: LinearMap, outer: Optional[LinearMap] = None) -> DerivationCoordinates:
    """Write ``d`` as ad(b) + λ·outer.

    b is only determined modulo the center; the free coordinates (for the
    super Schrödinger algebra, the z-coefficient) are set to zero.
    """
    n = alg.dim
    outer = outer or delta_map(alg)
    cols = [flatten(alg.ad_matrix(alg.basis_vector(i))) for i in range(n)] + [outer.vec()]
    system = [[col[r] for col in cols] for r in range(n * n)]
    sol = la.solve(system, d.vec(), n + 1)
    if sol is la.INCONSISTENT:
        raise NotADerivationError("map is not of the form ad(b) + λ·δ")
    return DerivationCoordinates(tuple(sol[:n]), sol[n])


def compose_coordinates(alg: SuperAlgebra, coords: DerivationCoordinates, outer: Optional[LinearMap] = None) -> LinearMap:
    outer = outer or delta_map(alg)
    return ad(alg, coords.inner) + outer.scale(coords.outer)
