"""Exact linear algebra over the rationals.

Matrices are plain row-major sequences of rows; every entry is coerced to
:class:`fractions.Fraction`. Subspaces are stored by their reduced row-echelon
basis, so two subspaces are equal exactly when their bases are identical.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-1/2"`` to a Fraction.

    Floats are refused: they would silently smuggle rounding into exact code.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def vector(values: Iterable) -> Vector:
    return tuple(as_fraction(v) for v in values)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    out = tuple(vector(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def mat_vec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return tuple(sum((a * b for a, b in zip(row, v) if a and b), ZERO) for row in m)


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    cols = list(zip(*b))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col) if x and y), ZERO) for col in cols)
        for row in a
    )


def _rref_in_place(rows: list[list[Fraction]], ncols: int) -> list[int]:
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = ONE / prow[c]
        if inv != ONE:
            prow[:] = [x * inv if x else ZERO for x in prow]
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Sequence[Sequence], ncols: Optional[int] = None):
    """Reduced row-echelon form.

    Returns ``(reduced, rank, pivot_cols)``. ``reduced`` keeps the row count
    of ``m`` (zero rows at the bottom). ``ncols`` is only needed when ``m`` has
    no rows.

    >>> rref([[2, 4], [1, 2]])[0]
    ((Fraction(1, 1), Fraction(2, 1)), (Fraction(0, 1), Fraction(0, 1)))
    """
    rows = [list(r) for r in matrix(m)]
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for a matrix with no rows")
        ncols = len(rows[0])
    pivots = _rref_in_place(rows, ncols)
    return tuple(tuple(r) for r in rows), len(pivots), pivots


def rank(m: Sequence[Sequence], ncols: Optional[int] = None) -> int:
    return rref(m, ncols)[1]


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim held by its canonical RREF basis."""

    ambient_dim: int
    basis: Matrix

    def __post_init__(self):
        for row in self.basis:
            if len(row) != self.ambient_dim:
                raise ValueError("basis row has wrong length")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(r) if x) for r in self.basis]

    def __len__(self):
        return self.dim

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


def span(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    """Canonical subspace spanned by ``vectors`` (which may be dependent)."""
    rows = [vector(v) for v in vectors]
    for r in rows:
        if len(r) != ambient_dim:
            raise ValueError(f"vector of length {len(r)} in ambient dimension {ambient_dim}")
    reduced, rk, _ = rref(rows, ambient_dim)
    return Subspace(ambient_dim, reduced[:rk])


def zero_subspace(n: int) -> Subspace:
    return Subspace(n, ())


def full_space(n: int) -> Subspace:
    return Subspace(n, identity(n))


def nullspace(m: Sequence[Sequence], ncols: Optional[int] = None) -> Subspace:
    """Canonical basis of ``{v : m v = 0}``."""
    reduced, rk, pivots = rref(m, ncols)
    if ncols is None:
        ncols = len(reduced[0])
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    vecs = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -reduced[r][f]
        vecs.append(v)
    # Free-variable vectors are independent but not yet in RREF order.
    return span(vecs, ncols)


def annihilator(s: Subspace) -> Subspace:
    """Linear functionals (as vectors) vanishing on ``s``."""
    if s.dim == 0:
        return full_space(s.ambient_dim)
    return nullspace(s.basis)


def _check_same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"ambient dimensions differ: {a.ambient_dim} != {b.ambient_dim}")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same_ambient(a, b)
    return span(a.basis + b.basis, a.ambient_dim)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """a ∩ b as the common solution set of both annihilator systems."""
    _check_same_ambient(a, b)
    eqs = annihilator(a).basis + annihilator(b).basis
    if not eqs:
        return full_space(a.ambient_dim)
    return nullspace(eqs, a.ambient_dim)


def contains(s: Subspace, v: Sequence) -> bool:
    v = vector(v)
    if len(v) != s.ambient_dim:
        raise ValueError(f"vector length {len(v)} != ambient dimension {s.ambient_dim}")
    return not any(reduce_vector(s, v))


def reduce_vector(s: Subspace, v: Sequence) -> Vector:
    """Remainder of ``v`` after clearing the pivot columns of ``s``.

    Zero exactly when ``v`` lies in ``s``.
    """
    out = list(vector(v))
    for row, p in zip(s.basis, s.pivots):
        f = out[p]
        if f:
            for j, x in enumerate(row):
                if x:
                    out[j] -= f * x
    return tuple(out)


def coordinates(s: Subspace, v: Sequence) -> Optional[Vector]:
    """Coordinates of ``v`` in the canonical basis of ``s``, or None if v ∉ s."""
    v = vector(v)
    if any(reduce_vector(s, v)):
        return None
    return tuple(v[p] for p in s.pivots)


def complement_basis(big: Subspace, small: Subspace) -> list[Vector]:
    """Rows of ``big``'s basis that extend ``small`` to a basis of small + big.

    When small ⊆ big, these span a complement of small inside big.
    """
    _check_same_ambient(big, small)
    acc = small
    out = []
    for row in big.basis:
        if not contains(acc, row):
            out.append(row)
            acc = span(acc.basis + (row,), acc.ambient_dim)
    return out


class Inconsistent:
    """Marker returned by :func:`solve` for a system without solutions."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INCONSISTENT"

    def __bool__(self):
        return False


INCONSISTENT = Inconsistent()


def solve(m: Sequence[Sequence], rhs: Sequence, ncols: Optional[int] = None):
    """One particular solution of ``m x = rhs``; free variables are set to 0.

    Returns :data:`INCONSISTENT` when the system has no solution. The full
    solution set is this vector plus ``nullspace(m)``.
    """
    m = matrix(m)
    rhs = vector(rhs)
    if len(rhs) != len(m):
        raise ValueError(f"rhs length {len(rhs)} != row count {len(m)}")
    if ncols is None:
        if not m:
            raise ValueError("ncols is required for a matrix with no rows")
        ncols = len(m[0])
    aug = [list(row) + [b] for row, b in zip(m, rhs)]
    pivots = _rref_in_place(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return INCONSISTENT
    x = [ZERO] * ncols
    for r, p in enumerate(pivots):
        x[p] = aug[r][ncols]
    return tuple(x)


def is_canonical(s: Subspace) -> bool:
    """True when ``s.basis`` satisfies every RREF condition."""
    last = -1
    for i, row in enumerate(s.basis):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            return False
        p = nz[0]
        if p <= last or row[p] != ONE:
            return False
        if any(s.basis[k][p] for k in range(len(s.basis)) if k != i):
            return False
        last = p
    return True
