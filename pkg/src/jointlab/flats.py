"""Affine flats in R^n: exact membership, intersection, span, projection.

An :class:`AffineFlat` is a base point plus a direction basis, stored in a
canonical form (reduced echelon direction basis; base point with zeros in
every pivot coordinate) so that geometric equality is plain ``==`` and flats
hash correctly into sets and dicts.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import GenericityError
from .linalg import (
    Mat,
    Scalar,
    Vec,
    kernel_basis,
    mat_vec,
    qvec,
    rank,
    rref,
    solve_affine,
    vec_dot,
    vec_sub,
)

_ZERO = Fraction(0)


class AffineFlat:
    """An alpha-dimensional affine flat in R^n, canonical on construction.

    ``directions`` must be linearly independent; pass dependent spanning
    vectors through :meth:`from_span` instead.  Dimension 0 (a single point)
    is allowed.
    """

    __slots__ = ("ambient_dim", "base", "directions", "_constraints")

    def __init__(self, base: Iterable[Scalar], directions: Iterable[Iterable[Scalar]] = ()):
        b = qvec(base)
        dirs = tuple(qvec(d) for d in directions)
        n = len(b)
        if any(len(d) != n for d in dirs):
            raise ValueError("direction dimension mismatch")
        if dirs:
            red, pivots = rref(dirs)
            if len(pivots) != len(dirs):
                raise ValueError("directions must be linearly independent")
            dirs = red
            bb = list(b)
            for k, c in enumerate(pivots):
                coef = bb[c]
                if coef:
                    bb = [x - coef * r for x, r in zip(bb, red[k])]
            b = tuple(bb)
        self.ambient_dim = n
        self.base = b
        self.directions = dirs
        self._constraints: tuple[Mat, Vec] | None = None

    @classmethod
    def from_span(cls, base: Iterable[Scalar], vectors: Iterable[Iterable[Scalar]]) -> "AffineFlat":
        """Build a flat from a (possibly dependent) spanning set."""
        vecs = tuple(qvec(v) for v in vectors)
        nonzero = [v for v in vecs if any(v)]
        if not nonzero:
            return cls(base)
        red, _ = rref(nonzero)
        return cls(base, red)

    @property
    def dim(self) -> int:
        return len(self.directions)

    def constraint_system(self) -> tuple[Mat, Vec]:
        """Rows K and rhs c with x in flat iff K x = c."""
        if self._constraints is None:
            ker = kernel_basis(self.directions, ncols=self.ambient_dim)
            rhs = tuple(vec_dot(row, self.base) for row in ker)
            self._constraints = (ker, rhs)
        return self._constraints

    def contains_point(self, x: Iterable[Scalar]) -> bool:
        xv = qvec(x)
        if len(xv) != self.ambient_dim:
            raise ValueError("point dimension mismatch")
        rows, rhs = self.constraint_system()
        return all(vec_dot(row, xv) == c for row, c in zip(rows, rhs))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AffineFlat)
            and self.ambient_dim == other.ambient_dim
            and self.base == other.base
            and self.directions == other.directions
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.base, self.directions))

    def __repr__(self) -> str:
        return f"AffineFlat(base={[str(x) for x in self.base]}, dim={self.dim})"

    def to_obj(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "base": [str(x) for x in self.base],
            "directions": [[str(x) for x in d] for d in self.directions],
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "AffineFlat":
        flat = cls(obj["base"], obj["directions"])
        if flat.ambient_dim != obj["ambient_dim"]:
            raise ValueError("ambient_dim disagrees with coordinates")
        return flat


class FlatFamily:
    """A family of pairwise-distinct flats of one dimension in one space."""

    __slots__ = ("ambient_dim", "flat_dim", "members")

    def __init__(self, members: Iterable[AffineFlat]):
        mem = tuple(members)
        if not mem:
            raise ValueError("a family needs at least one member")
        n = mem[0].ambient_dim
        a = mem[0].dim
        if any(f.ambient_dim != n or f.dim != a for f in mem):
            raise ValueError("members must share ambient and flat dimension")
        if len(set(mem)) != len(mem):
            raise ValueError("family members must be geometrically distinct")
        self.ambient_dim = n
        self.flat_dim = a
        self.members = mem

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i: int) -> AffineFlat:
        return self.members[i]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FlatFamily)
            and self.ambient_dim == other.ambient_dim
            and self.flat_dim == other.flat_dim
            and self.members == other.members
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.flat_dim, self.members))

    def __repr__(self) -> str:
        return f"FlatFamily({len(self.members)} x dim-{self.flat_dim} in R^{self.ambient_dim})"

    def to_obj(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "flat_dim": self.flat_dim,
            "members": [f.to_obj() for f in self.members],
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "FlatFamily":
        fam = cls(AffineFlat.from_obj(o) for o in obj["members"])
        if fam.ambient_dim != obj["ambient_dim"] or fam.flat_dim != obj["flat_dim"]:
            raise ValueError("family header disagrees with members")
        return fam


def contains_point(flat: AffineFlat, x: Iterable[Scalar]) -> bool:
    return flat.contains_point(x)


def flat_intersection(f1: AffineFlat, f2: AffineFlat):
    """Exact intersection of two flats: None, a point (Vec), or an AffineFlat."""
    if f1.ambient_dim != f2.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    rows1, rhs1 = f1.constraint_system()
    rows2, rhs2 = f2.constraint_system()
    rows = rows1 + rows2
    rhs = rhs1 + rhs2
    if not rows:
        # both flats are the whole space
        return AffineFlat(f1.base, f1.directions)
    sol = solve_affine(rows, rhs)
    if sol.is_empty:
        return None
    if sol.is_point:
        return sol.point
    return AffineFlat(sol.point, sol.directions)


def directions_span(flats: Sequence[AffineFlat]) -> bool:
    """True iff the direction spaces of the flats together span R^n.

    Requires the flat dimensions to sum to the ambient dimension, in which
    case a True answer means the direction spaces form a direct sum.
    """
    if not flats:
        raise ValueError("no flats given")
    n = flats[0].ambient_dim
    if any(f.ambient_dim != n for f in flats):
        raise ValueError("ambient dimension mismatch")
    total = sum(f.dim for f in flats)
    if total != n:
        raise ValueError(f"flat dimensions sum to {total}, expected {n}")
    stacked = [d for f in flats for d in f.directions]
    return rank(stacked) == n


def apply_linear_map(matrix: Sequence[Sequence[Fraction]], flat: AffineFlat) -> AffineFlat:
    """Image of a flat under a linear map (rows of `matrix`); the image's
    dimension may drop, which from_span absorbs."""
    return AffineFlat.from_span(
        mat_vec(matrix, flat.base), [mat_vec(matrix, d) for d in flat.directions]
    )


def apply_affine_map(matrix: Sequence[Sequence[Fraction]], shift: Vec, flat: AffineFlat) -> AffineFlat:
    base = tuple(x + s for x, s in zip(mat_vec(matrix, flat.base), shift))
    return AffineFlat.from_span(base, [mat_vec(matrix, d) for d in flat.directions])


def _projection_ok(
    matrix: Mat, flats: Sequence[AffineFlat], guard_points: Sequence[Vec]
) -> bool:
    for f in flats:
        if f.dim and rank([mat_vec(matrix, d) for d in f.directions]) != f.dim:
            return False
    images = [tuple(mat_vec(matrix, p)) for p in guard_points]
    distinct_inputs = len(set(map(tuple, guard_points)))
    return len(set(images)) == distinct_inputs


def generic_projection(
    flats: Sequence[AffineFlat],
    target_dim: int,
    seed: int,
    guard_points: Sequence[Iterable[Scalar]] = (),
    *,
    initial_range: int = 1000,
    max_attempts: int = 64,
) -> tuple[Mat, list[AffineFlat]]:
    """Draw a seeded rational linear map R^n -> R^target_dim and verify it.

    The draw is rejected and retried (with the coefficient range doubling)
    until every flat's image keeps its dimension and all distinct guard
    points stay distinct.  Raises GenericityError when the retry budget is
    exhausted; widen `initial_range` in that case.
    """
    if not flats and not guard_points:
        raise ValueError("need at least one flat or guard point")
    n = flats[0].ambient_dim if flats else len(tuple(guard_points[0]))
    if any(f.ambient_dim != n for f in flats):
        raise ValueError("ambient dimension mismatch")
    if not 1 <= target_dim < n:
        raise ValueError("target_dim must be in [1, ambient_dim)")
    guards = [qvec(p) for p in guard_points]
    rng = random.Random(seed)
    span = initial_range
    for _ in range(max_attempts):
        matrix = tuple(
            tuple(Fraction(rng.randint(-span, span)) for _ in range(n))
            for _ in range(target_dim)
        )
        if _projection_ok(matrix, flats, guards):
            return matrix, [apply_linear_map(matrix, f) for f in flats]
        span *= 2
    raise GenericityError(
        f"no generic projection found in {max_attempts} attempts; "
        "widen initial_range"
    )
