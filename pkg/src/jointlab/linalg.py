"""Exact rational linear algebra: vectors, matrices, rank, and affine solves.

Everything here computes over :class:`fractions.Fraction`; nothing ever
rounds.  Scalars are kept canonical for free (``Fraction`` always stores
lowest terms with a positive denominator), so equality of values is
structural equality.

The elimination core is fraction-free: rows are scaled to integers once and
reduced Bareiss-style, which keeps intermediate entries as (bounded) minors
instead of letting numerators and denominators snowball.  A Jordan phase on
the small echelon result then produces the unique reduced row echelon form,
which is what every canonicalization in the package hangs off.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Union

Scalar = Union[int, str, Fraction]
Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def q(value: Scalar) -> Fraction:
    """Coerce an int, a ``"p/q"`` string, or a Fraction to a Fraction.

    Floats are rejected on purpose: every geometric predicate downstream is
    equality-sensitive, and a float snuck in here would silently poison it.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("refusing to coerce a float; pass an int, a 'p/q' string or a Fraction")
    return Fraction(value)


def qvec(coords: Iterable[Scalar]) -> Vec:
    return tuple(q(x) for x in coords)


def qmat(rows: Iterable[Iterable[Scalar]]) -> Mat:
    out = tuple(qvec(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("matrix rows have inconsistent lengths")
    return out


def format_q(x: Fraction) -> str:
    """Serialize as ``"p/q"``, omitting ``/q`` when the denominator is 1."""
    return str(x)


def parse_q(s: str) -> Fraction:
    return Fraction(s)


def format_vec(v: Sequence[Fraction]) -> list[str]:
    return [str(x) for x in v]


def parse_vec(items: Iterable[str]) -> Vec:
    return tuple(Fraction(s) for s in items)


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_scale(c: Fraction, v: Vec) -> Vec:
    return tuple(c * x for x in v)


def vec_dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), _ZERO)


def mat_vec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vec:
    return tuple(vec_dot(row, v) for row in m)


def transpose(m: Sequence[Sequence[Fraction]]) -> Mat:
    return tuple(tuple(col) for col in zip(*m)) if m else ()


def identity(n: int) -> Mat:
    return tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n))


def _int_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Scale every row by the lcm of its denominators; row scaling preserves
    rank, row space and (for augmented rows) solution sets."""
    out = []
    for row in rows:
        m = lcm(*(x.denominator for x in row)) if row else 1
        out.append([x.numerator * (m // x.denominator) for x in row])
    return out


def _exact_div(a: int, b: int) -> int:
    quo, rem = divmod(a, b)
    if rem:
        raise ArithmeticError("inexact division in fraction-free elimination")
    return quo


def _echelon_int(m: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Bareiss elimination with column skipping.

    Returns the echelon rows and the pivot column indices.  Every division is
    exact (entries stay minors of the input), which is asserted.
    """
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if m[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        mrc = m[r][c]
        row_r = m[r]
        for i in range(r + 1, nr):
            row_i = m[i]
            mic = row_i[c]
            for j in range(c + 1, nc):
                row_i[j] = _exact_div(mrc * row_i[j] - mic * row_r[j], prev)
            row_i[c] = 0
        prev = mrc
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return m, pivots


def rank(mat: Sequence[Sequence[Fraction]]) -> int:
    """Exact rank over the rationals (fraction-free elimination)."""
    if not mat or not mat[0]:
        return 0
    _, pivots = _echelon_int(_int_rows(mat))
    return len(pivots)


def rref(mat: Sequence[Sequence[Fraction]]) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form: returns (pivot rows only, pivot columns).

    The RREF is the unique canonical basis of the row space, so it backs
    every canonical form in the package.
    """
    if not mat or not mat[0]:
        return (), ()
    nc = len(mat[0])
    ech, pivots = _echelon_int(_int_rows(mat))
    rows = [[Fraction(x) for x in ech[k]] for k in range(len(pivots))]
    for k in reversed(range(len(pivots))):
        c = pivots[k]
        piv = rows[k][c]
        rows[k] = [x / piv for x in rows[k]]
        for i in range(k):
            f = rows[i][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[k])]
    return tuple(tuple(r) for r in rows), tuple(pivots)


def kernel_basis(mat: Sequence[Sequence[Fraction]], ncols: int | None = None) -> tuple[Vec, ...]:
    """Canonical basis of ``{x : mat @ x = 0}`` (rows act by dot product).

    With no rows the kernel is the whole space; ``ncols`` must be supplied
    for that case.
    """
    if not mat:
        if ncols is None:
            raise ValueError("ncols required for a kernel of an empty matrix")
        return identity(ncols)
    nc = len(mat[0])
    red, pivots = rref(mat)
    pivset = set(pivots)
    basis = []
    for free in range(nc):
        if free in pivset:
            continue
        v = [_ZERO] * nc
        v[free] = _ONE
        for k, c in enumerate(pivots):
            v[c] = -red[k][free]
        basis.append(tuple(v))
    return tuple(basis)


@dataclass(frozen=True)
class SolutionSet:
    """Exact description of the solution set of ``A x = b``.

    kind is one of ``"empty"``, ``"point"`` or ``"flat"``; a flat carries a
    particular solution in ``point`` and a canonical kernel basis in
    ``directions``.
    """

    kind: str
    point: Vec | None = None
    directions: tuple[Vec, ...] = ()

    @property
    def is_empty(self) -> bool:
        return self.kind == "empty"

    @property
    def is_point(self) -> bool:
        return self.kind == "point"

    @property
    def dim(self) -> int:
        return len(self.directions)


def solve_affine(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> SolutionSet:
    """Solve ``A x = b`` exactly and classify the solution set.

    Unique solutions come back as a point; positive-dimensional sets as a
    particular point (free variables at zero) plus the canonical kernel
    basis.  Emptiness is a normal return, not an error.
    """
    if len(a) != len(b):
        raise ValueError("A needs as many rows as b has coordinates")
    if not a:
        raise ValueError("empty system has no declared number of unknowns")
    nc = len(a[0])
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, pivots = rref(aug)
    if pivots and pivots[-1] == nc:
        return SolutionSet("empty")
    point = [_ZERO] * nc
    for k, c in enumerate(pivots):
        point[c] = red[k][nc]
    pivset = set(pivots)
    basis = []
    for free in range(nc):
        if free in pivset:
            continue
        v = [_ZERO] * nc
        v[free] = _ONE
        for k, c in enumerate(pivots):
            v[c] = -red[k][free]
        basis.append(tuple(v))
    if basis:
        return SolutionSet("flat", tuple(point), tuple(basis))
    return SolutionSet("point", tuple(point))
