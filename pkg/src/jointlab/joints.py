"""Joint detection for families of affine flats, multiplicities, and the
multiplicity-weighted joint sum.

A joint of families S_1..S_k (flat dimensions summing to the ambient n) is a
point contained in one member per family whose direction spaces together
span R^n.  Because the dimensions sum to n, the direction spaces of such a
tuple form a direct sum, so the tuple's common intersection is exactly one
point; that makes the count exact and enumeration-order independent.

Two counting paths are provided and kept interchangeable by tests: the
baseline full product scan over all tuples, and an accelerated path that
generates candidate points as pairwise intersections of the two smallest
families and verifies each candidate.  Every joint is found by the
accelerated path: the witness tuple's own pair from those two families
intersects in exactly the joint.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm, prod
from typing import Iterable, NamedTuple, Sequence

from .errors import InvariantViolation
from .flats import AffineFlat, FlatFamily, flat_intersection
from .linalg import Vec, parse_vec, rank, solve_affine

_METHODS = ("pairwise", "product")


@dataclass(frozen=True)
class JointRecord:
    """One joint: exact location, per-family multiplicities, witness tuples.

    ``multiplicities[i]`` counts the family-i members through the location
    that appear in at least one spanning witness tuple (or simply all
    members through it, when built with count_all_members=True).
    """

    location: Vec
    multiplicities: tuple[int, ...]
    witnesses: tuple[tuple[int, ...], ...]


@dataclass
class JointSet:
    """All joints of a family collection, keyed by exact location."""

    ambient_dim: int
    n_families: int
    records: dict[Vec, JointRecord]

    def __len__(self) -> int:
        return len(self.records)

    @property
    def count(self) -> int:
        return len(self.records)

    def sorted_records(self) -> list[JointRecord]:
        return [self.records[loc] for loc in sorted(self.records)]

    def locations(self) -> list[Vec]:
        return sorted(self.records)

    def to_obj(self) -> list[dict]:
        out = []
        for rec in self.sorted_records():
            out.append(
                {
                    "location": [str(x) for x in rec.location],
                    "multiplicities": list(rec.multiplicities),
                    "witness": [[i, j] for i, j in enumerate(rec.witnesses[0])],
                }
            )
        return out

    @classmethod
    def from_obj(cls, obj: Iterable[dict], ambient_dim: int | None = None) -> "JointSet":
        records: dict[Vec, JointRecord] = {}
        n_families = 0
        for item in obj:
            loc = parse_vec(item["location"])
            mults = tuple(item["multiplicities"])
            witness = tuple(j for _, j in item["witness"])
            records[loc] = JointRecord(loc, mults, (witness,))
            n_families = len(mults)
            ambient_dim = len(loc)
        return cls(ambient_dim or 0, n_families, records)


def _validate_families(families: Sequence[FlatFamily]) -> int:
    if len(families) < 2:
        raise ValueError("need at least two families")
    n = families[0].ambient_dim
    if any(f.ambient_dim != n for f in families):
        raise ValueError("families must share the ambient dimension")
    total = sum(f.flat_dim for f in families)
    if total != n:
        raise ValueError(f"flat dimensions sum to {total}, expected {n}")
    if any(f.flat_dim < 1 for f in families):
        raise ValueError("families of 0-dimensional flats are not accepted")
    if any(f.flat_dim >= n for f in families):
        raise ValueError("every flat dimension must be below the ambient dimension")
    return n


class _MemberChecker:
    """Integer-scaled membership tests for one flat (hot-loop helper)."""

    __slots__ = ("rows", "rhs", "rhs_int", "flat")

    def __init__(self, flat: AffineFlat):
        self.flat = flat
        rows, rhs = flat.constraint_system()
        int_rows = []
        int_rhs: list[int] | None = []
        frac_rhs = []
        for row, c in zip(rows, rhs):
            m = lcm(*(x.denominator for x in row))
            int_rows.append(tuple(x.numerator * (m // x.denominator) for x in row))
            scaled = c * m
            frac_rhs.append(scaled)
            if int_rhs is not None and scaled.denominator == 1:
                int_rhs.append(scaled.numerator)
            else:
                int_rhs = None
        self.rows = tuple(int_rows)
        self.rhs = tuple(frac_rhs)
        self.rhs_int = tuple(int_rhs) if int_rhs is not None else None

    def contains(self, x: Vec, x_ints: tuple[int, ...] | None) -> bool:
        if x_ints is not None and self.rhs_int is not None:
            for row, c in zip(self.rows, self.rhs_int):
                if sum(map(int.__mul__, row, x_ints)) != c:
                    return False
            return True
        for row, c in zip(self.rows, self.rhs):
            if sum(a * b for a, b in zip(row, x)) != c:
                return False
        return True


def _as_ints(x: Vec) -> tuple[int, ...] | None:
    if all(c.denominator == 1 for c in x):
        return tuple(c.numerator for c in x)
    return None


def _spanning(direction_stacks: Sequence[tuple[Vec, ...]], n: int) -> bool:
    stacked = [d for dirs in direction_stacks for d in dirs]
    return rank(stacked) == n


def _tuple_common_point(flats: Sequence[AffineFlat]) -> Vec | None:
    """Common intersection of a spanning tuple: a point or nothing."""
    rows: list[Vec] = []
    rhs: list[Fraction] = []
    for f in flats:
        r, c = f.constraint_system()
        rows.extend(r)
        rhs.extend(c)
    sol = solve_affine(rows, rhs)
    if sol.is_empty:
        return None
    if not sol.is_point:
        raise InvariantViolation(
            "spanning tuple with a positive-dimensional intersection"
        )
    return sol.point


def _records_from_points(
    families: Sequence[FlatFamily],
    points: dict[Vec, list[tuple[int, ...]]],
    checkers: Sequence[Sequence[_MemberChecker]],
    count_all_members: bool,
) -> dict[Vec, JointRecord]:
    records: dict[Vec, JointRecord] = {}
    for loc, witnesses in points.items():
        witnesses = sorted(witnesses)
        if count_all_members:
            x_ints = _as_ints(loc)
            mults = tuple(
                sum(1 for chk in fam_checkers if chk.contains(loc, x_ints))
                for fam_checkers in checkers
            )
        else:
            mults = tuple(
                len({w[i] for w in witnesses}) for i in range(len(families))
            )
        records[loc] = JointRecord(loc, mults, tuple(witnesses))
    return records


def _find_joints_product(
    families: Sequence[FlatFamily],
    checkers: Sequence[Sequence[_MemberChecker]],
    n: int,
    count_all_members: bool,
) -> dict[Vec, JointRecord]:
    dirs = [[f.directions for f in fam] for fam in families]
    points: dict[Vec, list[tuple[int, ...]]] = {}
    for combo in itertools.product(*(range(len(f)) for f in families)):
        if not _spanning([dirs[i][j] for i, j in enumerate(combo)], n):
            continue
        loc = _tuple_common_point([families[i][j] for i, j in enumerate(combo)])
        if loc is not None:
            points.setdefault(loc, []).append(combo)
    return _records_from_points(families, points, checkers, count_all_members)


def _candidate_points(
    families: Sequence[FlatFamily], first: int, second: int
) -> dict[Vec, None]:
    candidates: dict[Vec, None] = {}
    for a in families[first]:
        for b in families[second]:
            hit = flat_intersection(a, b)
            if isinstance(hit, tuple):
                candidates[hit] = None
    return candidates


def _find_joints_pairwise(
    families: Sequence[FlatFamily],
    checkers: Sequence[Sequence[_MemberChecker]],
    n: int,
    count_all_members: bool,
) -> dict[Vec, JointRecord]:
    order = sorted(range(len(families)), key=lambda i: (len(families[i]), i))
    first, second = order[0], order[1]
    dirs = [[f.directions for f in fam] for fam in families]
    points: dict[Vec, list[tuple[int, ...]]] = {}
    for loc in _candidate_points(families, first, second):
        x_ints = _as_ints(loc)
        through = []
        for fam_checkers in checkers:
            members = [j for j, chk in enumerate(fam_checkers) if chk.contains(loc, x_ints)]
            if not members:
                break
            through.append(members)
        if len(through) != len(families):
            continue
        witnesses = [
            combo
            for combo in itertools.product(*through)
            if _spanning([dirs[i][j] for i, j in enumerate(combo)], n)
        ]
        if witnesses:
            points[loc] = witnesses
    return _records_from_points(families, points, checkers, count_all_members)


def find_joints(
    families: Sequence[FlatFamily],
    *,
    count_all_members: bool = False,
    method: str = "pairwise",
) -> JointSet:
    """Enumerate all joints of the given families.

    method="product" is the baseline full tuple scan; method="pairwise" (the
    default) generates candidate points from the two smallest families and
    verifies them.  Both produce identical JointSets, which the test suite
    enforces on every instance it can afford to brute-force.
    """
    n = _validate_families(families)
    if method not in _METHODS:
        raise ValueError(f"unknown method {method!r}")
    checkers = [[_MemberChecker(f) for f in fam] for fam in families]
    if method == "product":
        records = _find_joints_product(families, checkers, n, count_all_members)
    else:
        records = _find_joints_pairwise(families, checkers, n, count_all_members)
    return JointSet(n, len(families), records)


def find_joints_same_set(lines: FlatFamily, n: int, **kwargs) -> JointSet:
    """Joints of a single line set: the multi-family counter applied to n
    copies of the family."""
    if lines.flat_dim != 1:
        raise ValueError("same-set joints are defined for families of lines")
    if lines.ambient_dim != n:
        raise ValueError("ambient dimension mismatch")
    return find_joints([lines] * n, **kwargs)


class CarberySum(NamedTuple):
    value: float
    error_bound: float


def carbery_sum(joints: JointSet, n: int) -> CarberySum:
    """Sum over joints of (prod_i N_i(x))^(1/(n-1)).

    The per-joint multiplicity product is computed exactly as an integer;
    only the (n-1)-th root and the summation are floating point.  The
    reported absolute error bound is records * 2^-45 relative.
    """
    if n < 2:
        raise ValueError("need ambient dimension at least 2")
    exponent = 1.0 / (n - 1)
    total = 0.0
    for rec in joints.records.values():
        product = prod(rec.multiplicities)
        total += 1.0 if product == 1 else float(product) ** exponent
    bound = abs(total) * len(joints.records) * 2.0**-45
    return CarberySum(total, bound)


class TransversalityReport(NamedTuple):
    transversal: bool
    violation: tuple[int, ...] | None


def _line_families(families: Sequence[FlatFamily]) -> int:
    n = _validate_families(families)
    if len(families) != n or any(f.flat_dim != 1 for f in families):
        raise ValueError("transversality is defined for n line families in R^n")
    return n


def is_transversal(
    families: Sequence[FlatFamily], *, method: str = "pairwise"
) -> TransversalityReport:
    """Check that every concurrent cross-family line tuple spans R^n.

    Returns a violating tuple of member indices when the answer is False.
    """
    n = _line_families(families)
    if method not in _METHODS:
        raise ValueError(f"unknown method {method!r}")
    dirs = [[f.directions for f in fam] for fam in families]
    if method == "product":
        for combo in itertools.product(*(range(len(f)) for f in families)):
            if _spanning([dirs[i][j] for i, j in enumerate(combo)], n):
                continue
            flats = [families[i][j] for i, j in enumerate(combo)]
            rows: list[Vec] = []
            rhs: list[Fraction] = []
            for f in flats:
                r, c = f.constraint_system()
                rows.extend(r)
                rhs.extend(c)
            if not solve_affine(rows, rhs).is_empty:
                return TransversalityReport(False, combo)
        return TransversalityReport(True, None)

    # A non-spanning concurrent tuple either contains two distinct lines
    # (their intersection point turns up among the pairwise candidates) or
    # consists of one line repeated through every family.
    shared = set(families[0].members)
    for fam in families[1:]:
        shared &= set(fam.members)
    if shared:
        line = sorted(shared, key=lambda f: (f.base, f.directions))[0]
        combo = tuple(fam.members.index(line) for fam in families)
        return TransversalityReport(False, combo)
    checkers = [[_MemberChecker(f) for f in fam] for fam in families]
    candidates: dict[Vec, None] = {}
    for i, j in itertools.combinations(range(len(families)), 2):
        for a in families[i]:
            for b in families[j]:
                hit = flat_intersection(a, b)
                if isinstance(hit, tuple):
                    candidates[hit] = None
    for loc in sorted(candidates):
        x_ints = _as_ints(loc)
        through = []
        for fam_checkers in checkers:
            members = [k for k, chk in enumerate(fam_checkers) if chk.contains(loc, x_ints)]
            if not members:
                break
            through.append(members)
        if len(through) != len(families):
            continue
        for combo in itertools.product(*through):
            if not _spanning([dirs[i][j] for i, j in enumerate(combo)], n):
                return TransversalityReport(False, combo)
    return TransversalityReport(True, None)
