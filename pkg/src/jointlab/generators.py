"""Constructors for extremal and randomized test configurations.

The grid constructions realize the classical lower bounds: axis-parallel
lines through the integer grid {0..S-1}^n, and their lift where each line
family is thickened into a family of higher-dimensional flats by giving
family i its own block of auxiliary axes (pinned at zero on every other
family's members).  Both hit their joint counts exactly, which the test
suite verifies by brute force.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Sequence

from .errors import RetryBudgetError
from .flats import AffineFlat, FlatFamily
from .linalg import rank

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _unit(n: int, i: int) -> tuple[Fraction, ...]:
    return tuple(_ONE if j == i else _ZERO for j in range(n))


def grid_lines(n: int, side: int) -> list[FlatFamily]:
    """n families of axis-parallel lines through {0..side-1}^n.

    Family i holds the side^(n-1) lines parallel to e_i, one through each
    grid point of the complementary coordinates; the joints are exactly the
    side^n grid points.
    """
    if n < 2:
        raise ValueError("need ambient dimension at least 2")
    if side < 1:
        raise ValueError("side must be positive")
    families = []
    for axis in range(n):
        members = []
        for grid in itertools.product(range(side), repeat=n - 1):
            coords = list(grid)
            coords.insert(axis, 0)
            members.append(AffineFlat(coords, [_unit(n, axis)]))
        families.append(FlatFamily(members))
    return families


def grid_flats(k: int, alphas: Sequence[int], side: int) -> list[FlatFamily]:
    """Lift of the grid-line construction to k families of alpha_i-flats.

    Coordinates split into a base block R^k plus one auxiliary block of
    dimension alpha_i - 1 per family.  Family i's member over a base-block
    grid line is that line crossed with its own auxiliary block through 0,
    so |family i| = side^(k-1) and the joints are exactly the side^k
    base-grid points.  With all alphas equal to 1 this reduces to
    grid_lines(k, side) verbatim.
    """
    if k < 2:
        raise ValueError("need at least two families")
    if len(alphas) != k:
        raise ValueError("need one flat dimension per family")
    if any(a < 1 for a in alphas):
        raise ValueError("flat dimensions must be positive")
    if side < 1:
        raise ValueError("side must be positive")
    n = sum(alphas)
    offsets = []
    off = k
    for a in alphas:
        offsets.append(off)
        off += a - 1
    families = []
    for i in range(k):
        aux = [_unit(n, offsets[i] + t) for t in range(alphas[i] - 1)]
        members = []
        for grid in itertools.product(range(side), repeat=k - 1):
            coords = list(grid)
            coords.insert(i, 0)
            coords.extend([0] * (n - k))
            members.append(AffineFlat(coords, [_unit(n, i)] + aux))
        families.append(FlatFamily(members))
    return families


def random_flats(
    n: int, alpha: int, count: int, coord_bound: int, seed: int
) -> FlatFamily:
    """A seeded family of `count` distinct alpha-flats with integer data in
    [-coord_bound, coord_bound]."""
    if not 1 <= alpha < n:
        raise ValueError("need 1 <= alpha < ambient dimension")
    if count < 1:
        raise ValueError("count must be positive")
    if coord_bound < 1:
        raise ValueError("coord_bound must be positive")
    rng = random.Random(seed)
    members: list[AffineFlat] = []
    seen: set[AffineFlat] = set()
    budget = 200 + 100 * count
    while len(members) < count and budget:
        budget -= 1
        base = [rng.randint(-coord_bound, coord_bound) for _ in range(n)]
        dirs = [
            [rng.randint(-coord_bound, coord_bound) for _ in range(n)]
            for _ in range(alpha)
        ]
        if rank([tuple(Fraction(x) for x in d) for d in dirs]) != alpha:
            continue
        flat = AffineFlat(base, dirs)
        if flat in seen:
            continue
        seen.add(flat)
        members.append(flat)
    if len(members) < count:
        raise RetryBudgetError(
            f"could not draw {count} distinct flats within the retry budget"
        )
    return FlatFamily(members)


def bush_config(
    n: int, multiplicities: Sequence[int], seed: int
) -> list[FlatFamily]:
    """n line families concurrent at the origin, family i of size m_i, with
    every cross-family n-tuple verified to span R^n (redrawn otherwise).

    The single joint at the origin then has N_i = m_i by construction.
    """
    if n < 2:
        raise ValueError("need ambient dimension at least 2")
    if len(multiplicities) != n:
        raise ValueError("need one multiplicity per family")
    if any(m < 1 for m in multiplicities):
        raise ValueError("multiplicities must be positive")
    rng = random.Random(seed)
    origin = [0] * n
    for _ in range(500):
        families = []
        for m in multiplicities:
            members: list[AffineFlat] = []
            seen: set[AffineFlat] = set()
            stuck = False
            for _ in range(50 * m):
                d = [rng.randint(-9, 9) for _ in range(n)]
                if not any(d):
                    continue
                line = AffineFlat(origin, [d])
                if line in seen:
                    continue
                seen.add(line)
                members.append(line)
                if len(members) == m:
                    break
            else:
                stuck = True
            if stuck:
                break
            families.append(FlatFamily(members))
        if len(families) != n:
            continue
        all_span = all(
            rank([fam[j].directions[0] for fam, j in zip(families, combo)]) == n
            for combo in itertools.product(*(range(m) for m in multiplicities))
        )
        if all_span:
            return families
    raise RetryBudgetError("no spanning bush found within the retry budget")
