"""Sparse multivariate and dense univariate polynomials over the rationals.

``MultiPoly`` is the carrier for partitioning polynomials: a map from
exponent tuples to nonzero Fraction coefficients, with graded-lex term order
fixed as the single canonical serialization (ascending total degree, ties
broken by descending lexicographic exponent order, so for two variables the
order reads x, y, x^2, xy, y^2, ...).

``UniPoly`` (dense, ascending coefficients) carries restrictions of a
multivariate polynomial to a line, and the Sturm machinery counts its
distinct real roots exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .linalg import Scalar, Vec, q

_ZERO = Fraction(0)


def _monomial_key(exponents: tuple[int, ...]) -> tuple:
    return (sum(exponents), tuple(-e for e in exponents))


def _compositions(total: int, parts: int):
    """All exponent tuples of `parts` nonnegative ints summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def graded_monomials(n_vars: int, max_degree: int) -> list[tuple[int, ...]]:
    """Exponent tuples of total degree 1..max_degree in canonical order."""
    out: list[tuple[int, ...]] = []
    for deg in range(1, max_degree + 1):
        out.extend(sorted(_compositions(deg, n_vars), reverse=True))
    return out


def monomial_space_dim(n_vars: int, degree: int) -> int:
    """Number of monomials of total degree 1..degree, i.e. C(n+d, d) - 1."""
    return comb(n_vars + degree, degree) - 1


class MultiPoly:
    """Sparse multivariate polynomial with rational coefficients.

    Treated as immutable: the term map is normalized at construction (zero
    coefficients dropped) and never mutated afterwards.
    """

    __slots__ = ("n_vars", "terms")

    def __init__(self, n_vars: int, terms: Mapping[tuple[int, ...], Scalar] | None = None):
        if n_vars < 1:
            raise ValueError("n_vars must be positive")
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n_vars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent tuple {exps} for {n_vars} variables")
            c = q(coeff)
            if c:
                clean[exps] = c
        self.n_vars = n_vars
        self.terms = clean

    @classmethod
    def zero(cls, n_vars: int) -> "MultiPoly":
        return cls(n_vars, {})

    @classmethod
    def constant(cls, n_vars: int, value: Scalar) -> "MultiPoly":
        return cls(n_vars, {(0,) * n_vars: value})

    @classmethod
    def variable(cls, n_vars: int, index: int) -> "MultiPoly":
        exps = tuple(1 if i == index else 0 for i in range(n_vars))
        return cls(n_vars, {exps: 1})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Max total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: _monomial_key(kv[0]))

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        if len(point) != self.n_vars:
            raise ValueError("point dimension mismatch")
        total = _ZERO
        for exps, coeff in self.terms.items():
            v = coeff
            for x, e in zip(point, exps):
                if e:
                    v *= x**e
            total += v
        return total

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        if self.n_vars != other.n_vars:
            raise ValueError("variable-count mismatch")
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            out[exps] = out.get(exps, _ZERO) + coeff
        return MultiPoly(self.n_vars, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.n_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly | Scalar") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = q(other)
            return MultiPoly(self.n_vars, {e: c * v for e, v in self.terms.items()})
        if self.n_vars != other.n_vars:
            raise ValueError("variable-count mismatch")
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, _ZERO) + c1 * c2
        return MultiPoly(self.n_vars, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.n_vars == other.n_vars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.n_vars, tuple(self.sorted_terms())))

    def __repr__(self) -> str:
        if self.is_zero:
            return "MultiPoly(0)"
        parts = []
        for exps, coeff in self.sorted_terms():
            mono = "*".join(f"x{i}^{e}" if e > 1 else f"x{i}" for i, e in enumerate(exps) if e)
            parts.append(f"{coeff}" + (f"*{mono}" if mono else ""))
        return "MultiPoly(" + " + ".join(parts) + ")"

    def to_obj(self) -> list[dict]:
        """Canonical serialization: graded-lex list of {exponents, coeff}."""
        return [
            {"exponents": list(exps), "coeff": str(coeff)}
            for exps, coeff in self.sorted_terms()
        ]

    @classmethod
    def from_obj(cls, obj: Iterable[dict], n_vars: int) -> "MultiPoly":
        return cls(n_vars, {tuple(t["exponents"]): Fraction(t["coeff"]) for t in obj})


class UniPoly:
    """Dense univariate polynomial, coefficients ascending by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar]):
        cs = [q(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def evaluate(self, t: Fraction) -> Fraction:
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly | Scalar") -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = q(other)
            return UniPoly([c * x for x in self.coeffs])
        if self.is_zero or other.is_zero:
            return UniPoly(())
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        div = other.coeffs
        dq = len(rem) - len(div)
        if dq < 0:
            return UniPoly(()), UniPoly(rem)
        quo = [_ZERO] * (dq + 1)
        lead = div[-1]
        for k in range(dq, -1, -1):
            c = rem[k + len(div) - 1] / lead
            quo[k] = c
            if c:
                for i, d in enumerate(div):
                    rem[k + i] -= c * d
        return UniPoly(quo), UniPoly(rem)

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero:
            return "UniPoly(0)"
        parts = [f"{c}*t^{i}" if i else f"{c}" for i, c in enumerate(self.coeffs) if c]
        return "UniPoly(" + " + ".join(parts) + ")"

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        return self * (1 / self.leading())

    def gcd(self, other: "UniPoly") -> "UniPoly":
        """Monic polynomial gcd by the Euclidean algorithm."""
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def square_free_part(self) -> "UniPoly":
        """Divide out repeated factors: self / gcd(self, self')."""
        if self.degree() <= 0:
            return self
        g = self.gcd(self.derivative())
        if g.degree() == 0:
            return self
        quo, rem = divmod(self, g)
        if not rem.is_zero:
            raise ArithmeticError("square-free division left a remainder")
        return quo


def restrict_to_line(p: MultiPoly, base: Vec, direction: Vec) -> UniPoly:
    """Exact restriction t -> P(base + t*direction); degree <= deg(P)."""
    if len(base) != p.n_vars or len(direction) != p.n_vars:
        raise ValueError("dimension mismatch")
    if not any(direction):
        raise ValueError("direction must be nonzero")
    # per-variable powers of the linear factor (b_i + d_i t), cached by need
    caches: list[list[tuple[Fraction, ...]]] = [
        [(Fraction(1),)] for _ in range(p.n_vars)
    ]

    def var_power(i: int, e: int) -> tuple[Fraction, ...]:
        cache = caches[i]
        while len(cache) <= e:
            prev = cache[-1]
            b, d = base[i], direction[i]
            nxt = [_ZERO] * (len(prev) + 1)
            for k, c in enumerate(prev):
                if c:
                    nxt[k] += c * b
                    nxt[k + 1] += c * d
            cache.append(tuple(nxt))
        return cache[e]

    acc = UniPoly(())
    for exps, coeff in p.terms.items():
        term = UniPoly((coeff,))
        for i, e in enumerate(exps):
            if e:
                term = term * UniPoly(var_power(i, e))
        acc = acc + term
    return acc


def _sign_variations(values: Iterable[Fraction]) -> int:
    count = 0
    last = 0
    for v in values:
        if not v:
            continue
        s = 1 if v > 0 else -1
        if last and s != last:
            count += 1
        last = s
    return count


def sturm_chain(p: UniPoly) -> list[UniPoly]:
    """Sturm remainder chain of p (callers pass the square-free part)."""
    chain = [p, p.derivative()]
    while not chain[-1].is_zero:
        nxt = -(chain[-2] % chain[-1])
        if nxt.is_zero:
            break
        chain.append(nxt)
    return chain


def _variations_at(chain: Sequence[UniPoly], t: Fraction) -> int:
    return _sign_variations(f.evaluate(t) for f in chain)


def _variations_at_infinity(chain: Sequence[UniPoly], positive: bool) -> int:
    signs = []
    for f in chain:
        s = f.leading()
        if not positive and f.degree() % 2 == 1:
            s = -s
        signs.append(s)
    return _sign_variations(signs)


def sturm_root_count(p: UniPoly, a: Fraction | None, b: Fraction | None) -> int:
    """Exact number of distinct real roots of p in (a, b].

    ``None`` endpoints stand for -inf / +inf.  Multiplicities are collapsed
    by reducing to the square-free part first.  Raises on the zero
    polynomial (its root set is not finite).
    """
    if p.is_zero:
        raise ValueError("root counting is undefined for the zero polynomial")
    if a is not None and b is not None and a >= b:
        raise ValueError("need a < b")
    s = p.square_free_part()
    if s.degree() <= 0:
        return 0
    chain = sturm_chain(s)
    va = _variations_at(chain, a) if a is not None else _variations_at_infinity(chain, False)
    vb = _variations_at(chain, b) if b is not None else _variations_at_infinity(chain, True)
    return va - vb
