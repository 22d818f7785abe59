"""Exact rational linear algebra and the two convex subroutines.

Vectors are plain tuples of :class:`fractions.Fraction`.  Characters and
cocharacters share the representation; the canonical pairing between them is
the coordinate dot product, and a positive definite :class:`GramForm` on
cocharacter space transports characters to cocharacters.

Everything here is exact.  Floats are rejected at the boundary.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceeded, InfeasibleError, ZeroConstraintError

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class Limits:
    """Enumeration budgets; tweak through :func:`limits`."""

    max_subsets: int = 200_000
    max_weyl_order: int = 10_000
    max_depth: int = 8


LIMITS = Limits()


@contextlib.contextmanager
def limits(**overrides: int) -> Iterator[Limits]:
    """Temporarily override entries of the global :data:`LIMITS`."""
    saved = {k: getattr(LIMITS, k) for k in overrides}
    for k, v in overrides.items():
        if not hasattr(LIMITS, k):
            raise AttributeError(k)
        setattr(LIMITS, k, v)
    try:
        yield LIMITS
    finally:
        for k, v in saved.items():
            setattr(LIMITS, k, v)


# --------------------------------------------------------------------------
# coercion and vector helpers
# --------------------------------------------------------------------------


def rational(x) -> Fraction:
    """Coerce ``x`` to a Fraction; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing non-exact value {x!r}")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to an exact rational")


def vec(*xs) -> Vector:
    """``vec(1, "1/2")`` or ``vec([1, 2])`` -> tuple of Fractions."""
    if len(xs) == 1 and not isinstance(xs[0], (int, str, Fraction)):
        xs = tuple(xs[0])
    return tuple(rational(x) for x in xs)


def zero(n: int) -> Vector:
    return (ZERO,) * n


def is_zero(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    _check_len(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    _check_len(u, v)
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence[Fraction]) -> Vector:
    c = rational(c)
    return tuple(c * a for a in v)


def neg(v: Sequence[Fraction]) -> Vector:
    return tuple(-a for a in v)


def _check_len(u: Sequence, v: Sequence) -> None:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} != {len(v)}")


def pairing(chi: Sequence[Fraction], nu: Sequence[Fraction]) -> Fraction:
    """Canonical pairing <chi, nu> between a character and a cocharacter."""
    _check_len(chi, nu)
    return sum((a * b for a, b in zip(chi, nu)), ZERO)


def mat_vec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return tuple(pairing(row, v) for row in m)


def transpose(m: Sequence[Sequence[Fraction]]) -> Matrix:
    return tuple(tuple(col) for col in zip(*m))


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(pairing(row, col) for col in bt) for row in a)


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def primitive_integral(v: Sequence[Fraction]) -> Vector:
    """Positive rational multiple of ``v`` with coprime integer entries."""
    if is_zero(v):
        return tuple(v)
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for k in ints:
        g = gcd(g, k)
    return tuple(Fraction(k // g) for k in ints)


# --------------------------------------------------------------------------
# Gaussian elimination
# --------------------------------------------------------------------------


def row_reduce(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(row_reduce(rows)[1])


def solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> Vector | None:
    """Unique solution of the square system ``a x = b``, or None if singular."""
    n = len(a)
    aug = [list(row) + [rational(bi)] for row, bi in zip(a, b)]
    red, piv = row_reduce(aug)
    if piv != list(range(n)):
        return None
    return tuple(red[i][n] for i in range(n))


def solve_in_span(basis: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> Vector | None:
    """Coefficients c with sum c_i basis_i = target (basis independent), else None."""
    k = len(basis)
    if k == 0:
        return () if is_zero(target) else None
    cols = transpose(basis)  # n rows, k cols
    aug = [list(row) + [t] for row, t in zip(cols, target)]
    red, piv = row_reduce(aug)
    if k in piv:
        return None
    if len(piv) < k:
        raise ValueError("basis vectors are linearly dependent")
    return tuple(red[i][k] for i in range(k))


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Vector]:
    """Basis of {x : rows . x = 0}."""
    if not rows:
        return [tuple(ONE if i == j else ZERO for i in range(ncols)) for j in range(ncols)]
    red, piv = row_reduce(rows)
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for i, p in enumerate(piv):
            x[p] = -red[i][f]
        out.append(tuple(x))
    return out


def inverse(m: Sequence[Sequence[Fraction]]) -> Matrix:
    n = len(m)
    aug = [list(row) + list(e) for row, e in zip(m, identity(n))]
    red, piv = row_reduce(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(red[i][n:]) for i in range(n))


def leading_minors(m: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    out = []
    for k in range(1, len(m) + 1):
        out.append(_det([row[:k] for row in m[:k]]))
    return out


def _det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    a = [list(r) for r in m]
    n = len(a)
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


# --------------------------------------------------------------------------
# Gram form
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GramForm:
    """Positive definite rational form on cocharacter space."""

    matrix: Matrix

    def __post_init__(self) -> None:
        m = tuple(tuple(rational(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        n = len(m)
        if any(len(row) != n for row in m):
            raise ValueError("Gram matrix must be square")
        if any(m[i][j] != m[j][i] for i in range(n) for j in range(n)):
            raise ValueError("Gram matrix must be symmetric")
        if any(d <= 0 for d in leading_minors(m)):
            raise ValueError("Gram matrix must be positive definite")

    @classmethod
    def identity(cls, n: int) -> GramForm:
        return cls(identity(n))

    @classmethod
    def block_diagonal(cls, blocks: Sequence[GramForm]) -> GramForm:
        n = sum(b.rank for b in blocks)
        rows = []
        off = 0
        for b in blocks:
            for row in b.matrix:
                rows.append((ZERO,) * off + row + (ZERO,) * (n - off - b.rank))
            off += b.rank
        return cls(tuple(rows))

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @cached_property
    def inverse(self) -> Matrix:
        return inverse(self.matrix) if self.rank else ()

    def scaled(self, c) -> GramForm:
        c = rational(c)
        if c <= 0:
            raise ValueError("scale must be positive")
        return GramForm(tuple(tuple(c * x for x in row) for row in self.matrix))

    def inner(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        """(u, v) for cocharacters u, v."""
        return pairing(u, mat_vec(self.matrix, v))

    def norm2(self, u: Sequence[Fraction]) -> Fraction:
        return self.inner(u, u)

    def transport(self, chi: Sequence[Fraction]) -> Vector:
        """iota(chi): the cocharacter with (iota(chi), nu) = <chi, nu> for every nu."""
        if len(chi) != self.rank:
            raise ValueError(f"length mismatch: {len(chi)} != {self.rank}")
        return mat_vec(self.inverse, chi)

    def restrict(self, basis: Sequence[Sequence[Fraction]]) -> GramForm:
        """Induced form on the span of ``basis`` (coordinates w.r.t. that basis)."""
        return GramForm(tuple(tuple(self.inner(u, v) for v in basis) for u in basis))


def transport(chi: Sequence[Fraction], gram: GramForm) -> Vector:
    return gram.transport(chi)


# --------------------------------------------------------------------------
# min-norm point under pairing constraints
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class MinNormCertificate:
    """Exact KKT certificate for ``min (mu, mu)`` s.t. ``<chi, mu> >= 1``.

    ``active_set`` indexes ``constraints``; ``multipliers`` is aligned with it.
    """

    point: Vector
    constraints: tuple[Vector, ...]
    active_set: tuple[int, ...]
    multipliers: tuple[Fraction, ...]
    gram: GramForm = field(repr=False)

    @property
    def q2(self) -> Fraction:
        return self.gram.norm2(self.point)

    def verify(self) -> bool:
        """Re-derive the point from the multipliers and check every condition."""
        rebuilt = zero(self.gram.rank)
        for i, y in zip(self.active_set, self.multipliers):
            if y < 0:
                return False
            rebuilt = add(rebuilt, scale(y, self.gram.transport(self.constraints[i])))
        if rebuilt != self.point:
            return False
        for i, c in enumerate(self.constraints):
            p = pairing(c, self.point)
            if p < 1:
                return False
            if (p == 1) != (i in self.active_set):
                return False
        return True


def _dedupe(vectors: Iterable[Sequence[Fraction]]) -> list[Vector]:
    seen: dict[Vector, None] = {}
    for v in vectors:
        seen.setdefault(tuple(v), None)
    return list(seen)


def kkt_candidates(constraints: Sequence[Vector], gram: GramForm) -> Iterator[tuple[tuple[int, ...], Vector, Vector]]:
    """Yield (subset, multipliers, point) for every independent subset of size
    <= rank whose equality system has nonnegative multipliers.

    Subsets are visited by size, then lexicographically.
    """
    n = gram.rank
    transported = [gram.transport(c) for c in constraints]
    visited = 0
    for k in range(1, min(n, len(constraints)) + 1):
        for subset in combinations(range(len(constraints)), k):
            visited += 1
            if visited > LIMITS.max_subsets:
                raise BudgetExceeded(f"more than {LIMITS.max_subsets} active subsets")
            m = [[pairing(constraints[i], transported[j]) for j in subset] for i in subset]
            y = solve(m, [ONE] * k)
            if y is None or any(x < 0 for x in y):
                continue
            point = zero(n)
            for yj, j in zip(y, subset):
                if yj:
                    point = add(point, scale(yj, transported[j]))
            yield subset, y, point


def min_norm_point(constraints: Iterable[Sequence[Fraction]], gram: GramForm) -> MinNormCertificate:
    """Unique minimizer of (mu, mu) subject to <chi, mu> >= 1 for every chi.

    Returns the zero vector with an empty certificate when no constraint is
    given.  Raises :class:`ZeroConstraintError` on a zero character and
    :class:`InfeasibleError` when the origin lies in the hull of the
    constraints.
    """
    cons = _dedupe(constraints)
    for c in cons:
        if len(c) != gram.rank:
            raise ValueError(f"length mismatch: {len(c)} != {gram.rank}")
        if is_zero(c):
            raise ZeroConstraintError("zero character among the constraints")
    if not cons:
        return MinNormCertificate(zero(gram.rank), (), (), (), gram)
    for subset, y, point in kkt_candidates(cons, gram):
        if all(pairing(c, point) >= 1 for c in cons):
            active = tuple(i for i, c in enumerate(cons) if pairing(c, point) == 1)
            weights = dict(zip(subset, y))
            mult = tuple(weights.get(i, ZERO) for i in active)
            return MinNormCertificate(point, tuple(cons), active, mult, gram)
    raise InfeasibleError("origin lies in the convex hull of the constraints")


# --------------------------------------------------------------------------
# min-norm point of a convex hull
# --------------------------------------------------------------------------


def hull_min_norm_point(points: Iterable[Sequence[Fraction]], gram: GramForm) -> Vector:
    """Min-norm point of conv(iota(points)), found by affine active sets.

    For an affinely independent subset S the min-norm point of aff(S) solves
    the bordered system [M 1; 1^T 0]; it is the hull optimum when its
    barycentric weights are nonnegative and <p, x> >= (x, x) for every p.
    """
    pts = _dedupe(points)
    if not pts:
        raise ValueError("empty point set")
    n = gram.rank
    if any(is_zero(p) for p in pts):
        return zero(n)
    transported = [gram.transport(p) for p in pts]
    visited = 0
    for k in range(1, min(n + 1, len(pts)) + 1):
        for subset in combinations(range(len(pts)), k):
            visited += 1
            if visited > LIMITS.max_subsets:
                raise BudgetExceeded(f"more than {LIMITS.max_subsets} hull subsets")
            m = [[pairing(pts[i], transported[j]) for j in subset] + [ONE] for i in subset]
            m.append([ONE] * k + [ZERO])
            sol = solve(m, [ZERO] * k + [ONE])
            if sol is None:
                continue
            w = sol[:k]
            if any(x < 0 for x in w):
                continue
            x = zero(n)
            for wj, j in zip(w, subset):
                x = add(x, scale(wj, transported[j]))
            x2 = gram.norm2(x)
            if all(pairing(p, x) >= x2 for p in pts):
                return x
    raise AssertionError("no affine active set certified the hull minimum")


def origin_in_hull(points: Iterable[Sequence[Fraction]], gram: GramForm | None = None) -> bool:
    """True iff 0 lies in the convex hull of the (transported) points."""
    pts = _dedupe(points)
    if not pts:
        return False
    if gram is None:
        gram = GramForm.identity(len(pts[0]))
    return is_zero(hull_min_norm_point(pts, gram))
