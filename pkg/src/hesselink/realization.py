"""Matrix realizations of sl_n and sp_2n matching the frozen root conventions.

Only the sampling fallback of the induction module uses these; the engine
itself never looks at structure constants.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import NoRealizationError
from .exact_geometry import Vector, nullspace, sub
from .root_datum import RootDatum

Mat = list[list[Fraction]]


def zeros(n: int) -> Mat:
    return [[Fraction(0)] * n for _ in range(n)]


def eye(n: int) -> Mat:
    m = zeros(n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def mul(a: Mat, b: Mat) -> Mat:
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n) if a[i][k]), Fraction(0)) for j in range(n)] for i in range(n)]


def madd(a: Mat, b: Mat, c=1) -> Mat:
    return [[x + c * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mscale(c, a: Mat) -> Mat:
    return [[c * x for x in row] for row in a]


def bracket(a: Mat, b: Mat) -> Mat:
    return madd(mul(a, b), mul(b, a), -1)


def is_null(a: Mat) -> bool:
    return all(x == 0 for row in a for x in row)


def exp_nilpotent(e: Mat, t) -> Mat:
    """exp(t e) for nilpotent e, exactly."""
    n = len(e)
    out = eye(n)
    term = eye(n)
    k = 1
    while True:
        term = mscale(Fraction(t) / k, mul(term, e))
        if is_null(term):
            return out
        out = madd(out, term)
        k += 1
        if k > n + 1:
            raise ValueError("matrix is not nilpotent")


class MatrixRealization:
    """Lie algebra of n x n matrices; ``index_weights[a]`` is the torus weight
    of the a-th basis vector, so E_ab has weight index_weights[a] - index_weights[b]."""

    def __init__(self, datum: RootDatum, index_weights: Sequence[Vector], form: Mat | None):
        self.datum = datum
        self.n = len(index_weights)
        self.index_weights = [tuple(w) for w in index_weights]
        self.form = form
        self._root_vectors: dict[Vector, Mat] = {}
        for r in datum.roots:
            self._root_vectors[r] = self._solve_root_vector(r)

    def entry_weight(self, a: int, b: int) -> Vector:
        return sub(self.index_weights[a], self.index_weights[b])

    def _condition(self, x: Mat) -> list[Fraction]:
        if self.form is None:
            return []
        xt = [list(col) for col in zip(*x)]
        c = madd(mul(xt, self.form), mul(self.form, x))
        return [v for row in c for v in row]

    def _solve_root_vector(self, root: Vector) -> Mat:
        pos = [(a, b) for a in range(self.n) for b in range(self.n) if a != b and self.entry_weight(a, b) == root]
        if not pos:
            raise NoRealizationError(f"root {root} has no matrix entry")
        cols = []
        for a, b in pos:
            x = zeros(self.n)
            x[a][b] = Fraction(1)
            cols.append(self._condition(x))
        rows = [list(r) for r in zip(*cols)] if cols and cols[0] else []
        ns = nullspace(rows, len(pos))
        if len(ns) != 1:
            raise NoRealizationError(f"root space of {root} has dimension {len(ns)}")
        x = zeros(self.n)
        for c, (a, b) in zip(ns[0], pos):
            x[a][b] = c
        return x

    def root_vector(self, root: Sequence[Fraction]) -> Mat:
        return self._root_vectors[tuple(root)]

    def element(self, coeffs: dict[Vector, Fraction]) -> Mat:
        x = zeros(self.n)
        for r, c in coeffs.items():
            x = madd(x, self.root_vector(r), c)
        return x

    def support(self, x: Mat) -> set[Vector]:
        """Torus weights present in x (the zero weight for diagonal entries)."""
        out = set()
        for a in range(self.n):
            for b in range(self.n):
                if x[a][b]:
                    out.add(self.entry_weight(a, b))
        return out

    def conjugate(self, g: Mat, g_inv: Mat, x: Mat) -> Mat:
        return mul(mul(g, x), g_inv)


def realization(datum: RootDatum) -> MatrixRealization:
    """Bundled realization for A1..A3 (sl_n) and C2, C3 (sp_2n)."""
    label = datum.label
    if datum.relative or len(label) != 2:
        raise NoRealizationError(f"no matrix realization for {label!r}")
    kind, n = label[0], int(label[1])
    if kind == "A":
        size = n + 1
        ws = []
        for a in range(size):
            w = [Fraction(0)] * n
            if a < n:
                w[a] += 1
            if a >= 1:
                w[a - 1] -= 1
            ws.append(tuple(w))
        real = MatrixRealization(datum, ws, None)
    elif kind == "C":
        size = 2 * n
        ws = []
        for a in range(size):
            w = [Fraction(0)] * n
            if a < n:
                w[a] = Fraction(1)
            else:
                w[size - 1 - a] = Fraction(-1)
            ws.append(tuple(w))
        form = zeros(size)
        for i in range(n):
            form[i][size - 1 - i] = Fraction(1)
            form[size - 1 - i][i] = Fraction(-1)
        real = MatrixRealization(datum, ws, form)
    else:
        raise NoRealizationError(f"no matrix realization for {label!r}")
    return real
