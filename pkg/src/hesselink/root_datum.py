"""Split and relative root data, Weyl groups, dominance and parabolics.

Coordinate conventions (frozen; example values depend on them):

* ``C_n`` uses the diagonal basis: a cocharacter ``(x_1, ..., x_n)`` is
  ``t -> diag(t^x_1, ..., t^x_n, t^-x_n, ..., t^-x_1)`` in Sp(2n).  Roots are
  ``e_i - e_{i+1}`` and ``2 e_n`` (simple), Gram form the identity.  For C2
  this gives alpha = (1,-1), beta = (0,2), alpha+beta = (1,1),
  2alpha+beta = (2,0).
* every other type uses the simple-coroot basis of cocharacter space and the
  dual (fundamental-weight) basis for characters, so the simple root
  ``alpha_j`` has coordinates ``(<alpha_j, coroot_i>)_i`` and the Gram form is
  the symmetrised Cartan matrix with short coroots of squared length 2.
* products concatenate coordinates; each factor may carry its own positive
  Gram scale.

The default integral structure is the coroot lattice (simply connected
group); ``with_lattice("adjoint")`` switches to the coweight lattice.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import BudgetExceeded, MalformedSpecError, UnsupportedTypeError
from .exact_geometry import (
    LIMITS,
    ONE,
    ZERO,
    GramForm,
    Matrix,
    Vector,
    add,
    identity,
    inverse,
    is_zero,
    mat_vec,
    min_norm_point,
    neg,
    nullspace,
    pairing,
    rank,
    rational,
    scale,
    solve,
    solve_in_span,
    sub,
    transpose,
    vec,
    zero,
)

SUPPORTED = ("A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2")
MAX_RANK = 4


def _lex_positive(v: Sequence[Fraction]) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


@dataclass(frozen=True)
class RootDatum:
    """Roots (as characters) of a maximal (split) torus plus a W-invariant form.

    ``roots`` is closed under negation.  ``multiplicities`` is aligned with
    ``roots``; it is all ones for split data.  ``lattice`` is a basis of the
    integral cocharacter lattice used to primitivize virtual cocharacters.
    """

    label: str
    roots: tuple[Vector, ...]
    simple_roots: tuple[Vector, ...]
    gram: GramForm
    multiplicities: tuple[int, ...] = ()
    lattice: tuple[Vector, ...] = ()
    relative: bool = False
    factor_blocks: tuple[tuple[int, int], ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        roots = tuple(vec(r) for r in self.roots)
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "simple_roots", tuple(vec(r) for r in self.simple_roots))
        if not self.multiplicities:
            object.__setattr__(self, "multiplicities", (1,) * len(roots))
        if not self.lattice:
            object.__setattr__(self, "lattice", identity(self.gram.rank))
        if len(self.multiplicities) != len(roots):
            raise ValueError("one multiplicity per root")
        if any(m < 1 for m in self.multiplicities):
            raise ValueError("multiplicities must be >= 1")
        if any(len(r) != self.rank for r in roots):
            raise ValueError("root length does not match the Gram rank")

    # -- basic data ---------------------------------------------------------

    @property
    def rank(self) -> int:
        return self.gram.rank

    @cached_property
    def multiplicity(self) -> dict[Vector, int]:
        return dict(zip(self.roots, self.multiplicities))

    @property
    def is_torus(self) -> bool:
        return not self.roots

    @cached_property
    def positive_roots(self) -> tuple[Vector, ...]:
        return tuple(r for r in self.roots if all(c >= 0 for c in self.expansion(r)))

    @cached_property
    def _expansions(self) -> dict[Vector, Vector]:
        out = {}
        for r in self.roots:
            c = solve_in_span(self.simple_roots, r)
            if c is None:
                raise ValueError(f"root {r} not in the span of the simple roots")
            out[r] = c
        return out

    def expansion(self, root: Sequence[Fraction]) -> Vector:
        """Coefficients of ``root`` in the simple roots."""
        return self._expansions[tuple(root)]

    def coroot(self, root: Sequence[Fraction]) -> Vector:
        t = self.gram.transport(root)
        return scale(2 / pairing(root, t), t)

    @cached_property
    def simple_coroots(self) -> tuple[Vector, ...]:
        return tuple(self.coroot(a) for a in self.simple_roots)

    @cached_property
    def dimension(self) -> int:
        """dim G = rank + number of roots counted with multiplicity."""
        return self.rank + sum(self.multiplicities)

    def divisible(self, root: Sequence[Fraction]) -> bool:
        """True when 2*root is also a root."""
        return scale(2, root) in self.multiplicity

    # -- validation ---------------------------------------------------------

    def validate(self) -> None:
        rs = set(self.roots)
        if len(rs) != len(self.roots):
            raise ValueError("duplicate roots")
        for r in self.roots:
            if is_zero(r):
                raise ValueError("zero root")
            if neg(r) not in rs:
                raise ValueError(f"roots not closed under negation: {r}")
            if self.multiplicity[r] != self.multiplicity[neg(r)]:
                raise ValueError("multiplicity of -alpha differs from alpha")
        for s in self.simple_roots:
            if s not in rs:
                raise ValueError(f"simple root {s} is not a root")
        if rank(self.simple_roots) != len(self.simple_roots):
            raise ValueError("simple roots are not linearly independent")
        for r in self.roots:
            c = self.expansion(r)
            if any(x.denominator != 1 for x in c):
                raise ValueError(f"root {r} is not an integral combination of simple roots")
            if not (all(x >= 0 for x in c) or all(x <= 0 for x in c)):
                raise ValueError(f"root {r} has mixed-sign simple-root expansion")
        g = self.gram.matrix
        for m in self.simple_reflections:
            if _conjugate(g, m) != g:
                raise ValueError("Gram form is not Weyl-invariant")
        for s in self.simple_reflections:
            for r in self.roots:
                if _act_on_character(s, r) not in rs:
                    raise ValueError("root set is not Weyl-stable")

    # -- Weyl group ---------------------------------------------------------

    def reflection(self, root: Sequence[Fraction]) -> Matrix:
        """Matrix of nu -> nu - <root, nu> coroot on cocharacter coordinates."""
        cr = self.coroot(root)
        n = self.rank
        return tuple(
            tuple((ONE if i == j else ZERO) - cr[i] * root[j] for j in range(n)) for i in range(n)
        )

    @cached_property
    def simple_reflections(self) -> tuple[Matrix, ...]:
        return tuple(self.reflection(a) for a in self.simple_roots)

    def reflect(self, i: int, nu: Sequence[Fraction]) -> Vector:
        a = self.simple_roots[i]
        return sub(nu, scale(pairing(a, nu), self.simple_coroots[i]))

    def is_dominant(self, nu: Sequence[Fraction]) -> bool:
        return all(pairing(a, nu) >= 0 for a in self.simple_roots)

    def with_lattice(self, variant: str) -> RootDatum:
        """``"sc"``: coroot lattice; ``"adjoint"``: coweight lattice."""
        if variant == "sc":
            basis = self.simple_coroots
        elif variant == "adjoint":
            basis = fundamental_coweights(self)
        else:
            raise ValueError(f"unknown lattice variant {variant!r}")
        if len(basis) != self.rank:
            raise ValueError("lattice variants need a semisimple datum")
        return replace(self, lattice=tuple(basis))

    def simple_root_names(self) -> tuple[str, ...]:
        return tuple("abcdefgh"[i] for i in range(len(self.simple_roots)))


def _conjugate(g: Matrix, m: Matrix) -> Matrix:
    mt = transpose(m)
    return tuple(
        tuple(pairing(mt[i], mat_vec(g, mt[j])) for j in range(len(g))) for i in range(len(g))
    )


def _act_on_character(m: Matrix, chi: Sequence[Fraction]) -> Vector:
    """w.chi for the contragredient action: <w chi, nu> = <chi, w^-1 nu>."""
    return mat_vec(transpose(inverse(m)), chi)


class RelativeRootDatum(RootDatum):
    """Restricted roots of a maximal split torus, with multiplicities.

    Both ``alpha`` and ``2 alpha`` may occur (BC configurations).
    """


# --------------------------------------------------------------------------
# Cartan data
# --------------------------------------------------------------------------


def _cartan(kind: str, n: int) -> list[list[int]]:
    """a[i][j] = <alpha_j, coroot_i>, Bourbaki numbering."""
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        a[i][i + 1] = a[i + 1][i] = -1
    if kind == "B":
        a[n - 2][n - 1] = -1
        a[n - 1][n - 2] = -2
    elif kind == "C":
        a[n - 2][n - 1] = -2
        a[n - 1][n - 2] = -1
    elif kind == "G":
        a = [[2, -1], [-3, 2]]
    return a


def _coroot_basis_datum(kind: str, n: int, gram_scale: Fraction) -> tuple[list[Vector], list[Vector], GramForm]:
    a = _cartan(kind, n)
    simple = [tuple(Fraction(a[i][j]) for i in range(n)) for j in range(n)]
    # half squared lengths of coroots: a_ij s_j = a_ji s_i
    s = [None] * n
    s[0] = Fraction(1)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if i != j and a[i][j] and s[i] is not None and s[j] is None:
                    s[j] = s[i] * a[j][i] / a[i][j]
                    changed = True
    low = min(s)
    s = [x / low for x in s]
    g = GramForm(tuple(tuple(gram_scale * a[i][j] * s[j] for j in range(n)) for i in range(n)))
    # roots: W-orbit of the simple roots; s_i(chi) = chi - chi_i alpha_i
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for chi in frontier:
            for i in range(n):
                r = sub(chi, scale(chi[i], simple[i]))
                if r not in roots:
                    roots.add(r)
                    nxt.append(r)
        frontier = nxt
    return sorted(roots), simple, g


def _c_diagonal_datum(n: int, gram_scale: Fraction) -> tuple[list[Vector], list[Vector], GramForm]:
    def e(i: int) -> list[Fraction]:
        v = [ZERO] * n
        v[i] = ONE
        return v

    roots = set()
    for i in range(n):
        roots.add(tuple(2 * x for x in e(i)))
        roots.add(tuple(-2 * x for x in e(i)))
        for j in range(i + 1, n):
            for si in (1, -1):
                for sj in (1, -1):
                    roots.add(tuple(si * x + sj * y for x, y in zip(e(i), e(j))))
    simple = [tuple(x - y for x, y in zip(e(i), e(i + 1))) for i in range(n - 1)]
    simple.append(tuple(2 * x for x in e(n - 1)))
    return sorted(roots), simple, GramForm.identity(n).scaled(gram_scale)


def _parse_tag(tag: str) -> list[tuple[str, int]]:
    parts = [p.strip() for p in re.split(r"[x×]", tag.strip()) if p.strip()]
    if not parts:
        raise UnsupportedTypeError(f"empty type tag {tag!r}")
    out = []
    for p in parts:
        m = re.fullmatch(r"([ABCG])(\d)", p.upper())
        if not m or p.upper() not in SUPPORTED:
            raise UnsupportedTypeError(f"unsupported type {p!r} (supported: {', '.join(SUPPORTED)} and products)")
        out.append((m.group(1), int(m.group(2))))
    return out


def build(label: str, scales: Sequence | None = None) -> RootDatum:
    """Root datum of a split group of the given Cartan type.

    ``scales`` optionally rescales the Gram form factor by factor.
    """
    factors = _parse_tag(label)
    if scales is None:
        scales = [1] * len(factors)
    if len(scales) != len(factors):
        raise ValueError("one Gram scale per irreducible factor")
    total = sum(n for _, n in factors)
    if total > MAX_RANK:
        raise UnsupportedTypeError(f"total rank {total} exceeds {MAX_RANK}")
    all_roots: list[Vector] = []
    all_simple: list[Vector] = []
    grams = []
    blocks = []
    off = 0
    for (kind, n), sc in zip(factors, scales):
        sc = rational(sc)
        if sc <= 0:
            raise ValueError("Gram scales must be positive")
        if kind == "C":
            roots, simple, g = _c_diagonal_datum(n, sc)
        else:
            roots, simple, g = _coroot_basis_datum(kind, n, sc)

        def pad(v: Vector) -> Vector:
            return (ZERO,) * off + tuple(v) + (ZERO,) * (total - off - n)

        all_roots += [pad(r) for r in roots]
        all_simple += [pad(s) for s in simple]
        grams.append(g)
        blocks.append((off, n))
        off += n
    gram = GramForm.block_diagonal(grams)
    name = "x".join(f"{k}{n}" for k, n in factors)
    d = RootDatum(name, tuple(sorted(all_roots)), tuple(all_simple), gram, factor_blocks=tuple(blocks))
    d = d.with_lattice("sc")
    d.validate()
    return d


# --------------------------------------------------------------------------
# relative data
# --------------------------------------------------------------------------

BUILTIN_RELATIVE = {
    # SU(2,1) for a quadratic extension: restricted roots +-a (mult 2), +-2a (mult 1)
    "su21": "root 1 mult 2\nroot 2 mult 1\nsimple 1\ngram 1",
}


def build_relative(spec) -> RelativeRootDatum:
    """Relative root datum from a builtin tag, a text description or a split datum.

    Text format, one directive per line (``#`` starts a comment)::

        root <coords> mult <k>     negatives are added automatically
        simple <coords>
        gram <row> ; <row> ; ...
        lattice <vec> ; <vec> ; ... (optional, default: standard Z^r)
        label <name>               (optional)

    Coordinates are comma or space separated exact rationals ``p/q``.
    Builtins: ``su21``, ``bc1(m1,m2)`` and ``split:<tag>``.
    """
    if isinstance(spec, RootDatum):
        return RelativeRootDatum(
            spec.label, spec.roots, spec.simple_roots, spec.gram, spec.multiplicities, spec.lattice, True,
            spec.factor_blocks,
        )
    text = spec.strip()
    if text in BUILTIN_RELATIVE:
        return _parse_relative(BUILTIN_RELATIVE[text], default_label=text)
    m = re.fullmatch(r"bc1\(\s*(\d+)\s*,\s*(\d+)\s*\)", text)
    if m:
        m1, m2 = int(m.group(1)), int(m.group(2))
        if m1 < 1 or m2 < 1:
            raise MalformedSpecError("multiplicities must be positive")
        return _parse_relative(f"root 1 mult {m1}\nroot 2 mult {m2}\nsimple 1\ngram 1", default_label=text)
    if text.startswith("split:"):
        try:
            return build_relative(build(text[len("split:"):]))
        except UnsupportedTypeError as exc:
            raise MalformedSpecError(str(exc)) from exc
    if "\n" not in text and " " not in text:
        raise MalformedSpecError(f"unknown relative datum {text!r}")
    return _parse_relative(text, default_label="custom")


def _parse_coords(s: str) -> Vector:
    toks = [t for t in re.split(r"[,\s]+", s.strip()) if t]
    if not toks:
        raise MalformedSpecError("empty coordinate list")
    try:
        return tuple(Fraction(t) for t in toks)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedSpecError(f"bad rational in {s!r}") from exc


def _parse_relative(text: str, default_label: str) -> RelativeRootDatum:
    roots: dict[Vector, int] = {}
    simple: list[Vector] = []
    gram_rows: list[Vector] | None = None
    lattice: list[Vector] = []
    label = default_label
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        if key == "root":
            m = re.fullmatch(r"(.*?)\s+mult\s+(\d+)", rest.strip())
            if not m:
                raise MalformedSpecError(f"line {lineno}: expected 'root <coords> mult <k>'")
            r = _parse_coords(m.group(1))
            k = int(m.group(2))
            if k < 1:
                raise MalformedSpecError(f"line {lineno}: multiplicity must be >= 1")
            for v in (r, neg(r)):
                if roots.get(v, k) != k:
                    raise MalformedSpecError(f"line {lineno}: conflicting multiplicity for {v}")
                roots[v] = k
        elif key == "simple":
            simple.append(_parse_coords(rest))
        elif key == "gram":
            gram_rows = [_parse_coords(row) for row in rest.split(";")]
        elif key == "lattice":
            lattice = [_parse_coords(row) for row in rest.split(";")]
        elif key == "label":
            label = rest.strip()
        else:
            raise MalformedSpecError(f"line {lineno}: unknown directive {key!r}")
    if not roots or not simple or gram_rows is None:
        raise MalformedSpecError("need at least one root, one simple root and a gram line")
    try:
        gram = GramForm(tuple(gram_rows))
        ordered = sorted(roots)
        d = RelativeRootDatum(
            label, tuple(ordered), tuple(simple), gram, tuple(roots[r] for r in ordered), tuple(lattice), True
        )
        d.validate()
    except ValueError as exc:
        raise MalformedSpecError(str(exc)) from exc
    return d


# --------------------------------------------------------------------------
# generic constructors
# --------------------------------------------------------------------------


def simple_system(roots: Iterable[Sequence[Fraction]]) -> tuple[Vector, ...]:
    """Simple roots for the lexicographic positive system of a root set.

    A positive root is simple iff it is not the sum of two positive roots.
    """
    pos = [tuple(r) for r in roots if _lex_positive(r)]
    ps = set(pos)
    out = []
    for r in sorted(pos):
        if not any(sub(r, p) in ps for p in pos):
            out.append(r)
    return tuple(out)


def subdatum(datum: RootDatum, roots: Iterable[Sequence[Fraction]], label: str = "") -> RootDatum:
    """Reductive subgroup of the same torus with the given (closed) root subset."""
    rs = tuple(sorted({tuple(r) for r in roots}))
    cls = RelativeRootDatum if datum.relative else RootDatum
    return cls(
        label or f"{datum.label}-sub",
        rs,
        simple_system(rs),
        datum.gram,
        tuple(datum.multiplicity[r] for r in rs),
        datum.lattice,
        datum.relative,
    )


def torus(rank_: int, gram: GramForm | None = None) -> RootDatum:
    return RootDatum(f"T{rank_}", (), (), gram or GramForm.identity(rank_))


# --------------------------------------------------------------------------
# Weyl group and dominance
# --------------------------------------------------------------------------


def weyl_group(datum: RootDatum) -> tuple[Matrix, ...]:
    """All Weyl group elements as matrices on cocharacter coordinates."""
    if datum.rank > MAX_RANK:
        raise BudgetExceeded(f"rank {datum.rank} exceeds {MAX_RANK}")
    gens = datum.simple_reflections
    e = identity(datum.rank)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                sw = tuple(tuple(pairing(row, col) for col in zip(*w)) for row in s)
                if sw not in seen:
                    seen.add(sw)
                    nxt.append(sw)
                    if len(seen) > LIMITS.max_weyl_order:
                        raise BudgetExceeded(f"Weyl group larger than {LIMITS.max_weyl_order}")
        frontier = nxt
    return tuple(sorted(seen))


def dominantize(mu: Sequence[Fraction], datum: RootDatum) -> tuple[Vector, tuple[int, ...]]:
    """Dominant W-conjugate of ``mu`` and the simple-reflection word reaching it."""
    nu = tuple(mu)
    word: list[int] = []
    while True:
        for i, a in enumerate(datum.simple_roots):
            if pairing(a, nu) < 0:
                nu = datum.reflect(i, nu)
                word.append(i)
                break
        else:
            return nu, tuple(word)


def apply_word(word: Sequence[int], nu: Sequence[Fraction], datum: RootDatum) -> Vector:
    out = tuple(nu)
    for i in word:
        out = datum.reflect(i, out)
    return out


def fundamental_coweights(datum: RootDatum) -> tuple[Vector, ...]:
    """Coweights dual to the simple roots, inside the span of the coroots."""
    span = [datum.gram.transport(a) for a in datum.simple_roots]
    m = [[pairing(a, t) for t in span] for a in datum.simple_roots]
    out = []
    for i in range(len(span)):
        c = solve(m, [ONE if j == i else ZERO for j in range(len(span))])
        v = zero(datum.rank)
        for cj, t in zip(c, span):
            v = add(v, scale(cj, t))
        out.append(v)
    return tuple(out)


# --------------------------------------------------------------------------
# parabolics
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ParabolicSpec:
    """Standard parabolic given by the simple roots of its Levi (indices)."""

    datum: RootDatum
    levi: tuple[int, ...]

    def __post_init__(self) -> None:
        lv = tuple(sorted(set(self.levi)))
        if any(i < 0 or i >= len(self.datum.simple_roots) for i in lv):
            raise ValueError(f"bad simple-root index in {self.levi}")
        object.__setattr__(self, "levi", lv)

    @classmethod
    def from_names(cls, datum: RootDatum, names: Iterable[str]) -> ParabolicSpec:
        lookup = {n: i for i, n in enumerate(datum.simple_root_names())}
        idx = []
        for n in names:
            n = n.strip()
            if not n:
                continue
            if n not in lookup:
                raise ValueError(f"unknown simple root name {n!r}")
            idx.append(lookup[n])
        return cls(datum, tuple(idx))

    @classmethod
    def of(cls, mu: Sequence[Fraction], datum: RootDatum) -> ParabolicSpec:
        """P_mu for dominant mu."""
        return cls(datum, tuple(i for i, a in enumerate(datum.simple_roots) if pairing(a, mu) == 0))

    @cached_property
    def levi_simple_roots(self) -> tuple[Vector, ...]:
        return tuple(self.datum.simple_roots[i] for i in self.levi)

    @cached_property
    def delta_P(self) -> tuple[Vector, ...]:
        """Simple roots outside the Levi (their restrictions form a base of a_P^*)."""
        return tuple(a for i, a in enumerate(self.datum.simple_roots) if i not in self.levi)

    @cached_property
    def levi_roots(self) -> tuple[Vector, ...]:
        out = []
        for r in self.datum.roots:
            c = self.datum.expansion(r)
            if all(c[i] == 0 for i in range(len(c)) if i not in self.levi):
                out.append(r)
        return tuple(out)

    @cached_property
    def unipotent_roots(self) -> tuple[Vector, ...]:
        lv = set(self.levi_roots)
        return tuple(r for r in self.datum.positive_roots if r not in lv)

    @property
    def dim_unipotent(self) -> int:
        return sum(self.datum.multiplicity[r] for r in self.unipotent_roots)

    @property
    def dim(self) -> int:
        return self.datum.rank + sum(self.datum.multiplicity[r] for r in self.levi_roots) + self.dim_unipotent

    def levi_datum(self) -> RootDatum:
        cls = RelativeRootDatum if self.datum.relative else RootDatum
        return cls(
            f"{self.datum.label}[M:{''.join(self.datum.simple_root_names()[i] for i in self.levi) or '0'}]",
            self.levi_roots,
            self.levi_simple_roots,
            self.datum.gram,
            tuple(self.datum.multiplicity[r] for r in self.levi_roots),
            self.datum.lattice,
            self.datum.relative,
        )

    @cached_property
    def a_P_basis(self) -> tuple[Vector, ...]:
        """Basis of a_P inside the span of the coroots: pairs to 0 with the Levi."""
        span = [self.datum.gram.transport(a) for a in self.datum.simple_roots]
        rows = [[pairing(a, t) for t in span] for a in self.levi_simple_roots]
        out = []
        for c in nullspace(rows, len(span)):
            v = zero(self.datum.rank)
            for cj, t in zip(c, span):
                v = add(v, scale(cj, t))
            out.append(v)
        return tuple(out)

    def name(self) -> str:
        names = self.datum.simple_root_names()
        return "{" + ",".join(names[i] for i in self.levi) + "}"


def dim_parabolic_of(mu: Sequence[Fraction], datum: RootDatum) -> int:
    """dim P_mu = rank + #{alpha : <alpha, mu> >= 0} (with multiplicity)."""
    return datum.rank + sum(m for r, m in zip(datum.roots, datum.multiplicities) if pairing(r, mu) >= 0)


def mu_P_qp(parabolic: ParabolicSpec) -> Vector:
    """Min-norm point of {<alpha, .> >= 1 : alpha in Delta_P} inside a_P."""
    basis = parabolic.a_P_basis
    if not basis:
        return zero(parabolic.datum.rank)
    g = parabolic.datum.gram.restrict(basis)
    cons = [tuple(pairing(a, b) for b in basis) for a in parabolic.delta_P]
    c = min_norm_point(cons, g).point
    v = zero(parabolic.datum.rank)
    for cj, b in zip(c, basis):
        v = add(v, scale(cj, b))
    return v


def mu_P_closed(parabolic: ParabolicSpec) -> Vector:
    """Sum of the coweights of a_P dual to Delta_P."""
    fc = fundamental_coweights(parabolic.datum)
    v = zero(parabolic.datum.rank)
    for i, w in enumerate(fc):
        if i not in parabolic.levi:
            v = add(v, w)
    return v


def mu_P(parabolic: ParabolicSpec) -> Vector:
    """mu_P computed both ways; the two must agree."""
    a = mu_P_qp(parabolic)
    b = mu_P_closed(parabolic)
    if a != b:
        raise AssertionError(f"mu_P mismatch: QP {a} vs closed form {b}")
    return a


def all_parabolics(datum: RootDatum) -> list[ParabolicSpec]:
    from itertools import combinations

    k = len(datum.simple_roots)
    return [ParabolicSpec(datum, s) for r in range(k + 1) for s in combinations(range(k), r)]
