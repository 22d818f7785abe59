"""Weight systems of modules: graded pieces, filtrations, Levi-orthogonal projection."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .exact_geometry import (
    GramForm,
    Vector,
    is_zero,
    pairing,
    primitive_integral,
    scale,
    sub,
    vec,
)
from .root_datum import RelativeRootDatum, RootDatum, simple_system


@dataclass(frozen=True)
class WeightedModule:
    """Finite multiset of weights; ``weights`` is a sorted tuple of (weight, mult)."""

    weights: tuple[tuple[Vector, int], ...]
    rank: int
    ambient: RootDatum | None = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self) -> None:
        merged: Counter = Counter()
        for w, m in self.weights:
            w = vec(w)
            if len(w) != self.rank:
                raise ValueError(f"weight {w} has wrong length for rank {self.rank}")
            if m < 1:
                raise ValueError("multiplicities must be >= 1")
            merged[w] += m
        object.__setattr__(self, "weights", tuple(sorted(merged.items())))

    @classmethod
    def from_list(cls, weights: Iterable[Sequence], rank: int | None = None, ambient=None) -> WeightedModule:
        ws = [vec(w) for w in weights]
        if rank is None:
            if not ws:
                raise ValueError("rank needed for an empty module")
            rank = len(ws[0])
        return cls(tuple((w, 1) for w in ws), rank, ambient)

    @property
    def dim(self) -> int:
        return sum(m for _, m in self.weights)

    def basis(self) -> tuple[Vector, ...]:
        """Weight of each basis vector, repeated by multiplicity."""
        return tuple(w for w, m in self.weights for _ in range(m))

    def nonzero_weights(self) -> tuple[Vector, ...]:
        return tuple(w for w, _ in self.weights if not is_zero(w))

    def restrict(self, keep) -> WeightedModule:
        return WeightedModule(tuple((w, m) for w, m in self.weights if keep(w)), self.rank, self.ambient)

    def graded_piece(self, lam: Sequence[Fraction], k) -> WeightedModule:
        """Weights with <chi, lam> = k."""
        return self.restrict(lambda w: pairing(w, lam) == k)

    def dim_at_least(self, mu: Sequence[Fraction], r) -> int:
        return sum(m for w, m in self.weights if pairing(w, mu) >= r)

    def filtration_dims(self, mu: Sequence[Fraction]) -> dict[Fraction, int]:
        """dim V_{mu,r} at every jump r >= 0."""
        jumps = sorted({pairing(w, mu) for w, _ in self.weights if pairing(w, mu) >= 0} | {Fraction(0)})
        return {r: self.dim_at_least(mu, r) for r in jumps}

    def saturation(self, mu: Sequence[Fraction]) -> frozenset[Vector]:
        """Weights spanning V_{mu,1}."""
        return frozenset(w for w, _ in self.weights if pairing(w, mu) >= 1)


def adjoint_module(datum: RootDatum) -> WeightedModule:
    """Roots with their multiplicities plus the zero weight with multiplicity rank."""
    ws = list(zip(datum.roots, datum.multiplicities))
    if datum.rank:
        ws.append(((Fraction(0),) * datum.rank, datum.rank))
    return WeightedModule(tuple(ws), datum.rank, datum)


def graded_piece(module: WeightedModule, lam: Sequence[Fraction], k) -> WeightedModule:
    return module.graded_piece(lam, k)


def filtration_dims(module: WeightedModule, mu: Sequence[Fraction]) -> dict[Fraction, int]:
    return module.filtration_dims(mu)


# --------------------------------------------------------------------------
# Levi-orthogonal data
# --------------------------------------------------------------------------


def orthogonal_basis(gram: GramForm, mu: Sequence[Fraction]) -> tuple[Vector, ...]:
    """Deterministic orthogonal basis of mu^perp (Gram-Schmidt, no normalisation).

    Each vector is rescaled to a primitive integral one.
    """
    n = gram.rank
    mu = tuple(mu)
    m2 = gram.norm2(mu)
    out: list[Vector] = []
    for i in range(n):
        e = tuple(Fraction(int(i == j)) for j in range(n))
        v = sub(e, scale(gram.inner(e, mu) / m2, mu))
        for u in out:
            v = sub(v, scale(gram.inner(v, u) / gram.norm2(u), u))
        if not is_zero(v):
            out.append(primitive_integral(v))
    return tuple(out)


@dataclass(frozen=True)
class LeviData:
    """The group M^perp_mu (Levi roots on the torus mu^perp) and the projection."""

    mu: Vector
    levi_roots: tuple[Vector, ...]
    perp_basis: tuple[Vector, ...]
    datum: RootDatum

    def project(self, chi: Sequence[Fraction]) -> Vector:
        """Restriction of a character to mu^perp, in ``perp_basis`` coordinates."""
        return tuple(pairing(chi, b) for b in self.perp_basis)

    def lift(self, c: Sequence[Fraction]) -> Vector:
        """Cocharacter of mu^perp given in ``perp_basis`` coordinates."""
        out = (Fraction(0),) * len(self.mu)
        for ci, b in zip(c, self.perp_basis):
            out = tuple(x + ci * y for x, y in zip(out, b))
        return out

    def project_module(self, module: WeightedModule) -> WeightedModule:
        return WeightedModule(
            tuple((self.project(w), m) for w, m in module.weights), len(self.perp_basis), self.datum
        )

    @cached_property
    def is_torus(self) -> bool:
        return not self.levi_roots


def levi_perp(datum: RootDatum, mu: Sequence[Fraction]) -> LeviData:
    """Root subsystem {alpha : <alpha, mu> = 0} acting on the torus mu^perp."""
    mu = tuple(mu)
    if is_zero(mu):
        raise ValueError("levi_perp needs mu != 0")
    levi = tuple(r for r in datum.roots if pairing(r, mu) == 0)
    basis = orthogonal_basis(datum.gram, mu)
    gram = datum.gram.restrict(basis) if basis else GramForm(())
    proj = [tuple(pairing(r, b) for b in basis) for r in levi]
    cls = RelativeRootDatum if datum.relative else RootDatum
    sub_datum = cls(
        f"{datum.label}^perp",
        tuple(proj),
        simple_system(proj),
        gram,
        tuple(datum.multiplicity[r] for r in levi),
        (),
        datum.relative,
    )
    return LeviData(mu, levi, basis, sub_datum)
