"""Kempf data of supports, candidate labels and the Kirwan-Ness recursion.

The recursion works on weights alone, so what it computes is the generic
(characteristic-free) layer: a normalized label ``mu`` is the label of a
nonempty stratum iff the generic vector of the graded piece
``V_mu(1) = {<chi, mu> = 1}`` is semistable for the group ``M^perp_mu``
(Levi roots of ``mu`` acting on the torus ``mu^perp``).  Generic
semistability of a module is decided by checking that no candidate stratum
is dense, which recurses into strictly smaller groups.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BudgetExceeded, RelativeRecursionError
from .exact_geometry import (
    LIMITS,
    GramForm,
    MinNormCertificate,
    Vector,
    is_zero,
    kkt_candidates,
    min_norm_point,
    origin_in_hull,
    pairing,
    primitive_integral,
    scale,
    solve_in_span,
    zero,
)
from .root_datum import RootDatum, dim_parabolic_of, dominantize
from .weighted_module import LeviData, WeightedModule, levi_perp


@dataclass(frozen=True)
class KempfDatum:
    """Normalized optimal ``mu`` (min pairing 1), its primitive integral
    multiple ``lam = m * mu`` and ``q2 = (mu, mu)``."""

    mu: Vector
    lam: Vector
    m: int
    q2: Fraction
    certificate: MinNormCertificate


def primitivize(mu: Sequence[Fraction], lattice: Sequence[Vector] | None = None) -> tuple[Vector, int]:
    """(lam, m) with lam = m * mu primitive in ``lattice`` and m a positive integer."""
    mu = tuple(mu)
    if is_zero(mu):
        return mu, 0
    if lattice is None:
        lattice = tuple(tuple(Fraction(int(i == j)) for j in range(len(mu))) for i in range(len(mu)))
    c = solve_in_span(lattice, mu)
    if c is None:
        raise ValueError(f"{mu} is not in the rational span of the lattice")
    p = primitive_integral(c)
    i = next(k for k, x in enumerate(c) if x)
    m = p[i] / c[i]
    if m.denominator != 1:
        raise ValueError(f"lattice is not integral against the characters of {mu}")
    lam = zero(len(mu))
    for pj, b in zip(p, lattice):
        lam = tuple(x + pj * y for x, y in zip(lam, b))
    return lam, int(m)


def torus_optimal(support, gram: GramForm, lattice: Sequence[Vector] | None = None) -> KempfDatum:
    """Optimal virtual cocharacter of the maximal torus for a weight support."""
    support = [tuple(s) for s in support]
    if not support:
        raise ValueError("empty support")
    cert = min_norm_point(support, gram)
    lam, m = primitivize(cert.point, lattice)
    return KempfDatum(cert.point, lam, m, cert.q2, cert)


def candidate_labels(module: WeightedModule, datum: RootDatum) -> tuple[Vector, ...]:
    """Dominant normalized labels that any optimal virtual cocharacter can have.

    Every KKT point of an independent subset (size <= rank) of the nonzero
    weights, dominantized and deduplicated; sorted lexicographically.
    """
    ws = list(module.nonzero_weights())
    out = set()
    for _, _, point in kkt_candidates(ws, datum.gram):
        out.add(dominantize(point, datum)[0])
    return tuple(sorted(out))


def _check_relative(levi: LeviData) -> None:
    d = levi.datum
    if not d.relative or d.is_torus:
        return
    if any(m != 1 for m in d.multiplicities) or any(d.divisible(r) for r in d.roots):
        raise RelativeRecursionError(
            f"relative Levi with roots {levi.levi_roots} is not split; weights do not determine its recursion"
        )


def dim_stratum(mu: Sequence[Fraction], module: WeightedModule, datum: RootDatum) -> int:
    """dim G - dim P_mu + dim V_{mu,1}."""
    return datum.dimension - dim_parabolic_of(mu, datum) + module.dim_at_least(mu, 1)


def generic_semistable(datum: RootDatum, module: WeightedModule) -> bool:
    """True iff the nullcone of ``module`` is a proper subset (generic vector semistable)."""
    return _generic(datum, module, 0, LIMITS.max_depth)[0]


def dense_stratum(datum: RootDatum, module: WeightedModule) -> Vector | None:
    """Label of the stratum dense in ``module``, or None if the generic vector is semistable."""
    return _generic(datum, module, 0, LIMITS.max_depth)[1]


@functools.lru_cache(maxsize=4096)
def _generic(datum: RootDatum, module: WeightedModule, depth: int, max_depth: int) -> tuple[bool, Vector | None]:
    # max_depth is part of the cache key so a tighter budget is never bypassed
    if depth > max_depth:
        raise BudgetExceeded(f"Kirwan-Ness recursion deeper than {max_depth}")
    if module.dim == 0:
        return False, zero(datum.rank)
    if datum.is_torus:
        ws = [w for w, _ in module.weights]
        if origin_in_hull(ws, datum.gram):
            return True, None
        return False, min_norm_point(ws, datum.gram).point
    for nu in candidate_labels(module, datum):
        if dim_stratum(nu, module, datum) != module.dim:
            continue
        if _kn(nu, datum, module, depth + 1)["semistable"]:
            return False, nu
    return True, None


def _kn(label: Vector, datum: RootDatum, module: WeightedModule, depth: int) -> dict:
    graded = module.graded_piece(label, 1)
    levi = levi_perp(datum, label)
    _check_relative(levi)
    projected = levi.project_module(graded)
    ok, dense = _generic(levi.datum, projected, depth, LIMITS.max_depth)
    return {
        "label": label,
        "graded_weights": tuple(w for w, _ in graded.weights),
        "levi_roots": levi.levi_roots,
        "perp_basis": levi.perp_basis,
        "projected_weights": projected.weights,
        "group": "torus" if levi.is_torus else f"rank {levi.datum.rank}, {len(levi.levi_roots)} roots",
        "semistable": ok,
        "dense_substratum": dense,
    }


def kn_certificate(label: Sequence[Fraction], module: WeightedModule, datum: RootDatum) -> dict:
    """Trace of the Kirwan-Ness test for ``label``; key ``semistable`` is the verdict."""
    label = tuple(label)
    if is_zero(label):
        raise ValueError("the trivial label has no Kirwan-Ness test")
    if not any(pairing(w, label) == 1 for w, _ in module.weights):
        raise ValueError(f"{label} is not normalized against any weight")
    return _kn(label, datum, module, 1)


def stratum_nonempty(label: Sequence[Fraction], module: WeightedModule, datum: RootDatum) -> bool:
    return kn_certificate(label, module, datum)["semistable"]


# --------------------------------------------------------------------------
# per-vector labels
# --------------------------------------------------------------------------


class Outcome(enum.Enum):
    CERTIFIED = "certified"
    SEMISTABLE = "semistable"
    FLAGGED = "flagged"
    ZERO = "zero"


@dataclass(frozen=True)
class VectorLabel:
    status: Outcome
    kempf: KempfDatum | None = None
    label: Vector | None = None
    note: str = ""


def vector_label(vector: Sequence, module: WeightedModule, datum: RootDatum) -> VectorLabel:
    """Label of a specific vector given by coordinates on ``module.basis()``.

    The torus-optimal datum is certified when the Kirwan-Ness test is decided
    by weights: ``M^perp`` is a torus, or the projected graded component is
    fixed by its maximal torus.  Anything else is FLAGGED (torus upper bound).
    """
    basis = module.basis()
    if len(vector) != len(basis):
        raise ValueError(f"expected {len(basis)} coordinates, got {len(vector)}")
    support = sorted({w for w, x in zip(basis, vector) if x})
    if not support:
        return VectorLabel(Outcome.ZERO, note="zero vector")
    nonzero = [w for w in support if not is_zero(w)]
    if origin_in_hull(support, datum.gram):
        if not nonzero or datum.is_torus:
            return VectorLabel(Outcome.SEMISTABLE, note="fixed by the maximal torus" if not nonzero else "torus")
        return VectorLabel(Outcome.FLAGGED, note="semistable for the maximal torus only")
    kd = torus_optimal(support, datum.gram, datum.lattice)
    label = dominantize(kd.mu, datum)[0]
    levi = levi_perp(datum, kd.mu)
    graded = [levi.project(w) for w in support if pairing(w, kd.mu) == 1]
    if levi.is_torus:
        return VectorLabel(Outcome.CERTIFIED, kd, label, "M^perp is a torus")
    if all(is_zero(w) for w in graded):
        return VectorLabel(Outcome.CERTIFIED, kd, label, "graded component fixed by a maximal torus of M^perp")
    return VectorLabel(Outcome.FLAGGED, kd, label, "Kirwan-Ness test not decided by weights; torus upper bound")
