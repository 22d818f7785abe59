"""Stratum tables of the nilpotent cone, computed on the adjoint module.

Unipotent strata carry the same labels as the nilpotent strata of the Lie
algebra, so the group case is labelled by the adjoint computation.  The
output is the generic-characteristic answer: candidates rejected by the
Kirwan-Ness recursion are kept as diagnostics, never silently dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .exact_geometry import Vector, is_zero, pairing, zero
from .instability import candidate_labels, dim_stratum, kn_certificate, primitivize, torus_optimal
from .root_datum import ParabolicSpec, RootDatum, all_parabolics, build, dim_parabolic_of, dominantize, mu_P
from .weighted_module import WeightedModule, adjoint_module


@dataclass(frozen=True)
class StratumLabel:
    mu: Vector
    lam: Vector
    m: int
    q2: Fraction
    parabolic: ParabolicSpec = field(repr=False)
    dim_saturation: int
    dim_stratum: int
    certificate: dict | None = field(default=None, repr=False, compare=False, hash=False)

    @property
    def is_trivial(self) -> bool:
        return is_zero(self.mu)


@dataclass(frozen=True)
class RejectedCandidate:
    """A candidate label whose blade is empty under the weights-only test."""

    mu: Vector
    q2: Fraction
    reason: str
    certificate: dict = field(repr=False, compare=False, hash=False)


@dataclass(frozen=True)
class StrataTable:
    datum: RootDatum
    strata: tuple[StratumLabel, ...]
    rejected: tuple[RejectedCandidate, ...]

    def __iter__(self) -> Iterator[StratumLabel]:
        return iter(self.strata)

    def __len__(self) -> int:
        return len(self.strata)

    def __getitem__(self, i: int) -> StratumLabel:
        return self.strata[i]

    @property
    def nontrivial(self) -> tuple[StratumLabel, ...]:
        return tuple(s for s in self.strata if not s.is_trivial)

    def labels(self) -> set[Vector]:
        return {s.mu for s in self.nontrivial}

    def find(self, mu: Sequence[Fraction]) -> StratumLabel | None:
        mu = tuple(mu)
        return next((s for s in self.strata if s.mu == mu), None)


def make_label(mu: Sequence[Fraction], datum: RootDatum, module: WeightedModule | None = None,
               certificate: dict | None = None) -> StratumLabel:
    """Complete a dominant normalized label with its derived data."""
    module = module or adjoint_module(datum)
    mu = tuple(mu)
    lam, m = primitivize(mu, datum.lattice)
    return StratumLabel(
        mu=mu,
        lam=lam,
        m=m,
        q2=datum.gram.norm2(mu),
        parabolic=ParabolicSpec.of(mu, datum),
        dim_saturation=module.dim_at_least(mu, 1) if not is_zero(mu) else 0,
        dim_stratum=dim_stratum(mu, module, datum) if not is_zero(mu) else 0,
        certificate=certificate,
    )


def enumerate_strata(datum: RootDatum, module: WeightedModule | None = None) -> StrataTable:
    """All strata (trivial one included), sorted by decreasing q2."""
    module = module or adjoint_module(datum)
    rows = [make_label(zero(datum.rank), datum, module)]
    rejected = []
    for mu in candidate_labels(module, datum):
        cert = kn_certificate(mu, module, datum)
        if cert["semistable"]:
            rows.append(make_label(mu, datum, module, cert))
        else:
            rejected.append(
                RejectedCandidate(
                    mu,
                    datum.gram.norm2(mu),
                    "generic vector of the graded piece is unstable under M^perp "
                    f"(dense sub-stratum {_fmt(cert['dense_substratum'])})",
                    cert,
                )
            )
    rows.sort(key=lambda s: (-s.q2, s.mu))
    rejected.sort(key=lambda r: (-r.q2, r.mu))
    return StrataTable(datum, tuple(rows), tuple(rejected))


def _fmt(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")" if v is not None else "none"


def regular_label(datum: RootDatum) -> StratumLabel:
    """Stratum of a generic element supported on the positive roots; equals mu_{P_0}."""
    module = adjoint_module(datum)
    kd = torus_optimal(datum.positive_roots, datum.gram, datum.lattice)
    mu = dominantize(kd.mu, datum)[0]
    p0 = mu_P(ParabolicSpec(datum, ()))
    if mu != dominantize(p0, datum)[0]:
        raise AssertionError(f"regular label {mu} differs from mu_P0 {p0}")
    cert = kn_certificate(mu, module, datum)
    if not cert["semistable"]:
        raise AssertionError("regular stratum reported empty")
    return make_label(mu, datum, module, cert)


# --------------------------------------------------------------------------
# invariance checks
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class IsogenyReport:
    datum: str
    variant: str
    labels_equal: bool
    q2_equal: bool
    pairs: tuple[tuple[Vector, tuple[Vector, int], tuple[Vector, int]], ...]

    @property
    def ok(self) -> bool:
        return self.labels_equal and self.q2_equal


def isogeny_invariance_check(datum: RootDatum, lattice_variant: str = "adjoint") -> IsogenyReport:
    """Compare the sc table with the ``lattice_variant`` table.

    Normalized labels and q2 must agree; the (lam, m) pairs are reported.
    """
    a = enumerate_strata(datum.with_lattice("sc"))
    b = enumerate_strata(datum.with_lattice(lattice_variant))
    la = {s.mu: s for s in a}
    lb = {s.mu: s for s in b}
    labels_equal = set(la) == set(lb)
    q2_equal = labels_equal and all(la[k].q2 == lb[k].q2 for k in la)
    pairs = tuple(
        (k, (la[k].lam, la[k].m), (lb[k].lam, lb[k].m)) for k in sorted(set(la) & set(lb))
    )
    return IsogenyReport(datum.label, lattice_variant, labels_equal, q2_equal, pairs)


@dataclass(frozen=True)
class NormReport:
    datum: str
    scales: tuple
    partitions_equal: bool
    partition_a: frozenset
    partition_b: frozenset
    q2_a: tuple[Fraction, ...]
    q2_b: tuple[Fraction, ...]


def _partition(table: StrataTable) -> frozenset:
    module = adjoint_module(table.datum)
    return frozenset((module.saturation(s.mu), s.m) for s in table)


def norm_invariance_check(label: str, scales_a: Sequence, scales_b: Sequence) -> NormReport:
    """Saturations V_{mu,1} and levels m do not depend on the invariant form."""
    ta = enumerate_strata(build(label, scales_a))
    tb = enumerate_strata(build(label, scales_b))
    pa, pb = _partition(ta), _partition(tb)
    return NormReport(
        ta.datum.label,
        (tuple(scales_a), tuple(scales_b)),
        pa == pb,
        pa,
        pb,
        tuple(s.q2 for s in ta),
        tuple(s.q2 for s in tb),
    )


def check_dimension_formula(table: StrataTable) -> bool:
    """dim_stratum = dim G - dim P_mu + dim V_{mu,1} on every row."""
    module = adjoint_module(table.datum)
    d = table.datum
    for s in table.nontrivial:
        if s.dim_stratum != d.dimension - dim_parabolic_of(s.mu, d) + module.dim_at_least(s.mu, 1):
            return False
        if s.parabolic.dim != dim_parabolic_of(s.mu, d):
            return False
    return True


def parabolic_table(datum: RootDatum) -> list[tuple[ParabolicSpec, Vector]]:
    return [(p, mu_P(p)) for p in all_parabolics(datum)]
