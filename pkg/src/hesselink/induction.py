"""Parabolic induction of strata.

``induce`` works from the definition: the induced stratum is the one meeting
``X^M_xi + u_P`` densely.  That space is spanned by the weights ``W_sub``
(Levi roots with ``<chi, xi> >= 1`` plus the roots of ``U_P``), so its
generic element has torus-optimal label ``eta = min_norm_point(W_sub)``.
The label is certified by the Kirwan-Ness test whenever weights decide it;
otherwise the result is FLAGGED and a seeded matrix search supplies a
best-effort answer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import NoRealizationError
from .exact_geometry import GramForm, Vector, add, is_zero, min_norm_point, origin_in_hull, pairing, zero
from .instability import kn_certificate, torus_optimal
from .realization import bracket, exp_nilpotent, mul, realization
from .root_datum import ParabolicSpec, RootDatum, dominantize, mu_P, weyl_group
from .stratification import StratumLabel, enumerate_strata, make_label
from .weighted_module import adjoint_module, levi_perp

TRIVIAL = None

DEFAULT_SEED = 20240601
DEFAULT_SAMPLES = 24


@dataclass(frozen=True)
class FallbackResult:
    label: StratumLabel
    samples: int
    seed: int
    support: tuple[Vector, ...]
    note: str = "best-effort"


@dataclass(frozen=True)
class InductionResult:
    eta: Vector
    induced: StratumLabel | None
    blade_nonempty: bool
    method: str
    diagnostics: tuple[str, ...]
    support: tuple[Vector, ...] = field(repr=False)
    formula_eta: Vector = ()
    fallback: FallbackResult | None = None

    @property
    def flagged(self) -> bool:
        return self.induced is None

    @property
    def best_label(self) -> Vector | None:
        if self.induced is not None:
            return self.induced.mu
        return self.fallback.label.mu if self.fallback else None


def induction_support(parabolic: ParabolicSpec, xi: Sequence[Fraction]) -> tuple[Vector, ...]:
    """W_sub = {Levi roots with <chi, xi> >= 1} u {roots of U_P}."""
    xi = tuple(xi)
    sat = {r for r in parabolic.levi_roots if pairing(r, xi) >= 1}
    return tuple(sorted(sat | set(parabolic.unipotent_roots)))


def _blade_test(eta: Vector, w_sub: Sequence[Vector], datum: RootDatum) -> tuple[bool | None, dict | str]:
    """True/False when weights decide the Kirwan-Ness test at eta, else None."""
    module = adjoint_module(datum)
    graded_sub = {w for w in w_sub if pairing(w, eta) == 1}
    graded_full = {w for w, _ in module.weights if pairing(w, eta) == 1}
    if graded_sub == graded_full:
        cert = kn_certificate(eta, module, datum)
        return cert["semistable"], cert
    levi = levi_perp(datum, eta)
    if levi.is_torus:
        ok = origin_in_hull([levi.project(w) for w in graded_sub], levi.datum.gram)
        return ok, "M^perp is a torus"
    return None, "graded part of W_sub is a proper subspace of a non-toral graded piece"


def induce(
    parabolic: ParabolicSpec,
    levi_stratum: StratumLabel | None = TRIVIAL,
    seed: int = DEFAULT_SEED,
    samples: int = DEFAULT_SAMPLES,
) -> InductionResult:
    """Stratum of G induced from a stratum of the Levi of ``parabolic``."""
    datum = parabolic.datum
    xi = zero(datum.rank) if levi_stratum is None else tuple(levi_stratum.mu)
    w_sub = induction_support(parabolic, xi)
    formula = add(xi, mu_P(parabolic))
    diags: list[str] = []
    if not w_sub:
        label = make_label(zero(datum.rank), datum)
        return InductionResult(zero(datum.rank), label, True, "primary", (), w_sub, formula)
    eta = min_norm_point(w_sub, datum.gram).point
    if formula != eta:
        bad = [w for w in w_sub if pairing(w, formula) < 1]
        diags.append(
            f"formula xi + mu_P = {_fmt(formula)} differs from definition-based eta = {_fmt(eta)}"
            + (f"; pairs below 1 with {', '.join(_fmt(w) for w in bad)}" if bad else "")
        )
    ok, why = _blade_test(eta, w_sub, datum)
    if ok:
        mu = dominantize(eta, datum)[0]
        cert = why if isinstance(why, dict) else None
        label = make_label(mu, datum, certificate=cert)
        return InductionResult(eta, label, True, "primary", tuple(diags), w_sub, formula)
    if ok is None:
        diags.append(f"blade test undecided by weights: {why}")
    else:
        diags.append(
            f"blade at eta = {_fmt(eta)} is empty: generic graded component unstable under M^perp"
        )
    fb = None
    try:
        fb = sampling_fallback(w_sub, datum, seed=seed, samples=samples)
        diags.append(f"sampling fallback ({fb.samples} samples, seed {fb.seed}) -> {_fmt(fb.label.mu)} [best-effort]")
    except NoRealizationError as exc:
        diags.append(f"no fallback: {exc}")
    return InductionResult(eta, None, False, "sampling-fallback", tuple(diags), w_sub, formula, fb)


def _fmt(v: Sequence[Fraction]) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


# --------------------------------------------------------------------------
# checks
# --------------------------------------------------------------------------


def levi_parabolic(parabolic: ParabolicSpec, inner_levi: Sequence[int]) -> ParabolicSpec:
    """The parabolic Q n M of the Levi M of ``parabolic`` (inner levi: indices into the
    simple roots of G, a subset of ``parabolic.levi``)."""
    if not set(inner_levi) <= set(parabolic.levi):
        raise ValueError("inner Levi must be contained in the outer Levi")
    m = parabolic.levi_datum()
    pos = {r: i for i, r in enumerate(m.simple_roots)}
    return ParabolicSpec(m, tuple(pos[datum_root] for datum_root in (parabolic.datum.simple_roots[i] for i in inner_levi)))


@dataclass(frozen=True)
class CheckReport:
    status: str  # "EQUAL", "DIFFERENT" or "SKIPPED"
    left: InductionResult
    right: InductionResult
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status in ("EQUAL", "SKIPPED")


def _compare(a: InductionResult, b: InductionResult) -> CheckReport:
    if a.flagged or b.flagged:
        fa, fb = a.best_label, b.best_label
        note = "flagged step"
        if fa is not None and fb is not None:
            note += f"; best-effort labels {'agree' if fa == fb else 'differ'}"
        return CheckReport("SKIPPED", a, b, note)
    return CheckReport("EQUAL" if a.induced.mu == b.induced.mu else "DIFFERENT", a, b)


def transitivity_check(datum: RootDatum, outer_levi: Sequence[int], inner_levi: Sequence[int] = ()) -> CheckReport:
    """I_P^G(I_{Q n M}^M(1)) == I_Q^G(1) for Q (levi ``inner_levi``) inside P."""
    outer = ParabolicSpec(datum, tuple(outer_levi))
    inner = levi_parabolic(outer, inner_levi)
    first = induce(inner, TRIVIAL)
    if first.flagged:
        direct = induce(ParabolicSpec(datum, tuple(inner_levi)), TRIVIAL)
        return CheckReport("SKIPPED", first, direct, "inner step flagged")
    via = induce(outer, first.induced)
    direct = induce(ParabolicSpec(datum, tuple(inner_levi)), TRIVIAL)
    return _compare(via, direct)


def conjugating_element(datum: RootDatum, levi_a: Sequence[int], levi_b: Sequence[int]):
    """Weyl element w with w(Levi roots of a) = Levi roots of b, or None."""
    ra = set(ParabolicSpec(datum, tuple(levi_a)).levi_roots)
    rb = set(ParabolicSpec(datum, tuple(levi_b)).levi_roots)
    if len(ra) != len(rb):
        return None
    from .root_datum import _act_on_character

    for w in weyl_group(datum):
        if {_act_on_character(w, r) for r in ra} == rb:
            return w
    return None


def independence_check(
    datum: RootDatum, levi_a: Sequence[int], levi_b: Sequence[int], levi_stratum: StratumLabel | None = TRIVIAL
) -> CheckReport:
    """Induced labels agree for standard parabolics with W-conjugate Levis."""
    w = conjugating_element(datum, levi_a, levi_b)
    if w is None:
        raise ValueError("Levis are not Weyl-conjugate")
    pa = ParabolicSpec(datum, tuple(levi_a))
    pb = ParabolicSpec(datum, tuple(levi_b))
    a = induce(pa, levi_stratum)
    if levi_stratum is None:
        moved = None
    else:
        from .exact_geometry import mat_vec

        mu_b = dominantize(mat_vec(w, levi_stratum.mu), pb.levi_datum())[0]
        moved = make_label(mu_b, pb.levi_datum())
    b = induce(pb, moved)
    return _compare(a, b)


def xi_indicator(parabolic: ParabolicSpec, levi_stratum: StratumLabel | None, target: StratumLabel | Sequence) -> bool:
    """1 iff the induced stratum is (unflagged and) equal to ``target``."""
    res = induce(parabolic, levi_stratum)
    if res.flagged:
        return False
    mu = target.mu if isinstance(target, StratumLabel) else tuple(target)
    return res.induced.mu == mu


# --------------------------------------------------------------------------
# sampling fallback
# --------------------------------------------------------------------------


def _score(real, x, gram: GramForm):
    sup = real.support(x)
    if not sup or any(is_zero(w) for w in sup) or origin_in_hull(sup, gram):
        return None
    kd = torus_optimal(sup, gram)
    return kd.q2, len(sup), kd.mu


def _better(s, best) -> bool:
    if s is None:
        return False
    if best is None:
        return True
    return (s[0], s[1]) < (best[0], best[1])


def _reduce(real, x, gram: GramForm, roots: Sequence[Vector]):
    """Greedy exact eliminations: conjugate by exp(t e_gamma) with t chosen to
    cancel one coefficient whenever that coefficient is affine in t."""
    best = _score(real, x, gram)
    improved = True
    while improved:
        improved = False
        for g in roots:
            e = real.root_vector(g)
            powers = [x]
            while True:
                nxt = bracket(e, powers[-1])
                if all(v == 0 for row in nxt for v in row):
                    break
                powers.append(nxt)
            if len(powers) < 2:
                continue
            n = real.n
            for a in range(n):
                for b in range(n):
                    if not x[a][b] or not powers[1][a][b]:
                        continue
                    if any(p[a][b] for p in powers[2:]):
                        continue
                    t = -x[a][b] / powers[1][a][b]
                    y = real.conjugate(exp_nilpotent(e, t), exp_nilpotent(e, -t), x)
                    s = _score(real, y, gram)
                    if _better(s, best):
                        x, best, improved = y, s, True
                        break
                if improved:
                    break
            if improved:
                break
    return x, best


def sampling_fallback(
    w_sub: Sequence[Vector], datum: RootDatum, seed: int = DEFAULT_SEED, samples: int = DEFAULT_SAMPLES
) -> FallbackResult:
    """Best-effort label of the generic element of span(W_sub) by randomized search.

    Random rational elements of span(W_sub) are conjugated by random products
    of root-group elements and then greedily simplified; the smallest q2 of a
    torus-optimal label seen wins.  Never a certificate.
    """
    real = realization(datum)
    rng = random.Random(seed)
    gram = datum.gram
    roots = sorted(datum.roots)
    best = None
    best_x = None
    params = [Fraction(k, d) for k in (-2, -1, 1, 2) for d in (1, 2)]
    for i in range(max(1, samples)):
        coeffs = {w: Fraction(rng.choice([-3, -2, -1, 1, 2, 3])) for w in w_sub}
        x = real.element(coeffs)
        if i:
            for _ in range(rng.randint(1, 3)):
                g = rng.choice(roots)
                t = rng.choice(params)
                e = real.root_vector(g)
                x = real.conjugate(exp_nilpotent(e, t), exp_nilpotent(e, -t), x)
        x, s = _reduce(real, x, gram, roots)
        if _better(s, best):
            best, best_x = s, x
    if best is None:
        raise AssertionError("sampling found no torus-unstable conjugate")
    mu = dominantize(best[2], datum)[0]
    return FallbackResult(make_label(mu, datum), max(1, samples), seed, tuple(sorted(real.support(best_x))))
