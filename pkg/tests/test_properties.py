"""Property suites: random instances checked against the independent oracles."""

from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import oracles
from hesselink.errors import InfeasibleError
from hesselink.exact_geometry import GramForm, hull_min_norm_point, mat_vec, min_norm_point, origin_in_hull, pairing, scale
from hesselink.instability import generic_semistable, torus_optimal
from hesselink.root_datum import (
    ParabolicSpec,
    _act_on_character,
    all_parabolics,
    build,
    dominantize,
    mu_P_closed,
    mu_P_qp,
    torus,
    weyl_group,
)
from hesselink.stratification import enumerate_strata, isogeny_invariance_check, norm_invariance_check
from hesselink.weighted_module import WeightedModule, adjoint_module

# --------------------------------------------------------------------------
# strategies
# --------------------------------------------------------------------------


@st.composite
def gram_forms(draw, n):
    """G = L L^T with L lower triangular integral, positive diagonal."""
    low = [[0] * n for _ in range(n)]
    for i in range(n):
        low[i][i] = draw(st.integers(1, 3))
        for j in range(i):
            low[i][j] = draw(st.integers(-2, 2))
    g = [[sum(low[i][k] * low[j][k] for k in range(n)) for j in range(n)] for i in range(n)]
    return GramForm(tuple(tuple(Fraction(x) for x in row) for row in g))


def char_vectors(n, lo=-3, hi=3):
    return st.tuples(*[st.integers(lo, hi) for _ in range(n)]).filter(any).map(
        lambda t: tuple(Fraction(x) for x in t)
    )


@st.composite
def min_norm_instances(draw):
    n = draw(st.integers(1, 3))
    gram = draw(gram_forms(n))
    cons = draw(st.lists(char_vectors(n), min_size=1, max_size=6, unique=True))
    return gram, cons


# --------------------------------------------------------------------------
# (a) KKT certificates vs the exhaustive face oracle, (b) hull identity
# --------------------------------------------------------------------------


@settings(max_examples=500)
@given(min_norm_instances())
def test_min_norm_against_oracle(inst):
    gram, cons = inst
    ref = oracles.min_norm_oracle(cons, gram.matrix)
    if ref is None:
        with pytest.raises(InfeasibleError):
            min_norm_point(cons, gram)
        assert origin_in_hull(cons, gram)
        return
    cert = min_norm_point(cons, gram)
    assert cert.verify()
    assert cert.point == ref[0]
    assert cert.q2 == ref[1]


@settings(max_examples=500)
@given(min_norm_instances())
def test_hull_identity(inst):
    gram, cons = inst
    h = hull_min_norm_point(cons, gram)
    h2 = gram.norm2(h)
    if h2 == 0:
        assert origin_in_hull(cons, gram)
        return
    assert h2 == min(pairing(c, h) for c in cons)
    assert min_norm_point(cons, gram).point == scale(1 / h2, h)


# --------------------------------------------------------------------------
# (c) Weyl equivariance of torus_optimal
# --------------------------------------------------------------------------

_TYPES = {t: build(t) for t in ("A2", "B2", "C2", "G2", "A3")}
_WEYL = {t: weyl_group(d) for t, d in _TYPES.items()}


@st.composite
def weyl_instances(draw):
    label = draw(st.sampled_from(sorted(_TYPES)))
    d = _TYPES[label]
    support = draw(st.lists(char_vectors(d.rank, -2, 2), min_size=1, max_size=5, unique=True))
    w = draw(st.sampled_from(_WEYL[label]))
    return d, support, w


@settings(max_examples=200)
@given(weyl_instances())
def test_weyl_equivariance(inst):
    d, support, w = inst
    assume(not origin_in_hull(support, d.gram))
    k = torus_optimal(support, d.gram, d.lattice)
    moved = [_act_on_character(w, c) for c in support]
    kw = torus_optimal(moved, d.gram, d.lattice)
    assert kw.mu == mat_vec(w, k.mu)
    assert kw.q2 == k.q2
    assert kw.m == k.m


# --------------------------------------------------------------------------
# (d) isogeny invariance, (e) norm invariance
# --------------------------------------------------------------------------


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "C2"])
def test_isogeny_invariance(label):
    r = isogeny_invariance_check(build(label), "adjoint")
    assert r.labels_equal and r.q2_equal


def test_norm_invariance_a1xa1():
    r = norm_invariance_check("A1xA1", (1, 1), (1, 3))
    assert r.partitions_equal


@settings(max_examples=20)
@given(st.integers(1, 9), st.integers(1, 9))
def test_norm_invariance_random_scales(s, t):
    assert norm_invariance_check("A1xA1", (1, 1), (s, t)).partitions_equal


# --------------------------------------------------------------------------
# (f) generic semistability vs brute force over GF(64)
# --------------------------------------------------------------------------


def _torus_modules():
    for r, values in ((1, range(-2, 3)), (2, range(-1, 2))):
        pts = list(itertools.product(values, repeat=r))
        for size in range(1, 5):
            for combo in itertools.combinations_with_replacement(pts, size):
                yield r, combo


def _sl2_modules():
    out = set()

    def rec(room, largest, cur):
        if cur:
            out.add(tuple(cur))
        for k in range(min(room - 1, largest), -1, -1):
            rec(room - k - 1, k, cur + [k])

    rec(4, 3, [])
    return sorted(out)


def _as_module(weights, r):
    return WeightedModule(tuple((tuple(Fraction(x) for x in w), 1) for w in weights), r)


def test_generic_semistable_torus_brute_force():
    checked = 0
    for r, combo in _torus_modules():
        expect = oracles.torus_generic_semistable(combo)
        assert generic_semistable(torus(r), _as_module(combo, r)) == expect, combo
        checked += 1
    assert checked > 800


@pytest.mark.parametrize("highest", _sl2_modules(), ids=lambda h: "V" + "+V".join(map(str, h)))
def test_generic_semistable_sl2_brute_force(highest, frozen):
    weights = [(k - 2 * j,) for k in highest for j in range(k + 1)]
    expect = oracles.sl2_generic_semistable(highest)
    assert frozen["sl2_generic_semistable"][",".join(map(str, highest))] == expect
    assert generic_semistable(build("A1"), _as_module(weights, 1)) == expect


# --------------------------------------------------------------------------
# further invariants
# --------------------------------------------------------------------------


@settings(max_examples=100)
@given(st.sampled_from(sorted(_TYPES)), st.data())
def test_dominantize_idempotent_and_in_orbit(label, data):
    d = _TYPES[label]
    mu = data.draw(st.tuples(*[st.fractions(-3, 3, max_denominator=4) for _ in range(d.rank)]))
    dom, _ = dominantize(mu, d)
    assert d.is_dominant(dom)
    assert dominantize(dom, d) == (dom, ())
    assert dom in {mat_vec(w, mu) for w in _WEYL[label]}


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2", "A1xA1", "A1xA2", "A1xC2"])
def test_mu_p_routes_agree(label):
    for p in all_parabolics(build(label)):
        assert mu_P_qp(p) == mu_P_closed(p)


@pytest.mark.parametrize("label", ["A2", "B2", "C2", "G2", "A3"])
def test_labels_normalized_and_dominant(label):
    d = _TYPES[label]
    mod = adjoint_module(d)
    for s in enumerate_strata(d).nontrivial:
        assert d.is_dominant(s.mu)
        assert min(pairing(w, s.mu) for w, _ in mod.weights if pairing(w, s.mu) > 0) <= 1
        assert any(pairing(w, s.mu) == 1 for w, _ in mod.weights)
        assert s.dim_stratum <= mod.dim - d.rank


@pytest.mark.parametrize("label", ["A2", "C2", "G2"])
def test_label_is_mu_p_of_its_weights(label):
    # every label is the torus optimum of its own saturation's positive part
    d = _TYPES[label]
    for s in enumerate_strata(d).nontrivial:
        graded = [w for w, _ in adjoint_module(d).weights if pairing(w, s.mu) >= 1]
        assert torus_optimal(graded, d.gram).mu == s.mu


def test_standard_parabolic_mu_p_dominant():
    for label in ("A3", "B3", "C3"):
        d = build(label)
        for p in all_parabolics(d):
            assert d.is_dominant(mu_P_qp(p))
            assert isinstance(p, ParabolicSpec)
