from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import F
from hesselink.errors import BudgetExceeded, RelativeRecursionError, ZeroConstraintError
from hesselink.exact_geometry import limits
from hesselink.instability import (
    Outcome,
    candidate_labels,
    dense_stratum,
    generic_semistable,
    kn_certificate,
    primitivize,
    stratum_nonempty,
    torus_optimal,
    vector_label,
)
from hesselink.root_datum import build, build_relative, torus
from hesselink.weighted_module import WeightedModule, adjoint_module

C2 = build("C2")
A1 = build("A1")


def mod(*ws, rank=1):
    return WeightedModule(tuple((tuple(Fraction(x) for x in w), 1) for w in ws), rank)


class TestPrimitivize:
    def test_standard(self):
        assert primitivize(F("3/2", "1/2")) == (F(3, 1), 2)
        assert primitivize(F(0, 0)) == (F(0, 0), 0)

    def test_lattice(self):
        # coweight lattice of C2 contains (1/2, 1/2)
        adj = C2.with_lattice("adjoint").lattice
        assert primitivize(F("3/2", "1/2"), adj)[1] == 1
        assert primitivize(F("1/2", "1/2"), adj)[1] == 1
        assert primitivize(F("1/2", 0), adj)[1] == 2


class TestTorusOptimal:
    def test_a1(self):
        k = torus_optimal([F(2)], A1.gram, A1.lattice)
        assert (k.mu, k.lam, k.m, k.q2) == (F("1/2"), F(1), 2, Fraction(1, 2))

    def test_c2_highest_root(self):
        k = torus_optimal([F(2, 0)], C2.gram, C2.lattice)
        assert (k.mu, k.lam, k.m) == (F("1/2", 0), F(1, 0), 2)

    def test_su21_long(self):
        d = build_relative("su21")
        k = torus_optimal([F(2)], d.gram, d.lattice)
        assert (k.mu, k.m) == (F("1/2"), 2)
        k = torus_optimal([F(1), F(2)], d.gram, d.lattice)
        assert (k.mu, k.m) == (F(1), 1)

    def test_zero(self):
        with pytest.raises(ZeroConstraintError):
            torus_optimal([F(0, 0)], C2.gram)

    def test_empty(self):
        with pytest.raises(ValueError):
            torus_optimal([], C2.gram)


class TestCandidates:
    def test_a1(self):
        assert candidate_labels(adjoint_module(A1), A1) == (F("1/2"),)

    def test_c2_superset(self):
        c = set(candidate_labels(adjoint_module(C2), C2))
        assert {F("3/2", "1/2"), F(1, 0), F("1/2", "1/2"), F("1/2", 0)} <= c
        assert all(C2.is_dominant(x) for x in c)

    def test_empty(self):
        assert candidate_labels(WeightedModule((), 1), A1) == ()


class TestGenericSemistable:
    def test_torus(self):
        assert generic_semistable(torus(1), mod((1,), (-1,)))
        assert not generic_semistable(torus(1), mod((1,), (2,)))

    def test_a1_standard(self):
        assert not generic_semistable(A1, mod((1,), (-1,)))
        assert dense_stratum(A1, mod((1,), (-1,))) == F(1)

    def test_a1_adjoint(self):
        assert generic_semistable(A1, adjoint_module(A1))

    def test_a1_binary_cubics(self):
        assert generic_semistable(A1, mod((3,), (1,), (-1,), (-3,)))

    def test_empty_module(self):
        assert not generic_semistable(A1, WeightedModule((), 1))

    def test_budget(self):
        with limits(max_depth=0):
            with pytest.raises(BudgetExceeded):
                generic_semistable(A1, mod((1,), (-1,)))
        # the cached answer from a roomier budget must not leak through
        assert not generic_semistable(A1, mod((1,), (-1,)))


class TestKirwanNess:
    def test_examples(self):
        assert stratum_nonempty(F("1/2"), adjoint_module(A1), A1)
        assert stratum_nonempty(F("3/2", "1/2"), adjoint_module(C2), C2)
        assert not stratum_nonempty(F(1, 0), adjoint_module(C2), C2)

    def test_certificate_contents(self):
        c = kn_certificate(F(1, 0), adjoint_module(C2), C2)
        assert set(c["graded_weights"]) == {F(1, -1), F(1, 1)}
        assert c["semistable"] is False
        assert c["dense_substratum"] is not None

    def test_not_normalized(self):
        with pytest.raises(ValueError):
            kn_certificate(F(5, 0), adjoint_module(C2), C2)
        with pytest.raises(ValueError):
            kn_certificate(F(0, 0), adjoint_module(C2), C2)

    def test_relative_nonsplit_recursion(self):
        d = build_relative("root 1,0 mult 2\nroot 0,1 mult 1\nroot 0,2 mult 1\nsimple 1,0\nsimple 0,1\ngram 1,0;0,1")
        m = adjoint_module(d)
        with pytest.raises(RelativeRecursionError):
            kn_certificate(F(1, 0), m, d)


class TestVectorLabel:
    def test_a1_root_vector(self):
        m = adjoint_module(A1)
        r = vector_label((0, 0, 1), m, A1)
        assert r.status is Outcome.CERTIFIED
        assert r.label == F("1/2")

    def test_a1_zero_weight(self):
        r = vector_label((0, 1, 0), adjoint_module(A1), A1)
        assert r.status is Outcome.SEMISTABLE

    def test_zero_vector(self):
        assert vector_label((0, 0, 0), adjoint_module(A1), A1).status is Outcome.ZERO

    def test_c2_simple_roots(self):
        m = adjoint_module(C2)
        basis = m.basis()
        v = [1 if w in (F(1, -1), F(0, 2)) else 0 for w in basis]
        r = vector_label(v, m, C2)
        assert r.status is Outcome.CERTIFIED
        assert r.label == F("3/2", "1/2")

    def test_c2_flagged(self):
        # support {alpha, alpha+beta}: torus optimum (1,0), M^perp is SL2 acting on a standard module
        m = adjoint_module(C2)
        v = [1 if w in (F(1, -1), F(1, 1)) else 0 for w in m.basis()]
        r = vector_label(v, m, C2)
        assert r.status is Outcome.FLAGGED
        assert r.kempf.mu == F(1, 0)

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            vector_label((1,), adjoint_module(A1), A1)
