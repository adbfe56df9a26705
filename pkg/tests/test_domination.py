import random

import numpy as np
import pytest

from helpers import penrose_instances, rand_point
from polydom.domination import (
    DominationReport, decide_compact_domination, decide_domination, derivative_operator,
    kernel_inclusion, lsc_hypothesis_check, reduced_matrix,
)
from polydom.errors import DimensionMismatch, ShapeMismatch, ZeroOperator
from polydom.hormander import Mode, Outcome
from polydom.matpoly import MatrixPoly, adjugate_representation
from polydom.parser import parse_matrix_poly, parse_poly

M = parse_matrix_poly
COUNTER = M("[x1^2+x2^2, x1; x2, 0]")
I2 = MatrixPoly.identity(2, 2)


class TestReduced:
    def test_counterexample(self):
        pair = reduced_matrix(COUNTER, I2)
        assert pair.delta == parse_poly("x1^2*x2^2")
        q22 = pair.entries[1, 1]
        assert q22.exact_quotient(parse_poly("x1*x2*(x1^2+x2^2)")) is not None
        rng = random.Random(0)
        for _ in range(10):
            xi = rand_point(rng, 2)
            delta = complex(pair.delta.eval(xi))
            if delta == 0:
                continue
            inv = np.linalg.inv(COUNTER.eval_complex(xi))
            assert np.allclose(pair.entries.eval_complex(xi) / delta, inv)

    def test_divergence_self(self):
        P = M("[x1, x2]")
        pair = reduced_matrix(P, P)
        assert pair.entries == M("[x1^2+x2^2]")
        assert pair.delta == parse_poly("x1^2+x2^2")

    def test_errors(self):
        with pytest.raises(ZeroOperator):
            reduced_matrix(MatrixPoly.zeros(2, 2, 2), I2)
        with pytest.raises(ShapeMismatch):
            reduced_matrix(M("[x1, x2]"), MatrixPoly.identity(2, 3))
        with pytest.raises(DimensionMismatch):
            reduced_matrix(M("[x1, x2]"), MatrixPoly.identity(3, 2))


class TestKernel:
    def test_divergence_fails(self):
        P = M("[x1, x2]")
        pair = reduced_matrix(P, I2)
        assert not kernel_inclusion(P, I2, pair)
        assert pair.entries @ P == M("[x1^2, x1*x2; x1*x2, x2^2]")

    def test_counterexample_holds(self):
        assert kernel_inclusion(COUNTER, I2, reduced_matrix(COUNTER, I2))

    def test_self_inclusion(self):
        for P in penrose_instances(seed=21, count=15):
            assert kernel_inclusion(P, P, reduced_matrix(P, P))


class TestDecide:
    def test_counterexample(self):
        rep = decide_domination(COUNTER, I2)
        assert rep.overall is Outcome.NOT_DOMINATES
        assert rep.kernel_inclusion
        assert rep.failing_entry == (2, 2)
        assert rep.witness.weights == (1, 0)
        q, p = rep.witness.t_degrees
        assert q > p

    def test_scalar_hormander(self):
        for text in ("[x1^3 - x2]", "[i*x1*x2 + 2]", "[x1^2 - x2^2]"):
            assert decide_domination(M(text), MatrixPoly.identity(2, 1)).overall is Outcome.DOMINATES

    def test_reflexive_laplacian(self):
        L = M("[x1^2+x2^2]")
        assert decide_domination(L, L).overall is Outcome.DOMINATES

    def test_zero_rows_are_vacuous(self):
        rep = decide_domination(M("[x1, x2]"), M("[x1, x2; 0, 0]"))
        assert rep.overall is Outcome.DOMINATES
        assert rep.entry_verdicts[1][0].certificate.kind == "vacuous"

    def test_report_invariants(self):
        v = decide_domination(M("[x1]"), M("[1]")).entry_verdicts
        with pytest.raises(AssertionError):
            DominationReport(Outcome.UNKNOWN, Mode.STRICT, True, v)
        with pytest.raises(AssertionError):
            DominationReport(Outcome.DOMINATES, Mode.STRICT, False, v)

    def test_fail_fast_off_examines_everything(self):
        rep = decide_domination(COUNTER, I2, fail_fast=False)
        assert all(v is not None for row in rep.entry_verdicts for v in row)
        assert rep.overall is Outcome.NOT_DOMINATES

    def test_threads_give_same_report(self, monkeypatch):
        a = decide_domination(COUNTER, I2, fail_fast=False)
        monkeypatch.setenv("POLYDOM_THREADS", "3")
        b = decide_domination(COUNTER, I2, fail_fast=False)
        assert a.entry_verdicts == b.entry_verdicts and a.failing_entry == b.failing_entry

    def test_self_domination_never_refuted(self):
        for P in penrose_instances(seed=31, count=10):
            rep = decide_domination(P, P, n_random=8)
            assert rep.kernel_inclusion
            assert rep.overall is not Outcome.NOT_DOMINATES

    def test_representation_choice(self):
        P = M("[x1, 1; x2, x1*x2 + 1]")
        a = decide_domination(P, I2)
        b = decide_domination(P, I2, rep=adjugate_representation(P, reduced=True))
        assert a.overall is b.overall


class TestDerivatives:
    def test_examples(self):
        L = M("[x1^2+x2^2]")
        assert derivative_operator(L, (1, 0)) == M("[2*x1]", 2)
        assert derivative_operator(L, (0, 0)) == L
        assert derivative_operator(L, (2, 1)).is_zero()


class TestLsc:
    def test_laplacian(self):
        rep = lsc_hypothesis_check(M("[x1^2+x2^2]"))
        assert rep.status == "satisfied"
        # (1,1) is skipped: that derivative vanishes
        assert sorted(a for a, _ in rep.table) == [(0, 1), (0, 2), (1, 0), (2, 0)]

    def test_d1(self):
        rep = lsc_hypothesis_check(M("[x1]", 2))
        assert rep.status == "fails"
        assert rep.failing_alpha == (1, 0)
        assert rep.table[0][1].witness.weights == (0, 1)

    def test_constant(self):
        rep = lsc_hypothesis_check(M("[3]", 2))
        assert rep.status == "satisfied" and rep.table == ()

    def test_zero(self):
        with pytest.raises(ZeroOperator):
            lsc_hypothesis_check(MatrixPoly.zeros(2, 1, 1))

    def test_compact_implies_strict(self):
        for text in ("[x1^2+x2^2]", "[x1]", "[x1^2 + i*x2]", "[x1*x2]"):
            P = M(text, 2)
            for alpha, compact in lsc_hypothesis_check(P).table:
                if compact.overall is Outcome.DOMINATES:
                    strict = decide_domination(P, derivative_operator(P, alpha))
                    assert strict.overall is Outcome.DOMINATES
