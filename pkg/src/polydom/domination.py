"""
Matrix-level domination.

P dominates Q when, writing Q P+ = (q_lj / Delta), every q_lj is dominated
by Delta and ker P(xi) is contained in ker Q(xi) for almost every xi.  The
kernel condition is checked exactly through the identity Q A P = Delta Q.
Compact domination replaces the entry condition by q_lj <_c Delta.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from . import hormander
from .errors import DimensionMismatch, ShapeMismatch, ZeroOperator
from .hormander import Mode, Outcome, ScalarVerdict, WitnessCurve
from .matpoly import MatrixPoly, PseudoinverseRep, pseudoinverse
from .poly import NEG_INF, ScalarPoly, multi_indices


@dataclass(frozen=True)
class ReducedPair:
    """Q P+ = entries / delta, with entries = Q A."""

    entries: MatrixPoly
    delta: ScalarPoly
    source_rep: PseudoinverseRep


@dataclass(frozen=True)
class DominationReport:
    """Outcome of a matrix-level decision.

    ``entry_verdicts`` is an L x M grid; an entry is None when it was not
    examined (kernel inclusion failed, or fail-fast stopped early).
    ``failing_entry`` is 1-based (row, column).
    """

    overall: Outcome
    mode: Mode
    kernel_inclusion: bool
    entry_verdicts: tuple
    failing_entry: Optional[tuple] = None
    witness: Optional[WitnessCurve] = None
    notes: str = ""
    reduced: Optional[ReducedPair] = None

    def __post_init__(self):
        verdicts = [v for row in self.entry_verdicts for v in row if v is not None]
        if not self.kernel_inclusion or any(v.outcome is Outcome.NOT_DOMINATES for v in verdicts):
            expected = Outcome.NOT_DOMINATES
        elif all(
            v is not None and v.outcome is Outcome.DOMINATES
            for row in self.entry_verdicts for v in row
        ):
            expected = Outcome.DOMINATES
        else:
            expected = Outcome.UNKNOWN
        if self.overall is not expected:
            raise AssertionError(f"overall {self.overall} inconsistent with evidence ({expected})")


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("POLYDOM_THREADS", "1")))
    except ValueError:
        return 1


def _check_operands(P: MatrixPoly, Q: MatrixPoly):
    if P.dim != Q.dim:
        raise DimensionMismatch(f"P lives in d={P.dim}, Q in d={Q.dim}")
    if Q.cols != P.cols:
        raise ShapeMismatch(f"P is {P.shape} and Q is {Q.shape}; both must act on C^N")
    if P.is_zero():
        raise ZeroOperator("P is identically zero")


def reduced_matrix(P: MatrixPoly, Q: MatrixPoly, rep: Optional[PseudoinverseRep] = None) -> ReducedPair:
    _check_operands(P, Q)
    rep = rep if rep is not None else pseudoinverse(P)
    return ReducedPair(entries=Q @ rep.A, delta=rep.delta, source_rep=rep)


def kernel_inclusion(P: MatrixPoly, Q: MatrixPoly, pair: ReducedPair) -> bool:
    """Exact test of Q A P = Delta Q, i.e. ker P(xi) in ker Q(xi) a.e."""
    if pair.entries.shape != (Q.rows, P.rows):
        raise ShapeMismatch("reduced pair does not match P and Q")
    return pair.entries @ P == Q.scale(pair.delta)


def _entry_seed(seed: int, l: int, j: int) -> int:
    return seed * 7919 + l * 101 + j


def decide(P: MatrixPoly, Q: MatrixPoly, mode: Mode, *, rep: Optional[PseudoinverseRep] = None,
           seed: int = 0, n_random: int = hormander.DEFAULT_RANDOM_WEIGHTS,
           heuristic: bool = False, fail_fast: bool = True) -> DominationReport:
    mode = Mode(mode)
    pair = reduced_matrix(P, Q, rep)
    L, M = pair.entries.shape
    empty = tuple(tuple(None for _ in range(M)) for _ in range(L))
    if not kernel_inclusion(P, Q, pair):
        return DominationReport(
            Outcome.NOT_DOMINATES, mode, False, empty,
            notes="kernel inclusion fails: Q A P != Delta Q", reduced=pair,
        )

    grid = [[None] * M for _ in range(L)]
    pending = []
    for l in range(L):
        for j in range(M):
            q = pair.entries[l, j]
            if q.is_zero():
                grid[l][j] = hormander.decide(pair.delta, q, mode)
            else:
                pending.append((q.degree, l, j))
    pending.sort()

    def run(item):
        _, l, j = item
        return hormander.decide(
            pair.delta, pair.entries[l, j], mode,
            seed=_entry_seed(seed, l, j), n_random=n_random, heuristic=heuristic,
        )

    failing = None
    workers = _workers()
    if workers > 1 and len(pending) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, pending))
        for (_, l, j), verdict in zip(pending, results):
            grid[l][j] = verdict
            if failing is None and verdict.outcome is Outcome.NOT_DOMINATES:
                failing = (l, j)
    else:
        for item in pending:
            _, l, j = item
            verdict = run(item)
            grid[l][j] = verdict
            if verdict.outcome is Outcome.NOT_DOMINATES:
                failing = (l, j)
                if fail_fast:
                    break

    grid = tuple(tuple(row) for row in grid)
    if failing is not None:
        l, j = failing
        return DominationReport(
            Outcome.NOT_DOMINATES, mode, True, grid,
            failing_entry=(l + 1, j + 1), witness=grid[l][j].witness,
            notes=f"entry ({l + 1},{j + 1}) is not {'compactly ' if mode is Mode.COMPACT else ''}"
                  f"dominated by Delta",
            reduced=pair,
        )
    if all(v.outcome is Outcome.DOMINATES for row in grid for v in row):
        return DominationReport(Outcome.DOMINATES, mode, True, grid, reduced=pair)
    unknown = [(l + 1, j + 1) for l in range(L) for j in range(M) if grid[l][j].outcome is Outcome.UNKNOWN]
    return DominationReport(
        Outcome.UNKNOWN, mode, True, grid,
        notes=f"undecided entries: {unknown}", reduced=pair,
    )


def decide_domination(P: MatrixPoly, Q: MatrixPoly, **kw) -> DominationReport:
    """Does P dominate Q, i.e. ||Q(D)u|| <= C ||P(D)u|| on C_c^inf(B)^N?"""
    return decide(P, Q, Mode.STRICT, **kw)


def decide_compact_domination(P: MatrixPoly, Q: MatrixPoly, **kw) -> DominationReport:
    return decide(P, Q, Mode.COMPACT, **kw)


def derivative_operator(P: MatrixPoly, alpha) -> MatrixPoly:
    """The symbol d^alpha P, entrywise."""
    return P.derive(alpha)


@dataclass(frozen=True)
class LscReport:
    status: str  # "satisfied" | "fails" | "unknown"
    table: tuple  # ((alpha, DominationReport), ...)

    @property
    def failing_alpha(self):
        for alpha, rep in self.table:
            if rep.overall is Outcome.NOT_DOMINATES:
                return alpha
        return None


def lsc_hypothesis_check(P: MatrixPoly, **kw) -> LscReport:
    """Check that P compactly dominates every nonzero P^(alpha), alpha != 0."""
    if P.is_zero():
        raise ZeroOperator("P is identically zero")
    deg = P.degree
    table = []
    if deg is not NEG_INF and deg >= 1:
        for alpha in multi_indices(P.dim, deg, min_order=1):
            Pa = derivative_operator(P, alpha)
            if Pa.is_zero():
                continue
            table.append((alpha, decide_compact_domination(P, Pa, **kw)))
    outcomes = [rep.overall for _, rep in table]
    if any(o is Outcome.NOT_DOMINATES for o in outcomes):
        status = "fails"
    elif any(o is Outcome.UNKNOWN for o in outcomes):
        status = "unknown"
    else:
        status = "satisfied"
    return LscReport(status, tuple(table))
