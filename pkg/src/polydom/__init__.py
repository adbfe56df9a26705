"""Exact domination checks for constant-coefficient differential operators."""

from .domination import (
    DominationReport, LscReport, decide_compact_domination, decide_domination,
    derivative_operator, kernel_inclusion, lsc_hypothesis_check, reduced_matrix,
)
from .errors import DimensionMismatch, PolydomError, ShapeMismatch, ZeroOperator
from .hormander import (
    Certificate, Mode, Outcome, ScalarVerdict, WitnessCurve, scalar_compactly_dominates,
    scalar_dominates, univariate_decide,
)
from .matpoly import (
    MatrixPoly, PseudoinverseRep, adjugate_representation, char_poly_faddeev, generic_rank,
    penrose_verify, pseudoinverse,
)
from .parser import ParseError, ParseInput, parse_matrix_poly, parse_poly
from .poly import GaussianRational, ScalarPoly, tilde_squared
from .probe import (
    GridFunction, ProbeReport, apply_operator, ratio_estimate, ray_oscillation_probe,
    synth_test_function,
)
from .report import emit_report

__version__ = "0.1.0"
