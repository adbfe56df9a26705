"""Real-root counting for univariate rational polynomials via Sturm chains."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import flint


def univariate(coeffs: Sequence[Fraction]) -> flint.fmpq_poly:
    """Build a polynomial from ascending coefficients."""
    return flint.fmpq_poly([flint.fmpq(Fraction(c).numerator, Fraction(c).denominator) for c in coeffs])


def sturm_chain(f: flint.fmpq_poly) -> list:
    chain = [f, f.derivative()]
    while not chain[-1].is_zero():
        rem = chain[-2] % chain[-1]
        chain.append(-rem)
    return chain[:-1]


def _sign_changes(signs: list) -> int:
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_at_infinity(g: flint.fmpq_poly, negative: bool) -> int:
    lead = g[g.degree()]
    s = 1 if lead > 0 else -1
    if negative and g.degree() % 2 == 1:
        s = -s
    return s


def count_real_roots(f: flint.fmpq_poly) -> int:
    """Number of distinct real roots of f (f must be nonzero)."""
    if f.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")
    if f.degree() == 0:
        return 0
    chain = sturm_chain(f)
    lo = _sign_changes([_sign_at_infinity(g, True) for g in chain])
    hi = _sign_changes([_sign_at_infinity(g, False) for g in chain])
    return lo - hi
