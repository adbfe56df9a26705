"""
Newton-polygon bounds for nonnegative polynomials in two variables.

If every face polynomial f_F of a polynomial f >= 0 (vertices, edges and
the whole polygon) is positive on (R \\ {0})^2, then f is comparable to the
sum of its vertex monomials, f >= c * sum_v xi^v.  Any monomial whose
exponent lies in the polygon is bounded by that sum (weighted AM-GM), which
turns polygon containment into a domination certificate.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .poly import ScalarPoly
from .sturm import count_real_roots, univariate

SHIFTS = tuple(Fraction(1, 2 ** k) for k in range(7))


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Sequence[tuple]) -> list:
    """Vertices of the convex hull in counter-clockwise order (Andrew's chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def in_hull(point, hull: Sequence[tuple]) -> bool:
    """Exact membership of a (rational) point in a convex polygon."""
    if len(hull) == 1:
        return tuple(point) == tuple(hull[0])
    if len(hull) == 2:
        a, b = hull
        if _cross(a, b, point) != 0:
            return False
        return min(a[0], b[0]) <= point[0] <= max(a[0], b[0]) and \
            min(a[1], b[1]) <= point[1] <= max(a[1], b[1])
    n = len(hull)
    return all(_cross(hull[i], hull[(i + 1) % n], point) >= 0 for i in range(n))


def _real_terms(f: ScalarPoly) -> dict:
    if not f.is_real():
        raise ValueError("Newton bounds need a real polynomial")
    return {e: c.re for e, c in f.terms.items()}


def nondegenerate(f: ScalarPoly) -> bool:
    """Face-positivity test for a polynomial f > 0 on R^2.

    Vertex coefficients must be positive with even exponents; along each edge
    from v in primitive direction (a, b) the polynomial sum_k c_(v+k(a,b)) s^k
    must have no real root (s = xi1^a xi2^b covers every nonzero real).
    The whole-polygon face needs f > 0 on (R*)^2, which the caller guarantees.
    """
    if f.dim != 2:
        raise ValueError("only implemented for d = 2")
    terms = _real_terms(f)
    if not terms:
        return False
    hull = convex_hull(list(terms))
    for v in hull:
        if terms[v] <= 0 or v[0] % 2 or v[1] % 2:
            return False
    if len(hull) < 3:
        return True
    n = len(hull)
    for i in range(n):
        v, w = hull[i], hull[(i + 1) % n]
        dx, dy = w[0] - v[0], w[1] - v[1]
        g = gcd(abs(dx), abs(dy))
        a, b = dx // g, dy // g
        coeffs = [Fraction(terms.get((v[0] + k * a, v[1] + k * b), 0)) for k in range(g + 1)]
        if count_real_roots(univariate(coeffs)) > 0:
            return False
    return True


def newton_certify(psq: ScalarPoly, qsq: ScalarPoly, compact: bool) -> Optional[dict]:
    """Certificate parameters if q~^2 is bounded by (resp. decays against) p~^2.

    Strict: supp(q~^2) lies in Newt(p~^2).  Compact: additionally
    gamma + 2s e_i lies in Newt(p~^2) for every exponent gamma of q~^2 and
    each axis i, for some s > 0, so q~^2/p~^2 <= C / (1 + |xi1|^2s + |xi2|^2s).
    """
    if psq.dim != 2 or not nondegenerate(psq):
        return None
    hull = convex_hull(list(_real_terms(psq)))
    support = list(_real_terms(qsq))
    if not all(in_hull(g, hull) for g in support):
        return None
    if not compact:
        return {"vertices": len(hull)}
    for s in SHIFTS:
        if all(
            in_hull((g[0] + 2 * s, g[1]), hull) and in_hull((g[0], g[1] + 2 * s), hull)
            for g in support
        ):
            return {"vertices": len(hull), "s": str(s)}
    return None
