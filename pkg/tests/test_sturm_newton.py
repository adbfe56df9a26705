from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from polydom.newton import convex_hull, in_hull, newton_certify, nondegenerate
from polydom.parser import parse_poly
from polydom.poly import tilde_squared
from polydom.sturm import count_real_roots, univariate


@settings(max_examples=60)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=5, unique=True),
       st.integers(0, 2))
def test_root_count_from_roots(roots, extra_quadratics):
    # prod (t - r) * (t^2 + 1)^k has exactly len(roots) distinct real roots
    f = univariate([1])
    for r in roots:
        f *= univariate([-r, 1])
    for _ in range(extra_quadratics):
        f *= univariate([1, 0, 1])
    assert count_real_roots(f) == len(roots)


@settings(max_examples=40)
@given(st.lists(st.integers(-5, 5), min_size=2, max_size=6))
def test_root_count_against_numpy(coeffs):
    if all(c == 0 for c in coeffs[1:]):
        return
    f = univariate(coeffs)
    if f.degree() < 1:
        return
    g = f.gcd(f.derivative())
    square_free = f / g if g.degree() > 0 else f
    roots = np.roots([float(c) for c in reversed([Fraction(int(square_free[k].p), int(square_free[k].q))
                                                  for k in range(square_free.degree() + 1)])])
    real = sum(1 for z in roots if abs(z.imag) < 1e-7)
    assert count_real_roots(f) == real


def test_hull():
    pts = [(0, 0), (2, 0), (0, 2), (1, 1), (1, 0)]
    hull = convex_hull(pts)
    assert set(hull) == {(0, 0), (2, 0), (0, 2)}
    assert in_hull((1, 1), hull) and in_hull((Fraction(1, 2), Fraction(1, 2)), hull)
    assert not in_hull((2, 1), hull)
    assert in_hull((1, 0), [(0, 0), (2, 0)]) and not in_hull((1, 1), [(0, 0), (2, 0)])


def test_nondegenerate():
    assert nondegenerate(tilde_squared(parse_poly("x1^2 + x2^2")))
    # x1 - x2 vanishes along a line at infinity: the top edge has a real root
    assert not nondegenerate(tilde_squared(parse_poly("x1 - x2")))


def test_newton_certificate_mixed_weights():
    # |x1^2 + i*x2|^2 = x1^4 + x2^2: quasi-elliptic, vertices 1, x1^4, x2^2
    psq = tilde_squared(parse_poly("x1^2 + i*x2"))
    assert nondegenerate(psq)
    # x1^2 + x2 vanishes on a parabola, which shows up as a real root on an edge
    assert not nondegenerate(tilde_squared(parse_poly("x1^2 + x2")))
    assert newton_certify(psq, tilde_squared(parse_poly("x1", 2)), compact=True) is not None
    assert newton_certify(psq, tilde_squared(parse_poly("x2", 2)), compact=False) is not None
    assert newton_certify(psq, tilde_squared(parse_poly("x2", 2)), compact=True) is None
    assert newton_certify(psq, tilde_squared(parse_poly("x1*x2")), compact=False) is None
