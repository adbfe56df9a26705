"""Random instance generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from polydom.matpoly import MatrixPoly, determinant
from polydom.poly import GaussianRational, ScalarPoly


def rand_exponent(rng: random.Random, d: int, deg: int) -> tuple:
    e = [0] * d
    for _ in range(rng.randint(0, deg)):
        e[rng.randrange(d)] += 1
    return tuple(e)


def rand_poly(rng: random.Random, d: int, deg: int, nterms: int, complex_prob: float = 0.3,
              denominators: bool = False) -> ScalarPoly:
    terms = {}
    for _ in range(nterms):
        den = rng.randint(1, 3) if denominators else 1
        re = Fraction(rng.randint(-3, 3), den)
        im = Fraction(rng.randint(-3, 3), den) if rng.random() < complex_prob else 0
        terms[rand_exponent(rng, d, deg)] = GaussianRational(re, im)
    return ScalarPoly.from_terms(d, terms)


def rand_nonzero_poly(rng: random.Random, d: int, deg: int, max_terms: int = 4, **kw) -> ScalarPoly:
    while True:
        p = rand_poly(rng, d, deg, rng.randint(1, max_terms), **kw)
        if not p.is_zero():
            return p


def rand_matrix(rng: random.Random, d: int, rows: int, cols: int, deg: int,
                max_terms: int = 3) -> MatrixPoly:
    while True:
        P = MatrixPoly([[rand_poly(rng, d, deg, rng.randint(0, max_terms)) for _ in range(cols)]
                        for _ in range(rows)])
        if not P.is_zero():
            return P


def penrose_instances(seed: int = 1, count: int = 50) -> list:
    """Random P with d <= 3, entry degree <= 3, size <= 3x3."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        d = rng.randint(1, 3)
        out.append(rand_matrix(rng, d, rng.randint(1, 3), rng.randint(1, 3), 3))
    return out


def invertible_instances(seed: int = 8, count: int = 20, d: int = 2, n: int = 2, deg: int = 2) -> list:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        P = rand_matrix(rng, d, n, n, deg)
        if not determinant(P).is_zero():
            out.append(P)
    return out


def rand_point(rng: random.Random, d: int) -> tuple:
    return tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(d))


# hypothesis strategies

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
gaussians = st.builds(GaussianRational, rationals, rationals)


@st.composite
def polys(draw, d=None, max_deg=3, max_terms=5, real=False):
    d = draw(st.integers(1, 3)) if d is None else d
    exps = st.lists(st.integers(0, max_deg), min_size=d, max_size=d).filter(
        lambda e: sum(e) <= max_deg).map(tuple)
    coeff = st.builds(GaussianRational, rationals) if real else gaussians
    terms = draw(st.dictionaries(exps, coeff, max_size=max_terms))
    return ScalarPoly.from_terms(d, terms)


@st.composite
def poly_pairs(draw, max_deg=3):
    d = draw(st.integers(1, 3))
    return draw(polys(d=d, max_deg=max_deg)), draw(polys(d=d, max_deg=max_deg))


@st.composite
def points(draw, d):
    return tuple(draw(st.lists(rationals, min_size=d, max_size=d)))
