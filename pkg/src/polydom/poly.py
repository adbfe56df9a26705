"""
Exact sparse polynomials in d <= 9 real variables with Gaussian-rational
coefficients.

Coefficients live in Q(i).  A polynomial is stored as a pair (re, im) of
rational polynomials so that p = re + i*im; the rational parts are handled by
FLINT's multivariate arithmetic, which keeps products of the degree-30 sizes
produced by the pseudoinverse construction cheap.

Variables are x1..xd.  Since the variables range over R^d, conjugation acts
on coefficients only: p*(xi) = conj(p(xi)) for real xi.

    >>> x1 = ScalarPoly.variable(2, 1)
    >>> str((x1 + GaussianRational(0, 1)) * (x1 - GaussianRational(0, 1)))
    'x1^2 + 1'
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterator, Mapping, Sequence

import flint
import numpy as np

from .errors import DimensionMismatch

MAX_DIM = 9

MultiIndex = tuple  # tuple[int, ...] of length d


class _NegativeInfinity:
    """Degree of the zero polynomial.

    Compares below every integer but supports no arithmetic, so a stray
    ``deg(0) + 1`` fails loudly instead of producing a bogus degree.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __repr__(self):
        return "-inf"

    def __reduce__(self):
        return (_NegativeInfinity, ())


NEG_INF = _NegativeInfinity()


@lru_cache(maxsize=None)
def _ctx(dim: int):
    return flint.fmpq_mpoly_ctx.get(("x", dim), "deglex")


def _fmpq(value) -> flint.fmpq:
    if isinstance(value, flint.fmpq):
        return value
    if isinstance(value, int):
        return flint.fmpq(value)
    value = Fraction(value)
    return flint.fmpq(value.numerator, value.denominator)


def _fraction(value: flint.fmpq) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def _to_fraction(value) -> Fraction:
    if isinstance(value, flint.fmpq):
        return _fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, (int, Rational, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


@dataclass(frozen=True, eq=False)
class GaussianRational:
    """An element re + i*im of Q(i), always in canonical form."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _to_fraction(self.re))
        object.__setattr__(self, "im", _to_fraction(self.im))

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        return cls(value)

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        other = _maybe_scalar(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _maybe_scalar(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _maybe_scalar(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = _maybe_scalar(other)
        if other is NotImplemented:
            return other
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _maybe_scalar(other)
        if other is NotImplemented:
            return other
        n = other.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        num = self * other.conj()
        return GaussianRational(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        other = _maybe_scalar(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int):
        if k < 0:
            return GaussianRational(1) / (self ** (-k))
        out = GaussianRational(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = _maybe_scalar(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return _imag_text(self.im)
        sign = "-" if self.im < 0 else "+"
        mag = _imag_text(abs(self.im))
        return f"({self.re} {sign} {mag})"

    def __repr__(self):
        return f"GaussianRational({self})"


def _imag_text(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}*i"


def _maybe_scalar(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction, complex, flint.fmpq)):
        return GaussianRational.coerce(value)
    return NotImplemented


I = GaussianRational(0, 1)


def _grlex_key(exps: tuple) -> tuple:
    return (sum(exps), exps)


def monomial_text(exps: Sequence[int]) -> str:
    parts = []
    for k, e in enumerate(exps, start=1):
        if e == 1:
            parts.append(f"x{k}")
        elif e > 1:
            parts.append(f"x{k}^{e}")
    return "*".join(parts)


class ScalarPoly:
    """Immutable polynomial in ``dim`` real variables over Q(i)."""

    __slots__ = ("dim", "_re", "_im")

    def __init__(self, dim: int, re=None, im=None):
        if not 1 <= dim <= MAX_DIM:
            raise ValueError(f"dimension must be in 1..{MAX_DIM}, got {dim}")
        ctx = _ctx(dim)
        self.dim = dim
        self._re = re if re is not None else ctx.from_dict({})
        self._im = im if im is not None else ctx.from_dict({})

    # -- construction ------------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "ScalarPoly":
        return cls(dim)

    @classmethod
    def constant(cls, dim: int, value) -> "ScalarPoly":
        return cls.from_terms(dim, {(0,) * dim: value})

    @classmethod
    def one(cls, dim: int) -> "ScalarPoly":
        return cls.constant(dim, 1)

    @classmethod
    def variable(cls, dim: int, k: int) -> "ScalarPoly":
        """The coordinate x_k, with k counted from 1."""
        if not 1 <= k <= dim:
            raise ValueError(f"variable x{k} outside dimension {dim}")
        exps = [0] * dim
        exps[k - 1] = 1
        return cls.from_terms(dim, {tuple(exps): 1})

    @classmethod
    def from_terms(cls, dim: int, terms: Mapping[tuple, object]) -> "ScalarPoly":
        ctx = _ctx(dim)
        re, im = {}, {}
        for exps, coeff in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != dim or min(exps, default=0) < 0:
                raise ValueError(f"bad exponent vector {exps} for dimension {dim}")
            c = GaussianRational.coerce(coeff)
            if c.re:
                re[exps] = re.get(exps, 0) + c.re
            if c.im:
                im[exps] = im.get(exps, 0) + c.im
        re = {e: _fmpq(c) for e, c in re.items() if c}
        im = {e: _fmpq(c) for e, c in im.items() if c}
        return cls(dim, ctx.from_dict(re), ctx.from_dict(im))

    def _wrap(self, re, im) -> "ScalarPoly":
        return ScalarPoly(self.dim, re, im)

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict:
        """Mapping exponent tuple -> nonzero GaussianRational."""
        out = {}
        for e, c in self._re.to_dict().items():
            out[tuple(map(int, e))] = [_fraction(c), Fraction(0)]
        for e, c in self._im.to_dict().items():
            out.setdefault(tuple(map(int, e)), [Fraction(0), Fraction(0)])[1] = _fraction(c)
        return {e: GaussianRational(re, im) for e, (re, im) in out.items()}

    def sorted_terms(self) -> list:
        """Terms in descending graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return self._re.is_zero() and self._im.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def is_real(self) -> bool:
        """True when every coefficient is real."""
        return self._im.is_zero()

    def is_constant(self) -> bool:
        return self._re.is_constant() and self._im.is_constant()

    @property
    def degree(self):
        if self.is_zero():
            return NEG_INF
        return int(max(self._re.total_degree(), self._im.total_degree()))

    def degrees(self) -> tuple:
        """Per-variable degrees; NEG_INF in every slot for the zero polynomial."""
        if self.is_zero():
            return (NEG_INF,) * self.dim
        dr, di = self._re.degrees(), self._im.degrees()
        return tuple(int(max(a, b)) for a, b in zip(dr, di))

    def real_part(self) -> "ScalarPoly":
        """The polynomial with coefficients Re c (not Re p(xi) for complex xi)."""
        return self._wrap(self._re, _ctx(self.dim).from_dict({}))

    def imag_part(self) -> "ScalarPoly":
        return self._wrap(self._im, _ctx(self.dim).from_dict({}))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "ScalarPoly":
        if isinstance(other, ScalarPoly):
            if other.dim != self.dim:
                raise DimensionMismatch(
                    f"polynomials in {self.dim} and {other.dim} variables"
                )
            return other
        scalar = _maybe_scalar(other)
        if scalar is NotImplemented:
            return NotImplemented
        return ScalarPoly.constant(self.dim, scalar)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(self._re + other._re, self._im + other._im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(self._re - other._re, self._im - other._im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return self._wrap(-self._re, -self._im)

    def __mul__(self, other):
        if not isinstance(other, ScalarPoly):
            scalar = _maybe_scalar(other)
            if scalar is NotImplemented:
                return scalar
            return self.scale(scalar)
        other = self._coerce(other)
        a, b, c, d = self._re, self._im, other._re, other._im
        if b.is_zero() and d.is_zero():
            return self._wrap(a * c, b)
        if b.is_zero():
            return self._wrap(a * c, a * d)
        if d.is_zero():
            return self._wrap(a * c, b * c)
        return self._wrap(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def scale(self, c) -> "ScalarPoly":
        c = GaussianRational.coerce(c)
        cr, ci = _fmpq(c.re), _fmpq(c.im)
        if not c.im:
            return self._wrap(self._re * cr, self._im * cr)
        return self._wrap(self._re * cr - self._im * ci, self._re * ci + self._im * cr)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = ScalarPoly.one(self.dim)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def conj(self) -> "ScalarPoly":
        """Coefficient-wise conjugate p*."""
        return self._wrap(self._re, -self._im)

    def abs_squared(self) -> "ScalarPoly":
        """(Re p)^2 + (Im p)^2 as a real polynomial; equals p * p.conj()."""
        return self._wrap(self._re * self._re + self._im * self._im, self._im * 0)

    def exact_quotient(self, divisor: "ScalarPoly"):
        """Return self / divisor if the division is exact, else None."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        num = self * divisor.conj()
        den = divisor.abs_squared()._re
        qr, rr = divmod(num._re, den)
        if not rr.is_zero():
            return None
        qi, ri = divmod(num._im, den)
        if not ri.is_zero():
            return None
        return self._wrap(qr, qi)

    # -- calculus / evaluation ---------------------------------------------

    def derive(self, alpha: Sequence[int]) -> "ScalarPoly":
        """Partial derivative d^alpha."""
        if len(alpha) != self.dim:
            raise DimensionMismatch(f"multi-index {tuple(alpha)} has wrong length")
        re, im = self._re, self._im
        for var, k in enumerate(alpha):
            if k < 0:
                raise ValueError("negative derivative order")
            for _ in range(k):
                re = re.derivative(var)
                im = im.derivative(var)
        return self._wrap(re, im)

    def eval(self, point: Sequence) -> GaussianRational:
        """Exact value at a rational point."""
        if len(point) != self.dim:
            raise DimensionMismatch(f"point has {len(point)} coordinates, expected {self.dim}")
        vals = [_fmpq(_to_fraction(v)) for v in point]
        return GaussianRational(_fraction(self._re(*vals)), _fraction(self._im(*vals)))

    def homogeneous_part(self, k: int) -> "ScalarPoly":
        return ScalarPoly.from_terms(
            self.dim, {e: c for e, c in self.terms.items() if sum(e) == k}
        )

    def top_form(self) -> "ScalarPoly":
        """Highest-degree homogeneous component (zero for p = 0)."""
        if self.is_zero():
            return self
        return self.homogeneous_part(self.degree)

    def numeric(self):
        """(exponents, coefficients) arrays for floating-point evaluation."""
        items = self.sorted_terms()
        exps = np.array([e for e, _ in items], dtype=np.int64).reshape(len(items), self.dim)
        coeffs = np.array([complex(c) for _, c in items], dtype=complex)
        return exps, coeffs

    # -- comparison / printing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, ScalarPoly):
            return self.dim == other.dim and self._re == other._re and self._im == other._im
        scalar = _maybe_scalar(other)
        if scalar is NotImplemented:
            return NotImplemented
        return self == ScalarPoly.constant(self.dim, scalar)

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def __str__(self):
        items = self.sorted_terms()
        if not items:
            return "0"
        out = []
        for exps, c in items:
            negative, body = _term_text(c, monomial_text(exps))
            if not out:
                out.append(("-" if negative else "") + body)
            else:
                out.append((" - " if negative else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"ScalarPoly(dim={self.dim}, {self})"


def _term_text(c: GaussianRational, mono: str) -> tuple:
    if c.im == 0 or c.re == 0:
        value = c.re if c.im == 0 else c.im
        negative = value < 0
        mag = abs(value)
        if c.im == 0:
            if not mono:
                return negative, str(mag)
            return negative, mono if mag == 1 else f"{mag}*{mono}"
        text = "i" if mag == 1 else f"{mag}*i"
        return negative, f"{text}*{mono}" if mono else text
    text = str(c)
    return False, f"{text}*{mono}" if mono else text


def iter_derivatives(p: ScalarPoly) -> Iterator[tuple]:
    """Yield (alpha, d^alpha p) for every alpha with d^alpha p != 0."""
    dim = p.dim

    def walk(q: ScalarPoly, var: int, prefix: tuple):
        if var == dim:
            yield prefix, q
            return
        k = 0
        cur = q
        while not cur.is_zero():
            yield from walk(cur, var + 1, prefix + (k,))
            step = [0] * dim
            step[var] = 1
            cur = cur.derive(step)
            k += 1

    if p.is_zero():
        return
    yield from walk(p, 0, ())


def tilde_squared(p: ScalarPoly) -> ScalarPoly:
    """Sum over all alpha of |d^alpha p|^2, a real polynomial.

    The weight function p~ is its square root.  For p != 0 it is bounded
    below by |alpha! c_alpha|^2 > 0 for any top-degree coefficient c_alpha.
    """
    total = ScalarPoly.zero(p.dim)
    for _, deriv in iter_derivatives(p):
        total = total + deriv.abs_squared()
    return total


def multi_indices(dim: int, max_order: int, min_order: int = 0) -> list:
    """All alpha in N^dim with min_order <= |alpha| <= max_order, graded."""
    out = []
    for order in range(min_order, max_order + 1):
        for combo in itertools.combinations_with_replacement(range(dim), order):
            alpha = [0] * dim
            for v in combo:
                alpha[v] += 1
            out.append(tuple(alpha))
    return out
