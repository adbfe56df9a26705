"""
Matrix polynomials and their symbolic Moore-Penrose pseudoinverse.

The pseudoinverse of a matrix polynomial P is a rational matrix.  With
B = P P* and det(lambda I - B) = lambda^M + a_1 lambda^(M-1) + ... + a_M,
Decell's closed form reads

    P+ = -(1/a_r) P* (B^(r-1) + a_1 B^(r-2) + ... + a_(r-1) I),

where r is the largest index with a_r != 0 (the generic rank of P).  We
return it as P+ = A / Delta with Delta = (-1)^r a_r, which is the r-th
elementary symmetric function of the (nonnegative) eigenvalues of B and
hence nonnegative on R^d.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import DimensionMismatch, ShapeMismatch, ZeroOperator
from .poly import NEG_INF, GaussianRational, ScalarPoly


class MatrixPoly:
    """Immutable rows x cols grid of ScalarPoly sharing one dimension d."""

    __slots__ = ("rows", "cols", "dim", "_entries")

    def __init__(self, entries: Sequence[Sequence[ScalarPoly]]):
        grid = tuple(tuple(row) for row in entries)
        if not grid or not grid[0]:
            raise ShapeMismatch("a matrix needs at least one row and one column")
        cols = len(grid[0])
        if any(len(row) != cols for row in grid):
            raise ShapeMismatch("ragged rows")
        dims = {e.dim for row in grid for e in row}
        if len(dims) != 1:
            raise DimensionMismatch(f"entries mix dimensions {sorted(dims)}")
        self.rows = len(grid)
        self.cols = cols
        self.dim = dims.pop()
        self._entries = grid

    @classmethod
    def from_rows(cls, dim: int, rows) -> "MatrixPoly":
        """Build from nested lists whose items are ScalarPoly or scalars."""
        return cls([[_as_poly(dim, e) for e in row] for row in rows])

    @classmethod
    def identity(cls, dim: int, n: int) -> "MatrixPoly":
        return cls.from_rows(dim, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, dim: int, rows: int, cols: int) -> "MatrixPoly":
        return cls.from_rows(dim, [[0] * cols for _ in range(rows)])

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, idx) -> ScalarPoly:
        i, j = idx
        return self._entries[i][j]

    def entries(self) -> tuple:
        return self._entries

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self._entries for e in row)

    @property
    def degree(self):
        return max((e.degree for row in self._entries for e in row), default=NEG_INF)

    def map(self, fn: Callable[[ScalarPoly], ScalarPoly]) -> "MatrixPoly":
        return MatrixPoly([[fn(e) for e in row] for row in self._entries])

    # -- algebra -----------------------------------------------------------

    def _check_same(self, other: "MatrixPoly"):
        if self.shape != other.shape:
            raise ShapeMismatch(f"shapes {self.shape} and {other.shape} differ")
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")

    def __add__(self, other: "MatrixPoly") -> "MatrixPoly":
        self._check_same(other)
        return MatrixPoly(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._entries, other._entries)]
        )

    def __sub__(self, other: "MatrixPoly") -> "MatrixPoly":
        self._check_same(other)
        return MatrixPoly(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._entries, other._entries)]
        )

    def __neg__(self):
        return self.map(lambda e: -e)

    def __matmul__(self, other: "MatrixPoly") -> "MatrixPoly":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = ScalarPoly.zero(self.dim)
                for k in range(self.cols):
                    a, b = self._entries[i][k], other._entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return MatrixPoly(out)

    def scale(self, factor) -> "MatrixPoly":
        """Multiply every entry by a scalar polynomial or number."""
        return self.map(lambda e: e * factor)

    def conj_transpose(self) -> "MatrixPoly":
        return MatrixPoly(
            [[self._entries[i][j].conj() for i in range(self.rows)] for j in range(self.cols)]
        )

    H = property(conj_transpose)

    def transpose(self) -> "MatrixPoly":
        return MatrixPoly([[self._entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def trace(self) -> ScalarPoly:
        if self.rows != self.cols:
            raise ShapeMismatch("trace of a non-square matrix")
        acc = ScalarPoly.zero(self.dim)
        for i in range(self.rows):
            acc = acc + self._entries[i][i]
        return acc

    def derive(self, alpha) -> "MatrixPoly":
        return self.map(lambda e: e.derive(alpha))

    def eval(self, point) -> list:
        """Exact value at a rational point, as nested lists of GaussianRational."""
        return [[e.eval(point) for e in row] for row in self._entries]

    def eval_complex(self, point):
        import numpy as np

        return np.array([[complex(v) for v in row] for row in self.eval(point)], dtype=complex)

    def __eq__(self, other):
        if not isinstance(other, MatrixPoly):
            return NotImplemented
        return self.shape == other.shape and self.dim == other.dim and self._entries == other._entries

    def __hash__(self):
        return hash((self.dim, self._entries))

    def __str__(self):
        return "[" + "; ".join(", ".join(str(e) for e in row) for row in self._entries) + "]"

    def __repr__(self):
        return f"MatrixPoly(dim={self.dim}, {self})"


def _as_poly(dim: int, value) -> ScalarPoly:
    if isinstance(value, ScalarPoly):
        if value.dim != dim:
            raise DimensionMismatch(f"entry has dimension {value.dim}, expected {dim}")
        return value
    return ScalarPoly.constant(dim, value)


@dataclass(frozen=True)
class PseudoinverseRep:
    """P+ = A / delta almost everywhere; ``rank`` is the generic rank of P."""

    A: MatrixPoly
    delta: ScalarPoly
    rank: int
    method: str = "decell"


def char_poly_faddeev(B: MatrixPoly) -> list:
    """Coefficients [a_1, ..., a_M] of det(lambda I - B) by Faddeev-LeVerrier.

    Uses the recursion N_1 = I, a_k = -tr(B N_k)/k, N_{k+1} = B N_k + a_k I;
    the divisions by k are exact in Q(i)[x].
    """
    return [a for a, _ in _faddeev_steps(B)]


def _faddeev_steps(B: MatrixPoly) -> list:
    """Pairs (a_k, N_k) with N_k = B^(k-1) + a_1 B^(k-2) + ... + a_(k-1) I."""
    if B.rows != B.cols:
        raise ShapeMismatch(f"characteristic polynomial of a {B.shape} matrix")
    n = B.rows
    ident = MatrixPoly.identity(B.dim, n)
    steps = []
    N = ident
    for k in range(1, n + 1):
        BN = B @ N
        a = BN.trace().scale(GaussianRational(-1) / k)
        steps.append((a, N))
        N = BN + ident.scale(a)
    return steps


def _gram(P: MatrixPoly) -> tuple:
    """The smaller Gram matrix of P and whether it is P P* (left) or P* P."""
    if P.rows <= P.cols:
        return P @ P.H, True
    return P.H @ P, False


def generic_rank(P: MatrixPoly) -> int:
    """Largest k with a_k != 0 in the characteristic polynomial of P P*."""
    if P.is_zero():
        raise ZeroOperator("the symbol is identically zero")
    B, _ = _gram(P)
    coeffs = char_poly_faddeev(B)
    return max(k for k, a in enumerate(coeffs, start=1) if not a.is_zero())


def pseudoinverse(P: MatrixPoly) -> PseudoinverseRep:
    """Decell representation of P+, normalised so that delta >= 0 on R^d.

    When P has more rows than columns the formula is applied to P* P
    instead, giving P+ = A/delta with A = (-1)^(r+1) N_r P*.
    """
    if P.is_zero():
        raise ZeroOperator("the symbol is identically zero")
    B, left = _gram(P)
    steps = _faddeev_steps(B)
    r = max(k for k, (a, _) in enumerate(steps, start=1) if not a.is_zero())
    a_r, N_r = steps[r - 1]
    sign = 1 if r % 2 == 0 else -1
    delta = a_r.scale(sign)
    A = (P.H @ N_r) if left else (N_r @ P.H)
    A = A.scale(-sign)
    return PseudoinverseRep(A=A, delta=delta, rank=r, method="decell")


def adjugate(P: MatrixPoly) -> MatrixPoly:
    """Classical adjugate of a square matrix polynomial (cofactor expansion)."""
    if P.rows != P.cols:
        raise ShapeMismatch("adjugate of a non-square matrix")
    n = P.rows
    if n == 1:
        return MatrixPoly.identity(P.dim, 1)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [
                [P[r, c] for c in range(n) if c != i] for r in range(n) if r != j
            ]
            cof = determinant(MatrixPoly(minor))
            row.append(cof if (i + j) % 2 == 0 else -cof)
        rows.append(row)
    return MatrixPoly(rows)


def determinant(P: MatrixPoly) -> ScalarPoly:
    if P.rows != P.cols:
        raise ShapeMismatch("determinant of a non-square matrix")
    n = P.rows
    if n == 1:
        return P[0, 0]
    acc = ScalarPoly.zero(P.dim)
    for j in range(n):
        if P[0, j].is_zero():
            continue
        minor = MatrixPoly([[P[r, c] for c in range(n) if c != j] for r in range(1, n)])
        term = P[0, j] * determinant(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def adjugate_representation(P: MatrixPoly, reduced: bool = False) -> PseudoinverseRep:
    """P+ = P^-1 via the adjugate, for square P with det P not identically 0.

    By default returns A = conj(det P) adj P, delta = |det P|^2 (delta >= 0).
    With ``reduced=True`` returns the lower-degree pair (adj P, det P); delta is
    then complex-valued in general.
    """
    det = determinant(P)
    if det.is_zero():
        raise ZeroOperator("det P vanishes identically; P is not generically invertible")
    adj = adjugate(P)
    if reduced:
        return PseudoinverseRep(A=adj, delta=det, rank=P.rows, method="adjugate-reduced")
    return PseudoinverseRep(
        A=adj.scale(det.conj()), delta=det.abs_squared(), rank=P.rows, method="adjugate"
    )


def penrose_verify(P: MatrixPoly, rep: PseudoinverseRep) -> bool:
    """Check the four Penrose identities with the denominator cleared.

    P A P = delta P,  A P A = delta A,  (P A)* = P A,  (A P)* = A P.
    The last two need delta real, which every representation here has
    except the reduced adjugate one.
    """
    A, delta = rep.A, rep.delta
    if A.shape != (P.cols, P.rows) or A.dim != P.dim or delta.dim != P.dim:
        return False
    if delta.is_zero():
        return False
    PA = P @ A
    AP = A @ P
    if PA @ P != P.scale(delta):
        return False
    if AP @ A != A.scale(delta):
        return False
    if delta.is_real():
        return PA.H == PA and AP.H == AP
    # with complex delta the projections are (P A)/delta; Hermitian means
    # (P A)* delta = conj(delta) P A, cleared of the denominator
    dc = delta.conj()
    return PA.H.scale(delta) == PA.scale(dc) and AP.H.scale(delta) == AP.scale(dc)
