"""
Three-valued decision procedures for scalar domination.

For scalar polynomials p != 0 and q we decide

    q < p     (domination):          sup q~/p~ < infinity,
    q <_c p   (compact domination):  q~/p~ -> 0 as |xi| -> infinity,

where p~^2 = sum_alpha |d^alpha p|^2.  The answer is Dominates only with an
exact certificate and NotDominates only with an exactly re-checked witness
curve; everything else is Unknown.

Certificates
------------
univariate-degree   d = 1: comparison of deg p~^2 and deg q~^2 is exact.
elliptic-top-form   the top homogeneous part of p~^2 is positive on the sphere.
newton-polygon      d = 2: p~^2 is face-nondegenerate and supp q~^2 lies in its
                    Newton polygon (shifted inward along both axes for compact).
even-coefficient    C*M - q~^2 (strict) or C*M - (1+|xi|^2) q~^2 (compact) has
                    only nonnegative coefficients on all-even monomials, where
                    M <= p~^2 is p~^2 itself or its monomial-derivative part.
factor              q or q* divides p.  Uses (fg)~ >= c f~ g~, valid for any
                    two polynomials of bounded degree, and g~ >= const > 0.
vacuous             q = 0.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import DimensionMismatch
from .poly import NEG_INF, ScalarPoly, iter_derivatives, tilde_squared
from .newton import newton_certify
from .sturm import count_real_roots, univariate

DEFAULT_RANDOM_WEIGHTS = 64
MAX_RANDOM_WEIGHT = 4
COEFF_TRIES = 3
EVEN_COEFF_MAX_EXP = 20
SPHERE_SAMPLES = 20000
SPHERE_MARGIN = 1e-2


class Outcome(str, enum.Enum):
    DOMINATES = "dominates"
    NOT_DOMINATES = "not_dominates"
    UNKNOWN = "unknown"


class Mode(str, enum.Enum):
    STRICT = "strict"
    COMPACT = "compact"


@dataclass(frozen=True)
class Certificate:
    kind: str
    params: dict = field(default_factory=dict)
    heuristic: bool = False

    def describe(self) -> str:
        extra = ", ".join(f"{k}={v}" for k, v in self.params.items())
        tag = " (heuristic)" if self.heuristic else ""
        return f"{self.kind}{tag}" + (f" [{extra}]" if extra else "")


@dataclass(frozen=True)
class WitnessCurve:
    """The curve xi_i(t) = c_i t^max(w_i, 0) with exact t-degrees of q~^2, p~^2."""

    weights: tuple
    coeffs: tuple
    t_degrees: tuple  # (deg_t q~^2 o curve, deg_t p~^2 o curve)
    mode: Mode

    def __post_init__(self):
        if not any(w > 0 for w in self.weights):
            raise ValueError("a witness curve needs a positive weight")
        q_deg, p_deg = self.t_degrees
        ok = q_deg > p_deg if self.mode is Mode.STRICT else q_deg >= p_deg
        if not ok:
            raise ValueError(f"degrees {self.t_degrees} do not refute in {self.mode.value} mode")

    def direction(self) -> np.ndarray:
        """Unit vector of the dominant growth direction of the curve."""
        top = max(self.weights)
        v = np.array([float(c) if w == top else 0.0 for w, c in zip(self.weights, self.coeffs)])
        return v / np.linalg.norm(v)

    def describe(self) -> str:
        parts = []
        for k, (w, c) in enumerate(zip(self.weights, self.coeffs), start=1):
            w = max(w, 0)
            parts.append(f"x{k}={c}" + ("" if w == 0 else ("*t" if w == 1 else f"*t^{w}")))
        q_deg, p_deg = self.t_degrees
        return f"({', '.join(parts)}): deg_t q~^2 = {q_deg}, deg_t p~^2 = {p_deg}"


@dataclass(frozen=True)
class ScalarVerdict:
    outcome: Outcome
    mode: Mode
    certificate: Optional[Certificate] = None
    witness: Optional[WitnessCurve] = None
    confidence_note: str = ""
    ratio_estimate: Optional[float] = None

    def __post_init__(self):
        if self.certificate is not None and self.witness is not None:
            raise AssertionError("a verdict cannot carry both a certificate and a witness")
        if self.outcome is Outcome.DOMINATES and self.certificate is None:
            raise AssertionError("Dominates requires a certificate")
        if self.outcome is Outcome.NOT_DOMINATES and self.witness is None:
            raise AssertionError("NotDominates requires a witness")
        if self.outcome is Outcome.UNKNOWN and (self.certificate or self.witness):
            raise AssertionError("Unknown carries no evidence")


class WeightPoly:
    """p~^2 prepared for repeated curve substitution."""

    def __init__(self, poly: ScalarPoly, squared: Optional[ScalarPoly] = None):
        self.poly = poly
        self.sq = tilde_squared(poly) if squared is None else squared
        items = self.sq.sorted_terms()
        self.exps = np.array([e for e, _ in items], dtype=np.int64).reshape(len(items), poly.dim)
        self.coeffs = [c.re for _, c in items]

    @property
    def degree(self):
        return self.sq.degree

    def curve_degree(self, weights: Sequence[int], coeffs: Sequence[Fraction]):
        """Exact t-degree of p~^2(c_1 t^w_1, ..., c_d t^w_d)."""
        if not self.coeffs:
            return NEG_INF
        w = np.maximum(np.asarray(weights, dtype=np.int64), 0)
        keys = self.exps @ w
        order = np.argsort(-keys, kind="stable")
        powers = [{} for _ in coeffs]

        def pw(var, e):
            cache = powers[var]
            if e not in cache:
                cache[e] = coeffs[var] ** e
            return cache[e]

        i = 0
        n = len(order)
        while i < n:
            key = keys[order[i]]
            total = Fraction(0)
            while i < n and keys[order[i]] == key:
                idx = order[i]
                term = self.coeffs[idx]
                for var, e in enumerate(self.exps[idx]):
                    if e:
                        term *= pw(var, int(e))
                total += term
                i += 1
            if total != 0:
                return int(key)
        return NEG_INF


def _check_pair(p: ScalarPoly, q: ScalarPoly):
    if p.dim != q.dim:
        raise DimensionMismatch(f"p has {p.dim} variables, q has {q.dim}")


def _refutes(q_deg, p_deg, mode: Mode) -> bool:
    if q_deg is NEG_INF:
        return False
    return q_deg > p_deg if mode is Mode.STRICT else q_deg >= p_deg


def curve_refute(p, q, mode: Mode, weights: Sequence[int], coeffs: Sequence) -> Optional[WitnessCurve]:
    """Try to refute (compact) domination of q by p along one monomial curve.

    ``p`` and ``q`` may be ScalarPoly or prepared WeightPoly instances.
    """
    mode = Mode(mode)
    wp = p if isinstance(p, WeightPoly) else WeightPoly(p)
    wq = q if isinstance(q, WeightPoly) else WeightPoly(q)
    _check_pair(wp.poly, wq.poly)
    if wp.poly.is_zero():
        raise ValueError("p must be nonzero")
    weights = tuple(int(w) for w in weights)
    if len(weights) != wp.poly.dim or len(coeffs) != wp.poly.dim:
        raise DimensionMismatch("curve has the wrong number of coordinates")
    if not any(w > 0 for w in weights):
        raise ValueError("weight vector must have a positive entry")
    coeffs = tuple(Fraction(c) for c in coeffs)
    if any(c == 0 for c in coeffs):
        raise ValueError("curve coefficients must be nonzero")
    q_deg = wq.curve_degree(weights, coeffs)
    p_deg = wp.curve_degree(weights, coeffs)
    if _refutes(q_deg, p_deg, mode):
        return WitnessCurve(weights, coeffs, (q_deg, p_deg), mode)
    return None


def univariate_decide(p: ScalarPoly, q: ScalarPoly, mode: Mode) -> ScalarVerdict:
    """Exact decision for d = 1 by comparing degrees of p~^2 and q~^2."""
    mode = Mode(mode)
    _check_pair(p, q)
    if p.dim != 1:
        raise DimensionMismatch("univariate_decide needs d = 1")
    if p.is_zero():
        raise ValueError("p must be nonzero")
    if q.is_zero():
        return _vacuous(mode)
    pd, qd = 2 * p.degree, 2 * q.degree
    ok = qd <= pd if mode is Mode.STRICT else qd < pd
    if ok:
        cert = Certificate("univariate-degree", {"deg_p_tilde_sq": pd, "deg_q_tilde_sq": qd})
        return ScalarVerdict(Outcome.DOMINATES, mode, certificate=cert)
    witness = curve_refute(p, q, mode, (1,), (1,))
    return ScalarVerdict(Outcome.NOT_DOMINATES, mode, witness=witness)


def _vacuous(mode: Mode) -> ScalarVerdict:
    return ScalarVerdict(Outcome.DOMINATES, mode, certificate=Certificate("vacuous"))


def top_form_positivity(h: ScalarPoly, heuristic_seed: int = 0) -> tuple:
    """Decide whether a nonnegative homogeneous form is positive on the sphere.

    Returns (status, note) with status in {"positive", "not-positive",
    "sampled-positive", "sampled-not-positive"}; the sampled statuses
    occur only for d >= 3.
    """
    if h.is_zero():
        return "not-positive", "top form is zero"
    d = h.dim
    if d == 1:
        c = h.terms[(h.degree,)].re
        return ("positive" if c > 0 else "not-positive"), "d = 1"
    if d == 2:
        m = h.degree
        lo = [Fraction(0)] * (m + 1)  # h(1, t)
        hi = [Fraction(0)] * (m + 1)  # h(t, 1)
        for (a, b), c in h.terms.items():
            lo[b] += c.re
            hi[a] += c.re
        for coeffs in (lo, hi):
            f = univariate(coeffs)
            if f.is_zero() or count_real_roots(f) > 0:
                return "not-positive", "Sturm chain finds a real zero of a dehomogenization"
        return "positive", "Sturm chains of h(1,t) and h(t,1) have no real roots"
    rng = np.random.default_rng(heuristic_seed)
    pts = rng.standard_normal((SPHERE_SAMPLES, d))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    vals = np.real(_eval_numeric(h, pts))
    lo, hi = float(vals.min()), float(vals.max())
    note = f"sphere sampling ({SPHERE_SAMPLES} points): min {lo:.3g}, max {hi:.3g}"
    if hi > 0 and lo >= SPHERE_MARGIN * hi:
        return "sampled-positive", note
    return "sampled-not-positive", note


def elliptic_certify(p: ScalarPoly, q: ScalarPoly, mode: Mode, heuristic: bool = False,
                     _wp: Optional[WeightPoly] = None, _wq: Optional[WeightPoly] = None) -> Optional[Certificate]:
    """EllipticTopForm certificate, or None.

    For d >= 3 positivity is only sampled; the certificate is then returned
    (flagged heuristic) only when ``heuristic`` is set.
    """
    mode = Mode(mode)
    _check_pair(p, q)
    psq = _wp.sq if _wp else tilde_squared(p)
    qsq = _wq.sq if _wq else tilde_squared(q)
    two_m = psq.degree
    ok = qsq.degree <= two_m if mode is Mode.STRICT else qsq.degree < two_m
    if not ok:
        return None
    status, note = top_form_positivity(psq.top_form())
    if status == "positive":
        return Certificate("elliptic-top-form", {"deg_p_tilde_sq": two_m, "deg_q_tilde_sq": qsq.degree})
    if status == "sampled-positive" and heuristic:
        return Certificate(
            "elliptic-top-form",
            {"deg_p_tilde_sq": two_m, "deg_q_tilde_sq": qsq.degree, "note": note},
            heuristic=True,
        )
    return None


def _monomial_minorant(p: ScalarPoly) -> ScalarPoly:
    """Sum of |d^alpha p|^2 over the derivatives that are single monomials."""
    total = ScalarPoly.zero(p.dim)
    for _, deriv in iter_derivatives(p):
        if len(deriv.terms) == 1:
            total = total + deriv.abs_squared()
    return total


def _even_nonnegative(diff: dict) -> bool:
    for exps, c in diff.items():
        if c < 0 or any(e % 2 for e in exps):
            return False
    return True


def _search_constant(minorant: dict, target: dict) -> Optional[int]:
    for k in range(EVEN_COEFF_MAX_EXP + 1):
        C = 2 ** k
        diff = {e: C * c for e, c in minorant.items()}
        for e, c in target.items():
            diff[e] = diff.get(e, 0) - c
        diff = {e: c for e, c in diff.items() if c != 0}
        if _even_nonnegative(diff):
            return C
    return None


def even_coefficient_certify(p: ScalarPoly, q: ScalarPoly, mode: Mode = Mode.STRICT,
                             _wp: Optional[WeightPoly] = None,
                             _wq: Optional[WeightPoly] = None) -> Optional[Certificate]:
    """EvenCoefficient(C) certificate, or None.

    Strict: C*M - q~^2 has nonnegative coefficients on all-even monomials,
    hence is >= 0 on R^d, so q~ <= sqrt(C) p~.  Compact: the same for
    C*M - (1 + |xi|^2) q~^2, giving q~^2/p~^2 <= C/(1 + |xi|^2).
    """
    mode = Mode(mode)
    _check_pair(p, q)
    psq = _wp.sq if _wp else tilde_squared(p)
    qsq = _wq.sq if _wq else tilde_squared(q)
    if mode is Mode.COMPACT:
        bump = ScalarPoly.one(p.dim)
        for k in range(1, p.dim + 1):
            bump = bump + ScalarPoly.variable(p.dim, k) ** 2
        qsq = qsq * bump
    target = {e: c.re for e, c in qsq.terms.items()}
    for name, minorant in (("tilde-squared", psq), ("monomial-derivatives", _monomial_minorant(p))):
        if minorant.is_zero():
            continue
        C = _search_constant({e: c.re for e, c in minorant.terms.items()}, target)
        if C is not None:
            return Certificate("even-coefficient", {"C": C, "minorant": name})
    return None


def factor_certify(p: ScalarPoly, q: ScalarPoly, mode: Mode = Mode.STRICT) -> Optional[Certificate]:
    """Factor certificate: q (or q*) divides p.

    If p = f g with f in {q, q*} then p~ >= c f~ g~ >= c' q~.  In compact mode
    we additionally need g~ -> infinity, certified by an elliptic top form
    of g~^2 of positive degree.
    """
    mode = Mode(mode)
    _check_pair(p, q)
    if q.is_zero() or q.degree > p.degree:
        return None
    candidates = [q] if q.is_real() else [q, q.conj()]
    for f in candidates:
        g = p.exact_quotient(f)
        if g is None:
            continue
        if mode is Mode.STRICT:
            return Certificate("factor", {"divisor": str(f), "cofactor": str(g)})
        if g.degree >= 1 and elliptic_certify(g, ScalarPoly.one(p.dim), Mode.COMPACT) is not None:
            return Certificate("factor", {"divisor": str(f), "cofactor": str(g), "cofactor_elliptic": True})
    return None


def _eval_numeric(poly: ScalarPoly, pts: np.ndarray) -> np.ndarray:
    exps, coeffs = poly.numeric()
    if len(coeffs) == 0:
        return np.zeros(len(pts), dtype=complex)
    mons = np.prod(pts[:, None, :] ** exps[None, :, :], axis=2)
    return mons @ coeffs


def estimate_ratio(wp: WeightPoly, wq: WeightPoly, seed: int = 0, samples: int = 1000) -> float:
    """Empirical sup of q~/p~ over random points at log-uniform radii (not certified)."""
    rng = np.random.default_rng(seed)
    d = wp.poly.dim
    dirs = rng.standard_normal((samples, d))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    radii = 2.0 ** rng.uniform(0, 12, size=(samples, 1))
    pts = dirs * radii
    with np.errstate(over="ignore", invalid="ignore"):
        num = np.real(_eval_numeric(wq.sq, pts))
        den = np.real(_eval_numeric(wp.sq, pts))
        ratio = np.sqrt(np.abs(num / den))
    ratio = ratio[np.isfinite(ratio)]
    return float(ratio.max()) if ratio.size else float("nan")


def sweep_weights(dim: int, rng: random.Random, n_random: int) -> list:
    """Weight vectors in sweep order: coordinate rays, diagonal, {0,1}^d, random."""
    seen, out = set(), []

    def add(w, deterministic):
        if w not in seen and any(x > 0 for x in w):
            seen.add(w)
            out.append((w, deterministic))

    for k in range(dim):
        add(tuple(1 if j == k else 0 for j in range(dim)), True)
    add((1,) * dim, True)
    for w in itertools.product((0, 1), repeat=dim):
        add(w, True)
    for _ in range(n_random):
        w = (0,) * dim
        while not any(w):
            w = tuple(rng.randint(0, MAX_RANDOM_WEIGHT) for _ in range(dim))
        add(w, False)
    return out


def _random_coeff(rng: random.Random) -> Fraction:
    den = rng.randint(1, 3)
    num = 0
    while num == 0:
        num = rng.randint(-3 * den, 3 * den)
    return Fraction(num, den)


def refutation_sweep(wp: WeightPoly, wq: WeightPoly, mode: Mode, seed: int = 0,
                     n_random: int = DEFAULT_RANDOM_WEIGHTS) -> Optional[WitnessCurve]:
    rng = random.Random(seed)
    dim = wp.poly.dim
    for w, deterministic in sweep_weights(dim, rng, n_random):
        for attempt in range(COEFF_TRIES):
            if deterministic and attempt == 0:
                c = (Fraction(1),) * dim
            else:
                c = tuple(_random_coeff(rng) for _ in range(dim))
            witness = curve_refute(wp, wq, mode, w, c)
            if witness is not None:
                return witness
    return None


def decide(p: ScalarPoly, q: ScalarPoly, mode: Mode, seed: int = 0,
           n_random: int = DEFAULT_RANDOM_WEIGHTS, heuristic: bool = False) -> ScalarVerdict:
    """The full cascade for q < p (strict) or q <_c p (compact)."""
    mode = Mode(mode)
    _check_pair(p, q)
    if q.is_zero():
        return _vacuous(mode)
    if p.is_zero():
        # p~ = 0 while q~ > 0: any ray refutes
        ray = tuple(1 if k == 0 else 0 for k in range(p.dim))
        ones = (Fraction(1),) * p.dim
        q_deg = WeightPoly(q).curve_degree(ray, ones)
        witness = WitnessCurve(ray, ones, (q_deg, NEG_INF), mode)
        return ScalarVerdict(Outcome.NOT_DOMINATES, mode, witness=witness,
                             confidence_note="p = 0 dominates only q = 0")
    if p.dim == 1:
        return univariate_decide(p, q, mode)
    wp, wq = WeightPoly(p), WeightPoly(q)
    witness = refutation_sweep(wp, wq, mode, seed=seed, n_random=n_random)
    if witness is not None:
        # re-verify by fresh substitution before emitting
        again = curve_refute(WeightPoly(p), WeightPoly(q), mode, witness.weights, witness.coeffs)
        assert again == witness
        return ScalarVerdict(Outcome.NOT_DOMINATES, mode, witness=witness)
    cert = elliptic_certify(p, q, mode, heuristic=heuristic, _wp=wp, _wq=wq)
    if cert is None and p.dim == 2:
        params = newton_certify(wp.sq, wq.sq, compact=mode is Mode.COMPACT)
        if params is not None:
            cert = Certificate("newton-polygon", params)
    if cert is None:
        cert = even_coefficient_certify(p, q, mode, _wp=wp, _wq=wq)
    if cert is None:
        cert = factor_certify(p, q, mode)
    if cert is not None:
        note = "heuristic certificate: positivity sampled, not proved" if cert.heuristic else ""
        return ScalarVerdict(Outcome.DOMINATES, mode, certificate=cert, confidence_note=note)
    est = estimate_ratio(wp, wq, seed=seed)
    return ScalarVerdict(
        Outcome.UNKNOWN, mode,
        confidence_note="no witness curve found and no certificate applies; "
                        "ratio_estimate is an empirical sup, not certified",
        ratio_estimate=est,
    )


def scalar_dominates(p: ScalarPoly, q: ScalarPoly, **kw) -> ScalarVerdict:
    """Does p dominate q (sup q~/p~ < infinity)?"""
    return decide(p, q, Mode.STRICT, **kw)


def scalar_compactly_dominates(p: ScalarPoly, q: ScalarPoly, **kw) -> ScalarVerdict:
    """Does p compactly dominate q (q~/p~ -> 0)?"""
    return decide(p, q, Mode.COMPACT, **kw)
