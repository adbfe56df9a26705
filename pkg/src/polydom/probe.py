"""
Numerical probe of ||Q(D)u|| <= C ||P(D)u|| on discretised test functions.

Test functions live on the periodic box [-pi, pi)^d sampled with n points per
axis and are supported in a ball of radius rho <= 0.95.  Operators act
spectrally: with D = -i grad, the mode e^{ik.x} is an eigenfunction of P(D)
with value P(k), so P(D) is a multiplication by P(k) after an FFT.

Everything here is empirical evidence in double precision; nothing feeds
back into the symbolic deciders.
"""

from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import ShapeMismatch
from .matpoly import MatrixPoly
from .poly import ScalarPoly, multi_indices

DEGENERATE_NORM = 1e-12
DEFAULT_TS = (4, 8, 16, 32, 64)


@dataclass(frozen=True)
class GridFunction:
    """Samples of u: values has shape (N, n, ..., n) with d spatial axes."""

    d: int
    n: int
    values: np.ndarray
    rho: float = 0.95

    @property
    def components(self) -> int:
        return self.values.shape[0]

    @property
    def cell_volume(self) -> float:
        return (2 * np.pi / self.n) ** self.d

    def norm(self) -> float:
        return float(np.sqrt(self.cell_volume * np.sum(np.abs(self.values) ** 2)))

    def spectral_norm(self) -> float:
        """The same L2 norm computed from the FFT coefficients (Parseval)."""
        axes = tuple(range(1, self.d + 1))
        hat = np.fft.fftn(self.values, axes=axes)
        return float(np.sqrt(self.cell_volume * np.sum(np.abs(hat) ** 2) / self.n ** self.d))


@dataclass
class ProbeReport:
    ratios: list
    max_ratio: float
    seed: int
    grid: dict
    p_norms: list = field(default_factory=list)
    q_norms: list = field(default_factory=list)
    degenerate: int = 0
    trend: Optional[list] = None
    label: str = "empirical"

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["trial", "ratio", "p_norm", "q_norm"])
            for i, (r, pn, qn) in enumerate(zip(self.ratios, self.p_norms, self.q_norms)):
                writer.writerow([i, repr(r), repr(pn), repr(qn)])


def grid_coordinates(d: int, n: int) -> list:
    x = -np.pi + 2 * np.pi * np.arange(n) / n
    return np.meshgrid(*([x] * d), indexing="ij")


def frequency_grid(d: int, n: int) -> list:
    k = np.fft.fftfreq(n, d=1.0 / n)
    return np.meshgrid(*([k] * d), indexing="ij")


def bump(s: np.ndarray) -> np.ndarray:
    """The C^inf cutoff exp(1 - 1/(1 - s^2)) on |s| < 1, zero elsewhere."""
    out = np.zeros_like(s, dtype=float)
    inside = np.abs(s) < 1
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - s[inside] ** 2))
    return out


def _check_grid(n: int, K: int, rho: float):
    if n < 4 or n & (n - 1):
        raise ValueError(f"n must be a power of two >= 4, got {n}")
    if n < 4 * K:
        raise ValueError(f"need n >= 4K (n={n}, K={K})")
    if not 0 < rho <= 0.95:
        raise ValueError(f"support radius must lie in (0, 0.95], got {rho}")


def synth_test_function(seed: int, d: int, n: int, N: int = 1, K: int = 2,
                        rho: float = 0.9) -> GridFunction:
    """bump(|x|/rho) times a random trigonometric polynomial of degree K per component."""
    _check_grid(n, K, rho)
    rng = np.random.default_rng(seed)
    xs = grid_coordinates(d, n)
    r = np.sqrt(sum(x ** 2 for x in xs))
    envelope = bump(r / rho)
    ks = list(itertools.product(range(-K, K + 1), repeat=d))
    values = np.zeros((N,) + (n,) * d, dtype=complex)
    for comp in range(N):
        c = (rng.standard_normal(len(ks)) + 1j * rng.standard_normal(len(ks))) / np.sqrt(2)
        acc = np.zeros((n,) * d, dtype=complex)
        for ck, k in zip(c, ks):
            acc += ck * np.exp(1j * sum(ki * x for ki, x in zip(k, xs)))
        values[comp] = envelope * acc
    return GridFunction(d, n, values, rho)


def symbol_on_grid(P: MatrixPoly, freqs: Sequence[np.ndarray]) -> np.ndarray:
    """P(k) on the frequency grid, shape (M, N, n, ..., n).

    On an even grid the Nyquist mode is cos(n x / 2), on which P(D) acts by
    the average of P at k = +-n/2; per monomial that average kills odd
    powers of the Nyquist coordinate.
    """
    shape = freqs[0].shape
    nyquist = [f == -(shape[0] // 2) for f in freqs]
    out = np.zeros((P.rows, P.cols) + shape, dtype=complex)
    for i in range(P.rows):
        for j in range(P.cols):
            for exps, c in P[i, j].terms.items():
                mono = np.ones(shape, dtype=complex)
                for f, nyq, e in zip(freqs, nyquist, exps):
                    if e:
                        factor = f ** e
                        if e % 2:
                            factor = np.where(nyq, 0.0, factor)
                        mono = mono * factor
                out[i, j] += complex(c) * mono
    return out


def _apply_hat(symbol: np.ndarray, uhat: np.ndarray) -> np.ndarray:
    return np.einsum("ij...,j...->i...", symbol, uhat)


def apply_operator(P: MatrixPoly, u: GridFunction) -> GridFunction:
    """P(D)u computed spectrally."""
    if P.cols != u.components:
        raise ShapeMismatch(f"P has {P.cols} columns but u has {u.components} components")
    if P.dim != u.d:
        raise ShapeMismatch(f"P lives in d={P.dim}, u in d={u.d}")
    axes = tuple(range(1, u.d + 1))
    uhat = np.fft.fftn(u.values, axes=axes)
    symbol = symbol_on_grid(P, frequency_grid(u.d, u.n))
    vals = np.fft.ifftn(_apply_hat(symbol, uhat), axes=axes)
    return GridFunction(u.d, u.n, vals, u.rho)


def measure_ratio(P: MatrixPoly, Q: MatrixPoly, u: GridFunction) -> tuple:
    """(ratio or None if degenerate, ||P(D)u||, ||Q(D)u||)."""
    pn = apply_operator(P, u).norm()
    qn = apply_operator(Q, u).norm()
    if pn < DEGENERATE_NORM:
        return None, pn, qn
    return qn / pn, pn, qn


def rotated_gradient(phi: GridFunction) -> GridFunction:
    """(D2 phi, -D1 phi) for scalar phi in d = 2: annihilated by the divergence symbol."""
    if phi.d != 2 or phi.components != 1:
        raise ShapeMismatch("rotated_gradient needs a scalar field in d = 2")
    x1, x2 = ScalarPoly.variable(2, 1), ScalarPoly.variable(2, 2)
    return apply_operator(MatrixPoly([[x2], [-x1]]), phi)


def ratio_estimate(P: MatrixPoly, Q: MatrixPoly, trials: int = 20, n: int = 64,
                   K: int = 2, rho: float = 0.9, seed: int = 0,
                   fields: Optional[Sequence[GridFunction]] = None) -> ProbeReport:
    """Ratios ||Q(D)u|| / ||P(D)u|| over random bump-localised test functions.

    Trial seeds are spawned from ``seed``; pass ``fields`` to use given test
    functions instead.  Trials with ||P(D)u|| < 1e-12 are counted as
    degenerate and left out of the ratio list.
    """
    if P.cols != Q.cols or P.dim != Q.dim:
        raise ShapeMismatch("P and Q must act on the same C^N-valued functions")
    if fields is None:
        seeds = np.random.SeedSequence(seed).spawn(trials)
        fields = (synth_test_function(int(ss.generate_state(1)[0]), P.dim, n, P.cols, K, rho)
                  for ss in seeds)
    else:
        fields = list(fields)
        trials, n = len(fields), fields[0].n if fields else n
    ratios, pns, qns, degenerate = [], [], [], 0
    for u in fields:
        r, pn, qn = measure_ratio(P, Q, u)
        if r is None:
            degenerate += 1
            continue
        ratios.append(r)
        pns.append(pn)
        qns.append(qn)
    return ProbeReport(
        ratios=ratios, max_ratio=max(ratios) if ratios else float("nan"), seed=seed,
        grid={"d": P.dim, "n": n, "K": K, "rho": rho, "trials": trials},
        p_norms=pns, q_norms=qns, degenerate=degenerate,
    )


def _best_ratio(Phat: np.ndarray, Qhat: np.ndarray, weight: float) -> tuple:
    """Largest sqrt of the generalised Rayleigh quotient over the basis fields.

    Phat, Qhat have shape (B, M, ...) / (B, L, ...) for B basis functions.
    """
    B = Phat.shape[0]
    fp = Phat.reshape(B, -1)
    fq = Qhat.reshape(B, -1)
    Gp = weight * (fp.conj() @ fp.T)
    Gq = weight * (fq.conj() @ fq.T)
    Gp = (Gp + Gp.conj().T) / 2
    Gq = (Gq + Gq.conj().T) / 2
    evals, evecs = np.linalg.eigh(Gp)
    cutoff = DEGENERATE_NORM ** 2 * max(evals.max(), 1.0)
    keep = evals > cutoff
    if not keep.all():
        # directions killed by P(D): degenerate if Q(D) does not kill them too
        null = evecs[:, ~keep]
        if np.linalg.norm(null.conj().T @ Gq @ null) > cutoff:
            return float("inf"), 0.0
    W = evecs[:, keep] / np.sqrt(evals[keep])
    M = W.conj().T @ Gq @ W
    top = np.linalg.eigvalsh((M + M.conj().T) / 2)[-1]
    return float(np.sqrt(max(top, 0.0))), float(evals[keep].min())


def ray_oscillation_probe(P: MatrixPoly, Q: MatrixPoly, direction: Sequence[float],
                          ts: Sequence[float] = DEFAULT_TS, seed: int = 0, n: int = 256,
                          K: int = 0, rho: float = 0.9,
                          amplitude_order: Optional[int] = None) -> ProbeReport:
    """Worst ratio over oscillating test functions e^{i k_t.x} psi(x), k_t = round(t v).

    psi ranges over sum_{j, |beta| <= order} w_{j,beta} e_j D^beta phi for one
    fixed random bump-localised scalar phi; the optimal coefficients come from
    a generalised eigenproblem on the Gram matrices of P(D)u and Q(D)u.  With
    order 0 this is just the best constant amplitude vector; order 1 (the
    default for non-constant P) lets the amplitude follow ker P(xi) to first
    order along the ray, which is what exposes kernel-driven growth.  Higher
    orders make the Gram matrices ill-conditioned.  Growth of the
    ratios in t is evidence against domination along v; a plateau is
    evidence against compact domination.
    """
    if P.cols != Q.cols or P.dim != Q.dim:
        raise ShapeMismatch("P and Q must act on the same C^N-valued functions")
    v = np.asarray(direction, dtype=float)
    if v.shape != (P.dim,) or abs(np.linalg.norm(v) - 1) > 1e-12:
        raise ValueError("direction must be a unit vector in R^d")
    if amplitude_order is None:
        amplitude_order = 1 if P.degree >= 1 else 0
    d, N = P.dim, P.cols
    kmax = max(ts) + K + amplitude_order
    if kmax >= n // 2:
        raise ValueError(f"grid n={n} too coarse for frequencies up to {kmax}")
    phi = synth_test_function(seed, d, n, 1, K, rho)
    axes = tuple(range(d))
    freqs = frequency_grid(d, n)
    Psym = symbol_on_grid(P, freqs)
    Qsym = symbol_on_grid(Q, freqs)
    betas = multi_indices(d, amplitude_order)
    xs = grid_coordinates(d, n)
    weight = (2 * np.pi / n) ** d / n ** d

    trend = []
    for t in ts:
        k = np.rint(t * v).astype(int)
        carrier = np.exp(1j * sum(ki * x for ki, x in zip(k, xs)))
        ghat = np.fft.fftn(carrier * phi.values[0], axes=axes)
        basis_p, basis_q = [], []
        for beta in betas:
            # (D - k)^beta acting on e^{ikx} phi gives e^{ikx} D^beta phi
            mult = np.ones_like(ghat)
            for f, ki, b in zip(freqs, k, beta):
                if b:
                    mult = mult * (f - ki) ** b
            field_hat = mult * ghat
            for j in range(N):
                basis_p.append(Psym[:, j] * field_hat)
                basis_q.append(Qsym[:, j] * field_hat)
        r, _ = _best_ratio(np.array(basis_p), np.array(basis_q), weight)
        trend.append(r if np.isfinite(r) else None)
    ratios = [r for r in trend if r is not None]
    return ProbeReport(
        ratios=ratios, max_ratio=max(ratios) if ratios else float("nan"), seed=seed,
        grid={"d": d, "n": n, "K": K, "rho": rho, "direction": [float(x) for x in v],
              "ts": list(ts), "amplitude_order": amplitude_order},
        degenerate=len(trend) - len(ratios),
        trend=trend,
    )
