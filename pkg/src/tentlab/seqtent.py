"""Tent norms of sequences on a lattice, the duality pairing, and
function-to-sequence discretization.

The boundary integrals run on a uniform xi-grid (1024 angles by default,
doubled once for the error estimate).  Membership of a lattice point in the
approach region of a grid angle reduces to one cosine comparison per pair,
so all modes are dense matrix work.

The dual-norm estimator is a lower bound by construction: nonnegative
random starts on the unit sphere refined by normalized ascent, seeded and
deterministic.  Closed-form dual norms (conjugate-exponent tent norms, the
q = 1 box-mode dual, and the small-exponent sup formula) are exposed
separately for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .functions import AnalyticFunction
from .geometry import TWO_PI, hyperbolic_disc_euclidean, stolz_arc_halfwidth, stolz_arc_measure
from .lattice import Lattice
from .norms import NormEstimate

__all__ = [
    "seq_tent_norm",
    "pairing",
    "luecking_dual_value",
    "closed_form_dual_norm",
    "dual_norm_estimate",
    "discretize_function",
]


def _as_seq(lam, lat: Lattice) -> np.ndarray:
    lam = np.asarray(lam, dtype=complex)
    if lam.shape != (len(lat),):
        raise ValueError(f"sequence length {lam.shape} does not match lattice size {len(lat)}")
    return lam


class _XiMembership:
    """Membership of each lattice point in Gamma_M(xi) over a uniform xi-grid."""

    def __init__(self, lat: Lattice, M: float, nodes: int):
        self.nodes = nodes
        phi = TWO_PI * np.arange(nodes) / nodes
        r = np.abs(lat.points)
        ang = np.angle(lat.points)
        # cos(phi - ang) > c(r), with c clipped so arccos is usable
        hw = stolz_arc_halfwidth(r, M)
        cosd = np.cos(phi[:, None] - ang[None, :])
        cbound = np.cos(hw)
        self.mask = np.where(
            hw[None, :] >= math.pi - 1e-15,
            True,
            np.where(hw[None, :] <= 0.0, False, cosd > cbound[None, :]),
        )

    def weighted_sums(self, values: np.ndarray) -> np.ndarray:
        return self.mask @ values

    def masked_max(self, values: np.ndarray) -> np.ndarray:
        big = np.where(self.mask, values[None, :], -np.inf)
        out = big.max(axis=1)
        return np.where(np.isfinite(out), out, 0.0)


def _seq_value(lam_abs: np.ndarray, lat: Lattice, p: float, q: float, mem: _XiMembership) -> float:
    if p == math.inf:
        sup = mem.masked_max(lam_abs)
        return float(((TWO_PI / mem.nodes) * np.sum(sup**q)) ** (1.0 / q))
    sums = mem.weighted_sums(lam_abs**p)
    return float(((TWO_PI / mem.nodes) * np.sum(sums ** (q / p))) ** (1.0 / q))


def _seq_value_qinf(lam_abs: np.ndarray, lat: Lattice, p: float, M: float) -> float:
    """q = inf mode: sup over admissible box vertices of the normalized box sum."""
    pts = lat.points
    r = np.abs(pts)
    ang = np.angle(pts)
    weights = lam_abs**p * (1.0 - r * r)
    admissible = stolz_arc_measure(pts, M) > 0.0
    best = 0.0
    for u, ok in zip(pts, admissible):
        if not ok:
            continue
        r0 = abs(u)
        th0 = math.atan2(u.imag, u.real)
        d = np.mod(ang - th0, TWO_PI)
        d = np.minimum(d, TWO_PI - d)
        inside = (r >= r0) & (d <= (1.0 - r0) / 2.0)
        val = float(weights[inside].sum()) / (1.0 - r0 * r0)
        best = max(best, val)
    return best ** (1.0 / p)


def seq_tent_norm(
    lam,
    lat: Lattice,
    p: float,
    q: float,
    M: float = 2.0,
    xi_nodes: int = 1024,
) -> NormEstimate:
    """Sequence tent norm on the lattice.

    Finite p, q: ( int_T ( sum_{z_k in Gamma_M(xi)} |lam_k|^p )^(q/p) |dxi| )^(1/q).
    p = inf:     ( int_T ( sup_{z_k in Gamma_M(xi)} |lam_k| )^q |dxi| )^(1/q).
    q = inf:     sup over box vertices u of
                 ( (1/(1-|u|^2)) sum_{z_k in S(u)} |lam_k|^p (1-|z_k|^2) )^(1/p),
                 the vertices ranging over lattice points lying in some
                 approach region.

    The xi-grid is evaluated at ``xi_nodes`` and at twice that; the finer
    value is returned with the difference as the error estimate.
    """
    lam_abs = np.abs(_as_seq(lam, lat))
    if p == math.inf and q == math.inf:
        raise ValueError("p and q cannot both be infinite")
    meta = {"norm": "seq_tent", "p": p, "q": q, "M": M, "xi_nodes": xi_nodes}
    if q == math.inf:
        v = _seq_value_qinf(lam_abs, lat, p, M)
        return NormEstimate(v, 0.0, meta)
    v1 = _seq_value(lam_abs, lat, p, q, _XiMembership(lat, M, xi_nodes))
    v2 = _seq_value(lam_abs, lat, p, q, _XiMembership(lat, M, 2 * xi_nodes))
    return NormEstimate(v2, abs(v2 - v1), meta)


def pairing(a, b, lat: Lattice) -> complex:
    """Duality pairing sum_k a_k b_k (1 - |z_k|) (bilinear, no conjugation)."""
    a = _as_seq(a, lat)
    b = _as_seq(b, lat)
    return complex(np.sum(a * b * (1.0 - np.abs(lat.points))))


def luecking_dual_value(a, lat: Lattice, q: float) -> float:
    """Small-exponent dual functional value sup_k |a_k| (1 - |z_k|)^(1 - 1/q)."""
    a = _as_seq(a, lat)
    if not q > 0.0:
        raise ValueError("q must be positive")
    return float(np.max(np.abs(a) * (1.0 - np.abs(lat.points)) ** (1.0 - 1.0 / q)))


def closed_form_dual_norm(
    b, lat: Lattice, p: float, q: float, M: float = 2.0, xi_nodes: int = 1024
) -> float:
    """Dual norm of the functional a -> pairing(a, b) on the (p, q) tent space.

    Dispatches on the duality regime: conjugate-exponent tent norm for
    p >= 1 < q, the q' = inf box mode for q = 1 < p, and the weighted sup
    formula for q < 1 or (p <= 1, q = 1).
    """
    if q > 1.0 and p >= 1.0:
        pp = math.inf if p == 1.0 else p / (p - 1.0)
        qq = q / (q - 1.0)
        return seq_tent_norm(b, lat, pp, qq, M, xi_nodes).value
    if q == 1.0 and p > 1.0:
        return seq_tent_norm(b, lat, p / (p - 1.0), math.inf, M, xi_nodes).value
    return luecking_dual_value(b, lat, q)


def dual_norm_estimate(
    b,
    lat: Lattice,
    p: float,
    q: float,
    trials: int = 8,
    iters: int = 60,
    M: float = 2.0,
    xi_nodes: int = 512,
    seed: int = 7,
) -> float:
    """Lower bound on sup { |pairing(a, b)| : ||a||_{T_p^q} = 1 } by search.

    The optimal a has entries aligned against b, so the search runs over
    nonnegative sequences: single-coordinate candidates, then seeded random
    starts refined by normalized gradient ascent with an adaptive step.
    Deterministic for a fixed seed.
    """
    b = _as_seq(b, lat)
    c = np.abs(b) * (1.0 - np.abs(lat.points))
    if not np.any(c > 0.0):
        return 0.0
    mem = _XiMembership(lat, M, xi_nodes)

    def norm_of(a_abs):
        return _seq_value(a_abs, lat, p, q, mem)

    def objective(a_abs):
        nv = norm_of(a_abs)
        if nv <= 0.0:
            return 0.0
        return float(np.dot(a_abs, c)) / nv

    def refine(a, val):
        step = 0.5
        for _ in range(iters):
            cand = a + step * np.linalg.norm(a) * grad_dir
            cval = objective(cand)
            if cval > val:
                a, val = cand, cval
                step *= 1.25
            else:
                step *= 0.5
                if step < 1e-6:
                    break
        return val

    best = 0.0
    # single-coordinate candidates: a = e_k / ||e_k||
    for k in np.argsort(c)[-8:]:
        if c[k] <= 0.0:
            continue
        e = np.zeros_like(c)
        e[k] = 1.0
        best = max(best, objective(e))
    grad_dir = c / np.linalg.norm(c)
    # Hoelder-equality-shaped starts: powers of b (1-|z|)/omega, which solve
    # the weighted Cauchy-Schwarz case p = q = 2 exactly
    omega = np.maximum(stolz_arc_measure(lat.points, M), 1e-12)
    base = c / omega
    kappas = {1.0, 0.5, 2.0}
    if p > 1.0:
        kappas.add(1.0 / (p - 1.0))
    if q > 1.0:
        kappas.add(1.0 / (q - 1.0))
    for kappa in sorted(kappas):
        a0 = base**kappa
        if not np.any(a0 > 0.0):
            continue
        best = max(best, refine(a0, objective(a0)))
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        a = rng.random(c.size) ** 2
        best = max(best, refine(a, objective(a)))
    return best


def discretize_function(
    f: AnalyticFunction,
    lat: Lattice,
    alpha: float,
    p: float,
    boundary_samples: int = 64,
) -> np.ndarray:
    """Per-point samples lam_k = sup_{D(z_k, r)-closure} |f| * (1 - |z_k|)^(alpha/p).

    The sup over the closed hyperbolic disc is attained on its boundary
    circle (maximum principle), estimated from ``boundary_samples`` boundary
    points plus the center of the Euclidean image disc.
    """
    pts = lat.points
    probes = np.empty((len(pts), boundary_samples + 1), dtype=complex)
    ang = TWO_PI * np.arange(boundary_samples) / boundary_samples
    circle = np.exp(1j * ang)
    for k, z in enumerate(pts):
        ec, er = hyperbolic_disc_euclidean(z, lat.r_cover)
        er = min(er, 1.0 - 1e-13 - abs(ec))  # stay strictly inside the disc
        probes[k, :boundary_samples] = ec + er * circle
        probes[k, boundary_samples] = ec
    sup = np.abs(f.eval(probes)).max(axis=1)
    return sup * (1.0 - np.abs(pts)) ** (alpha / p)
