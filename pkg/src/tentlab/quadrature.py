"""Deterministic quadrature on the disc, its boundary circle, and disc regions.

The radial direction uses Gauss-Legendre in the substituted variable
u = -log(1 - r), truncated at r = 1 - eps; the angular direction uses the
uniform trapezoid rule on full circles (spectrally accurate for periodic
integrands) and scaled Gauss-Legendre on partial arcs.  Regions supply their
radial breakpoints and per-radius angular arcs, so restricted integrals never
see a discontinuous characteristic function.

Boundary-singular radial weights (1 - r)^gamma, gamma > -1, belong to the
engine, not the integrand: interior nodes fold (1 - r)^gamma in with 1 - r
computed exactly as exp(-u), and on regions whose angular slice does not
shrink toward the boundary the truncated band [1 - eps, 1] is integrated by
a Gauss-Jacobi rule with weight exponent gamma, so the endpoint singularity
carries no cutoff error at all.  (Non-tangential regions shrink linearly,
which tames the weight by one power; there the cutoff error is already of
order eps^(gamma + 2) and no endpoint rule is needed.)  Integrands are
always evaluated at radii clamped away from the circle.

Refinement levels double node counts and deepen the cutoff, so the
last-two-level difference is an honest error estimate including what remains
of the boundary tail.  All reductions are fixed-order; results are
bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy.special import roots_jacobi

from .geometry import TWO_PI, Region

__all__ = [
    "QuadratureConfig",
    "QuadResult",
    "gauss_legendre",
    "radial_rule",
    "radial_blocks",
    "midpoint_angles",
    "integrate_disc",
    "integrate_boundary",
    "finalize_levels",
]

# radius closest to the circle at which integrands are ever evaluated
EVAL_CLAMP = 1.0 - 1e-13
# deepest cutoff; below this 1 - r is no longer well separated from rounding
MIN_CUTOFF = 1e-13
# a refinement step growing twice in a row by this factor flags divergence
GROWTH_FLAG = 1.08


@dataclass(frozen=True)
class QuadratureConfig:
    """Node counts, boundary cutoff and refinement policy.

    ``boundary_cutoff`` is the level-0 value of eps; level k uses
    eps^(1 + k/2) (clamped at 1e-13), so refinement sees the boundary tail.
    """

    radial_nodes: int = 64
    angular_nodes: int = 256
    boundary_cutoff: float = 1e-6
    refinement_levels: int = 4
    rel_tol: float = 1e-6

    def __post_init__(self):
        if self.radial_nodes < 8 or self.angular_nodes < 8:
            raise ValueError("node counts must be at least 8")
        if not 0.0 < self.boundary_cutoff <= 1e-2:
            raise ValueError("boundary_cutoff must lie in (0, 1e-2]")
        if self.refinement_levels < 1:
            raise ValueError("refinement_levels must be at least 1")
        if self.rel_tol < 1e-12:
            raise ValueError("rel_tol must be at least 1e-12")

    def level(self, k: int) -> tuple[int, int, float]:
        """(radial nodes, angular nodes, cutoff) at refinement level k."""
        eps = max(self.boundary_cutoff ** (1.0 + 0.5 * k), MIN_CUTOFF)
        return self.radial_nodes * 2**k, self.angular_nodes * 2**k, eps

    def snapshot(self) -> dict:
        return asdict(self)


@dataclass
class QuadResult:
    """Integral value with a last-two-refinement error estimate."""

    value: float
    abs_error: float
    converged: bool
    divergent: bool = False
    levels: tuple[float, ...] = field(default_factory=tuple)

    def as_tuple(self) -> tuple[float, float]:
        return self.value, self.abs_error


@lru_cache(maxsize=128)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Cached Gauss-Legendre nodes and weights on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def midpoint_angles(n: int) -> np.ndarray:
    """Uniform midpoint angular grid 2 pi (j + 1/2) / n.

    Spectrally accurate for periodic integrands like the endpoint grid, but
    no node ever lies at angle 0, where boundary-kernel integrands blow up.
    """
    return TWO_PI * (np.arange(n) + 0.5) / n


def radial_rule(a: float, b: float, nodes: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Gauss-Legendre rule for integrals dr over [a, b] in u = -log(1-r).

    Returns (r, 1 - r, w) with the substitution Jacobian folded into w and
    1 - r computed as exp(-u) (exact near the circle).
    """
    ua = -math.log1p(-a)
    ub = -math.log1p(-b)
    x, w = gauss_legendre(nodes)
    u = 0.5 * (ub - ua) * (x + 1.0) + ua
    wu = 0.5 * (ub - ua) * w
    omr = np.exp(-u)
    r = -np.expm1(-u)
    return r, omr, wu * omr


@lru_cache(maxsize=256)
def _jacobi_rule(nodes: int, gamma: float) -> tuple[np.ndarray, np.ndarray]:
    return roots_jacobi(nodes, gamma, 0.0)


def _jacobi_tail(eps: float, nodes: int, gamma: float):
    """Rule for int_{1-eps}^1 (1-r)^gamma F(r) dr, exact in the weight.

    Maps the Jacobi rule with weight (1-x)^gamma from [-1, 1]; the factor
    (eps/2)^(gamma+1) carries the interval scaling.  1 - r is computed from
    the node coordinate directly, never by subtraction from 1.
    """
    x, w = _jacobi_rule(nodes, round(float(gamma), 12))
    omr = eps * (1.0 - x) / 2.0
    r = 1.0 - eps + eps * (1.0 + x) / 2.0
    return r, omr, (eps / 2.0) ** (gamma + 1.0) * w


def radial_blocks(
    breakpoints: Sequence[float],
    eps: float,
    nodes: int,
    gamma: float = 0.0,
    endpoint_rule: bool = True,
) -> list[tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Radial rule blocks for int_0^1 (1-r)^gamma F(r) dr with interior knots.

    Interior pieces run Gauss-Legendre in u = -log(1-r) up to 1 - eps with
    the weight folded in from exact exp(-u).  When ``endpoint_rule`` is set
    (and gamma > -1) the band [1-eps, 1] is added with the Gauss-Jacobi rule
    of the weight, which has no truncation error; otherwise the band is
    dropped and its mass is the cutoff error the refinement estimate sees.
    """
    cut = 1.0 - eps
    knots = sorted({0.0, cut, *[b for b in breakpoints if 0.0 < b < cut]})
    out = []
    for a, b in zip(knots[:-1], knots[1:]):
        r, omr, w = radial_rule(a, b, nodes)
        out.append((r, omr, w * omr**gamma if gamma != 0.0 else w))
    if endpoint_rule and gamma > -1.0 + 1e-12:
        out.append(_jacobi_tail(eps, max(16, nodes // 4), gamma))
    return out


def finalize_levels(values: Sequence[float], rel_tol: float) -> QuadResult:
    """Fold a refinement-level value sequence into a result with flags.

    Divergence is declared when the tail has not settled and either the last
    two refinements each grew by more than GROWTH_FLAG, or the values grew
    by more than a factor 2 overall without collapsing back; the value is
    then +inf.
    """
    vals = [float(v) for v in values]
    if any(math.isinf(v) or math.isnan(v) for v in vals):
        return QuadResult(math.inf, math.inf, False, True, tuple(vals))
    if len(vals) == 1:
        return QuadResult(vals[0], abs(vals[0]), False, False, tuple(vals))
    err = abs(vals[-1] - vals[-2])
    scale = max(abs(vals[-1]), abs(vals[-2]), 1e-300)
    converged = err <= rel_tol * scale
    if len(vals) >= 3 and not converged:
        g1 = vals[-1] > GROWTH_FLAG * abs(vals[-2]) and vals[-2] > 0
        g2 = vals[-2] > GROWTH_FLAG * abs(vals[-3]) and vals[-3] > 0
        g_total = (
            vals[0] >= 0.0
            and vals[-1] > 2.0 * max(vals[0], 1e-300)
            and vals[-1] >= 0.5 * max(vals)
        )
        if (g1 and g2) or g_total:
            return QuadResult(math.inf, math.inf, False, True, tuple(vals))
    return QuadResult(vals[-1], err, converged, False, tuple(vals))


def _block_value(
    h: Callable[[np.ndarray], np.ndarray],
    region: Region,
    block: tuple[np.ndarray, np.ndarray, np.ndarray],
    angular_nodes: int,
) -> float:
    r, omr, wr = block
    center, hw = region.angular_arc(r)
    if np.all(hw <= 0.0):
        return 0.0
    rad_w = wr * r
    r_eval = np.minimum(r, EVAL_CLAMP)
    if np.all(hw >= math.pi - 1e-12):
        theta = midpoint_angles(angular_nodes)
        z = r_eval[:, None] * np.exp(1j * theta)[None, :]
        vals = np.asarray(h(z), dtype=float)
        return float(np.sum(rad_w * vals.sum(axis=1)) * (TWO_PI / angular_nodes))
    x, w = gauss_legendre(angular_nodes)
    theta = center[:, None] + hw[:, None] * x[None, :]
    wth = hw[:, None] * w[None, :]
    z = r_eval[:, None] * np.exp(1j * theta)
    vals = np.asarray(h(z), dtype=float)
    return float(np.sum(rad_w[:, None] * wth * vals))


def integrate_disc(
    h: Callable[[np.ndarray], np.ndarray],
    region: Region,
    cfg: QuadratureConfig = QuadratureConfig(),
    weight_exponent: float = 0.0,
) -> QuadResult:
    """Integrate h(z) (1-|z|)^weight_exponent over the region, area measure.

    Parameters
    ----------
    h : callable
        Vectorized integrand; receives a complex ndarray, returns reals.
        Must stay bounded toward the boundary circle except on null sets;
        the singular radial factor belongs in ``weight_exponent``.
    region : Region
        Integration domain; supplies breakpoints and angular arcs.
    cfg : QuadratureConfig
        Node counts and refinement policy.
    weight_exponent : float
        Exponent gamma of the engine-side radial weight (1-r)^gamma,
        integrated without cancellation and, on regions touching the
        boundary with non-shrinking slices, without truncation error.
    """
    endpoint = region.touches_boundary() and not region.arc_shrinks_linearly()
    values = []
    for k in range(cfg.refinement_levels):
        rn, an, eps = cfg.level(k)
        blocks = radial_blocks(
            region.radial_breakpoints(), eps, rn, weight_exponent, endpoint
        )
        total = 0.0
        for block in blocks:
            total += _block_value(h, region, block, an)
        values.append(total)
        if len(values) >= 2:
            if abs(values[-1] - values[-2]) <= cfg.rel_tol * max(abs(values[-1]), 1e-300):
                break
    return finalize_levels(values, cfg.rel_tol)


def integrate_boundary(
    F: Callable[[np.ndarray], np.ndarray],
    cfg: QuadratureConfig = QuadratureConfig(),
) -> QuadResult:
    """Integrate F(xi) over the unit circle against arc length (unnormalized).

    Uniform trapezoid rule with node doubling until rel_tol or the maximum
    refinement level; spectrally accurate for smooth periodic F.
    """
    values = []
    n = cfg.angular_nodes
    for _ in range(cfg.refinement_levels):
        xi = np.exp(1j * midpoint_angles(n))
        vals = np.asarray(F(xi), dtype=float)
        values.append(float(vals.sum() * (TWO_PI / n)))
        n *= 2
        if len(values) >= 2:
            if abs(values[-1] - values[-2]) <= cfg.rel_tol * max(abs(values[-1]), 1e-300):
                break
    return finalize_levels(values, cfg.rel_tol)
