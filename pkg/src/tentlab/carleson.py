"""Carleson-type embedding conditions on a lattice and their verdicts.

The embedding of an analytic tent space into L^s of a measure over approach
regions is governed by one of four exponent regimes; each regime has a
lattice-discretized condition quantity built from masses of hyperbolic discs
around the lattice points.  Finiteness of the condition is undecidable from
any single truncation, so every quantity is evaluated across lattice depths
and a log-linear growth fit renders the verdict: bounded, unbounded, or
inconclusive, with declared slope thresholds.

Also here: the classical Carleson box constant sup_I mass(S(I))/|I| over
dyadic arcs, and the derivative-embedding conditions driven by the masses of
the dyadic annulus-sector regions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .functions import AnalyticFunction
from .geometry import TWO_PI, CarlesonBox, WholeDisc, luecking_index_of, stolz_arc_halfwidth
from .lattice import Lattice
from .measures import DiscMeasure, QuadratureConfig, lattice_disc_masses, region_mass
from .norms import NormEstimate
from .quadrature import EVAL_CLAMP, gauss_legendre, integrate_disc, midpoint_angles, radial_rule
from .seqtent import _XiMembership, seq_tent_norm

__all__ = [
    "classify_case",
    "ConditionReport",
    "fit_growth",
    "boundedness_verdict",
    "condition_value",
    "condition_report",
    "embedding_lhs",
    "classical_carleson_constant",
    "classical_carleson_profile",
    "luecking_mu_sequence",
    "luecking_case",
    "luecking_condition",
    "derivative_embedding_lhs",
]

SLOPE_BOUNDED = 0.05
SLOPE_UNBOUNDED = 0.2
STABILITY_TOL = 0.02
MASS_CFG = QuadratureConfig(radial_nodes=24, angular_nodes=32, refinement_levels=2)


def classify_case(p: float, q: float, s: float, t: float) -> str:
    """Exponent regime of the embedding: one of "A", "B", "C", "D".

    A: s < q and t < p        (summed condition, boundary-integrated)
    B: s < q and p <= t       (sup condition, boundary-integrated)
    C: q < s (any p, t), or q = s and p <= t   (single sup over the lattice)
    D: q = s and t < p        (dyadic-box summed condition)
    """
    for name, v in (("p", p), ("q", q), ("s", s), ("t", t)):
        if not v > 0.0:
            raise ValueError(f"{name} must be positive")
    if s < q:
        return "A" if t < p else "B"
    if q < s:
        return "C"
    return "C" if p <= t else "D"


@dataclass
class ConditionReport:
    """Condition values across lattice depths with the fitted growth verdict."""

    case: str
    depths: list
    values: list
    slope: float
    residual: float
    verdict: str
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "depths": list(self.depths),
            "values": [float(v) for v in self.values],
            "slope": self.slope,
            "residual": self.residual,
            "verdict": self.verdict,
            "config": self.config,
        }


def fit_growth(values, depths) -> tuple[float, float]:
    """Least-squares slope of log(value) against depth * log 2, with residual."""
    v = np.asarray(values, dtype=float)
    d = np.asarray(depths, dtype=float)
    y = np.log(np.maximum(v, 1e-300))
    x = d * math.log(2.0)
    if np.ptp(y) == 0.0:
        return 0.0, 0.0
    coeffs = np.polyfit(x, y, 1)
    resid = float(np.max(np.abs(np.polyval(coeffs, x) - y)))
    return float(coeffs[0]), resid


def boundedness_verdict(values, depths=None) -> str:
    """Growth-rate proxy verdict for "finite in the limit".

    bounded: |slope| <= 0.05 and the last two values differ by at most 2%;
    unbounded: slope >= 0.2 (or any value is infinite); else inconclusive.
    Requires at least 3 depths.
    """
    values = [float(v) for v in values]
    if len(values) < 3:
        raise ValueError("need at least 3 depths for a verdict")
    if depths is None:
        depths = list(range(len(values)))
    if any(math.isinf(v) or math.isnan(v) for v in values):
        return "unbounded"
    if max(values) <= 0.0:
        return "bounded"
    slope, _ = fit_growth(values, depths)
    last_change = abs(values[-1] - values[-2]) / max(abs(values[-1]), 1e-300)
    if abs(slope) <= SLOPE_BOUNDED and last_change <= STABILITY_TOL:
        return "bounded"
    if slope >= SLOPE_UNBOUNDED:
        return "unbounded"
    return "inconclusive"


# ---------------------------------------------------------------------------
# Condition quantities on the lattice
# ---------------------------------------------------------------------------


def _normalized_masses(masses, lat, exps) -> np.ndarray:
    """mass^(1/t) / (1 - |z_k|)^(alpha/p) over the lattice points."""
    omr = 1.0 - np.abs(lat.points)
    return masses ** (1.0 / exps.t) / omr ** (exps.alpha / exps.p)


def _dyadic_box_sup(contrib: np.ndarray, lat: Lattice, depth: int) -> float:
    """sup over dyadic arcs I (levels 0..depth) of the normalized box sum
    (1/|I|) sum over box points of contrib.

    contrib is the per-point summand; a point with |z_k| >= 1 - |I| in the
    angular span of I contributes to the arc's sum.  The 1/|I| normalization
    is the box-mode (q = inf) sequence-tent scaling; without it the supremum
    over arcs would be attained at the whole circle for every summable
    sequence and could not witness boundary concentration.
    """
    r = np.abs(lat.points)
    ang = np.mod(np.angle(lat.points), TWO_PI)
    ang = np.where(ang >= TWO_PI, 0.0, ang)
    best = 0.0
    for lvl in range(depth + 1):
        arcs = 2**lvl
        width = TWO_PI / arcs
        ok = r >= 1.0 - width
        if not np.any(ok):
            continue
        idx = np.minimum((ang[ok] / width).astype(np.int64), arcs - 1)
        sums = np.bincount(idx, weights=contrib[ok], minlength=arcs)
        best = max(best, float(sums.max()) / width)
    return best


def condition_value(
    mu: DiscMeasure,
    lat: Lattice,
    exps,
    depth: int,
    cfg: QuadratureConfig = MASS_CFG,
    masses: np.ndarray | None = None,
    xi_nodes: int = 2048,
    membership=None,
) -> float:
    """Truncated embedding-condition quantity for the regime of ``exps``.

    A: int_T ( sum_{z_k in Gamma(xi)} m_k^(pt/(p-t)) )^((p-t)qs/((q-s)pt)) |dxi|
    B: int_T ( sup_{z_k in Gamma(xi)} m_k )^(qs/(q-s)) |dxi|
    C: max_k mass_k^(1/t) / (1-|z_k|)^(alpha/p + 1/q - 1/s)
    D: [ sup_I (1/|I|) sum_{z_k in S(I)} m_k^(pt/(p-t)) (1-|z_k|) ]^((p-t)/(pt)),
       I over dyadic arcs of levels 0..depth
    with m_k = mass_k^(1/t) / (1-|z_k|)^(alpha/p) and mass_k the measure of
    the hyperbolic disc D(z_k, r_cover).  The case-D box sum carries the
    1/|I| normalization of the box-mode sequence-tent norm, which is how the
    condition arises in the duality argument.
    """
    p, q, s, t = exps.p, exps.q, exps.s, exps.t
    case = classify_case(p, q, s, t)
    if case in ("A", "D") and not t < p:
        raise ValueError("cases A and D need t < p (exponent p t/(p-t) blows up)")
    sub = lat.prefix(depth)
    if masses is None:
        masses = lattice_disc_masses(mu, sub, lat.r_cover, cfg)
    else:
        masses = np.asarray(masses, dtype=float)[: len(sub)]
    if case == "C":
        omr = 1.0 - np.abs(sub.points)
        e = exps.alpha / p + 1.0 / q - 1.0 / s
        return float(np.max(masses ** (1.0 / t) / omr**e))
    m = _normalized_masses(masses, sub, exps)
    if case == "A":
        inner = p * t / (p - t)
        outer = (p - t) * q * s / ((q - s) * p * t)
        mem = membership or _XiMembership(sub, exps.M, xi_nodes)
        sums = mem.weighted_sums(m**inner)
        return float((TWO_PI / mem.nodes) * np.sum(sums**outer))
    if case == "B":
        outer = q * s / (q - s)
        mem = membership or _XiMembership(sub, exps.M, xi_nodes)
        sups = mem.masked_max(m)
        return float((TWO_PI / mem.nodes) * np.sum(sups**outer))
    # case D
    inner = p * t / (p - t)
    contrib = m**inner * (1.0 - np.abs(sub.points))
    return _dyadic_box_sup(contrib, sub, depth) ** ((p - t) / (p * t))


def case_c_level_exponent(
    mu: DiscMeasure,
    lat: Lattice,
    exps,
    depths,
    cfg: QuadratureConfig = MASS_CFG,
) -> tuple[float, list]:
    """Scaling exponent of the single-sup condition along lattice levels.

    Restricts the normalized masses mass_k^(1/t) / (1-|z_k|)^(alpha/p+1/q-1/s)
    to the points of each level and fits log(level max) against
    log(1 - |level radius|).  For a radial-power measure of exponent beta the
    fitted slope approaches (beta+2)/t - alpha/p - 1/q + 1/s, positive or
    negative, which is what the sup itself cannot show on the bounded side.
    """
    depths = sorted(depths)
    sub = lat.prefix(depths[-1])
    masses = lattice_disc_masses(mu, sub, lat.r_cover, cfg)
    omr = 1.0 - np.abs(sub.points)
    e = exps.alpha / exps.p + 1.0 / exps.q - 1.0 / exps.s
    m = masses ** (1.0 / exps.t) / omr**e
    values = [float(np.max(m[sub.level == d])) for d in depths]
    x = -np.asarray(depths, dtype=float) * math.log(2.0)
    y = np.log(np.maximum(values, 1e-300))
    slope = float(np.polyfit(x, y, 1)[0]) if np.ptp(y) > 0 else 0.0
    return slope, values


def condition_report(
    mu: DiscMeasure,
    lat: Lattice,
    exps,
    depths=None,
    cfg: QuadratureConfig = MASS_CFG,
    xi_nodes: int = 2048,
    masses: np.ndarray | None = None,
    memberships: dict | None = None,
) -> ConditionReport:
    """Evaluate the regime condition across depths and render the verdict.

    ``masses`` (per-point disc masses at the deepest depth) and
    ``memberships`` (depth -> boundary-grid membership) can be precomputed
    and shared across many exponent tuples for the same measure.
    """
    if depths is None:
        depths = list(range(max(2, lat.max_level - 3), lat.max_level + 1))
    depths = sorted(depths)
    if depths[-1] > lat.max_level:
        raise ValueError("requested depth exceeds the lattice truncation")
    if masses is None:
        masses = lattice_disc_masses(mu, lat.prefix(depths[-1]), lat.r_cover, cfg)
    case = classify_case(exps.p, exps.q, exps.s, exps.t)
    values = [
        condition_value(
            mu, lat, exps, d, cfg, masses=masses, xi_nodes=xi_nodes,
            membership=(memberships or {}).get(d),
        )
        for d in depths
    ]
    slope, resid = fit_growth(values, depths)
    verdict = boundedness_verdict(values, depths)
    return ConditionReport(
        case, list(depths), values, slope, resid, verdict,
        {"xi_nodes": xi_nodes, "exponents": vars(exps).copy(), **cfg.snapshot()},
    )


# ---------------------------------------------------------------------------
# Embedding left-hand side
# ---------------------------------------------------------------------------


def _fourier_eval(coef: np.ndarray, n_grid: int, phis: np.ndarray) -> np.ndarray:
    """Evaluate at arbitrary angles the trig polynomial whose rfft
    coefficients ``coef`` came from samples on the midpoint grid."""
    m = np.arange(coef.size)
    wts = np.full(coef.size, 2.0)
    wts[0] = 1.0
    if n_grid % 2 == 0:
        wts[-1] = 1.0
    shift = np.exp(-1j * m * (math.pi / n_grid))  # midpoint sampling phase
    phases = np.exp(1j * np.outer(phis, m))
    return (phases @ (wts * shift * coef)).real / n_grid


def embedding_lhs(
    f: AnalyticFunction,
    mu: DiscMeasure,
    s: float,
    t: float,
    M: float = 2.0,
    cfg: QuadratureConfig = QuadratureConfig(),
) -> NormEstimate:
    """( int_T ( int_{Gamma_M(xi)} |f|^t dmu )^(s/t) |dxi| )^(1/s).

    The density part of the inner integral is assembled for all xi at once
    by the arc-indicator convolution; atoms enter exactly, each switched on
    over the boundary arc on which its point is inside the approach region.
    The outer integral is piecewise smooth between atom-arc endpoints and is
    integrated piece by piece.
    """
    if not (s > 0.0 and t > 0.0):
        raise ValueError("s and t must be positive")
    meta = {"op": "embedding_lhs", "s": s, "t": t, "M": M, **cfg.snapshot()}
    dens = mu.density
    atom_vals = np.array(
        [m * abs(f(z)) ** t for z, m in zip(mu.atom_points, mu.atom_masses)]
    )
    if mu.atom_points:
        apts = np.asarray(mu.atom_points, dtype=complex)
        a_ang = np.angle(apts)
        a_hw = stolz_arc_halfwidth(np.abs(apts), M)
    values = []
    for k in range(cfg.refinement_levels):
        R, A, eps = cfg.level(k)
        coef = np.zeros(A // 2 + 1, dtype=complex)
        phase = np.exp(1j * midpoint_angles(A))
        if not dens.is_zero:
            gamma = dens.radial_exponent
            from .norms import _arc_indicator_coeffs, _gamma_pieces

            for a, b in _gamma_pieces(M, eps):
                r, omr, wr = radial_rule(a, b, R)
                hw = stolz_arc_halfwidth(r, M)
                if np.all(hw <= 0.0):
                    continue
                z = np.minimum(r, EVAL_CLAMP)[:, None] * phase[None, :]
                G = np.abs(f.eval(z)) ** t * dens.smooth(z)
                G *= (omr**gamma)[:, None]
                coef += (
                    (wr * r)[:, None]
                    * np.fft.rfft(G, axis=1)
                    * _arc_indicator_coeffs(hw, A // 2 + 1)
                ).sum(axis=0)

        if not mu.atom_points:
            inner = np.clip(np.fft.irfft(coef, n=A), 0.0, None)
            values.append(float(((TWO_PI / A) * np.sum(inner ** (s / t))) ** (1.0 / s)))
        else:
            cuts = np.sort(
                np.unique(np.concatenate([np.mod(a_ang - a_hw, TWO_PI), np.mod(a_ang + a_hw, TWO_PI)]))
            )
            cuts = np.concatenate([cuts, [cuts[0] + TWO_PI]])
            gx, gw = gauss_legendre(16)
            total = 0.0
            for lo, hi in zip(cuts[:-1], cuts[1:]):
                if hi - lo < 1e-15:
                    continue
                nseg = max(1, int(A * (hi - lo) / TWO_PI / 8))
                edges = np.linspace(lo, hi, nseg + 1)
                for a0, b0 in zip(edges[:-1], edges[1:]):
                    phis = 0.5 * (b0 - a0) * (gx + 1.0) + a0
                    wphi = 0.5 * (b0 - a0) * gw
                    dvals = np.clip(_fourier_eval(coef, A, phis), 0.0, None)
                    d_ang = np.mod(phis[:, None] - a_ang[None, :], TWO_PI)
                    d_ang = np.minimum(d_ang, TWO_PI - d_ang)
                    avals = (atom_vals[None, :] * (d_ang < a_hw[None, :])).sum(axis=1)
                    total += float(np.sum(wphi * (dvals + avals) ** (s / t)))
            values.append(total ** (1.0 / s))
        if len(values) >= 2 and abs(values[-1] - values[-2]) <= cfg.rel_tol * max(
            abs(values[-1]), 1e-300
        ):
            break
    from .quadrature import finalize_levels

    res = finalize_levels(values, cfg.rel_tol)
    return NormEstimate(res.value, res.abs_error, dict(meta, levels=list(res.levels)))


# ---------------------------------------------------------------------------
# Classical Carleson box constant
# ---------------------------------------------------------------------------


def classical_carleson_profile(
    mu: DiscMeasure, depth: int, cfg: QuadratureConfig = QuadratureConfig()
) -> list:
    """Per-level maxima of mass(S(I))/|I| over the dyadic arcs of each level."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    out = []
    atom_pts = np.asarray(mu.atom_points, dtype=complex)
    atom_ms = np.asarray(mu.atom_masses, dtype=float)
    dens_only = DiscMeasure(mu.density)
    for lvl in range(depth + 1):
        arcs = 2**lvl
        width = TWO_PI / arcs
        if mu.density.is_zero:
            dens_mass = np.zeros(arcs)
        elif mu.density.is_radial:
            m0 = region_mass(dens_only, CarlesonBox(width / 2.0, width), cfg).value
            dens_mass = np.full(arcs, m0)
        else:
            dens_mass = np.array(
                [
                    region_mass(dens_only, CarlesonBox((k + 0.5) * width, width), cfg).value
                    for k in range(arcs)
                ]
            )
        if atom_pts.size:
            ok = np.abs(atom_pts) >= 1.0 - width
            idx = np.minimum(
                (np.mod(np.angle(atom_pts[ok]), TWO_PI) / width).astype(np.int64),
                arcs - 1,
            )
            atom_mass = np.bincount(idx, weights=atom_ms[ok], minlength=arcs)
        else:
            atom_mass = 0.0
        out.append(float(np.max(dens_mass + atom_mass) / width))
    return out


def classical_carleson_constant(
    mu: DiscMeasure, depth: int, cfg: QuadratureConfig = QuadratureConfig()
) -> float:
    """max over dyadic arcs I (levels 0..depth, all translates) of mass(S(I))/|I|."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    return max(classical_carleson_profile(mu, depth, cfg))


# ---------------------------------------------------------------------------
# Derivative-embedding (region-mass) conditions
# ---------------------------------------------------------------------------


def luecking_mu_sequence(
    mu: DiscMeasure,
    lat: Lattice,
    p: float,
    s: float,
    n: int,
    cfg: QuadratureConfig = MASS_CFG,
) -> np.ndarray:
    """Region-mass sequence mass(R_{i,j}) (1 - |z_{i,j}|)^(-s/p - s n - 1).

    Requires the dyadic-center lattice (the regions belong to it); masses
    combine density quadrature per region with the exact atom assignment.
    """
    if not lat.luecking:
        raise ValueError("region masses are defined for the dyadic-center lattice only")
    from .geometry import LueckingRegion

    dens_only = DiscMeasure(mu.density)
    masses = np.zeros(len(lat))
    if not mu.density.is_zero:
        if mu.density.is_radial:
            for lvl in range(lat.max_level + 1):
                m0 = region_mass(dens_only, LueckingRegion(lvl, 0), cfg).value
                masses[lat.level == lvl] = m0
        else:
            for k in range(len(lat)):
                masses[k] = region_mass(
                    dens_only, LueckingRegion(int(lat.level[k]), int(lat.sector[k])), cfg
                ).value
    for z, m in zip(mu.atom_points, mu.atom_masses):
        i, j = luecking_index_of(z)
        if i <= lat.max_level:
            idx = np.nonzero((lat.level == i) & (lat.sector == j))[0]
            masses[idx[0]] += m
    omr = 1.0 - np.abs(lat.points)
    return masses * omr ** (-s / p - s * n - 1.0)


def luecking_case(p: float, q: float, s: float) -> str:
    """Regime of the derivative-embedding condition: a, b, c, or d."""
    if s < q:
        return "a" if s < p else "b"
    if s == q:
        return "c" if p <= s else "d"
    return "c"


def luecking_condition(
    mu: DiscMeasure,
    lat: Lattice,
    p: float,
    q: float,
    s: float,
    n: int = 0,
    depths=None,
    cfg: QuadratureConfig = MASS_CFG,
    M: float = 2.0,
    xi_nodes: int = 1024,
) -> ConditionReport:
    """Derivative-embedding condition via the region-mass sequence.

    The normalized region masses are fed into the sequence tent norm of the
    regime:  a (s < p, q): T_{p/(p-s)}^{q/(q-s)};  b (p <= s < q):
    T_inf^{q/(q-s)};  c (q < s, or p <= s = q): weighted sup;  d (s = q < p):
    T_{p/(p-s)}^inf.  Values across depths render the verdict.
    """
    if depths is None:
        depths = list(range(max(2, lat.max_level - 3), lat.max_level + 1))
    depths = sorted(depths)
    case = luecking_case(p, q, s)
    seq = luecking_mu_sequence(mu, lat.prefix(depths[-1]), p, s, n, cfg)
    values = []
    for d in depths:
        sub = lat.prefix(d)
        sv = seq[: len(sub)]
        if case == "a":
            v = seq_tent_norm(sv, sub, p / (p - s), q / (q - s), M, xi_nodes).value
        elif case == "b":
            v = seq_tent_norm(sv, sub, math.inf, q / (q - s), M, xi_nodes).value
        elif case == "d":
            v = seq_tent_norm(sv, sub, p / (p - s), math.inf, M, xi_nodes).value
        else:
            v = float(np.max(np.abs(sv) * (1.0 - np.abs(sub.points)) ** (1.0 - s / q)))
        values.append(v)
    slope, resid = fit_growth(values, depths)
    verdict = boundedness_verdict(values, depths)
    return ConditionReport(
        f"Luecking-{case}", list(depths), values, slope, resid, verdict,
        {"p": p, "q": q, "s": s, "n": n, "M": M, "xi_nodes": xi_nodes},
    )


def derivative_embedding_lhs(
    f: AnalyticFunction,
    mu: DiscMeasure,
    s: float,
    n: int = 0,
    cfg: QuadratureConfig = QuadratureConfig(),
) -> NormEstimate:
    """( int_D |f^(n)|^s dmu )^(1/s): plain disc integral against the measure."""
    if not s > 0.0:
        raise ValueError("s must be positive")
    meta = {"op": "derivative_embedding_lhs", "s": s, "n": n, **cfg.snapshot()}
    dens = mu.density
    atom = sum(m * abs(f(z, n)) ** s for z, m in zip(mu.atom_points, mu.atom_masses))
    if dens.is_zero:
        return NormEstimate(atom ** (1.0 / s), 0.0, meta)
    if dens.is_radial and dens.radial_exponent <= -1.0:
        return NormEstimate(math.inf, math.inf, meta)
    res = integrate_disc(
        lambda z: np.abs(f.eval(z, n)) ** s * dens.smooth(z),
        WholeDisc(),
        cfg,
        weight_exponent=dens.radial_exponent,
    )
    if res.divergent:
        return NormEstimate(math.inf, math.inf, meta)
    total = res.value + atom
    value = total ** (1.0 / s)
    err = res.abs_error / (s * max(value, 1e-300) ** (s - 1.0))
    return NormEstimate(value, err, dict(meta, levels=list(res.levels)))
