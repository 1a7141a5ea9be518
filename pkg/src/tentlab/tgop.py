"""The integration operator f -> int_0^z f g' and its boundedness classifiers.

A symbol g acts on a source space with radial-average integrability indices
(p, q); the target is either another such space (t, s) or a Hardy space H^s.
Boundedness is equivalent to one of four norm conditions on g (matching the
embedding regimes A-D) and, independently, to a lattice condition on the
measure |g'|^t (1-|w|)^(t-1) dA; classifiers compute both routes so their
verdicts can be cross-checked.

Applying the operator integrates f g' along the segment [0, z] with
Gauss-Legendre; the result is wrapped as a lazily evaluated analytic model,
so downstream norms reuse the standard quadrature paths unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .carleson import (
    ConditionReport,
    boundedness_verdict,
    classical_carleson_profile,
    classify_case,
    condition_report,
)
from .functions import AnalyticFunction
from .lattice import Lattice
from .measures import DiscMeasure, SymbolPowerDensity, mu_from_symbol
from .norms import (
    BlochGrid,
    ExponentSet,
    NormEstimate,
    QuadratureConfig,
    bloch_seminorm,
    hardy_norm,
    rm_norm,
    tent_norm,
)
from .quadrature import gauss_legendre

__all__ = [
    "tg_apply",
    "TgModel",
    "SymbolReport",
    "symbol_condition_rm",
    "symbol_condition_hardy",
    "RatioReport",
    "empirical_operator_ratio",
]

_SEG_CHUNK = 1 << 14


def _segment_integral(g, f, z: np.ndarray, nodes: int) -> np.ndarray:
    """int_0^z f g' over straight segments, vectorized over endpoints."""
    x, w = gauss_legendre(nodes)
    tq = 0.5 * (x + 1.0)
    wq = 0.5 * w
    flat = z.reshape(-1)
    out = np.empty(flat.shape, dtype=complex)
    step = max(1, _SEG_CHUNK // nodes)
    for lo in range(0, flat.size, step):
        blk = flat[lo : lo + step, None]
        pts = blk * tq[None, :]
        vals = f.eval(pts) * g.eval(pts, 1)
        out[lo : lo + step] = blk[:, 0] * (vals @ wq)
    return out.reshape(z.shape)


def tg_apply(g: AnalyticFunction, f: AnalyticFunction, z: complex, nodes: int = 128) -> complex:
    """Value of the integration operator at one point.

    Integrates f g' along [0, z]; the integrand is analytic, so the path
    within the disc is immaterial.  Evaluated at ``nodes`` and 2 * ``nodes``
    Gauss-Legendre points; the finer value is returned.
    """
    zarr = np.asarray([complex(z)])
    if abs(complex(z)) >= 1.0:
        raise ValueError("z must lie strictly inside the disc")
    return complex(_segment_integral(g, f, zarr, 2 * nodes)[0])


@dataclass(frozen=True)
class TgModel(AnalyticFunction):
    """Lazily evaluated image of f under the integration operator of g.

    Values come from segment quadrature; derivatives are exact through the
    product rule on f g' (the derivative of the image is f g' itself).
    """

    g: AnalyticFunction
    f: AnalyticFunction
    nodes: int = 192

    def eval(self, z, n=0):
        if n == 0:
            return _segment_integral(self.g, self.f, z, self.nodes)
        m = n - 1
        out = np.zeros(z.shape, dtype=complex)
        for k in range(m + 1):
            out += math.comb(m, k) * self.f.eval(z, k) * self.g.eval(z, m - k + 1)
        return out


@dataclass
class SymbolReport:
    """Two-route classification of a symbol for one exponent tuple."""

    case: str
    target: str
    norm_condition: NormEstimate
    norm_verdict: str
    lattice_condition: ConditionReport
    exponents: dict = field(default_factory=dict)

    @property
    def lattice_verdict(self) -> str:
        return self.lattice_condition.verdict

    @property
    def verdicts_agree(self) -> bool:
        return self.norm_verdict == self.lattice_verdict

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "target": self.target,
            "norm_condition": {
                "value": self.norm_condition.value,
                "abs_error": self.norm_condition.abs_error,
            },
            "norm_verdict": self.norm_verdict,
            "lattice_condition": self.lattice_condition.to_dict(),
            "exponents": self.exponents,
        }


def _bloch_verdict(est: NormEstimate) -> str:
    slope = est.config.get("slope", 0.0)
    if slope >= 0.2:
        return "unbounded"
    if slope <= 0.05:
        return "bounded"
    return "inconclusive"


def _carleson_condition(mu: DiscMeasure, depths, cfg) -> tuple[NormEstimate, str]:
    profile = classical_carleson_profile(mu, max(depths), cfg)
    running = np.maximum.accumulate(profile)
    values = [float(running[d]) for d in depths]
    verdict = boundedness_verdict(values, depths)
    est = NormEstimate(
        values[-1],
        abs(values[-1] - values[-2]),
        {"norm": "carleson_box", "depths": list(depths), "values": values},
    )
    return est, verdict


def _finite_norm_verdict(est: NormEstimate) -> str:
    return "bounded" if est.finite else "unbounded"


def symbol_condition_rm(
    g: AnalyticFunction,
    p: float,
    q: float,
    t: float,
    s: float,
    lat: Lattice,
    cfg: QuadratureConfig = QuadratureConfig(),
    depths=None,
    bloch_grid: BlochGrid = BlochGrid(),
    xi_nodes: int = 1024,
    M: float = 2.0,
    masses=None,
    memberships=None,
) -> SymbolReport:
    """Classify g for boundedness from the (p, q) to the (t, s) radial-average space.

    Norm route by regime:
      A: g itself must lie in the (pt/(p-t), qs/(q-s)) radial-average space;
      B: g'(z)(1-|z|)^(1 + 1/t - 1/p) in the sup-mode tent space with
         exponent qs/(q-s);
      C: Bloch-type seminorm with exponent 1 + 1/t + 1/s - 1/p - 1/q;
      D: |g'(z)|^(pt/(p-t)) (1-|z|)^(pt/(p-t)) dA must be a Carleson measure.
    Lattice route: the embedding condition of the regime applied to the
    measure |g'(w)|^t (1-|w|)^(t-1) dA with alpha = 1.
    """
    for name, v in (("p", p), ("q", q), ("t", t), ("s", s)):
        if not 1.0 <= v < math.inf:
            raise ValueError(f"{name} must lie in [1, inf)")
    case = classify_case(p, q, s, t)
    if depths is None:
        depths = [lat.max_level - 3, lat.max_level - 2, lat.max_level - 1, lat.max_level]
    if case == "A":
        est = rm_norm(g, p * t / (p - t), q * s / (q - s), cfg)
        verdict = _finite_norm_verdict(est)
    elif case == "B":
        est = tent_norm(
            g, math.inf, q * s / (q - s), alpha=1.0, M=M, n=1, cfg=cfg,
            weight_exponent=1.0 + 1.0 / t - 1.0 / p,
        )
        verdict = _finite_norm_verdict(est)
    elif case == "C":
        est = bloch_seminorm(g, 1.0 + 1.0 / t + 1.0 / s - 1.0 / p - 1.0 / q, bloch_grid)
        verdict = _bloch_verdict(est)
    else:
        e = p * t / (p - t)
        est, verdict = _carleson_condition(mu_from_symbol(g, e, e), depths, cfg)
    mu = DiscMeasure(SymbolPowerDensity(g, t, t - 1.0))
    exps = ExponentSet(p=p, q=q, s=s, t=t, alpha=1.0, M=M)
    lat_report = condition_report(
        mu, lat, exps, depths, xi_nodes=xi_nodes, masses=masses, memberships=memberships
    )
    return SymbolReport(
        case, f"rm({t},{s})", est, verdict, lat_report,
        {"p": p, "q": q, "t": t, "s": s},
    )


def symbol_condition_hardy(
    g: AnalyticFunction,
    p: float,
    q: float,
    s: float,
    lat: Lattice,
    cfg: QuadratureConfig = QuadratureConfig(),
    depths=None,
    bloch_grid: BlochGrid = BlochGrid(),
    xi_nodes: int = 1024,
    M: float = 2.0,
    masses=None,
    memberships=None,
) -> SymbolReport:
    """Classify g for boundedness from the (p, q) space into the Hardy space H^s.

    The target enters through square-function exponents, so the regime
    boundaries use t = 2 throughout:
      A (2 < p): |g'(z)|(1-|z|)^(1/2) in the (2p/(p-2), qs/(q-s)) tent space
        of weight 1 (direct quadrature of the non-analytic integrand);
      B (p <= 2): |g'(z)|(1-|z|)^(1 - 1/p) in the sup-mode tent space;
      C: Bloch-type exponent 1 + 1/s - 1/p - 1/q;
      D (2 < p): |g'|^(2p/(p-2)) (1-|z|)^(p/(p-2)) dA a Carleson measure.
    Lattice route: the embedding condition applied to |g'|^2 (1-|w|) dA.
    """
    for name, v in (("p", p), ("q", q), ("s", s)):
        if not 1.0 <= v < math.inf:
            raise ValueError(f"{name} must lie in [1, inf)")
    t = 2.0
    case = classify_case(p, q, s, t)
    if depths is None:
        depths = [lat.max_level - 3, lat.max_level - 2, lat.max_level - 1, lat.max_level]
    if case == "A":
        est = tent_norm(
            g, 2.0 * p / (p - 2.0), q * s / (q - s), alpha=1.0, M=M, n=1, cfg=cfg,
            weight_exponent=0.5,
        )
        verdict = _finite_norm_verdict(est)
    elif case == "B":
        est = tent_norm(
            g, math.inf, q * s / (q - s), alpha=1.0, M=M, n=1, cfg=cfg,
            weight_exponent=1.0 - 1.0 / p,
        )
        verdict = _finite_norm_verdict(est)
    elif case == "C":
        est = bloch_seminorm(g, 1.0 + 1.0 / s - 1.0 / p - 1.0 / q, bloch_grid)
        verdict = _bloch_verdict(est)
    else:
        est, verdict = _carleson_condition(
            mu_from_symbol(g, 2.0 * p / (p - 2.0), p / (p - 2.0)), depths, cfg
        )
    # the square-function route embeds against |g'|^2 dA itself (no radial
    # weight), unlike the radial-average target where (1-|w|)^(t-1) enters
    mu = DiscMeasure(SymbolPowerDensity(g, 2.0, 0.0))
    exps = ExponentSet(p=p, q=q, s=s, t=2.0, alpha=1.0, M=M)
    lat_report = condition_report(
        mu, lat, exps, depths, xi_nodes=xi_nodes, masses=masses, memberships=memberships
    )
    return SymbolReport(
        case, f"hardy({s})", est, verdict, lat_report,
        {"p": p, "q": q, "s": s, "t": 2.0},
    )


@dataclass
class RatioReport:
    """Empirical operator-norm ratios over a corpus."""

    entries: list        # (label, ratio)
    excluded: list       # (label, reason)
    max_ratio: float
    argmax: str

    def ratios(self) -> list:
        return [r for _, r in self.entries]


def empirical_operator_ratio(
    g: AnalyticFunction,
    source: tuple[float, float],
    target,
    corpus,
    cfg: QuadratureConfig = QuadratureConfig(),
) -> RatioReport:
    """Per-function ratios target_norm(T_g f) / source_norm(f) over a corpus.

    ``target`` is ("rm", (t, s)) or ("hardy", s).  Corpus members with an
    infinite source norm are excluded with a note.
    """
    p, q = source
    entries, excluded = [], []
    for label, f in corpus:
        den = rm_norm(f, p, q, cfg)
        if not den.finite or den.value <= 0.0:
            excluded.append((label, "source norm infinite or zero"))
            continue
        img = TgModel(g, f)
        if target[0] == "rm":
            t, s = target[1]
            num = rm_norm(img, t, s, cfg)
        elif target[0] == "hardy":
            num = hardy_norm(img, target[1], cfg)
        else:
            raise ValueError("target must be ('rm', (t, s)) or ('hardy', s)")
        entries.append((label, num.value / den.value if num.finite else math.inf))
    if entries:
        idx = int(np.argmax([r for _, r in entries]))
        return RatioReport(entries, excluded, entries[idx][1], entries[idx][0])
    return RatioReport(entries, excluded, math.nan, "")
