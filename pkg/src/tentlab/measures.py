"""Positive Borel measures on the disc: smooth densities plus finite atom lists.

A measure is a density against area measure plus point masses.  Densities
split into a bounded angular-dependent factor and a power of (1 - r) that the
quadrature engine integrates with the exact substituted variable, so
boundary-singular radial weights never suffer cancellation.

Masses of regions that meet the unit circle can genuinely diverge; divergence
is reported through the +inf sentinel, never raised, so parameter sweeps can
continue past a divergent cell.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .functions import AnalyticFunction, function_from_spec, function_to_spec
from .geometry import Region, ensure_in_disc
from .quadrature import QuadratureConfig, QuadResult, integrate_disc

__all__ = [
    "RadialPowerDensity",
    "SymbolPowerDensity",
    "ZeroDensity",
    "DiscMeasure",
    "region_mass",
    "mu_from_symbol",
    "lebesgue_area",
    "measure_to_spec",
    "measure_from_spec",
]


@dataclass(frozen=True)
class RadialPowerDensity:
    """d(mass) = (1 - |z|^2)^beta dA, integrable on the disc iff beta > -1."""

    beta: float

    is_radial = True
    is_zero = False

    @property
    def radial_exponent(self) -> float:
        return self.beta

    def smooth(self, z: np.ndarray) -> np.ndarray:
        return (1.0 + np.abs(z)) ** self.beta


@dataclass(frozen=True)
class SymbolPowerDensity:
    """d(mass) = |g'(z)|^exponent (1 - |z|)^weight_exponent dA."""

    g: AnalyticFunction
    exponent: float
    weight_exponent: float

    is_radial = False
    is_zero = False

    @property
    def radial_exponent(self) -> float:
        return self.weight_exponent

    def smooth(self, z: np.ndarray) -> np.ndarray:
        return np.abs(self.g.eval(z, 1)) ** self.exponent


@dataclass(frozen=True)
class ZeroDensity:
    is_radial = True
    is_zero = True

    @property
    def radial_exponent(self) -> float:
        return 0.0

    def smooth(self, z: np.ndarray) -> np.ndarray:
        return np.zeros(z.shape)


@dataclass(frozen=True)
class DiscMeasure:
    """Density part plus a finite list of positive atoms."""

    density: object
    atom_points: tuple = ()
    atom_masses: tuple = ()

    def __post_init__(self):
        pts = tuple(complex(p) for p in self.atom_points)
        ms = tuple(float(m) for m in self.atom_masses)
        if len(pts) != len(ms):
            raise ValueError("atom points and masses must align")
        for p in pts:
            ensure_in_disc(p, "atom")
        if any(m <= 0.0 for m in ms):
            raise ValueError("atom masses must be positive")
        object.__setattr__(self, "atom_points", pts)
        object.__setattr__(self, "atom_masses", ms)

    @property
    def rotation_invariant(self) -> bool:
        return self.density.is_radial and not self.atom_points

    def atom_mass_in(self, region: Region) -> float:
        if not self.atom_points:
            return 0.0
        inside = region.contains_many(np.asarray(self.atom_points, dtype=complex))
        return float(np.sum(np.asarray(self.atom_masses)[inside]))


def lebesgue_area() -> DiscMeasure:
    """Unnormalized area measure dA."""
    return DiscMeasure(RadialPowerDensity(0.0))


def mu_from_symbol(g: AnalyticFunction, exponent: float, weight_exponent: float) -> DiscMeasure:
    """Measure |g'(z)|^exponent (1 - |z|)^weight_exponent dA derived from a symbol."""
    return DiscMeasure(SymbolPowerDensity(g, exponent, weight_exponent))


def region_mass(
    mu: DiscMeasure,
    region: Region,
    cfg: QuadratureConfig = QuadratureConfig(),
) -> QuadResult:
    """Measure of a region: quadrature for the density plus exact atom filter.

    Radial densities are exact in the angular direction (the slice integral
    is width times value), so they run with the minimum angular node count.
    Divergent radial-power masses on boundary-touching regions are recognized
    analytically and reported as +inf.
    """
    atom = mu.atom_mass_in(region)
    dens = mu.density
    if dens.is_zero:
        return QuadResult(atom, 0.0, True)
    # a non-tangential region gains one radial power from its shrinking width
    eff = dens.radial_exponent + (1.0 if region.arc_shrinks_linearly() else 0.0)
    if dens.is_radial and region.touches_boundary() and eff <= -1.0:
        return QuadResult(math.inf, math.inf, False, True)
    if dens.is_radial:
        cfg = replace(cfg, angular_nodes=8)
    res = integrate_disc(
        lambda z: dens.smooth(z), region, cfg, weight_exponent=dens.radial_exponent
    )
    if res.divergent:
        return res
    return QuadResult(res.value + atom, res.abs_error, res.converged, False, res.levels)


def lattice_disc_masses(
    mu: DiscMeasure,
    lat,
    radius: float | None = None,
    cfg: QuadratureConfig = QuadratureConfig(radial_nodes=24, angular_nodes=32, refinement_levels=2),
) -> np.ndarray:
    """Masses of the hyperbolic discs D(z_k, radius) over all lattice points.

    Rotation-invariant measures need one quadrature per lattice level (the
    mass depends only on |z_k|); otherwise one per point.
    """
    from .geometry import HyperbolicDisc  # local import to keep module deps flat

    if radius is None:
        radius = lat.r_cover
    pts = lat.points
    out = np.empty(len(pts))
    if mu.rotation_invariant:
        for lvl in np.unique(lat.level):
            idx = np.nonzero(lat.level == lvl)[0]
            m = region_mass(mu, HyperbolicDisc(pts[idx[0]], radius), cfg).value
            out[idx] = m
        return out
    for k, z in enumerate(pts):
        out[k] = region_mass(mu, HyperbolicDisc(z, radius), cfg).value
    return out


# ---------------------------------------------------------------------------
# JSON round trip
# ---------------------------------------------------------------------------


def measure_to_spec(mu: DiscMeasure) -> dict:
    dens = mu.density
    if isinstance(dens, ZeroDensity):
        d = {"type": "zero"}
    elif isinstance(dens, RadialPowerDensity):
        d = {"type": "radial_power", "beta": dens.beta}
    elif isinstance(dens, SymbolPowerDensity):
        d = {
            "type": "symbol_power",
            "g": function_to_spec(dens.g),
            "exponent": dens.exponent,
            "weight_exponent": dens.weight_exponent,
        }
    else:
        raise TypeError(f"cannot serialize density {type(dens).__name__}")
    atoms = [
        {"re": p.real, "im": p.imag, "mass": m}
        for p, m in zip(mu.atom_points, mu.atom_masses)
    ]
    return {"density": d, "atoms": atoms}


def measure_from_spec(spec: dict) -> DiscMeasure:
    d = spec.get("density", {"type": "zero"})
    kind = d.get("type")
    if kind == "zero":
        dens = ZeroDensity()
    elif kind == "radial_power":
        dens = RadialPowerDensity(float(d["beta"]))
    elif kind == "symbol_power":
        dens = SymbolPowerDensity(
            function_from_spec(d["g"]), float(d["exponent"]), float(d["weight_exponent"])
        )
    else:
        raise ValueError(f"unknown density type: {kind!r}")
    atoms = spec.get("atoms", [])
    return DiscMeasure(
        dens,
        tuple(complex(a["re"], a["im"]) for a in atoms),
        tuple(float(a["mass"]) for a in atoms),
    )


def measure_to_json(mu: DiscMeasure) -> str:
    return json.dumps(measure_to_spec(mu))


def measure_from_json(text: str) -> DiscMeasure:
    return measure_from_spec(json.loads(text))
