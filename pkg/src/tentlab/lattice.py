"""Hyperbolic lattices from the dyadic annulus-sector decomposition.

The lattice points are the centers z_{i,j} of the regions R_{i,j}; level i
contributes 2^i points.  The covering radius is the largest hyperbolic
circumradius of a region about its center over the truncated levels, and the
separation radius the smallest inradius, both measured numerically on the
region boundaries and cached per level.  Discs of the covering radius then
cover the truncated annulus, and discs of the separation radius, each lying
inside its own region, are pairwise disjoint.

Point order is (level, sector) lexicographic, so extending the truncation
depth appends points without disturbing existing indices.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.stats import qmc

from .geometry import (
    TWO_PI,
    Region,
    hyperbolic_distance,
    luecking_center,
    pseudohyperbolic_distance,
)

__all__ = [
    "Lattice",
    "LatticeValidation",
    "generate_luecking_lattice",
    "validate_lattice",
    "points_in_region",
    "lattice_to_json",
    "lattice_from_json",
]

MAX_LEVEL = 24
_EDGE_SAMPLES = 1024


@dataclass(frozen=True)
class Lattice:
    """Finite (r, kappa)-lattice with per-point (level, sector) tags."""

    points: np.ndarray        # complex, ordered by (level, sector)
    level: np.ndarray         # int
    sector: np.ndarray        # int
    max_level: int
    r_cover: float
    kappa_sep: float
    luecking: bool = True

    def __post_init__(self):
        if len(self.points) != len(self.level) or len(self.points) != len(self.sector):
            raise ValueError("points, level, sector must align")
        if not self.kappa_sep < self.r_cover:
            raise ValueError("separation radius must be smaller than covering radius")

    def __len__(self) -> int:
        return len(self.points)

    def prefix(self, depth: int) -> "Lattice":
        """Sub-lattice of all levels up to ``depth`` (an index prefix)."""
        if depth >= self.max_level:
            return self
        keep = self.level <= depth
        return Lattice(
            self.points[keep],
            self.level[keep],
            self.sector[keep],
            depth,
            self.r_cover,
            self.kappa_sep,
            self.luecking,
        )


def _region_edges(i: int) -> list[np.ndarray]:
    """Dense boundary samples of R_{i,0} (complex arrays, one per edge)."""
    r_lo = 1.0 - 2.0**-i
    r_hi = 1.0 - 2.0 ** -(i + 1)
    a_lo, a_hi = 0.0, TWO_PI / 2**i
    t = np.linspace(0.0, 1.0, _EDGE_SAMPLES)
    ang = a_lo + (a_hi - a_lo) * t
    edges = [r_hi * np.exp(1j * ang)]
    if i > 0:
        edges.append(r_lo * np.exp(1j * ang))
        rad = r_lo + (r_hi - r_lo) * t
        edges.append(rad * np.exp(1j * a_lo))
        edges.append(rad * np.exp(1j * a_hi))
    return edges


@lru_cache(maxsize=64)
def _level_radii(i: int) -> tuple[float, float]:
    """(circumradius, inradius) of R_{i,0} about its center, hyperbolically."""
    center = luecking_center(i, 0)
    dists = [hyperbolic_distance(center, e) for e in _region_edges(i)]
    circ = max(float(np.max(d)) for d in dists)
    inr = min(float(np.min(d)) for d in dists)
    return circ, inr


def generate_luecking_lattice(max_level: int) -> Lattice:
    """All region centers z_{i,j} for levels i <= max_level.

    Point count is 2^(max_level + 1) - 1.  Levels above MAX_LEVEL are
    rejected; the point count doubles per level.
    """
    if max_level < 0:
        raise ValueError("max_level must be nonnegative")
    if max_level > MAX_LEVEL:
        raise ValueError(f"max_level above {MAX_LEVEL} exceeds desk scale")
    pts, lv, sc = [], [], []
    for i in range(max_level + 1):
        rad = 1.0 - 3.0 / 2.0 ** (i + 2)
        j = np.arange(2**i)
        ang = TWO_PI * (j + 0.5) / 2.0**i
        pts.append(rad * np.exp(1j * ang))
        lv.append(np.full(2**i, i, dtype=np.int64))
        sc.append(j.astype(np.int64))
    radii = [_level_radii(i) for i in range(max_level + 1)]
    return Lattice(
        np.concatenate(pts),
        np.concatenate(lv),
        np.concatenate(sc),
        max_level,
        max(r for r, _ in radii),
        min(k for _, k in radii),
    )


@dataclass
class LatticeValidation:
    """Report of the covering / separation / finite-multiplicity checks."""

    covering_ok: bool
    separation_ok: bool
    multiplicity: int
    max_cover_dist: float    # worst min-distance from a sample to the lattice
    min_pair_dist: float     # smallest pairwise hyperbolic distance


def _cover_samples(max_level: int, samples: int) -> np.ndarray:
    """Deterministic quasi-random samples of the covered annulus.

    Low-discrepancy in (dyadic depth, angle) coordinates, so every annular
    level receives a comparable share of samples.
    """
    h = qmc.Halton(d=2, scramble=False)
    h.fast_forward(1)  # skip the degenerate first point (0, 0)
    uv = h.random(samples)
    rad = 1.0 - 2.0 ** -(uv[:, 0] * (max_level + 1))
    return rad * np.exp(1j * TWO_PI * uv[:, 1])


def validate_lattice(lat: Lattice, samples: int = 10_000, K: float = 1.0) -> LatticeValidation:
    """Check the lattice's covering and separation properties by sampling.

    covering_ok: every quasi-random sample of the truncated annulus lies in
    some hyperbolic disc D(z_k, r_cover).  separation_ok: the discs
    D(z_k, kappa_sep) are pairwise disjoint, i.e. beta(z_k, z_j) >= 2 kappa
    for k != j.  multiplicity: the largest number of discs D(z_k, K r_cover)
    containing a single sample.  Failures are reported, never raised.
    """
    if samples < 1_000:
        raise ValueError("use at least 1000 samples")
    pts = lat.points
    zs = _cover_samples(lat.max_level, samples)
    rho_cover = math.tanh(lat.r_cover)
    rho_mult = math.tanh(K * lat.r_cover)
    worst = 0.0
    mult = 0
    chunk = max(1, (1 << 22) // max(1, len(pts)))
    for lo in range(0, len(zs), chunk):
        blk = zs[lo : lo + chunk, None]
        rho = pseudohyperbolic_distance(blk, pts[None, :])
        worst = max(worst, float(np.min(rho, axis=1).max()))
        mult = max(mult, int(np.max(np.sum(rho < rho_mult, axis=1))))
    covering_ok = worst < rho_cover

    min_pair = math.inf
    rho_sep = math.tanh(2.0 * lat.kappa_sep)
    sep_ok = True
    for lo in range(0, len(pts), chunk):
        blk = pts[lo : lo + chunk, None]
        rho = pseudohyperbolic_distance(blk, pts[None, :])
        n = rho.shape[0]
        rho[np.arange(n), lo + np.arange(n)] = 2.0  # mask self-distances
        min_pair = min(min_pair, float(rho.min()))
    sep_ok = min_pair >= rho_sep
    return LatticeValidation(
        covering_ok,
        sep_ok,
        mult,
        float(np.arctanh(min(worst, 1.0 - 1e-15))),
        float(np.arctanh(min(min_pair, 1.0 - 1e-15))),
    )


def points_in_region(lat: Lattice, region: Region) -> np.ndarray:
    """Indices of lattice points inside the region, in stable lattice order."""
    return np.nonzero(region.contains_many(lat.points))[0]


def lattice_to_json(lat: Lattice) -> str:
    header = {
        "max_level": lat.max_level,
        "r_cover": lat.r_cover,
        "kappa_sep": lat.kappa_sep,
        "luecking": lat.luecking,
    }
    pts = [
        {"i": int(i), "j": int(j), "re": float(z.real), "im": float(z.imag)}
        for i, j, z in zip(lat.level, lat.sector, lat.points)
    ]
    return json.dumps({"header": header, "points": pts})


def lattice_from_json(text: str) -> Lattice:
    doc = json.loads(text)
    h = doc["header"]
    pts = doc["points"]
    return Lattice(
        np.array([complex(p["re"], p["im"]) for p in pts], dtype=complex),
        np.array([p["i"] for p in pts], dtype=np.int64),
        np.array([p["j"] for p in pts], dtype=np.int64),
        int(h["max_level"]),
        float(h["r_cover"]),
        float(h["kappa_sep"]),
        bool(h.get("luecking", True)),
    )
