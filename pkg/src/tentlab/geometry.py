"""Exact geometry of the unit disc.

Hyperbolic metric, hyperbolic discs (with their Euclidean images), Stolz
approach regions, Carleson boxes, tents over interior points, and the dyadic
annulus-sector (Whitney) regions whose centers generate the standard lattice.

Every region type answers two questions:

* exact pointwise membership (``contains`` / ``contains_many``), with the
  strict/non-strict inequalities fixed by each region's defining formula;
* its radial profile for quadrature: at each radius ``r`` the slice of the
  region through the circle ``|z| = r`` is either empty, a single angular
  arc, or the full circle (``angular_arc``), and the radii where that
  structure changes (``radial_breakpoints``).

All operations are pure and stateless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

__all__ = [
    "TWO_PI",
    "ensure_in_disc",
    "hyperbolic_distance",
    "pseudohyperbolic_distance",
    "hyperbolic_disc_euclidean",
    "stolz_arc_measure",
    "stolz_arc_halfwidth",
    "luecking_center",
    "luecking_index_of",
    "Region",
    "StolzGamma",
    "StolzLambda",
    "HyperbolicDisc",
    "CarlesonBox",
    "TentOverPoint",
    "LueckingRegion",
    "WholeDisc",
    "region_contains",
]


def ensure_in_disc(z: complex, name: str = "z") -> complex:
    """Validate that a point lies strictly inside the unit disc."""
    z = complex(z)
    if abs(z) >= 1.0:
        raise ValueError(f"{name} must satisfy |{name}| < 1, got |{name}| = {abs(z)}")
    return z


def pseudohyperbolic_distance(z, w):
    """Pseudo-hyperbolic distance |(z - w) / (1 - conj(z) w)|; vectorized."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return np.abs((z - w) / (1.0 - np.conj(z) * w))


def hyperbolic_distance(z, w):
    """Hyperbolic (Poincare) distance on the disc.

    Normalization: beta(z, w) = atanh(rho(z, w)) = (1/2) log((1+rho)/(1-rho))
    where rho is the pseudo-hyperbolic distance.  Scalar inputs are
    validated; array inputs are assumed in-disc.
    """
    if np.isscalar(z) or isinstance(z, complex):
        z = ensure_in_disc(z, "z")
    if np.isscalar(w) or isinstance(w, complex):
        w = ensure_in_disc(w, "w")
    return np.arctanh(pseudohyperbolic_distance(z, w))


def hyperbolic_disc_euclidean(center: complex, radius: float) -> tuple[complex, float]:
    """Euclidean center and radius of the hyperbolic disc D(center, radius).

    The hyperbolic disc {w : beta(center, w) < radius} is a Euclidean disc.
    With rho = tanh(radius) and d = |center|:

        euclidean center = center (1 - rho^2) / (1 - rho^2 d^2),
        euclidean radius = rho (1 - d^2) / (1 - rho^2 d^2).
    """
    center = ensure_in_disc(center, "center")
    if radius <= 0.0:
        raise ValueError("radius must be positive")
    rho = math.tanh(radius)
    d2 = abs(center) ** 2
    den = 1.0 - rho * rho * d2
    return center * (1.0 - rho * rho) / den, rho * (1.0 - d2) / den


def _stolz_cos_bound(r, M: float):
    """Bound c(r) with:  r e^{i theta} in Gamma_M(xi)  iff  cos(theta - arg xi) > c(r).

    Derived from |z - xi|^2 = 1 + r^2 - 2 r cos(theta - arg xi) and the
    defining inequality |z - xi| < M (1 - |z|^2).  At r = 0 the membership is
    decided by 1 < M alone; we encode it as -inf (all angles) or +inf (none).
    """
    r = np.asarray(r, dtype=float)
    c = np.full(r.shape, -math.inf if M > 1.0 else math.inf)
    nz = r > 0.0
    rn = r[nz]
    c[nz] = (1.0 + rn * rn - M * M * (1.0 - rn * rn) ** 2) / (2.0 * rn)
    return c


def stolz_arc_halfwidth(r, M: float):
    """Angular half-width of the slice of Gamma_M(xi) at radius r.

    Returns arccos of the clipped cosine bound, so the value is 0 where the
    circle of radius r misses the region and pi where it is fully contained.
    """
    c = np.clip(_stolz_cos_bound(r, M), -1.0, 1.0)
    return np.arccos(c)


def stolz_arc_measure(z, M: float = 2.0):
    """Arc measure omega(z) of the boundary set {xi : z in Gamma_M(xi)}.

    This is the exact Fubini weight for swapping the order of integration in
    tent norms: integrating over xi the integral over Gamma_M(xi) equals the
    disc integral against omega(z) dA(z).  Values lie in [0, 2 pi].
    """
    if M <= 0.5:
        raise ValueError("aperture M must exceed 1/2")
    scalar = np.isscalar(z) or isinstance(z, complex)
    r = np.abs(np.asarray(z, dtype=complex))
    out = 2.0 * stolz_arc_halfwidth(r, M)
    return float(out) if scalar else out


def luecking_center(i: int, j: int) -> complex:
    """Center z_{i,j} of the dyadic annulus-sector region R_{i,j}.

    Radial midpoint of [1 - 2^-i, 1 - 2^-(i+1)) and angular midpoint of the
    j-th of the 2^i sectors: (1 - 3/2^(i+2)) exp(2 pi i (j + 1/2) / 2^i).
    """
    if i < 0:
        raise ValueError("level i must be nonnegative")
    if not 0 <= j < 2**i:
        raise ValueError(f"sector j must lie in [0, 2^{i}), got {j}")
    rad = 1.0 - 3.0 / 2.0 ** (i + 2)
    ang = TWO_PI * (j + 0.5) / 2.0**i
    return rad * complex(math.cos(ang), math.sin(ang))


def luecking_index_of(z: complex) -> tuple[int, int]:
    """Level and sector (i, j) of the unique region R_{i,j} containing z."""
    z = ensure_in_disc(z)
    r = abs(z)
    i = 0 if r < 0.5 else int(math.floor(-math.log2(1.0 - r))) if r > 0 else 0
    # guard against floating error at dyadic radii
    while 1.0 - 2.0**-i > r:
        i -= 1
    while r >= 1.0 - 2.0 ** -(i + 1):
        i += 1
    ang = math.atan2(z.imag, z.real) % TWO_PI if r > 0 else 0.0
    if ang >= TWO_PI:  # tiny negative angles round up to exactly 2 pi
        ang = 0.0
    j = min(int(ang / (TWO_PI / 2**i)), 2**i - 1)
    return i, j


def _circular_diff(a, b):
    """Absolute angular difference in [0, pi]."""
    d = np.mod(a - b, TWO_PI)
    return np.minimum(d, TWO_PI - d)


class Region:
    """Base class for disc regions; see module docstring for the contract."""

    def contains(self, z: complex) -> bool:
        return bool(self.contains_many(np.asarray([complex(z)]))[0])

    def contains_many(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def radial_breakpoints(self) -> tuple[float, ...]:
        """Radii in (0, 1) where the angular slice structure changes."""
        return ()

    def angular_arc(self, r: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Per-radius slice as (arc center, half-width).

        Half-width 0 encodes an empty slice and pi the full circle.  Between
        consecutive breakpoints both outputs are smooth functions of r.
        """
        raise NotImplementedError

    def touches_boundary(self) -> bool:
        """Whether the region closure meets the unit circle."""
        return True

    def arc_shrinks_linearly(self) -> bool:
        """Whether the slice width decays like (1 - r) toward the boundary.

        True for the non-tangential approach regions; such a region gains one
        power of (1 - r) in radial integrals of rotation-invariant weights.
        """
        return False


@dataclass(frozen=True)
class StolzGamma(Region):
    """Stolz region Gamma_M(xi) = {z : |z - xi| < M (1 - |z|^2)}, M > 1/2.

    Note |z - xi| = |1 - conj(xi) z| for |xi| = 1, so the two common ways of
    writing the defining inequality describe the same set.
    """

    vertex: complex
    aperture: float = 2.0

    def __post_init__(self):
        if abs(abs(self.vertex) - 1.0) > 1e-12:
            raise ValueError("vertex must lie on the unit circle")
        if self.aperture <= 0.5:
            raise ValueError("aperture must exceed 1/2")

    def contains_many(self, z):
        z = np.asarray(z, dtype=complex)
        return np.abs(z - self.vertex) < self.aperture * (1.0 - np.abs(z) ** 2)

    def radial_breakpoints(self):
        pts = []
        M = self.aperture
        if M > 1.0:
            pts.append(1.0 - 1.0 / M)  # below: full circle inside the region
        if M < 1.0:
            pts.append(1.0 / M - 1.0)  # below: circle misses the region
        return tuple(p for p in pts if 0.0 < p < 1.0)

    def angular_arc(self, r):
        r = np.asarray(r, dtype=float)
        hw = stolz_arc_halfwidth(r, self.aperture)
        center = np.full(r.shape, math.atan2(self.vertex.imag, self.vertex.real))
        return center, hw


@dataclass(frozen=True)
class StolzLambda(Region):
    """Angular-sector approach region {r xi e^{i theta} : |theta| < 1 - r}."""

    vertex: complex

    def __post_init__(self):
        if abs(abs(self.vertex) - 1.0) > 1e-12:
            raise ValueError("vertex must lie on the unit circle")

    def contains_many(self, z):
        z = np.asarray(z, dtype=complex)
        r = np.abs(z)
        vang = math.atan2(self.vertex.imag, self.vertex.real)
        d = _circular_diff(np.angle(z), vang)
        return (d < 1.0 - r) & (r < 1.0)

    def angular_arc(self, r):
        r = np.asarray(r, dtype=float)
        vang = math.atan2(self.vertex.imag, self.vertex.real)
        return np.full(r.shape, vang), np.minimum(1.0 - r, math.pi)


@dataclass(frozen=True)
class HyperbolicDisc(Region):
    """Hyperbolic disc D(center, radius) = {w : beta(center, w) < radius}."""

    center: complex
    radius: float

    def __post_init__(self):
        ensure_in_disc(self.center, "center")
        if self.radius <= 0.0:
            raise ValueError("radius must be positive")

    def contains_many(self, z):
        z = np.asarray(z, dtype=complex)
        rho = math.tanh(self.radius)
        return pseudohyperbolic_distance(self.center, z) < rho

    def _euclidean(self):
        return hyperbolic_disc_euclidean(self.center, self.radius)

    def radial_breakpoints(self):
        c, er = self._euclidean()
        d = abs(c)
        return tuple(sorted(p for p in (abs(d - er), er - d, d + er) if 0.0 < p < 1.0))

    def angular_arc(self, r):
        r = np.asarray(r, dtype=float)
        ec, er = self._euclidean()
        d = abs(ec)
        cang = math.atan2(ec.imag, ec.real)
        if d == 0.0:
            hw = np.where(r < er, math.pi, 0.0)
        else:
            with np.errstate(divide="ignore", invalid="ignore"):
                c = np.where(r > 0.0, (r * r + d * d - er * er) / (2.0 * r * d), math.inf)
            c = np.where((r == 0.0) & (d < er), -1.0, c)
            hw = np.arccos(np.clip(c, -1.0, 1.0))
        return np.full(r.shape, cang), hw

    def touches_boundary(self):
        return False


@dataclass(frozen=True)
class CarlesonBox(Region):
    """Carleson box S(I) over the boundary arc I of length ``length``
    centered at angle ``theta``: {1 - |I| <= |z| < 1, z/|z| in I}.

    ``length`` = 2 pi gives the whole disc.  The origin, whose direction
    z/|z| is undefined, is a member only in that whole-disc case.
    """

    theta: float
    length: float

    def __post_init__(self):
        if not 0.0 < self.length <= TWO_PI:
            raise ValueError("arc length must lie in (0, 2 pi]")

    def contains_many(self, z):
        z = np.asarray(z, dtype=complex)
        r = np.abs(z)
        ok = (r >= 1.0 - self.length) & (r < 1.0)
        ang_ok = _circular_diff(np.angle(z), self.theta) <= self.length / 2.0
        full = self.length >= TWO_PI
        return ok & np.where(r > 0.0, ang_ok, full)

    def radial_breakpoints(self):
        p = 1.0 - self.length
        return (p,) if 0.0 < p < 1.0 else ()

    def angular_arc(self, r):
        r = np.asarray(r, dtype=float)
        hw = np.where(r >= 1.0 - self.length, min(self.length / 2.0, math.pi), 0.0)
        return np.full(r.shape, self.theta), hw


@dataclass(frozen=True)
class TentOverPoint(Region):
    """Tent S(w) over an interior point w = r0 e^{i theta0}.

    S(w) = {rho e^{it} : 1 - rho <= 1 - r0, |t - theta0| <= (1 - r0)/2},
    and S(0) is the whole disc.
    """

    w: complex

    def __post_init__(self):
        ensure_in_disc(self.w, "w")

    def contains_many(self, z):
        z = np.asarray(z, dtype=complex)
        if self.w == 0.0:
            return np.abs(z) < 1.0
        r0 = abs(self.w)
        th0 = math.atan2(self.w.imag, self.w.real)
        r = np.abs(z)
        return (
            (r >= r0)
            & (r < 1.0)
            & (_circular_diff(np.angle(z), th0) <= (1.0 - r0) / 2.0)
        )

    def radial_breakpoints(self):
        r0 = abs(self.w)
        return (r0,) if r0 > 0.0 else ()

    def angular_arc(self, r):
        r = np.asarray(r, dtype=float)
        if self.w == 0.0:
            return np.zeros(r.shape), np.full(r.shape, math.pi)
        r0 = abs(self.w)
        th0 = math.atan2(self.w.imag, self.w.real)
        hw = np.where(r >= r0, min((1.0 - r0) / 2.0, math.pi), 0.0)
        return np.full(r.shape, th0), hw


@dataclass(frozen=True)
class LueckingRegion(Region):
    """Dyadic annulus-sector R_{i,j}:
    1 - 2^-i <= |z| < 1 - 2^-(i+1),  arg z in [2 pi j / 2^i, 2 pi (j+1) / 2^i).

    At fixed truncation depth these regions tile the disc annulus; the origin
    is assigned to R_{0,0} (its angle is taken to be 0).
    """

    i: int
    j: int

    def __post_init__(self):
        if self.i < 0:
            raise ValueError("level must be nonnegative")
        if not 0 <= self.j < 2**self.i:
            raise ValueError(f"sector must lie in [0, 2^{self.i})")

    def _bounds(self):
        r_lo = 1.0 - 2.0**-self.i
        r_hi = 1.0 - 2.0 ** -(self.i + 1)
        a_lo = TWO_PI * self.j / 2**self.i
        a_hi = TWO_PI * (self.j + 1) / 2**self.i
        return r_lo, r_hi, a_lo, a_hi

    def contains_many(self, z):
        z = np.asarray(z, dtype=complex)
        r_lo, r_hi, a_lo, a_hi = self._bounds()
        r = np.abs(z)
        ang = np.where(r > 0.0, np.mod(np.angle(z), TWO_PI), 0.0)
        ang = np.where(ang >= TWO_PI, 0.0, ang)  # tiny negatives round to 2 pi
        return (r >= r_lo) & (r < r_hi) & (ang >= a_lo) & (ang < a_hi)

    def radial_breakpoints(self):
        r_lo, r_hi, _, _ = self._bounds()
        return tuple(p for p in (r_lo, r_hi) if 0.0 < p < 1.0)

    def angular_arc(self, r):
        r = np.asarray(r, dtype=float)
        r_lo, r_hi, a_lo, a_hi = self._bounds()
        hw = np.where((r >= r_lo) & (r < r_hi), min((a_hi - a_lo) / 2.0, math.pi), 0.0)
        return np.full(r.shape, (a_lo + a_hi) / 2.0), hw

    def touches_boundary(self):
        return False


@dataclass(frozen=True)
class WholeDisc(Region):
    """The open unit disc."""

    def contains_many(self, z):
        return np.abs(np.asarray(z, dtype=complex)) < 1.0

    def angular_arc(self, r):
        r = np.asarray(r, dtype=float)
        return np.zeros(r.shape), np.full(r.shape, math.pi)


def region_contains(region: Region, z: complex) -> bool:
    """Exact membership of z in the region (strict/non-strict per formula)."""
    ensure_in_disc(z)
    return region.contains(z)
