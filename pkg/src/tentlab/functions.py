"""Symbolic analytic test functions with exact n-th derivatives.

Every model is analytic on the unit disc and evaluates itself and all of its
derivatives in closed form (series term-wise, kernels through rising-factorial
coefficients).  Finite differences appear only in tests, as the oracle for
these formulas, never inside the models.

Kernel powers (1 - conj(a) z)^(-gamma) with non-integer gamma use the
principal branch; 1 - conj(a) z has positive real part on the disc whenever
|a| <= 1, so the branch is unambiguous.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .geometry import ensure_in_disc, HyperbolicDisc
from .quadrature import QuadratureConfig, integrate_disc

__all__ = [
    "AnalyticFunction",
    "PowerSeries",
    "LogKernel",
    "PowerKernel",
    "KernelSum",
    "Scaled",
    "Dilated",
    "evaluate",
    "build_s_operator",
    "submean_ratio",
    "function_to_spec",
    "function_from_spec",
]

_CHUNK = 1 << 16


def _rising(x: float, n: int) -> float:
    """Rising factorial x (x+1) ... (x+n-1), with the empty product 1."""
    out = 1.0
    for k in range(n):
        out *= x + k
    return out


class AnalyticFunction:
    """Base class: vectorized evaluation of f^(n) on arrays of disc points."""

    def eval(self, z: np.ndarray, n: int = 0) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, z, n: int = 0):
        scalar = np.isscalar(z) or isinstance(z, complex)
        arr = np.atleast_1d(np.asarray(z, dtype=complex))
        if n < 0:
            raise ValueError("derivative order must be nonnegative")
        if arr.size and np.max(np.abs(arr)) >= 1.0:
            raise ValueError("evaluation points must lie strictly inside the disc")
        out = self.eval(arr, n)
        return complex(out[0]) if scalar else out


@dataclass(frozen=True)
class PowerSeries(AnalyticFunction):
    """Finite power series sum a_k z^k."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    def eval(self, z, n=0):
        c = np.asarray(self.coeffs, dtype=complex)
        if n > 0:
            if n >= c.size:
                return np.zeros_like(z)
            c = np.polynomial.polynomial.polyder(c, n)
        return np.polynomial.polynomial.polyval(z, c)


def monomial(n: int) -> PowerSeries:
    """The monomial z^n."""
    return PowerSeries((0.0,) * n + (1.0,))


@dataclass(frozen=True)
class LogKernel(AnalyticFunction):
    """f(z) = log(1 / (1 - conj(a) z)), |a| <= 1."""

    a: complex

    def __post_init__(self):
        if abs(complex(self.a)) > 1.0 + 1e-12:
            raise ValueError("|a| must be at most 1")
        object.__setattr__(self, "a", complex(self.a))

    def eval(self, z, n=0):
        ab = np.conj(self.a)
        if n == 0:
            return -np.log(1.0 - ab * z)
        return math.factorial(n - 1) * ab**n * (1.0 - ab * z) ** float(-n)


@dataclass(frozen=True)
class PowerKernel(AnalyticFunction):
    """f(z) = (1 - conj(a) z)^(-gamma), |a| <= 1, gamma > 0."""

    a: complex
    gamma: float

    def __post_init__(self):
        if abs(complex(self.a)) > 1.0 + 1e-12:
            raise ValueError("|a| must be at most 1")
        if self.gamma <= 0.0:
            raise ValueError("gamma must be positive")
        object.__setattr__(self, "a", complex(self.a))

    def eval(self, z, n=0):
        ab = np.conj(self.a)
        coef = _rising(self.gamma, n) * ab**n
        return coef * (1.0 - ab * z) ** (-(self.gamma + n))


@dataclass(frozen=True)
class KernelSum(AnalyticFunction):
    """Kernel synthesis sum_k w_k (1 - conj(z_k) z)^(-K) (1 - |z_k|)^(K - sigma).

    The nodes z_k lie strictly inside the disc, so each term is analytic on a
    neighborhood of the closed disc.
    """

    weights: tuple
    nodes: tuple
    exponent: float
    shift: float

    def __post_init__(self):
        w = tuple(complex(v) for v in self.weights)
        nd = tuple(complex(v) for v in self.nodes)
        if len(w) != len(nd):
            raise ValueError("weights and nodes must have equal length")
        for v in nd:
            ensure_in_disc(v, "node")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "nodes", nd)

    def eval(self, z, n=0):
        if not self.nodes:
            return np.zeros_like(z)
        nodes = np.asarray(self.nodes, dtype=complex)
        w = np.asarray(self.weights, dtype=complex)
        pref = w * (1.0 - np.abs(nodes)) ** (self.exponent - self.shift)
        pref = pref * _rising(self.exponent, n) * np.conj(nodes) ** n
        power = -(self.exponent + n)
        flat = z.reshape(-1)
        out = np.empty(flat.shape, dtype=complex)
        step = max(1, _CHUNK // max(1, nodes.size))
        for lo in range(0, flat.size, step):
            blk = flat[lo : lo + step, None]
            out[lo : lo + step] = (
                pref[None, :] * (1.0 - np.conj(nodes)[None, :] * blk) ** power
            ).sum(axis=1)
        return out.reshape(z.shape)


@dataclass(frozen=True)
class Scaled(AnalyticFunction):
    """c * f for an inner model f."""

    c: complex
    inner: AnalyticFunction

    def eval(self, z, n=0):
        return complex(self.c) * self.inner.eval(z, n)


@dataclass(frozen=True)
class Dilated(AnalyticFunction):
    """Dilation f_rho(z) = f(rho z), 0 <= rho < 1."""

    rho: float
    inner: AnalyticFunction

    def __post_init__(self):
        if not 0.0 <= self.rho < 1.0:
            raise ValueError("rho must lie in [0, 1)")

    def eval(self, z, n=0):
        return self.rho**n * self.inner.eval(self.rho * z, n)


def evaluate(f: AnalyticFunction, z: complex, n: int = 0) -> complex:
    """n-th derivative of the model at a point of the disc (exact formulas)."""
    ensure_in_disc(z)
    return f(z, n)


def build_s_operator(weights, lattice, exponent: float, alpha: float, p: float) -> KernelSum:
    """Kernel synthesis function for a coefficient sequence on a lattice.

    Builds sum_k w_k (1 - |z_k|)^(K - alpha/p) / (1 - conj(z_k) z)^K with
    K = ``exponent``.  The caller is responsible for the full admissibility
    of K relative to the target-space indices; the unconditional part
    K > max(1, 1/p) + alpha/p is checked here.
    """
    weights = tuple(complex(w) for w in weights)
    if len(weights) != len(lattice.points):
        raise ValueError("weights must align with the lattice points")
    if exponent <= max(1.0, 1.0 / p) + alpha / p:
        raise ValueError("kernel exponent too small for the given alpha and p")
    return KernelSum(weights, tuple(lattice.points), exponent, alpha / p)


def submean_ratio(
    f: AnalyticFunction,
    point: complex,
    n: int,
    p: float,
    r: float,
    cfg: QuadratureConfig = QuadratureConfig(),
) -> float:
    """Sub-mean-value ratio |f^(n)(a)|^p (1-|a|)^(2+np) / int_{D(a,r)} |f|^p dA.

    The sub-mean-value inequality asserts this quantity is uniformly bounded
    over the disc; the bound is what tests record.  Returns NaN when both
    numerator and denominator vanish, +inf when only the denominator does.
    """
    point = ensure_in_disc(point, "point")
    if p <= 0.0 or r <= 0.0:
        raise ValueError("p and r must be positive")
    num = abs(f(point, n)) ** p * (1.0 - abs(point)) ** (2.0 + n * p)
    den = integrate_disc(lambda z: np.abs(f.eval(z)) ** p, HyperbolicDisc(point, r), cfg)
    if den.value < 1e-300:
        return math.nan if num < 1e-300 else math.inf
    return num / den.value


# ---------------------------------------------------------------------------
# JSON round trip
# ---------------------------------------------------------------------------


def _c_out(v: complex):
    v = complex(v)
    return v.real if v.imag == 0.0 else [v.real, v.imag]


def _c_in(v) -> complex:
    if isinstance(v, (list, tuple)):
        return complex(v[0], v[1])
    return complex(v)


def function_to_spec(f: AnalyticFunction) -> dict:
    """Serialize a model to its JSON specification."""
    if isinstance(f, PowerSeries):
        return {"type": "power_series", "coeffs": [_c_out(c) for c in f.coeffs]}
    if isinstance(f, LogKernel):
        return {"type": "log_kernel", "a": _c_out(f.a)}
    if isinstance(f, PowerKernel):
        return {"type": "power_kernel", "a": _c_out(f.a), "gamma": f.gamma}
    if isinstance(f, KernelSum):
        return {
            "type": "kernel_sum",
            "weights": [_c_out(w) for w in f.weights],
            "nodes": [_c_out(v) for v in f.nodes],
            "exponent": f.exponent,
            "shift": f.shift,
        }
    if isinstance(f, Scaled):
        return {"type": "scaled", "c": _c_out(f.c), "inner": function_to_spec(f.inner)}
    if isinstance(f, Dilated):
        return {"type": "dilated", "rho": f.rho, "inner": function_to_spec(f.inner)}
    raise TypeError(f"cannot serialize {type(f).__name__}")


def function_from_spec(spec: dict) -> AnalyticFunction:
    """Parse a model from its JSON specification."""
    kind = spec.get("type")
    if kind == "power_series":
        return PowerSeries(tuple(_c_in(c) for c in spec["coeffs"]))
    if kind == "log_kernel":
        return LogKernel(_c_in(spec["a"]))
    if kind == "power_kernel":
        return PowerKernel(_c_in(spec["a"]), float(spec["gamma"]))
    if kind == "kernel_sum":
        return KernelSum(
            tuple(_c_in(w) for w in spec["weights"]),
            tuple(_c_in(v) for v in spec["nodes"]),
            float(spec["exponent"]),
            float(spec["shift"]),
        )
    if kind == "scaled":
        return Scaled(_c_in(spec["c"]), function_from_spec(spec["inner"]))
    if kind == "dilated":
        return Dilated(float(spec["rho"]), function_from_spec(spec["inner"]))
    raise ValueError(f"unknown function spec type: {kind!r}")
