"""Fixed test-function corpora.

Everything here is deterministic: the same labels and models on every run.
The equivalence corpus stays norm-finite for all exponent pairs used by the
verification suite; boundary-singular kernels appear only in the symbol
corpus and the concentration ladders, where divergence is the point.
"""

from __future__ import annotations

from .functions import (
    AnalyticFunction,
    Dilated,
    KernelSum,
    LogKernel,
    PowerKernel,
    PowerSeries,
    Scaled,
    monomial,
)

__all__ = ["equivalence_corpus", "symbol_corpus", "witness_ladder"]


def _kernel_sum_sample(variant: int) -> KernelSum:
    if variant == 0:
        nodes = (0.5, 0.5j, -0.6, 0.3 - 0.4j)
        weights = (1.0, 0.5, 0.25 + 0.25j, -0.75)
    else:
        nodes = (0.8, 0.7j, -0.55 + 0.35j)
        weights = (0.3, -1.0, 0.6j)
    return KernelSum(weights, nodes, exponent=3.0, shift=0.5)


def equivalence_corpus() -> list[tuple[str, AnalyticFunction]]:
    """30 analytic models with finite norms across the verification exponents."""
    corpus: list[tuple[str, AnalyticFunction]] = []
    for n in (0, 1, 2, 3, 4, 6, 8, 16, 24, 32, 48, 64):
        corpus.append((f"z^{n}", monomial(n)))
    for a, gamma in ((0.5, 1.0), (0.9, 0.5), (0.9, 1.0), (0.95, 0.5),
                     (0.9j, 1.0), (-0.8, 2.0), (0.6 + 0.6j, 1.5)):
        corpus.append((f"pk({a},{gamma})", PowerKernel(a, gamma)))
    for a in (0.9, 0.95j, 1.0):
        corpus.append((f"log({a})", LogKernel(a)))
    corpus.append(("ks0", _kernel_sum_sample(0)))
    corpus.append(("ks1", _kernel_sum_sample(1)))
    corpus.append(("poly_mix", PowerSeries((1.0, -2.0, 0.0, 3.0j, 0.0, 0.0, -1.5))))
    corpus.append(("poly_alt", PowerSeries(tuple((-1.0) ** k / (k + 1.0) for k in range(12)))))
    corpus.append(("scaled_pk", Scaled(2.5j, PowerKernel(0.9, 1.0))))
    corpus.append(("dilated_pk", Dilated(0.97, PowerKernel(1.0, 1.0))))
    corpus.append(("dilated_log", Dilated(0.9, LogKernel(1.0))))
    corpus.append(("const", PowerSeries((1.0 + 0.5j,))))
    assert len(corpus) == 30
    return corpus


def symbol_corpus() -> list[tuple[str, AnalyticFunction]]:
    """Symbols spanning bounded, Bloch-type, and strongly divergent behavior."""
    return [
        ("z", monomial(1)),
        ("z^2", monomial(2)),
        ("log(1)", LogKernel(1.0)),
        ("pk(1,0.5)", PowerKernel(1.0, 0.5)),
        ("pk(1,1)", PowerKernel(1.0, 1.0)),
        ("pk(1,2)", PowerKernel(1.0, 2.0)),
        ("ks0", _kernel_sum_sample(0)),
    ]


def witness_ladder(p: float, scales=(3, 5, 7)) -> list[tuple[str, AnalyticFunction]]:
    """Boundary-concentrating kernels (1 - a z)^(-2/p), a = 1 - 2^-j.

    The exponent 2/p keeps the ladder at comparable source-space size while
    the concentration scale j sharpens toward the boundary; unbounded
    operators reveal themselves through ratios growing along the ladder.
    """
    return [
        (f"witness(j={j})", PowerKernel(1.0 - 2.0**-j, 2.0 / p))
        for j in scales
    ]
