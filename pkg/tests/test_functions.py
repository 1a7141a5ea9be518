import math

import numpy as np
import pytest

import tentlab as tl
from tentlab.functions import (
    Dilated,
    KernelSum,
    LogKernel,
    PowerKernel,
    PowerSeries,
    Scaled,
    build_s_operator,
    evaluate,
    function_from_spec,
    function_to_spec,
    monomial,
    submean_ratio,
)

RNG = np.random.default_rng(42)
SAMPLE_POINTS = 0.9 * np.sqrt(RNG.random(100)) * np.exp(1j * 2 * np.pi * RNG.random(100))


def all_variants():
    return [
        ("series", PowerSeries((1.0, -0.5j, 2.0, 0.0, 0.25))),
        ("log", LogKernel(0.85 * np.exp(0.7j))),
        ("log_boundary", LogKernel(1.0)),
        ("power", PowerKernel(0.9, 1.5)),
        ("power_boundary", PowerKernel(1.0, 0.5)),
        ("kernel_sum", KernelSum((1.0, -2.0j), (0.4, -0.3 + 0.5j), 3.0, 0.5)),
        ("scaled", Scaled(2.0 - 1.0j, PowerKernel(0.8, 1.0))),
        ("dilated", Dilated(0.9, LogKernel(1.0))),
    ]


class TestEvaluate:
    def test_polynomial_derivative(self):
        f = PowerSeries((0.0, 0.0, 1.0))  # z^2
        assert evaluate(f, 0.5, 1) == pytest.approx(1.0)
        assert evaluate(f, 0.5, 2) == pytest.approx(2.0)
        assert evaluate(f, 0.5, 3) == 0.0

    def test_power_kernel_derivative_at_zero(self):
        f = PowerKernel(1.0, 1.0)
        assert evaluate(f, 0.0, 1) == pytest.approx(1.0)

    def test_log_kernel_at_zero(self):
        assert evaluate(LogKernel(1.0), 0.0) == 0.0

    def test_rejects_outside_disc(self):
        with pytest.raises(ValueError):
            evaluate(monomial(2), 1.0)

    @pytest.mark.parametrize("name,f", all_variants())
    @pytest.mark.parametrize("n", [1, 2])
    def test_finite_difference_oracle(self, name, f, n):
        # closed-form derivatives against central differences of order n-1
        h = 1e-5
        z = SAMPLE_POINTS
        exact = f.eval(z, n)
        fd = (f.eval(z + h, n - 1) - f.eval(z - h, n - 1)) / (2.0 * h)
        scale = np.maximum(np.abs(exact), 1e-6)
        assert np.max(np.abs(fd - exact) / scale) < 1e-6

    def test_scaled_linearity_exact(self):
        inner = PowerKernel(0.7, 2.0)
        f = Scaled(3.0 - 1.0j, inner)
        z = SAMPLE_POINTS[:10]
        assert np.array_equal(f.eval(z, 1), (3.0 - 1.0j) * inner.eval(z, 1))

    def test_dilated_is_composition(self):
        inner = LogKernel(1.0)
        f = Dilated(0.8, inner)
        z = SAMPLE_POINTS[:10]
        np.testing.assert_allclose(f.eval(z), inner.eval(0.8 * z), rtol=1e-14)

    def test_kernel_sum_matches_terms(self):
        nodes = (0.5, -0.2 + 0.4j)
        weights = (1.5, 2.0j)
        K, sigma = 3.0, 0.5
        f = KernelSum(weights, nodes, K, sigma)
        z = 0.3 - 0.1j
        expected = sum(
            w * (1 - np.conj(a) * z) ** -K * (1 - abs(a)) ** (K - sigma)
            for w, a in zip(weights, nodes)
        )
        assert f(z) == pytest.approx(expected, rel=1e-14)


class TestSOperator:
    def test_single_coefficient(self):
        lat = tl.generate_luecking_lattice(2)
        lam = np.zeros(len(lat))
        lam[3] = 1.0
        f = build_s_operator(lam, lat, exponent=4.0, alpha=1.0, p=2.0)
        z1 = lat.points[3]
        z = 0.2 + 0.1j
        expected = (1 - abs(z1)) ** 3.5 / (1 - np.conj(z1) * z) ** 4
        assert f(z) == pytest.approx(expected, rel=1e-14)

    def test_zero_coefficients(self):
        lat = tl.generate_luecking_lattice(2)
        f = build_s_operator(np.zeros(len(lat)), lat, 4.0, 1.0, 2.0)
        assert f(0.4j) == 0.0

    def test_value_at_origin(self):
        lat = tl.generate_luecking_lattice(2)
        lam = RNG.random(len(lat))
        f = build_s_operator(lam, lat, 4.0, 1.0, 2.0)
        expected = np.sum(lam * (1 - np.abs(lat.points)) ** 3.5)
        assert f(0.0) == pytest.approx(expected, rel=1e-14)

    def test_rejects_small_exponent(self):
        lat = tl.generate_luecking_lattice(1)
        with pytest.raises(ValueError):
            build_s_operator(np.ones(len(lat)), lat, 1.0, 1.0, 2.0)

    def test_rejects_length_mismatch(self):
        lat = tl.generate_luecking_lattice(1)
        with pytest.raises(ValueError):
            build_s_operator(np.ones(len(lat) + 1), lat, 4.0, 1.0, 2.0)


class TestSubmeanRatio:
    def test_constant_at_origin(self):
        got = submean_ratio(monomial(0), 0.0, 0, 2.0, 1.0)
        assert got == pytest.approx(1.0 / (math.pi * math.tanh(1.0) ** 2), rel=1e-6)

    def test_zero_function_degenerate(self):
        assert math.isnan(submean_ratio(PowerSeries((0.0,)), 0.3, 0, 2.0, 1.0))

    def test_monomial_near_boundary_is_stable(self):
        f = monomial(10)
        cfg_fine = tl.QuadratureConfig(radial_nodes=96, angular_nodes=384)
        a = submean_ratio(f, 0.9, 0, 2.0, 1.0)
        b = submean_ratio(f, 0.9, 0, 2.0, 1.0, cfg_fine)
        assert a == pytest.approx(b, rel=1e-4)
        assert a < 50.0

    def test_corpus_bound(self):
        # regression: the sub-mean-value ratio stays under one corpus-wide
        # constant over monomials, kernels and derivative orders
        points = 0.97 * np.sqrt(RNG.random(25)) * np.exp(2j * np.pi * RNG.random(25))
        corpus = [monomial(d) for d in (1, 8, 64)] + [
            PowerKernel(0.99, 1.0),
            LogKernel(0.99),
        ]
        worst = 0.0
        for f in corpus:
            for n in (0, 1, 2):
                for p in (1.0, 2.0):
                    for a in points[:8]:
                        r = submean_ratio(f, complex(a), n, p, 0.5)
                        if not math.isnan(r):
                            worst = max(worst, r)
        assert worst < 120.0  # frozen corpus-wide bound (observed ~60)


class TestJsonRoundTrip:
    @pytest.mark.parametrize("name,f", all_variants())
    def test_roundtrip(self, name, f):
        spec = function_to_spec(f)
        g = function_from_spec(spec)
        z = SAMPLE_POINTS[:20]
        np.testing.assert_allclose(g.eval(z, 1), f.eval(z, 1), rtol=1e-14)

    def test_unknown_type_rejected(self):
        with pytest.raises(ValueError):
            function_from_spec({"type": "mystery"})
