import math

import numpy as np
import pytest

import tentlab as tl
from tentlab.tgop import TgModel, empirical_operator_ratio, tg_apply

CFG = tl.QuadratureConfig()
RNG = np.random.default_rng(5)
POINTS = 0.9 * np.sqrt(RNG.random(100)) * np.exp(2j * np.pi * RNG.random(100))


class TestTgApply:
    def test_constant_integrand_is_g_increment(self):
        g = tl.LogKernel(0.8)
        z = 0.3 + 0.4j
        got = tg_apply(g, tl.monomial(0), z)
        assert got == pytest.approx(g(z) - g(0.0), abs=1e-14)

    def test_monomial_antiderivative(self):
        got = tg_apply(tl.monomial(1), tl.monomial(5), 0.4 - 0.2j)
        assert got == pytest.approx((0.4 - 0.2j) ** 6 / 6.0, abs=1e-15)

    def test_zero_at_origin(self):
        assert tg_apply(tl.LogKernel(1.0), tl.PowerKernel(0.9, 1.0), 0.0) == 0.0

    def test_linearity_in_f(self):
        g = tl.PowerKernel(0.7, 1.0)
        f1, f2 = tl.monomial(2), tl.LogKernel(0.5)
        z = 0.5j
        lhs = tg_apply(g, tl.Scaled(3.0, f1), z) + tg_apply(g, f2, z)

        class Sum(tl.PowerSeries.__bases__[0]):
            def eval(self, zz, n=0):
                return 3.0 * f1.eval(zz, n) + f2.eval(zz, n)

        rhs = tg_apply(g, Sum(), z)
        assert lhs == pytest.approx(rhs, abs=1e-13)

    def test_rejects_boundary_point(self):
        with pytest.raises(ValueError):
            tg_apply(tl.monomial(1), tl.monomial(0), 1.0)


class TestTgModel:
    def test_derivative_identity_exact(self):
        g, f = tl.LogKernel(0.9), tl.PowerKernel(0.8, 1.0)
        model = TgModel(g, f)
        d = model.eval(POINTS, 1)
        np.testing.assert_array_equal(d, f.eval(POINTS) * g.eval(POINTS, 1))

    def test_finite_difference_oracle(self):
        g, f = tl.LogKernel(0.9), tl.monomial(3)
        model = TgModel(g, f)
        h = 1e-5
        fd = (model.eval(POINTS + h) - model.eval(POINTS - h)) / (2 * h)
        d = model.eval(POINTS, 1)
        assert np.max(np.abs(fd - d) / np.maximum(np.abs(d), 1e-12)) < 1e-6

    def test_second_derivative_leibniz(self):
        g, f = tl.PowerKernel(0.6, 2.0), tl.monomial(2)
        model = TgModel(g, f)
        z = POINTS[:5]
        expected = f.eval(z, 1) * g.eval(z, 1) + f.eval(z) * g.eval(z, 2)
        np.testing.assert_allclose(model.eval(z, 2), expected, rtol=1e-14)

    def test_value_at_zero(self):
        model = TgModel(tl.LogKernel(1.0), tl.PowerKernel(0.9, 1.0))
        assert model.eval(np.array([0.0 + 0.0j]))[0] == 0.0


class TestMonomialRatios:
    @pytest.mark.parametrize("n", [0, 3, 10])
    def test_closed_form(self, n):
        num = tl.rm_norm(TgModel(tl.monomial(1), tl.monomial(n)), 2, 2, CFG)
        den = tl.rm_norm(tl.monomial(n), 2, 2, CFG)
        exact = math.sqrt(2 * n + 1) / ((n + 1) * math.sqrt(2 * n + 3))
        assert num.value / den.value == pytest.approx(exact, rel=1e-8)


class TestSymbolConditions:
    def test_identity_symbol_bounded(self):
        lat = tl.generate_luecking_lattice(8)
        rep = tl.symbol_condition_rm(tl.monomial(1), 2, 2, 2, 4, lat, CFG, depths=[5, 6, 7, 8])
        assert rep.case == "C"
        assert rep.norm_condition.value == pytest.approx(1.0, rel=1e-10)
        assert rep.norm_verdict == "bounded" and rep.lattice_verdict == "bounded"

    def test_power_kernel_unbounded(self):
        lat = tl.generate_luecking_lattice(8)
        rep = tl.symbol_condition_rm(
            tl.PowerKernel(1.0, 1.0), 2, 2, 2, 2, lat, CFG, depths=[5, 6, 7, 8]
        )
        assert rep.case == "C"
        assert math.isinf(rep.norm_condition.value)
        assert rep.norm_verdict == "unbounded" and rep.lattice_verdict == "unbounded"

    def test_constant_symbol_trivial(self):
        lat = tl.generate_luecking_lattice(6)
        rep = tl.symbol_condition_hardy(
            tl.PowerSeries((2.0,)), 2, 2, 2, lat, CFG, depths=[3, 4, 5, 6]
        )
        assert rep.norm_condition.value == 0.0
        assert rep.norm_verdict == "bounded" and rep.lattice_verdict == "bounded"

    def test_case_dispatch_covers_all(self):
        lat = tl.generate_luecking_lattice(6)
        seen = set()
        for p, q, t, s in [(4, 4, 2, 2), (2, 4, 4, 2), (2, 2, 3, 4), (4, 2, 2, 2)]:
            rep = tl.symbol_condition_rm(
                tl.monomial(1), p, q, t, s, lat, CFG, depths=[3, 4, 5, 6]
            )
            seen.add(rep.case)
        assert seen == {"A", "B", "C", "D"}

    def test_rejects_out_of_range(self):
        lat = tl.generate_luecking_lattice(4)
        with pytest.raises(ValueError):
            tl.symbol_condition_rm(tl.monomial(1), 0.5, 2, 2, 2, lat, CFG)
        with pytest.raises(ValueError):
            tl.symbol_condition_hardy(tl.monomial(1), math.inf, 2, 2, lat, CFG)


class TestEmpiricalRatios:
    def test_constant_symbol_all_zero(self):
        corpus = [("z", tl.monomial(1)), ("z2", tl.monomial(2))]
        rep = empirical_operator_ratio(
            tl.PowerSeries((5.0,)), (2, 2), ("rm", (2, 2)), corpus, CFG
        )
        assert all(r == pytest.approx(0.0, abs=1e-12) for _, r in rep.entries)

    def test_witness_ladder_increases_for_divergent_symbol(self):
        # at source p = 1 the witnesses concentrate hard enough that the
        # image norms stay finite while the ratios grow like 2^j / j
        g = tl.PowerKernel(1.0, 1.0)
        corpus = tl.witness_ladder(1.0)
        rep = empirical_operator_ratio(g, (1, 1), ("rm", (1, 1)), corpus, CFG)
        ratios = rep.ratios()
        assert len(ratios) == 3
        assert ratios[0] < ratios[1] < ratios[2]

    def test_bounded_symbol_ladder_tame(self):
        g = tl.monomial(1)  # multiplication-by-antiderivative, always bounded
        corpus = tl.witness_ladder(1.0)
        rep = empirical_operator_ratio(g, (1, 1), ("rm", (1, 1)), corpus, CFG)
        ratios = rep.ratios()
        assert max(ratios) / min(ratios) < 3.0

    def test_excludes_infinite_source(self):
        corpus = [("bad", tl.PowerKernel(1.0, 2.0))]
        rep = empirical_operator_ratio(tl.monomial(1), (2, 2), ("rm", (2, 2)), corpus, CFG)
        assert rep.excluded and not rep.entries

    def test_hardy_target(self):
        corpus = [("z3", tl.monomial(3))]
        rep = empirical_operator_ratio(tl.monomial(1), (2, 2), ("hardy", 2.0), corpus, CFG)
        # T_z z^3 = z^4/4; hardy norm 1/4, source norm 1/sqrt(7)
        assert rep.entries[0][1] == pytest.approx(math.sqrt(7.0) / 4.0, rel=1e-4)
