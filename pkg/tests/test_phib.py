import cmath
import math

import numpy as np
import pytest

from clusterdilog.dilog import li2, psiq_numeric
from clusterdilog.errors import QuadratureFailure
from clusterdilog.phib import (
    PhibParams,
    check_duality,
    check_phib_asymptotics,
    log_phib,
    phib,
    phipsi_residual,
    recurrence_residual,
    unitarity_residual,
)

REAL_BS = (0.7, 1.0, 1.3)
COMPLEX_BS = (cmath.exp(1j * math.pi / 5), cmath.exp(1j * math.pi / 7))
Z_GRID = tuple(np.linspace(-0.4, 0.4, 5))


class TestParams:
    def test_derived_quantities(self):
        p = PhibParams(1.3)
        assert p.c_b == pytest.approx(0.5j * (1.3 + 1 / 1.3))
        assert p.q == pytest.approx(cmath.exp(1j * math.pi * 1.3**2))
        assert p.q_bar == pytest.approx(1 / p.q_dual)
        assert p.hbar == pytest.approx(math.pi * 1.3**2)

    def test_rejects_imaginary_b(self):
        with pytest.raises(ValueError):
            PhibParams(1j)

    def test_im_b_squared_positive_means_contracting_q(self):
        for b in COMPLEX_BS:
            p = PhibParams(b)
            assert (b * b).imag > 0
            assert abs(p.q) < 1 and abs(p.q_bar) < 1


class TestUnitarity:
    @pytest.mark.parametrize("b", REAL_BS)
    def test_real_b(self, b):
        p = PhibParams(b)
        for z in Z_GRID:
            assert unitarity_residual(float(z), p) < 1e-8

    @pytest.mark.parametrize("b", COMPLEX_BS)
    def test_unit_modulus_b(self, b):
        p = PhibParams(b)
        for z in Z_GRID:
            assert unitarity_residual(float(z), p) < 1e-8


class TestRecurrence:
    @pytest.mark.parametrize("b", REAL_BS + COMPLEX_BS)
    def test_both_step_directions(self, b):
        p = PhibParams(b)
        for z in (-0.3, 0.0, 0.25):
            assert recurrence_residual(z, p) < 1e-7
            assert recurrence_residual(z, p, dual=True) < 1e-7

    def test_deep_strip_reduction(self):
        """Evaluation far outside the strip agrees with the compact
        product ratio, so the iterated recurrence is consistent."""
        p = PhibParams(COMPLEX_BS[0])
        z = 0.1 + 3.5j
        lhs = phib(z, p)
        rhs = psiq_numeric(cmath.exp(2 * math.pi * p.b * z), p.q) / \
            psiq_numeric(cmath.exp(2 * math.pi * z / p.b), p.q_bar)
        assert abs(lhs - rhs) / abs(rhs) < 1e-9


class TestDuality:
    def test_b_equal_one_trivial(self):
        r_inv, r_neg = check_duality(0.2, 1.0)
        assert r_inv == 0.0

    def test_real_b(self):
        r_inv, r_neg = check_duality(0.2, 1.3)
        assert r_inv < 1e-7 and r_neg < 1e-7

    def test_complex_b(self):
        r_inv, r_neg = check_duality(0.1, cmath.exp(1j * math.pi / 7))
        assert r_inv < 1e-6 and r_neg < 1e-6


class TestProductRatio:
    @pytest.mark.parametrize("b", COMPLEX_BS)
    def test_integral_matches_product(self, b):
        p = PhibParams(b)
        for z in (-0.2, 0.0, 0.3):
            assert phipsi_residual(z, p) < 1e-6

    def test_requires_positive_im_b2(self):
        with pytest.raises(ValueError):
            phipsi_residual(0.1, PhibParams(1.3))


class TestAsymptotics:
    @pytest.mark.parametrize("z", (0.0, 1.0))
    def test_defect_decays_towards_zero(self, z):
        rows = check_phib_asymptotics(z, [0.5, 0.4, 0.3, 0.2])
        vals = [v for _, v in rows]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_limit_value_is_li2(self):
        z = 0.5
        b = 0.05
        p = PhibParams(b)
        approx = 2j * math.pi * b * b * log_phib(z / (2 * math.pi * b), p)
        assert approx.real == pytest.approx(-li2(-math.exp(z)), rel=1e-3)


class TestStripHandling:
    def test_log_phib_rejects_outside_strip(self):
        p = PhibParams(1.0)
        with pytest.raises(ValueError):
            log_phib(0.9j, p)

    def test_integral_diverges_outside_strip_is_guarded(self):
        p = PhibParams(1.0)
        with pytest.raises(QuadratureFailure):
            from clusterdilog.phib import _log_phib_strip
            _log_phib_strip(1.5j, p, 1e-8)
