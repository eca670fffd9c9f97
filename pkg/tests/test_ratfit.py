import math

import numpy as np
import pytest

from fruitz import fixtures
from fruitz.errors import (
    InsufficientData,
    PoleAtFrequency,
    SingularSystem,
    ValidationError,
)
from fruitz.ratfit import (
    ModelOrders,
    RationalImpedance,
    build_system,
    evaluate,
    fit_rational,
)
from fruitz.spectra import ImpedanceSample, Spectrum, fitting_view, polar_to_cartesian


def normal_equations_fit(spectrum, orders):
    """Independent oracle: same system, solved via the normal equations."""
    view = fitting_view(spectrum)
    matrix, rhs, omega_scale = build_system(view, orders)
    x = np.linalg.solve(matrix.T @ matrix, matrix.T @ rhs)
    n, m = orders.num_order, orders.den_order
    num = x[: n + 1] / omega_scale ** np.arange(n + 1)
    den = x[n + 1 :] / omega_scale ** np.arange(1, m + 1)
    return tuple(num), tuple(den)


class TestModelOrders:
    def test_supported(self):
        assert ModelOrders(2, 3).unknowns == 6
        assert ModelOrders(1, 2).min_frequencies == 2

    @pytest.mark.parametrize("n,m", [(0, 1), (3, 3), (2, 2), (0, 0), (3, 2)])
    def test_unsupported_rejected(self, n, m):
        with pytest.raises(ValidationError):
            ModelOrders(n, m)


class TestBuildSystem:
    def test_square_system_shape(self):
        view = fitting_view(fixtures.get_spectrum("table3.fresh"))
        matrix, rhs, _ = build_system(view, ModelOrders(2, 3))
        assert matrix.shape == (6, 6)
        assert rhs.shape == (6,)

    def test_overdetermined_shape(self):
        view = fitting_view(fixtures.get_spectrum("table7.fresh"))
        matrix, rhs, _ = build_system(view, ModelOrders(1, 2))
        assert matrix.shape == (6, 4)

    def test_two_frequencies_insufficient_for_2_3(self):
        view = fitting_view(fixtures.get_spectrum("table3.fresh"))[:2]
        with pytest.raises(InsufficientData):
            build_system(view, ModelOrders(2, 3))

    def test_row_contents_match_closed_form(self):
        # one frequency, orders (2,3): check the two rows against the
        # expanded real/imaginary equations written out by hand
        omega, r, x = 1.3, 200.0, -150.0
        matrix, rhs, scale = build_system(
            [(omega, r, x), (2 * omega, r, x), (4 * omega, r, x)], ModelOrders(2, 3)
        )
        w = omega / scale
        expect_real = [1.0, 0.0, -w * w, w * x, w * w * r, -w**3 * x]
        expect_imag = [0.0, w, 0.0, -w * r, w * w * x, w**3 * r]
        assert matrix[0] == pytest.approx(expect_real, rel=1e-12)
        assert matrix[1] == pytest.approx(expect_imag, rel=1e-12)
        assert rhs[0] == r and rhs[1] == x


class TestFit:
    def test_exact_interpolation_table3_fresh(self):
        spectrum = fixtures.get_spectrum("table3.fresh")
        model = fit_rational(spectrum, ModelOrders(2, 3))
        for sample in spectrum.samples:
            r, x = polar_to_cartesian(sample)
            z = evaluate(model, 2 * math.pi * sample.frequency_hz)
            assert z.real == pytest.approx(r, rel=1e-6)
            assert z.imag == pytest.approx(x, rel=1e-6)

    def test_square_fit_matches_pivoted_solve_oracle(self):
        spectrum = fixtures.get_spectrum("table3.fresh")
        model = fit_rational(spectrum, ModelOrders(2, 3))
        num, den = normal_equations_fit(spectrum, ModelOrders(2, 3))
        assert model.num_coeffs == pytest.approx(num, rel=1e-6)
        assert model.den_coeffs == pytest.approx(den, rel=1e-6)

    def test_least_squares_matches_normal_equations_oracle(self):
        spectrum = fixtures.get_spectrum("table7.fresh")
        model = fit_rational(spectrum, ModelOrders(1, 2))
        num, den = normal_equations_fit(spectrum, ModelOrders(1, 2))
        assert model.num_coeffs == pytest.approx(num, rel=1e-4)
        assert model.den_coeffs == pytest.approx(den, rel=1e-4)
        assert len(model.fit_residuals) == 3

    def test_all_below_floor_insufficient(self):
        spectrum = Spectrum((
            ImpedanceSample(20e3, 0, -10),
            ImpedanceSample(100e3, 0, -10),
            ImpedanceSample(500e3, 0, -10),
        ))
        with pytest.raises(InsufficientData):
            fit_rational(spectrum, ModelOrders(2, 3))

    def test_near_duplicate_frequencies_singular(self):
        spectrum = Spectrum((
            ImpedanceSample(20e3, 739, -48),
            ImpedanceSample(20e3 * (1 + 1e-12), 739, -48),
            ImpedanceSample(20e3 * (1 + 2e-12), 739, -48),
        ))
        with pytest.raises(SingularSystem) as excinfo:
            fit_rational(spectrum, ModelOrders(2, 3))
        assert excinfo.value.condition > 1e12

    def test_scale_equivariance(self):
        spectrum = fixtures.get_spectrum("table3.fresh")
        scaled = Spectrum(
            tuple(
                ImpedanceSample(s.frequency_hz, 3.5 * s.modulus_ohm, s.phase_deg)
                for s in spectrum.samples
            )
        )
        base = fit_rational(spectrum, ModelOrders(2, 3))
        up = fit_rational(scaled, ModelOrders(2, 3))
        assert up.num_coeffs == pytest.approx(
            tuple(3.5 * a for a in base.num_coeffs), rel=1e-9
        )
        assert up.den_coeffs == pytest.approx(base.den_coeffs, rel=1e-9)

    def test_frequency_scale_covariance(self):
        spectrum = fixtures.get_spectrum("table3.fresh")
        s = 7.0
        shifted = Spectrum(
            tuple(
                ImpedanceSample(s * smp.frequency_hz, smp.modulus_ohm, smp.phase_deg)
                for smp in spectrum.samples
            )
        )
        base = fit_rational(spectrum, ModelOrders(2, 3))
        moved = fit_rational(shifted, ModelOrders(2, 3))
        # de-scale: a model fitted at s-times-higher frequencies must match
        # the original after multiplying coefficients back by s^power
        descaled_num = tuple(a * s**k for k, a in enumerate(moved.num_coeffs))
        descaled_den = tuple(b * s**k for k, b in enumerate(moved.den_coeffs, start=1))
        assert descaled_num == pytest.approx(base.num_coeffs, rel=1e-9)
        assert descaled_den == pytest.approx(base.den_coeffs, rel=1e-9)

    def test_residuals_near_zero_for_square_case(self):
        model = fit_rational(fixtures.get_spectrum("table2.fresh"), ModelOrders(2, 3))
        assert max(model.fit_residuals) < 1e-9

    def test_ls_residual_is_local_minimum(self):
        spectrum = fixtures.get_spectrum("table7.fresh")
        orders = ModelOrders(1, 2)
        view = fitting_view(spectrum)
        matrix, rhs, scale = build_system(view, orders)
        model = fit_rational(spectrum, orders)
        x = np.concatenate([
            np.array(model.num_coeffs) * scale ** np.arange(2),
            np.array(model.den_coeffs) * scale ** np.arange(1, 3),
        ])
        base = np.linalg.norm(matrix @ x - rhs)
        for i in range(len(x)):
            for sign in (1.01, 0.99):
                xp = x.copy()
                xp[i] *= sign
                assert np.linalg.norm(matrix @ xp - rhs) >= base - 1e-12 * base


class TestEvaluate:
    def test_dc_value_is_first_coefficient(self):
        model = RationalImpedance((123.0, 1e-3), (1e-5, 1e-11))
        assert evaluate(model, 0.0) == 123.0 + 0j

    def test_conjugate_symmetry(self):
        model = fit_rational(fixtures.get_spectrum("table2.day3"), ModelOrders(2, 3))
        for omega in (1e4, 1e5, 1e6, 2.7e6):
            assert evaluate(model, -omega) == pytest.approx(
                evaluate(model, omega).conjugate(), rel=1e-12
            )

    def test_high_frequency_rolloff(self):
        model = fit_rational(fixtures.get_spectrum("table2.fresh"), ModelOrders(2, 3))
        moduli = [abs(evaluate(model, omega)) for omega in (1e9, 1e11, 1e13, 1e15)]
        assert all(hi < lo for lo, hi in zip(moduli, moduli[1:]))
        assert moduli[-1] < 1e-3

    def test_pole_at_frequency(self):
        omega0 = 1e5
        model = RationalImpedance((1.0, 1.0), (0.0, 1.0 / omega0**2))
        with pytest.raises(PoleAtFrequency):
            evaluate(model, omega0)

    def test_positivity_flag(self):
        assert RationalImpedance((1.0, 2.0), (3.0, 4.0)).is_positive
        assert not RationalImpedance((1.0, -2.0), (3.0, 4.0)).is_positive

    def test_non_finite_coefficients_rejected(self):
        with pytest.raises(ValidationError):
            RationalImpedance((math.nan, 1.0), (1.0, 1.0))
