import math

import pytest
from hypothesis import given, strategies as st

from fruitz import fixtures
from fruitz.errors import InsufficientData, ParseError, ValidationError
from fruitz.spectra import (
    ImpedanceSample,
    MeasurementMeta,
    Spectrum,
    cartesian_to_polar,
    fitting_view,
    parse_spectrum_csv,
    polar_to_cartesian,
    spectrum_to_csv,
)


class TestSample:
    def test_polar_to_cartesian_measured_row(self):
        # oracle: direct trigonometric evaluation
        r, x = polar_to_cartesian(ImpedanceSample(20e3, 739, -48.0))
        assert r == pytest.approx(739 * math.cos(math.radians(48)), rel=1e-12)
        assert x == pytest.approx(-739 * math.sin(math.radians(48)), rel=1e-12)
        assert r == pytest.approx(494.5, abs=0.1)
        assert x == pytest.approx(-549.2, abs=0.1)

    def test_zero_phase_is_purely_resistive(self):
        assert polar_to_cartesian(ImpedanceSample(1e3, 100, 0.0)) == (100.0, 0.0)

    def test_zero_modulus_flagged_below_floor(self):
        s = ImpedanceSample(1e3, 0.0, -20.0)
        assert s.below_floor
        assert polar_to_cartesian(s) == (0.0, 0.0)

    def test_cartesian_to_polar_round_trip(self):
        m, p = cartesian_to_polar(494.5, -549.2)
        assert m == pytest.approx(739, abs=0.1)
        assert p == pytest.approx(-48, abs=0.05)

    def test_cartesian_to_polar_zero_vector(self):
        assert cartesian_to_polar(0.0, 0.0) == (0.0, 0.0)

    def test_cartesian_to_polar_symmetry(self):
        m, p = cartesian_to_polar(1.0, -1.0)
        assert m == pytest.approx(math.sqrt(2), rel=1e-12)
        assert p == pytest.approx(-45.0, rel=1e-12)

    @pytest.mark.parametrize("freq,mod,phase", [
        (0.0, 1.0, 0.0),
        (-1.0, 1.0, 0.0),
        (1e3, -1.0, 0.0),
        (1e3, 1.0, -91.0),
        (1e3, 1.0, 95.0),
    ])
    def test_invalid_sample_rejected(self, freq, mod, phase):
        with pytest.raises(ValidationError):
            ImpedanceSample(freq, mod, phase)

    @given(
        st.floats(1e-3, 1e9),
        st.floats(1e-6, 1e9),
        st.floats(-90.0, 90.0),
    )
    def test_polar_cartesian_identity(self, freq, mod, phase):
        s = ImpedanceSample(freq, mod, phase)
        m, p = cartesian_to_polar(*polar_to_cartesian(s))
        assert m == pytest.approx(mod, rel=1e-12)
        assert math.hypot(*polar_to_cartesian(s)) == pytest.approx(mod, rel=1e-12)


class TestSpectrum:
    def test_duplicate_frequency_rejected(self):
        with pytest.raises(ValidationError):
            Spectrum((ImpedanceSample(20e3, 1, 0), ImpedanceSample(20e3, 2, 0)))

    def test_decreasing_frequency_rejected(self):
        with pytest.raises(ValidationError):
            Spectrum((ImpedanceSample(100e3, 1, 0), ImpedanceSample(20e3, 2, 0)))

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            Spectrum(())

    def test_meta_positivity(self):
        with pytest.raises(ValidationError):
            MeasurementMeta(electrode_spacing_mm=-1)


class TestFittingView:
    def test_angular_frequencies(self):
        view = fitting_view(fixtures.get_spectrum("table3.fresh"))
        omegas = [w for w, _, _ in view]
        assert omegas == pytest.approx(
            [2 * math.pi * f for f in (20e3, 100e3, 500e3)], rel=1e-12
        )
        assert omegas[0] == pytest.approx(1.2566e5, rel=1e-4)
        assert omegas[2] == pytest.approx(3.1416e6, rel=1e-4)

    def test_below_floor_rows_dropped(self):
        view = fitting_view(fixtures.get_spectrum("table4.day3"))
        assert len(view) == 2  # the 500 kHz reading is under the floor

    def test_view_length_matches_usable_count(self):
        for fid in ("table4.day3", "table7.day6", "table5.fresh"):
            spectrum = fixtures.get_spectrum(fid)
            usable = sum(1 for s in spectrum.samples if not s.below_floor)
            assert len(fitting_view(spectrum)) == usable

    def test_single_usable_sample_insufficient(self):
        with pytest.raises(InsufficientData):
            fitting_view(fixtures.get_spectrum("table4.fresh"))

    def test_single_sample_spectrum_insufficient(self):
        with pytest.raises(InsufficientData):
            fitting_view(Spectrum((ImpedanceSample(20e3, 100, -10),)))


class TestCsv:
    def test_parse_fixture_dump(self):
        spectrum = fixtures.get_spectrum("table3.fresh")
        parsed = parse_spectrum_csv(spectrum_to_csv(spectrum))
        assert parsed.samples == spectrum.samples
        assert parsed.specimen == spectrum.specimen

    def test_parse_minimal(self):
        text = "frequency_hz,modulus_ohm,phase_deg\n20000,739,-48\n100000,260,-31.1\n500000,112,-7.1\n"
        s = parse_spectrum_csv(text)
        assert len(s.samples) == 3
        assert s.samples[0].modulus_ohm == 739

    def test_metadata_comments(self):
        text = (
            "# specimen=lemon transverse\n# averaging_count=128\n"
            "frequency_hz,modulus_ohm,phase_deg\n20000,974,-37.4\n"
        )
        s = parse_spectrum_csv(text)
        assert s.specimen == "lemon transverse"
        assert s.meta.averaging_count == 128

    def test_empty_file(self):
        with pytest.raises(ParseError):
            parse_spectrum_csv("")

    def test_malformed_row_reports_line(self):
        text = "frequency_hz,modulus_ohm,phase_deg\n20000,739\n"
        with pytest.raises(ParseError, match="line 2"):
            parse_spectrum_csv(text)

    def test_non_numeric_row(self):
        text = "frequency_hz,modulus_ohm,phase_deg\n20000,abc,-48\n"
        with pytest.raises(ParseError):
            parse_spectrum_csv(text)

    def test_duplicate_frequency_is_validation_error(self):
        text = "frequency_hz,modulus_ohm,phase_deg\n20000,739,-48\n20000,740,-48\n"
        with pytest.raises(ValidationError):
            parse_spectrum_csv(text)

    def test_bad_header(self):
        with pytest.raises(ParseError):
            parse_spectrum_csv("freq,mag,phase\n20000,739,-48\n")
