"""Source models: Gaussian spectra and down-conversion joint amplitudes."""

import math

import numpy as np
import pytest
from conftest import reference_fwhm
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from biphoton_wkt.core import (
    C_LIGHT,
    GAUSSIAN_TIME_BANDWIDTH,
    SINC2_HALF_MAX_ARG,
    TRIANGLE_SINC2_TIME_BANDWIDTH,
    TWO_PI,
    FrequencyGrid,
    exchange_symmetry_residual,
)
from biphoton_wkt.errors import GridTooNarrow, InvalidWavelength
from biphoton_wkt.interference import marginal_projection
from biphoton_wkt.models import (
    DEFAULT_CRYSTAL_LENGTH,
    DEFAULT_GROUP_DELAY_MISMATCH,
    PhaseMatchSpec,
    PumpSpec,
    build_jsa,
    default_photon_grid,
    double_gaussian_jsa,
    gaussian_spectrum,
)


def sinc2_half_max_root():
    # root of sin(x)/x = 1/sqrt(2), computed from scratch
    return brentq(
        lambda x: math.sin(x) / x - 1.0 / math.sqrt(2.0), 1.0, 1.5, xtol=1e-14
    )


class TestConstants:
    def test_sinc2_root_rederived(self):
        assert SINC2_HALF_MAX_ARG == pytest.approx(sinc2_half_max_root(), abs=1e-12)

    def test_time_bandwidth_products(self):
        assert GAUSSIAN_TIME_BANDWIDTH == pytest.approx(
            4.0 * math.log(2.0) / math.pi, rel=1e-15
        )
        assert TRIANGLE_SINC2_TIME_BANDWIDTH == pytest.approx(
            2.0 * sinc2_half_max_root() / math.pi, rel=1e-12
        )

    def test_group_delay_mismatch_calibration(self):
        # chosen so the default crystal yields a 0.22 THz difference marginal
        x_half = sinc2_half_max_root()
        expected = 4.0 * x_half / (math.pi * 0.22e12 * 0.030)
        assert DEFAULT_GROUP_DELAY_MISMATCH == pytest.approx(expected, rel=1e-12)


class TestPumpSpec:
    def test_default_frequencies(self):
        pump = PumpSpec()
        assert pump.carrier_frequency == pytest.approx(
            TWO_PI * C_LIGHT / 792e-9, rel=1e-15
        )
        assert pump.degenerate_photon_frequency == pytest.approx(
            0.5 * pump.carrier_frequency, rel=1e-15
        )
        # 120 fs transform-limited pulse
        assert pump.spectral_intensity_fwhm == pytest.approx(
            GAUSSIAN_TIME_BANDWIDTH / 120e-15, rel=1e-15
        )

    def test_validation(self):
        with pytest.raises(InvalidWavelength):
            PumpSpec(center_wavelength=0.0)
        with pytest.raises(ValueError):
            PumpSpec(intensity_fwhm_duration=-1e-15)

    def test_gvm_symmetry_flag(self):
        assert PhaseMatchSpec().is_gvm_symmetric
        assert not PhaseMatchSpec(
            group_delay_signal=1e-10, group_delay_idler=1e-10
        ).is_gvm_symmetric


class TestGaussianSpectrum:
    def grid(self, half_thz=8.0, count=801):
        return FrequencyGrid.from_center_span(
            TWO_PI * C_LIGHT / 1584e-9, TWO_PI * half_thz * 1e12, count
        )

    def test_normalized_with_requested_width(self):
        g = self.grid()
        s = gaussian_spectrum(g.center, 2.18e12, g)
        assert s.is_normalized
        measured = reference_fwhm(g.points, s.values)
        assert measured == pytest.approx(TWO_PI * 2.18e12, rel=5e-3)

    def test_peak_density_scales_inversely_with_width(self):
        g = self.grid()
        wide = gaussian_spectrum(g.center, 3.0e12, g)
        narrow = gaussian_spectrum(g.center, 1.5e12, g)
        assert np.max(narrow.values) == pytest.approx(
            2.0 * np.max(wide.values), rel=1e-3
        )

    def test_too_wide_for_window_rejected(self):
        g = self.grid(half_thz=4.0, count=401)
        with pytest.raises(GridTooNarrow):
            gaussian_spectrum(g.center, 3.0e12, g)

    def test_narrow_line_becomes_single_bin_delta(self):
        g = self.grid()
        s = gaussian_spectrum(g.center, 1e3, g)  # far below the grid step
        k = g.index_of(g.center)
        assert s.values[k] == pytest.approx(1.0 / g.step, rel=1e-12)
        assert np.all(s.values[np.arange(g.count) != k] == 0.0)

    def test_center_off_grid_center_allowed(self):
        g = self.grid()
        s = gaussian_spectrum(g.center + 3.0 * g.step, 1.0e12, g)
        k = int(np.argmax(s.values))
        assert k == g.index_of(g.center) + 3


class TestBuildJsa:
    def test_default_is_normalized_and_symmetric(self):
        jsa = build_jsa(PumpSpec(), PhaseMatchSpec(), default_photon_grid())
        assert jsa.is_normalized
        assert exchange_symmetry_residual(jsa) <= 1e-12

    def test_difference_marginal_width(self):
        # the calibration target: 0.22 THz sinc^2 intensity FWHM
        jsa = build_jsa(PumpSpec(), PhaseMatchSpec(), default_photon_grid())
        minus = marginal_projection(jsa, "minus")
        measured = reference_fwhm(minus.grid.points, minus.values)
        assert measured == pytest.approx(TWO_PI * 0.22e12, rel=0.01)

    def test_sum_marginal_follows_pump(self):
        pump = PumpSpec()
        jsa = build_jsa(pump, PhaseMatchSpec(), default_photon_grid())
        plus = marginal_projection(jsa, "plus")
        measured = reference_fwhm(plus.grid.points, plus.values)
        assert measured == pytest.approx(
            TWO_PI * pump.spectral_intensity_fwhm, rel=0.01
        )
        assert plus.integral() == pytest.approx(1.0, abs=1e-9)

    def test_crystal_length_narrows_difference_axis_only(self):
        pump = PumpSpec()
        grid = default_photon_grid()
        short = build_jsa(pump, PhaseMatchSpec(crystal_length=15e-3), grid)
        long = build_jsa(pump, PhaseMatchSpec(crystal_length=30e-3), grid)
        w_short = reference_fwhm(
            marginal_projection(short, "minus").grid.points,
            marginal_projection(short, "minus").values,
        )
        w_long = reference_fwhm(
            marginal_projection(long, "minus").grid.points,
            marginal_projection(long, "minus").values,
        )
        assert w_short == pytest.approx(2.0 * w_long, rel=0.02)
        p_short = reference_fwhm(
            marginal_projection(short, "plus").grid.points,
            marginal_projection(short, "plus").values,
        )
        p_long = reference_fwhm(
            marginal_projection(long, "plus").grid.points,
            marginal_projection(long, "plus").values,
        )
        assert p_short == pytest.approx(p_long, rel=0.01)

    @given(
        scale=st.floats(min_value=0.2, max_value=3.0),
        length_mm=st.floats(min_value=5.0, max_value=60.0),
    )
    @settings(max_examples=25, deadline=None)
    def test_opposite_group_delays_always_symmetric(self, scale, length_mm):
        gd = 0.5 * scale * DEFAULT_GROUP_DELAY_MISMATCH
        pm = PhaseMatchSpec(
            crystal_length=length_mm * 1e-3,
            group_delay_signal=gd,
            group_delay_idler=-gd,
        )
        jsa = build_jsa(PumpSpec(), pm, default_photon_grid(count=301))
        assert exchange_symmetry_residual(jsa) <= 1e-12

    def test_equal_group_delays_also_symmetric(self):
        # dk depends only on ws + wi in this case, so exchange symmetry
        # holds even though the configuration is not group-velocity matched
        gd = 0.5 * DEFAULT_GROUP_DELAY_MISMATCH
        pm = PhaseMatchSpec(group_delay_signal=gd, group_delay_idler=gd)
        jsa = build_jsa(PumpSpec(), pm, default_photon_grid(count=301))
        assert not pm.is_gvm_symmetric
        assert exchange_symmetry_residual(jsa) <= 1e-12

    def test_unbalanced_group_delays_break_symmetry(self):
        pm = PhaseMatchSpec(
            group_delay_signal=DEFAULT_GROUP_DELAY_MISMATCH,
            group_delay_idler=-0.3 * DEFAULT_GROUP_DELAY_MISMATCH,
        )
        jsa = build_jsa(PumpSpec(), pm, default_photon_grid(count=301))
        assert exchange_symmetry_residual(jsa) > 1e-3

    def test_pump_too_broad_for_window(self):
        with pytest.raises(GridTooNarrow):
            build_jsa(
                PumpSpec(intensity_fwhm_duration=10e-15),
                PhaseMatchSpec(),
                default_photon_grid(),
            )


class TestDoubleGaussianJsa:
    def make(self, sp_thz=2.0, sm_thz=0.5, count=601):
        grid = default_photon_grid(count=count)
        center = 2.0 * grid.center
        return (
            double_gaussian_jsa(
                TWO_PI * sp_thz * 1e12, TWO_PI * sm_thz * 1e12, center, grid
            ),
            grid,
        )

    def test_normalized_and_symmetric(self):
        jsa, _ = self.make()
        assert jsa.is_normalized
        assert exchange_symmetry_residual(jsa) <= 1e-13

    def test_marginal_widths_are_the_requested_sigmas(self):
        sp, sm = 2.0, 0.5
        jsa, _ = self.make(sp, sm)
        gauss_fwhm = 2.0 * math.sqrt(2.0 * math.log(2.0))
        plus = marginal_projection(jsa, "plus")
        minus = marginal_projection(jsa, "minus")
        assert reference_fwhm(plus.grid.points, plus.values) == pytest.approx(
            gauss_fwhm * TWO_PI * sp * 1e12, rel=0.01
        )
        assert reference_fwhm(minus.grid.points, minus.values) == pytest.approx(
            gauss_fwhm * TWO_PI * sm * 1e12, rel=0.01
        )

    def test_window_too_small_rejected(self):
        grid = default_photon_grid(count=301)
        with pytest.raises(GridTooNarrow):
            double_gaussian_jsa(
                TWO_PI * 2e12, TWO_PI * 20e12, 2.0 * grid.center, grid
            )

    def test_sigma_validation(self):
        grid = default_photon_grid(count=101)
        with pytest.raises(ValueError):
            double_gaussian_jsa(0.0, 1e12, 2.0 * grid.center, grid)


class TestDefaultPhotonGrid:
    def test_centered_on_degeneracy(self):
        pump = PumpSpec()
        g = default_photon_grid(pump)
        assert g.center == pytest.approx(pump.degenerate_photon_frequency, rel=1e-15)
        assert g.count == 1201
        assert g.stop - g.start == pytest.approx(2.0 * TWO_PI * 15e12, rel=1e-12)
