"""Tests for joint spectral intensity handling: grids, projections, CSV."""

import math

import numpy as np
import pytest
from scipy.constants import c as C_VACUUM

from biphoton_wkt import (
    TsiGrid,
    TsiProfile,
    bandwidth_report,
    correlated_gaussian_tsi,
    load_tsi,
    profile_bandwidth_report,
    project,
    save_profile,
    save_tsi,
    subtract_background,
)
from biphoton_wkt.errors import (
    CsvFormatError,
    IncompleteGrid,
    NegativeCount,
    NoCrossing,
    NonUniform,
    NotSquare,
)

from conftest import reference_fwhm

SQRT2 = math.sqrt(2.0)
NM = 1e-9


def toy_grid(n_s=5, n_i=5, seed=7):
    rng = np.random.default_rng(seed)
    lam_s = 1570e-9 + 0.5e-9 * np.arange(n_s)
    lam_i = 1580e-9 + 0.5e-9 * np.arange(n_i)
    counts = rng.uniform(0.0, 100.0, size=(n_s, n_i))
    return TsiGrid(lam_s, lam_i, counts)


class TestGridValidation:
    def test_shape_mismatch(self):
        with pytest.raises(ValueError, match="shape"):
            TsiGrid(np.array([1e-6, 2e-6]), np.array([1e-6, 2e-6]), np.ones((3, 2)))

    def test_axes_must_be_1d(self):
        with pytest.raises(ValueError, match="1D"):
            TsiGrid(np.ones((2, 2)), np.array([1e-6, 2e-6]), np.ones((2, 2)))

    def test_single_point_axis(self):
        with pytest.raises(IncompleteGrid):
            TsiGrid(np.array([1e-6]), np.array([1e-6, 2e-6]), np.ones((1, 2)))

    def test_decreasing_axis(self):
        with pytest.raises(NonUniform, match="increasing"):
            TsiGrid(
                np.array([2e-6, 1e-6]), np.array([1e-6, 2e-6]), np.ones((2, 2))
            )

    def test_jittered_axis(self):
        lam = np.array([1.0e-6, 1.1e-6, 1.25e-6])
        with pytest.raises(NonUniform, match="uniform"):
            TsiGrid(lam, np.array([1e-6, 2e-6, 3e-6]), np.ones((3, 3)))

    def test_non_finite_counts(self):
        counts = np.ones((2, 2))
        counts[0, 1] = np.nan
        with pytest.raises(CsvFormatError):
            TsiGrid(np.array([1e-6, 2e-6]), np.array([1e-6, 2e-6]), counts)

    def test_negative_counts(self):
        counts = np.ones((2, 2))
        counts[1, 0] = -0.5
        with pytest.raises(NegativeCount):
            TsiGrid(np.array([1e-6, 2e-6]), np.array([1e-6, 2e-6]), counts)

    def test_arrays_copied_and_frozen(self):
        lam = np.array([1e-6, 2e-6])
        counts = np.ones((2, 2))
        grid = TsiGrid(lam, lam, counts)
        counts[0, 0] = 99.0
        assert grid.counts[0, 0] == 1.0
        with pytest.raises(ValueError):
            grid.counts[0, 0] = 5.0

    def test_steps_and_square_flag(self):
        grid = toy_grid()
        assert grid.step_s == pytest.approx(0.5e-9, rel=1e-12)
        assert grid.step_i == pytest.approx(0.5e-9, rel=1e-12)
        assert grid.is_square

    def test_unequal_steps_not_square(self):
        lam_s = np.array([1000e-9, 1001e-9, 1002e-9])
        lam_i = np.array([1000e-9, 1002e-9, 1004e-9])
        grid = TsiGrid(lam_s, lam_i, np.ones((3, 3)))
        assert not grid.is_square

    def test_total(self):
        grid = toy_grid()
        assert grid.total == pytest.approx(float(np.sum(grid.counts)), rel=1e-14)


class TestReferenceWavelength:
    def test_uniform_counts_give_axis_midpoints(self):
        lam_s = np.linspace(1570e-9, 1580e-9, 11)
        lam_i = np.linspace(1590e-9, 1600e-9, 11)
        grid = TsiGrid(lam_s, lam_i, np.ones((11, 11)))
        expected = 0.5 * (1575e-9 + 1595e-9)
        assert grid.reference_wavelength() == pytest.approx(expected, rel=1e-12)

    def test_single_bright_cell(self):
        lam = np.linspace(1570e-9, 1580e-9, 11)
        counts = np.zeros((11, 11))
        counts[2, 8] = 40.0
        grid = TsiGrid(lam, lam, counts)
        expected = 0.5 * (lam[2] + lam[8])
        assert grid.reference_wavelength() == pytest.approx(expected, rel=1e-12)


class TestProjections:
    def test_x_projection_is_idler_sum(self):
        grid = toy_grid()
        prof = project(grid, "x")
        assert prof.axis == "x"
        np.testing.assert_array_equal(prof.coordinate, grid.lambda_s)
        np.testing.assert_allclose(
            prof.counts, np.sum(grid.counts, axis=1), rtol=1e-14
        )

    def test_single_cell_lands_on_arc_length_coordinates(self):
        lam = np.linspace(1570e-9, 1590e-9, 21)
        counts = np.zeros((21, 21))
        counts[4, 15] = 7.0
        grid = TsiGrid(lam, lam, counts)
        for axis, sign in (("diagonal", +1), ("antidiagonal", -1)):
            prof = project(grid, axis)
            peak = prof.coordinate[int(np.argmax(prof.counts))]
            expected = (lam[4] + sign * lam[15]) / SQRT2
            assert peak == pytest.approx(expected, rel=1e-12)
            assert prof.counts.max() == 7.0

    def test_diagonal_bin_width_is_step_over_sqrt2(self):
        grid = toy_grid()
        for axis in ("diagonal", "antidiagonal"):
            prof = project(grid, axis)
            assert len(prof.counts) == 2 * 5 - 1
            steps = np.diff(prof.coordinate)
            np.testing.assert_allclose(steps, grid.step_s / SQRT2, rtol=1e-9)

    def test_mass_conservation_all_axes(self):
        grid = toy_grid(n_s=17, n_i=17, seed=11)
        for axis in ("x", "diagonal", "antidiagonal"):
            prof = project(grid, axis)
            assert prof.total == pytest.approx(grid.total, abs=1e-9 * grid.total)

    def test_uniform_counts_give_triangular_diagonal(self):
        # Index-sum binning of a constant grid counts lattice lines:
        # 1, 2, ..., n, ..., 2, 1 cells per bin.
        n = 6
        lam = np.linspace(1570e-9, 1575e-9, n)
        grid = TsiGrid(lam, lam, np.ones((n, n)))
        prof = project(grid, "diagonal")
        expected = np.minimum(np.arange(2 * n - 1), np.arange(2 * n - 1)[::-1]) + 1.0
        np.testing.assert_array_equal(prof.counts, expected)

    def test_projection_is_linear(self):
        a = toy_grid(seed=1)
        b = toy_grid(seed=2)
        both = TsiGrid(a.lambda_s, a.lambda_i, a.counts + b.counts)
        for axis in ("x", "diagonal", "antidiagonal"):
            lhs = project(both, axis).counts
            rhs = project(a, axis).counts + project(b, axis).counts
            np.testing.assert_allclose(lhs, rhs, rtol=1e-12)

    def test_transpose_flips_antidiagonal_only(self):
        grid = toy_grid(seed=3)
        flipped = TsiGrid(grid.lambda_s, grid.lambda_i, grid.counts.T)
        np.testing.assert_allclose(
            project(flipped, "diagonal").counts,
            project(grid, "diagonal").counts,
            rtol=1e-12,
        )
        np.testing.assert_allclose(
            project(flipped, "antidiagonal").counts,
            project(grid, "antidiagonal").counts[::-1],
            rtol=1e-12,
        )

    def test_diagonal_needs_square_grid(self):
        lam_s = np.linspace(1570e-9, 1575e-9, 6)
        lam_i = np.linspace(1570e-9, 1575e-9, 11)
        grid = TsiGrid(lam_s, lam_i, np.ones((6, 11)))
        with pytest.raises(NotSquare):
            project(grid, "diagonal")
        # The signal-axis marginal has no squareness requirement.
        assert project(grid, "x").total == pytest.approx(66.0, rel=1e-12)

    def test_unknown_axis(self):
        with pytest.raises(ValueError, match="axis"):
            project(toy_grid(), "y")

    def test_profile_validation(self):
        with pytest.raises(ValueError, match="axis"):
            TsiProfile("sideways", np.arange(3.0), np.ones(3))
        with pytest.raises(ValueError, match="shape"):
            TsiProfile("x", np.arange(4.0), np.ones(3))

    def test_flat_profile_has_no_width(self):
        prof = TsiProfile("x", np.linspace(0.0, 1.0, 9), np.ones(9))
        with pytest.raises(NoCrossing):
            prof.fwhm()


class TestCorrelatedGaussian:
    # Widths chosen so the diagonal cut is much broader than the
    # anti-diagonal one, i.e. strong positive frequency anticorrelation.
    WIDTHS = (18.2, 1.9, 24.6)

    def test_recovers_requested_bandwidths(self):
        grid = correlated_gaussian_tsi(*self.WIDTHS)
        report = bandwidth_report(grid)
        assert report.x_fwhm == pytest.approx(18.2 * NM, rel=2e-3)
        assert report.antidiagonal_fwhm == pytest.approx(1.9 * NM, rel=2e-3)
        assert report.diagonal_fwhm == pytest.approx(24.6 * NM, rel=2e-3)

    def test_reference_wavelength_is_center(self):
        grid = correlated_gaussian_tsi(*self.WIDTHS)
        assert grid.reference_wavelength() == pytest.approx(1584.0 * NM, rel=1e-9)

    def test_frequency_conversion_matches_scalar_rule(self):
        grid = correlated_gaussian_tsi(*self.WIDTHS)
        report = bandwidth_report(grid)
        lam0 = report.reference_wavelength
        for width, width_hz in (
            (report.x_fwhm, report.x_fwhm_hz),
            (report.diagonal_fwhm, report.diagonal_fwhm_hz),
            (report.antidiagonal_fwhm, report.antidiagonal_fwhm_hz),
        ):
            assert width_hz == pytest.approx(C_VACUUM * width / lam0**2, rel=1e-9)

    def test_peak_counts_at_center(self):
        grid = correlated_gaussian_tsi(*self.WIDTHS, peak_counts=500.0)
        assert grid.counts.max() == pytest.approx(500.0, rel=1e-12)
        center = len(grid.lambda_s) // 2
        assert grid.counts[center, center] == grid.counts.max()

    def test_x_profile_width_matches_independent_measure(self):
        grid = correlated_gaussian_tsi(*self.WIDTHS)
        prof = project(grid, "x")
        assert prof.fwhm() == pytest.approx(
            reference_fwhm(prof.coordinate, prof.counts), rel=1e-12
        )

    def test_infeasible_idler_variance(self):
        # Both cuts far narrower than the signal marginal: no Gaussian fits.
        with pytest.raises(ValueError, match="variance"):
            correlated_gaussian_tsi(10.0, 0.1, 0.1)

    def test_infeasible_correlation(self):
        with pytest.raises(ValueError, match="rho"):
            correlated_gaussian_tsi(10.0, 1.0, 100.0)


class TestBackgroundSubtraction:
    def test_removes_flat_floor(self):
        clean = correlated_gaussian_tsi(18.2, 1.9, 24.6, count=101)
        noisy = TsiGrid(clean.lambda_s, clean.lambda_i, clean.counts + 50.0)
        cleaned = subtract_background(noisy)
        assert cleaned.counts.min() == 0.0
        want = project(clean, "x").fwhm()
        got = project(cleaned, "x").fwhm()
        assert got == pytest.approx(want, rel=1e-2)

    def test_harmless_on_clean_data(self):
        clean = correlated_gaussian_tsi(18.2, 1.9, 24.6, count=101)
        cleaned = subtract_background(clean)
        # Strong anticorrelation leaves most cells near zero, so the
        # estimated floor is tiny and widths move by much less than a bin.
        want = project(clean, "diagonal").fwhm()
        got = project(cleaned, "diagonal").fwhm()
        assert got == pytest.approx(want, rel=1e-3)


class TestProfileBandwidthReport:
    def test_triangle_profile(self):
        lam = 1584e-9 + 0.1e-9 * np.arange(-40, 41)
        counts = np.maximum(0.0, 1.0 - np.abs(np.arange(-40, 41)) / 20.0)
        prof = TsiProfile("x", lam, counts)
        width, width_hz = profile_bandwidth_report(prof, 1584e-9)
        assert width == pytest.approx(2.0e-9, rel=1e-9)
        assert width_hz == pytest.approx(
            C_VACUUM * 2.0e-9 / 1584e-9**2, rel=1e-9
        )


class TestCsvRoundtrip:
    HEADER = "lambda_s_nm,lambda_i_nm,counts"

    def lines_3x3(self):
        rows = []
        for s in (1570.0, 1570.5, 1571.0):
            for i in (1580.0, 1580.5, 1581.0):
                rows.append(f"{s},{i},{s + i}")
        return rows

    def test_load_from_lines(self):
        lines = [self.HEADER, "# comment", ""] + self.lines_3x3()
        grid = load_tsi(lines)
        np.testing.assert_allclose(
            grid.lambda_s, np.array([1570.0, 1570.5, 1571.0]) * NM, rtol=1e-12
        )
        np.testing.assert_allclose(
            grid.lambda_i, np.array([1580.0, 1580.5, 1581.0]) * NM, rtol=1e-12
        )
        assert grid.counts[0, 0] == 1570.0 + 1580.0
        assert grid.counts[2, 1] == 1571.0 + 1580.5

    def test_row_order_does_not_matter(self):
        lines = self.lines_3x3()
        grid_a = load_tsi([self.HEADER] + lines)
        grid_b = load_tsi([self.HEADER] + lines[::-1])
        np.testing.assert_array_equal(grid_a.counts, grid_b.counts)

    def test_empty_input(self):
        with pytest.raises(IncompleteGrid, match="no data"):
            load_tsi([self.HEADER, "# nothing here"])

    def test_missing_pair(self):
        with pytest.raises(IncompleteGrid):
            load_tsi([self.HEADER] + self.lines_3x3()[:-1])

    def test_duplicate_pair(self):
        lines = self.lines_3x3()
        lines[-1] = lines[0]
        with pytest.raises(CsvFormatError, match="duplicate"):
            load_tsi([self.HEADER] + lines)

    def test_single_wavelength_axis(self):
        lines = [f"1570.0,{i},1.0" for i in (1580.0, 1580.5, 1581.0)]
        with pytest.raises(IncompleteGrid, match="2 distinct"):
            load_tsi(lines)

    def test_wrong_column_count(self):
        with pytest.raises(CsvFormatError, match="3 columns"):
            load_tsi(["1570.0,1580.0"])

    def test_unparsable_number(self):
        with pytest.raises(CsvFormatError, match="line 2"):
            load_tsi(["1570.0,1580.0,1.0", "1570.0,1580.5,oops"])

    def test_save_load_roundtrip(self, tmp_path):
        grid = toy_grid(seed=5)
        path = tmp_path / "tsi.csv"
        save_tsi(grid, path)
        back = load_tsi(path)
        np.testing.assert_array_equal(back.counts, grid.counts)
        np.testing.assert_allclose(back.lambda_s, grid.lambda_s, rtol=1e-12)
        np.testing.assert_allclose(back.lambda_i, grid.lambda_i, rtol=1e-12)

    def test_save_profile_format(self, tmp_path):
        prof = project(toy_grid(), "diagonal")
        path = tmp_path / "profile.csv"
        save_profile(prof, path)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "# axis=diagonal"
        assert lines[1] == "wavelength_nm,counts"
        assert len(lines) == 2 + len(prof.counts)
        x, cnt = lines[2].split(",")
        assert float(x) == pytest.approx(prof.coordinate[0] / NM, rel=1e-12)
        assert float(cnt) == prof.counts[0]
