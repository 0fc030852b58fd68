import numpy as np
import pytest

from pstnet import (
    DegeneracyHistogram,
    NetworkSpec,
    Spectrum,
    collapsed_spectrum,
    coupling_matrix,
    custom_profile,
    default_bin_tolerance,
    degeneracy_histogram,
    dispersion,
    evanescent_profile,
    fourier_matrix,
    opposite_site_spectrum,
    uniform_profile,
)


def _spec(n, profile):
    return NetworkSpec(n, profile)


class TestDispersion:
    def test_three_block_collapse_n8(self):
        lam = dispersion(_spec(8, uniform_profile(1.0, 3))).as_array()
        assert lam[0] == pytest.approx(6.0, abs=1e-12)
        assert lam[[1, 3, 5, 7]] == pytest.approx([0.0] * 4, abs=1e-12)
        assert lam[[2, 4, 6]] == pytest.approx([-2.0] * 3, abs=1e-12)

    def test_nearest_neighbour_cosine(self):
        lam = dispersion(_spec(4, uniform_profile(1.0, 1))).as_array()
        assert lam == pytest.approx([2.0, 0.0, -2.0, 0.0], abs=1e-12)

    @pytest.mark.parametrize(
        "n,profile",
        [
            (12, evanescent_profile(0.5, 6)),
            (8, uniform_profile(1.0, 4)),
            (9, custom_profile([0.7, 0.2, 0.4, 0.1])),
            (16, evanescent_profile(0.815, 5)),
        ],
    )
    def test_matches_dense_eigensolver(self, n, profile):
        spec = _spec(n, profile)
        by_formula = np.sort(dispersion(spec).as_array())
        by_solver = np.sort(np.linalg.eigvalsh(coupling_matrix(spec)))
        assert np.abs(by_formula - by_solver).max() < 1e-9

    def test_mirror_symmetry_in_p(self):
        lam = dispersion(_spec(12, evanescent_profile(0.5, 6))).as_array()
        assert np.abs(lam[1:] - lam[1:][::-1]).max() < 1e-12


class TestCollapsedSpectrum:
    @pytest.mark.parametrize(
        "n,top,zeros,lows", [(8, 6.0, 4, 3), (12, 10.0, 6, 5), (4, 2.0, 2, 1)]
    )
    def test_block_counts(self, n, top, zeros, lows):
        lam = collapsed_spectrum(n, 1.0).as_array()
        assert lam[0] == top
        assert int((lam == 0.0).sum()) == zeros
        assert int((lam == -2.0).sum()) == lows

    @pytest.mark.parametrize("n", [4, 8, 12, 16])
    def test_matches_dispersion_elementwise(self, n):
        spec = _spec(n, uniform_profile(1.0, n // 2 - 1))
        assert dispersion(spec).as_array() == pytest.approx(
            collapsed_spectrum(n, 1.0).as_array(), abs=1e-10
        )

    def test_rejects_odd(self):
        with pytest.raises(ValueError):
            collapsed_spectrum(7, 1.0)


class TestOppositeSiteSpectrum:
    def test_values(self):
        lam8 = np.sort(opposite_site_spectrum(8, 1.0).as_array())
        assert lam8 == pytest.approx([-1.0] * 7 + [7.0], abs=1e-12)
        lam4 = np.sort(opposite_site_spectrum(4, 1.0).as_array())
        assert lam4 == pytest.approx([-1.0] * 3 + [3.0], abs=1e-12)

    def test_dispersion_cross_check(self):
        # all-to-all profile, independent code path through the cosine sum
        lam = dispersion(_spec(8, uniform_profile(1.0, 4))).as_array()
        assert lam == pytest.approx(
            opposite_site_spectrum(8, 1.0).as_array(), abs=1e-10
        )

    def test_rejects_odd(self):
        with pytest.raises(ValueError):
            opposite_site_spectrum(5, 1.0)


class TestSpectrumType:
    def test_rejects_asymmetric_lists(self):
        with pytest.raises(ValueError):
            Spectrum((1.0, 2.0, 3.0), 3)

    def test_rejects_nonzero_trace(self):
        with pytest.raises(ValueError):
            Spectrum((1.0, 1.0, 1.0, 1.0), 4)

    @pytest.mark.parametrize(
        "profile", [uniform_profile(1.0, 3), evanescent_profile(0.5, 4)]
    )
    def test_trace_free(self, profile):
        lam = dispersion(_spec(12, profile)).as_array()
        assert abs(lam.sum()) < 1e-10


class TestDegeneracyHistogram:
    def test_collapsed_n12_bins(self):
        hist = degeneracy_histogram(collapsed_spectrum(12, 1.0), 1e-9)
        assert [m for _, m in hist.bins] == [5, 6, 1]
        assert [v for v, _ in hist.bins] == pytest.approx([-2.0, 0.0, 10.0], abs=1e-12)

    def test_nearest_neighbour_band(self):
        # lambda_p = 2 cos(2 pi p / 12): doubly degenerate except both edges
        hist = degeneracy_histogram(dispersion(_spec(12, uniform_profile(1.0, 1))), 1e-9)
        assert [m for _, m in hist.bins] == [1, 2, 2, 2, 2, 2, 1]
        expected = sorted(2.0 * np.cos(2.0 * np.pi * p / 12) for p in range(7))
        assert [v for v, _ in hist.bins] == pytest.approx(expected, abs=1e-12)

    def test_evanescent_spectrum_is_broadened(self):
        hist = degeneracy_histogram(
            dispersion(_spec(12, evanescent_profile(0.5, 6))), 1e-9
        )
        assert len(hist.bins) > 3

    @pytest.mark.parametrize("n", [5, 8, 12])
    def test_multiplicities_sum_to_n(self, n):
        rng = np.random.default_rng(n)
        spec = _spec(n, custom_profile(rng.uniform(0.1, 1.0, size=n // 2)))
        hist = degeneracy_histogram(dispersion(spec))
        assert sum(m for _, m in hist.bins) == n

    def test_type_validates_total(self):
        with pytest.raises(ValueError):
            DegeneracyHistogram(((0.0, 2),), 1e-9, 3)

    def test_default_tolerance_scales(self):
        spectrum = collapsed_spectrum(12, 1.0)
        assert default_bin_tolerance(spectrum) == pytest.approx(1e-8, rel=1e-12)

    def test_round_trip(self):
        hist = degeneracy_histogram(collapsed_spectrum(8, 1.0))
        again = DegeneracyHistogram.from_dict(hist.to_dict())
        assert again == hist


class TestFourierMatrix:
    def test_two_point(self):
        expected = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        assert np.abs(fourier_matrix(2) - expected).max() < 1e-15

    def test_unitary_and_symmetric(self):
        s = fourier_matrix(4)
        assert np.abs(s @ s.conj().T - np.eye(4)).max() < 1e-12
        assert np.abs(s - s.T).max() == 0.0

    def test_diagonalizes_coupling_matrix(self):
        spec = _spec(8, uniform_profile(1.0, 3))
        s = fourier_matrix(8)
        d = s.conj().T @ coupling_matrix(spec) @ s
        off = d - np.diag(np.diag(d))
        assert np.abs(off).max() < 1e-10
        assert np.abs(np.diag(d).real - dispersion(spec).as_array()).max() < 1e-10


@pytest.mark.parametrize("n", [2, 3, 4, 7, 8, 12, 16, 17])
def test_fourier_identity(n):
    # sum over a full period of any nonzero harmonic vanishes
    r = np.arange(n)
    for p in range(1, n):
        assert abs(np.exp(2j * np.pi * p * r / n).sum()) < 1e-12


@pytest.mark.parametrize("n", [4, 6, 8, 12, 16])
def test_collapse_identity(n):
    for p in range(1, n):
        total = 1.0 + (-1.0) ** p + 2.0 * sum(
            np.cos(2.0 * np.pi * p * r / n) for r in range(1, n // 2)
        )
        assert abs(total) < 1e-11


@pytest.mark.parametrize("n", [8, 12, 16])
def test_uniform_has_more_zero_modes_than_evanescent(n):
    reach = n // 2 - 1
    uniform_zeros = int(
        (np.abs(collapsed_spectrum(n, 1.0).as_array()) < 1e-9).sum()
    )
    assert uniform_zeros == n // 2
    lam = dispersion(_spec(n, evanescent_profile(0.5, reach))).as_array()
    assert int((np.abs(lam) < 1e-9).sum()) < uniform_zeros
