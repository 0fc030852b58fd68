"""Fourier-mode spectra of circulant coupling matrices.

A circulant matrix is diagonalized by the discrete Fourier transform,
so its eigenvalues follow from a cosine sum over the coupling profile:

    lambda_p = sum_r w_r * C_r * cos(2 pi p r / N),   p = 0..N-1

with weight w_r = 2 except at the opposite-site separation r = N/2
(even N only), which enters once.  Two closed-form special cases are
provided: the uniform profile with range N/2 - 1, whose spectrum
collapses onto the three values {C(N-2), 0, -2C}, and the all-to-all
profile including r = N/2, which gives {C(N-1), -C}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import NetworkSpec


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of a circulant coupling matrix, ordered by Fourier index p.

    Real symmetric circulants satisfy ``lambda_p == lambda_{N-p}`` and
    have zero trace (the coupling matrix has an empty diagonal); both
    are checked on construction.
    """

    eigenvalues: tuple[float, ...]
    n_modes: int

    def __post_init__(self):
        values = tuple(float(v) for v in self.eigenvalues)
        object.__setattr__(self, "eigenvalues", values)
        if len(values) != self.n_modes:
            raise ValueError("eigenvalue count must equal n_modes")
        arr = np.asarray(values)
        scale = max(1.0, float(np.abs(arr).max()))
        mirrored = arr[(-np.arange(self.n_modes)) % self.n_modes]
        if np.abs(arr - mirrored).max() > 1e-9 * scale:
            raise ValueError("spectrum must satisfy lambda_p == lambda_{N-p}")
        if abs(arr.sum()) > 1e-9 * scale * self.n_modes:
            raise ValueError("spectrum of a zero-diagonal circulant must sum to 0")

    def as_array(self) -> np.ndarray:
        return np.asarray(self.eigenvalues)

    def sorted_values(self) -> np.ndarray:
        """Ascending view used for histogramming and comparisons."""
        return np.sort(self.as_array())


@dataclass(frozen=True)
class DegeneracyHistogram:
    """Eigenvalues merged into degenerate bins.

    Each bin is a (representative, multiplicity) pair; representatives
    are bin means and multiplicities sum to the mode count.
    """

    bins: tuple[tuple[float, int], ...]
    tolerance: float
    n_modes: int

    def __post_init__(self):
        if sum(m for _, m in self.bins) != self.n_modes:
            raise ValueError("bin multiplicities must sum to n_modes")

    def to_dict(self) -> dict:
        return {
            "n_modes": self.n_modes,
            "tolerance": self.tolerance,
            "bins": [
                {"eigenvalue": v, "multiplicity": m} for v, m in self.bins
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DegeneracyHistogram":
        bins = tuple(
            (float(b["eigenvalue"]), int(b["multiplicity"])) for b in data["bins"]
        )
        return cls(bins, float(data["tolerance"]), int(data["n_modes"]))


def dispersion(spec: NetworkSpec) -> Spectrum:
    """All N eigenvalues of the coupling matrix by direct cosine sum."""
    n = spec.n_modes
    p = np.arange(n)
    lam = np.zeros(n)
    for r, c in enumerate(spec.profile.couplings, start=1):
        weight = 1.0 if 2 * r == n else 2.0
        lam += weight * c * np.cos(2.0 * np.pi * p * r / n)
    return Spectrum(tuple(lam), n)


def collapsed_spectrum(n_modes: int, strength: float) -> Spectrum:
    """Three-block spectrum of the uniform profile with range N/2 - 1.

    lambda_0 = C(N-2); lambda_p = 0 for odd p (N/2 values) and -2C for
    even p != 0 (N/2 - 1 values).  Defined for even N >= 4.
    """
    if n_modes % 2 or n_modes < 4:
        raise ValueError("collapsed spectrum requires even n_modes >= 4")
    if not strength > 0:
        raise ValueError("strength must be positive")
    p = np.arange(n_modes)
    lam = np.where(p % 2 == 1, 0.0, -2.0 * strength)
    lam[0] = strength * (n_modes - 2)
    return Spectrum(tuple(lam), n_modes)


def opposite_site_spectrum(n_modes: int, strength: float) -> Spectrum:
    """Spectrum of the all-to-all profile including r = N/2.

    One eigenvalue C(N-1) at p = 0, the remaining N-1 all equal to -C.
    """
    if n_modes % 2:
        raise ValueError("opposite-site coupling requires even n_modes")
    if not strength > 0:
        raise ValueError("strength must be positive")
    lam = np.full(n_modes, -float(strength))
    lam[0] = strength * (n_modes - 1)
    return Spectrum(tuple(lam), n_modes)


def default_bin_tolerance(spectrum: Spectrum) -> float:
    return 1e-9 * max(1.0, float(np.abs(spectrum.as_array()).max()))


def degeneracy_histogram(
    spectrum: Spectrum, tolerance: float | None = None
) -> DegeneracyHistogram:
    """Merge eigenvalues into degenerate bins by single-linkage clustering.

    Adjacent sorted eigenvalues closer than ``tolerance`` fall into the
    same bin, transitively; the bin representative is the mean of its
    members.  By default the tolerance scales with the largest
    eigenvalue magnitude.
    """
    if tolerance is None:
        tolerance = default_bin_tolerance(spectrum)
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    values = spectrum.sorted_values()
    splits = np.nonzero(np.diff(values) > tolerance)[0] + 1
    bins = tuple(
        (float(chunk.mean()), int(chunk.size))
        for chunk in np.split(values, splits)
    )
    return DegeneracyHistogram(bins, float(tolerance), spectrum.n_modes)


def fourier_matrix(n_modes: int) -> np.ndarray:
    """Unitary symmetric DFT matrix S with S[j, p] = exp(2i pi j p / N) / sqrt(N).

    Conjugating the coupling matrix with S diagonalizes it and the
    diagonal reproduces the dispersion ordering by Fourier index p.
    """
    if not isinstance(n_modes, (int, np.integer)) or n_modes < 1:
        raise ValueError("n_modes must be a positive integer")
    j = np.arange(n_modes)
    return np.exp(2j * np.pi * np.outer(j, j) / n_modes) / np.sqrt(n_modes)
