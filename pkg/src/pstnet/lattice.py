"""Geometry of circulant waveguide networks.

A network is a ring of ``n_modes`` identical single-mode waveguides in
which every mode couples to its r-th neighbours, r = 1..R, with strength
``C_r`` (units of inverse propagation length).  The resulting coupling
matrix is real, symmetric and circulant; everything else in the package
builds on it.

Modes are indexed 0..N-1 internally.  The command line front end
translates to and from 1-based labels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

PROFILE_KINDS = ("uniform", "evanescent", "custom")


@dataclass(frozen=True)
class CouplingProfile:
    """Coupling strengths for neighbour separations r = 1..R.

    ``couplings[r-1]`` is the strength between modes r apart on the
    ring.  The ``kind`` tag records how the profile was constructed and
    is validated on construction: a uniform profile repeats a single
    positive value, an evanescent profile follows ``mu**r`` for some
    0 < mu < 1, and a custom profile only needs finite entries.
    """

    couplings: tuple[float, ...]
    kind: str = "custom"

    def __post_init__(self):
        values = tuple(float(c) for c in self.couplings)
        object.__setattr__(self, "couplings", values)
        if not values:
            raise ValueError("profile needs at least one coupling")
        if not all(math.isfinite(c) for c in values):
            raise ValueError("couplings must be finite")
        if self.kind not in PROFILE_KINDS:
            raise ValueError(f"unknown profile kind {self.kind!r}")
        if self.kind == "uniform":
            if values[0] <= 0 or any(c != values[0] for c in values):
                raise ValueError("uniform profile must repeat a single C > 0")
        elif self.kind == "evanescent":
            mu = values[0]
            if not 0.0 < mu < 1.0:
                raise ValueError("evanescent profile needs 0 < mu < 1")
            expected = mu ** np.arange(1, len(values) + 1)
            if not np.allclose(values, expected, rtol=1e-12, atol=0.0):
                raise ValueError("evanescent profile must follow mu**r")

    @property
    def interaction_range(self) -> int:
        """Largest neighbour separation R covered by the profile."""
        return len(self.couplings)

    @property
    def max_strength(self) -> float:
        return max(abs(c) for c in self.couplings)


def uniform_profile(strength: float, interaction_range: int) -> CouplingProfile:
    """Constant coupling ``strength`` out to ``interaction_range`` neighbours."""
    if not isinstance(interaction_range, (int, np.integer)) or interaction_range < 1:
        raise ValueError("interaction_range must be a positive integer")
    if not strength > 0:
        raise ValueError("uniform coupling strength must be positive")
    return CouplingProfile((float(strength),) * int(interaction_range), "uniform")


def evanescent_profile(mu: float, interaction_range: int) -> CouplingProfile:
    """Exponentially decaying couplings ``C_r = mu**r`` with 0 < mu < 1."""
    if not isinstance(interaction_range, (int, np.integer)) or interaction_range < 1:
        raise ValueError("interaction_range must be a positive integer")
    if not 0.0 < mu < 1.0:
        raise ValueError("mu must lie strictly between 0 and 1")
    couplings = tuple(float(mu) ** r for r in range(1, int(interaction_range) + 1))
    return CouplingProfile(couplings, "evanescent")


def custom_profile(couplings) -> CouplingProfile:
    """Profile with explicitly listed couplings for r = 1..len(couplings)."""
    return CouplingProfile(tuple(float(c) for c in couplings), "custom")


def mu_from_separation(kappa: float, spacing: float) -> float:
    """Decay parameter ``exp(-kappa * spacing)`` for a physical waveguide gap.

    ``kappa`` depends on waveguide and material properties; ``spacing``
    is the distance between neighbouring guides.  Both must be strictly
    positive so the result lies in (0, 1).  Uniform spacing is assumed;
    no correction for the ring geometry is applied.
    """
    if not kappa > 0:
        raise ValueError("kappa must be positive")
    if not spacing > 0:
        raise ValueError("spacing must be positive")
    return math.exp(-kappa * spacing)


@dataclass(frozen=True)
class NetworkSpec:
    """A circulant network: mode count plus coupling profile.

    The profile range may not exceed N // 2; the separation r = N/2
    (even N) addresses each opposite-site pair once.
    """

    n_modes: int
    profile: CouplingProfile

    def __post_init__(self):
        if not isinstance(self.n_modes, (int, np.integer)) or self.n_modes < 2:
            raise ValueError("n_modes must be an integer >= 2")
        object.__setattr__(self, "n_modes", int(self.n_modes))
        if self.profile.interaction_range > self.n_modes // 2:
            raise ValueError(
                f"profile range {self.profile.interaction_range} exceeds "
                f"N//2 = {self.n_modes // 2}"
            )


def coupling_matrix(spec: NetworkSpec) -> np.ndarray:
    """Real symmetric circulant coupling matrix of the network.

    Entry (j, (j+r) mod N) equals C_r for every r covered by the
    profile; the diagonal is zero.  For even N the opposite-site
    separation r = N/2 links each pair once, so its entry is written
    (not accumulated) exactly like the others.
    """
    n = spec.n_modes
    matrix = np.zeros((n, n))
    j = np.arange(n)
    for r, c in enumerate(spec.profile.couplings, start=1):
        k = (j + r) % n
        matrix[j, k] = c
        matrix[k, j] = c
    return matrix
