"""Discrete-variable transport: single photons and coherent-state cats.

For a single photon injected in mode m the occupation of mode j is
``|U_jm(z)|^2``.  A cat state, the normalized superposition of two
coherent branches with real amplitude ``alpha`` and relative phase
``phi``, transfers with fidelity

    F = | 2 N^2 exp(-alpha^2) [ exp(u* alpha^2)
                                 + cos(phi) exp(-u* alpha^2) ] |^2

where u is the transition amplitude between the chosen modes and
N = (2 + 2 exp(-2 alpha^2) cos(phi))^(-1/2).  The free propagation
constant only adds a global phase and is fixed to zero.  At a
perfect-transfer distance u = -1 and the even (phi = 0) and odd
(phi = pi) cats arrive with unit fidelity, while the phi = pi/2 cat
is capped at exp(-4 alpha^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .lattice import NetworkSpec
from .propagation import ScanResult, _refined_peak, _scan_grid, offset_amplitudes


class DegenerateCatError(ValueError):
    """Cat state parameters too close to the vanishing odd-cat limit."""


def _real_scalar(value, name: str) -> float:
    if np.iscomplexobj(value):
        raise ValueError(f"{name} must be real")
    return float(value)


def cat_normalization(alpha: float, phi: float) -> float:
    """Normalization (2 + 2 exp(-2 alpha^2) cos(phi))^(-1/2).

    Rejects the degenerate corner near alpha = 0, phi = pi where the
    superposition collapses to the zero vector.
    """
    a = _real_scalar(alpha, "alpha")
    p = _real_scalar(phi, "phi")
    denom = 2.0 + 2.0 * math.exp(-2.0 * a * a) * math.cos(p)
    if denom <= 1e-12 or (abs(a) < 1e-6 and abs(p - math.pi) < 1e-6):
        raise DegenerateCatError(
            "cat state is degenerate near alpha=0, phi=pi (zero-norm superposition)"
        )
    return denom ** -0.5


@dataclass(frozen=True)
class CatState:
    """Superposition of coherent branches +alpha and -alpha with phase phi."""

    alpha: float
    phi: float
    normalization: float = field(init=False)

    def __post_init__(self):
        norm = cat_normalization(self.alpha, self.phi)
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "phi", float(self.phi))
        object.__setattr__(self, "normalization", norm)


def photon_numbers(spec: NetworkSpec, input_mode: int, z: float) -> np.ndarray:
    """Occupation of every mode for a single photon injected in ``input_mode``."""
    n = spec.n_modes
    if not 0 <= input_mode < n:
        raise ValueError(f"input_mode {input_mode} out of range for N={n}")
    amps = offset_amplitudes(spec, [z])[0]
    return np.abs(amps[(np.arange(n) - input_mode) % n]) ** 2


def _fidelity_from_amplitude(u, alpha: float, phi: float, norm: float):
    a2 = alpha * alpha
    uc = np.conj(u)
    bracket = np.exp(uc * a2) + math.cos(phi) * np.exp(-uc * a2)
    return np.abs(2.0 * norm * norm * math.exp(-a2) * bracket) ** 2


def _clamped(f: float) -> float:
    assert f <= 1.0 + 1e-12, f"fidelity {f} exceeds 1 beyond rounding slack"
    return min(f, 1.0)


def cat_fidelity(
    spec: NetworkSpec,
    source: int,
    target: int,
    alpha: float,
    phi: float,
    z: float,
) -> float:
    """Transfer fidelity of a cat from ``source`` onto ``target`` at distance z."""
    n = spec.n_modes
    if not (0 <= source < n and 0 <= target < n):
        raise ValueError("mode indices out of range")
    a = _real_scalar(alpha, "alpha")
    p = _real_scalar(phi, "phi")
    norm = cat_normalization(a, p)
    u = offset_amplitudes(spec, [z])[0, (target - source) % n]
    return _clamped(float(_fidelity_from_amplitude(u, a, p, norm)))


def pst_cat_fidelity(alpha: float, phi: float) -> float:
    """Closed-form fidelity at a perfect-transfer distance (amplitude -1)."""
    a = _real_scalar(alpha, "alpha")
    p = _real_scalar(phi, "phi")
    norm = cat_normalization(a, p)
    return _clamped(float(_fidelity_from_amplitude(-1.0, a, p, norm)))


def cat_fidelity_scan(
    spec: NetworkSpec,
    source: int,
    target: int,
    alpha: float,
    phi: float,
    z_max: float,
    dz: float | None = None,
) -> ScanResult:
    """Scan cat-transfer fidelity over (0, z_max] with local refinement.

    Same grid and refinement policy as the transfer-probability scan.
    """
    n = spec.n_modes
    if not (0 <= source < n and 0 <= target < n):
        raise ValueError("mode indices out of range")
    if not z_max > 0:
        raise ValueError("z_max must be positive")
    a = _real_scalar(alpha, "alpha")
    p = _real_scalar(phi, "phi")
    norm = cat_normalization(a, p)
    if dz is None:
        dz = 0.01 / spec.profile.max_strength
    if not 0 < dz <= z_max:
        raise ValueError("dz must satisfy 0 < dz <= z_max")
    d = (target - source) % n
    zs = _scan_grid(z_max, dz)
    amps = offset_amplitudes(spec, zs)[:, d]
    values = _fidelity_from_amplitude(amps, a, p, norm)

    def point(z):
        u = offset_amplitudes(spec, [z])[0, d]
        return float(_fidelity_from_amplitude(u, a, p, norm))

    v_best, z_best = _refined_peak(zs, values, point, z_max, dz)
    return ScanResult(_clamped(v_best), z_best, zs, values)
