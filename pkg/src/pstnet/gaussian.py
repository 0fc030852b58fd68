"""Continuous-variable transport of Gaussian states.

Quadratures are Q_j = (a_j + a_j^dag) / sqrt(2) and
P_j = (a_j - a_j^dag) / (i sqrt(2)), giving vacuum variance 1/2 per
quadrature.  Covariance matrices are 2N x 2N real symmetric in the
interleaved ordering (Q_0, P_0, ..., Q_{N-1}, P_{N-1}); the symplectic
form Omega is block diagonal with [[0, 1], [-1, 0]] per mode.

A linear-optics propagator U maps quadratures through the real
symplectic-orthogonal matrix with 2 x 2 blocks
[[Re U_jl, -Im U_jl], [Im U_jl, Re U_jl]], and covariances evolve as
V -> M V M^T.  Two-mode squeezing between modes (m, n) is quantified by
the squeezing factors

    S_Q = Var((Q_m - Q_n)/sqrt(2)) - 1/2
    S_P = Var((P_m + P_n)/sqrt(2)) - 1/2

which vanish for vacuum and are negative exactly when the combined
quadrature (relative position, total momentum) is squeezed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .propagation import Propagator


def symplectic_form(n_modes: int) -> np.ndarray:
    """Standard symplectic form in the interleaved quadrature ordering."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def symplectic_eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of a covariance matrix (each value once)."""
    n = matrix.shape[0] // 2
    eigs = np.linalg.eigvals(1j * symplectic_form(n) @ matrix)
    return np.sort(np.abs(eigs))[::2]


@dataclass(frozen=True)
class TmsvParams:
    """Two-mode squeezing of strength w >= 0 and phase theta on a mode pair."""

    w: float
    theta: float
    mode_pair: tuple[int, int]

    def __post_init__(self):
        if not self.w >= 0:
            raise ValueError("squeezing strength w must be nonnegative")
        pair = (int(self.mode_pair[0]), int(self.mode_pair[1]))
        if pair[0] == pair[1]:
            raise ValueError("mode pair must be two distinct modes")
        object.__setattr__(self, "w", float(self.w))
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "mode_pair", pair)


@dataclass(frozen=True)
class CovarianceState:
    """Real symmetric 2N x 2N covariance matrix, vacuum variance 1/2.

    Construction enforces symmetry (1e-12) and physicality: the minimum
    symplectic eigenvalue must reach the vacuum floor 1/2 up to 1e-9.
    ``z`` accumulates the propagation distance of applied evolutions.
    """

    matrix: np.ndarray
    z: float = 0.0

    def __post_init__(self):
        v = np.array(self.matrix, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] % 2:
            raise ValueError("covariance matrix must be square with even dimension")
        if np.abs(v - v.T).max() > 1e-12:
            raise ValueError("covariance matrix must be symmetric")
        nu_min = symplectic_eigenvalues(v).min()
        if nu_min < 0.5 - 1e-9:
            raise ValueError(
                f"covariance matrix is unphysical (min symplectic eigenvalue {nu_min})"
            )
        v.setflags(write=False)
        object.__setattr__(self, "matrix", v)

    @property
    def n_modes(self) -> int:
        return self.matrix.shape[0] // 2


@dataclass(frozen=True)
class SymplecticEvolution:
    """Real 2N x 2N quadrature map; M Omega M^T = Omega to 1e-10."""

    matrix: np.ndarray
    z: float

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise ValueError("symplectic matrix must be square with even dimension")
        omega = symplectic_form(m.shape[0] // 2)
        if np.abs(m @ omega @ m.T - omega).max() > 1e-10:
            raise ValueError("matrix does not preserve the symplectic form")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


def vacuum_covariance(n_modes: int) -> CovarianceState:
    """All modes in vacuum: V = I / 2."""
    if not isinstance(n_modes, (int, np.integer)) or n_modes < 1:
        raise ValueError("n_modes must be a positive integer")
    return CovarianceState(0.5 * np.eye(2 * int(n_modes)))


def _squeeze_map(w: float, theta: float, m: int, n: int, n_modes: int) -> np.ndarray:
    """Quadrature action of the two-mode squeezer on modes (m, n)."""
    s = np.eye(2 * n_modes)
    ch = math.cosh(w) * np.eye(2)
    sh = math.sinh(w) * np.array(
        [[math.cos(theta), math.sin(theta)], [math.sin(theta), -math.cos(theta)]]
    )
    for a, b in ((m, n), (n, m)):
        s[2 * a : 2 * a + 2, 2 * a : 2 * a + 2] = ch
        s[2 * a : 2 * a + 2, 2 * b : 2 * b + 2] = sh
    return s


def tmsv_covariance(params: TmsvParams, n_modes: int) -> CovarianceState:
    """Two-mode squeezed vacuum on the given pair, vacuum elsewhere.

    The covariance is the squeezer's quadrature map applied to the
    vacuum, V = S (I/2) S^T.  For theta = 0 the pair blocks read
    cosh(2w)/2 on the diagonal with cross-correlations +-sinh(2w)/2;
    a nonzero theta rotates the cross block.
    """
    m, n = params.mode_pair
    if not (0 <= m < n_modes and 0 <= n < n_modes):
        raise ValueError(f"mode pair {params.mode_pair} out of range for N={n_modes}")
    s = _squeeze_map(params.w, params.theta, m, n, int(n_modes))
    return CovarianceState(0.5 * s @ s.T)


def symplectic_from_propagator(u: Propagator) -> SymplecticEvolution:
    """Quadrature-space image of a mode-space propagator.

    With a_j(z) = sum_l U_jl a_l(0) the quadratures map through
    Q' = Re(U) Q - Im(U) P and P' = Im(U) Q + Re(U) P, interleaved per
    mode.  The input must be unitary to 1e-8.
    """
    mat = np.asarray(u.matrix)
    defect = np.abs(mat @ mat.conj().T - np.eye(mat.shape[0])).max()
    if defect > 1e-8:
        raise ValueError(f"propagator is not unitary (defect {defect:.2e})")
    n = mat.shape[0]
    m = np.zeros((2 * n, 2 * n))
    m[0::2, 0::2] = mat.real
    m[0::2, 1::2] = -mat.imag
    m[1::2, 0::2] = mat.imag
    m[1::2, 1::2] = mat.real
    return SymplecticEvolution(m, u.z)


def evolve_covariance(
    state: CovarianceState, evolution: SymplecticEvolution
) -> CovarianceState:
    """Propagate a covariance matrix: V -> M V M^T."""
    if evolution.matrix.shape[0] != state.matrix.shape[0]:
        raise ValueError("dimension mismatch between state and evolution")
    v = evolution.matrix @ state.matrix @ evolution.matrix.T
    return CovarianceState(0.5 * (v + v.T), state.z + evolution.z)


def squeezing_factor(
    state: CovarianceState, j: int, k: int, quadrature: str = "Q"
) -> float:
    """EPR-combination variance minus the vacuum level 1/2.

    quadrature "Q" uses the relative position (Q_j - Q_k)/sqrt(2),
    "P" the total momentum (P_j + P_k)/sqrt(2).  Negative values mean
    squeezing below vacuum; zero is the vacuum level.
    """
    n = state.n_modes
    if j == k:
        raise ValueError("squeezing factor needs two distinct modes")
    if not (0 <= j < n and 0 <= k < n):
        raise ValueError("mode indices out of range")
    v = state.matrix
    q = quadrature.upper()
    if q == "Q":
        a, b, sign = 2 * j, 2 * k, -1.0
    elif q == "P":
        a, b, sign = 2 * j + 1, 2 * k + 1, 1.0
    else:
        raise ValueError("quadrature must be 'Q' or 'P'")
    variance = 0.5 * (v[a, a] + v[b, b] + 2.0 * sign * v[a, b])
    return float(variance - 0.5)
