"""Synthesis of the perfect-transfer coupling profile from auxiliary modes.

Pairs of far-detuned auxiliary modes, each coupled to every network
mode with strength g_k and a winding phase exp(i 2 pi k j / N), mediate
effective intra-network couplings.  After adiabatic elimination the
profile is a cosine series in the weights A_k = 2 |g_k|^2 / Delta_k:

    J_r = sum_{k=1..M} A_k cos(2 pi k r / N)

Requiring J_r = C for r = 1..N/2-1 and J_{N/2} = 0 gives N/2 linear
constraints, solvable exactly once M >= N/2 auxiliary pairs are
available.  The solver returns exact, minimum-norm, or least-squares
weights depending on M, and the weights can be split back into
physical (g_k, Delta_k) pairs at a chosen detuning scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .lattice import NetworkSpec, custom_profile
from .propagation import PstReport, check_pst


@dataclass(frozen=True)
class SynthesisProblem:
    """Target uniform profile of strength C for an N-mode network using
    M auxiliary mode pairs."""

    n_modes: int
    n_aux_pairs: int
    strength: float
    tolerance: float = 1e-8

    def __post_init__(self):
        if self.n_modes % 2 or self.n_modes < 4:
            raise ValueError("synthesis requires even n_modes >= 4")
        if self.n_aux_pairs < 1:
            raise ValueError("need at least one auxiliary mode pair")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


@dataclass(frozen=True)
class AuxiliaryMode:
    """Physical realization of one weight: coupling g, detuning, and
    dispersive ratio |Delta| / g (inf for decoupled modes)."""

    g: float
    detuning: float
    ratio: float


@dataclass(frozen=True)
class SynthesisSolution:
    """Weights A_k with the coupling profile they synthesize.

    ``residual`` is the largest constraint violation; solutions whose
    residual exceeds ``tolerance`` must not be used for transfer.
    ``physical`` is filled in by :func:`physical_parameters`.
    """

    weights: tuple[float, ...]
    couplings: tuple[float, ...]
    residual: float
    tolerance: float
    physical: tuple[AuxiliaryMode, ...] | None = None
    min_dispersive_ratio: float | None = None
    dispersive_ok: bool | None = None

    def to_dict(self) -> dict:
        return {
            "weights": list(self.weights),
            "couplings": list(self.couplings),
            "residual": self.residual,
            "tolerance": self.tolerance,
            "physical": None
            if self.physical is None
            else [
                {"g": mode.g, "detuning": mode.detuning, "ratio": mode.ratio}
                for mode in self.physical
            ],
            "min_dispersive_ratio": self.min_dispersive_ratio,
            "dispersive_ok": self.dispersive_ok,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SynthesisSolution":
        physical = data.get("physical")
        return cls(
            weights=tuple(float(a) for a in data["weights"]),
            couplings=tuple(float(j) for j in data["couplings"]),
            residual=float(data["residual"]),
            tolerance=float(data["tolerance"]),
            physical=None
            if physical is None
            else tuple(
                AuxiliaryMode(float(m["g"]), float(m["detuning"]), float(m["ratio"]))
                for m in physical
            ),
            min_dispersive_ratio=None
            if data["min_dispersive_ratio"] is None
            else float(data["min_dispersive_ratio"]),
            dispersive_ok=None
            if data["dispersive_ok"] is None
            else bool(data["dispersive_ok"]),
        )


def constraint_matrix(n_modes: int, n_aux_pairs: int) -> np.ndarray:
    """Rows are the cosine constraints for r = 1..N/2.

    The last row, r = N/2, uses the exact alternating signs (-1)^k.
    """
    half = n_modes // 2
    k = np.arange(1, n_aux_pairs + 1)
    r = np.arange(1, half)
    rows = np.cos(2.0 * np.pi * np.outer(r, k) / n_modes)
    last = np.where(k % 2 == 0, 1.0, -1.0)
    return np.vstack([rows, last])


def effective_couplings(weights, n_modes: int) -> np.ndarray:
    """Profile J_r, r = 1..N/2, synthesized by the given weights."""
    a = np.asarray(weights, dtype=float)
    return constraint_matrix(n_modes, a.size) @ a


def solve_weights(problem: SynthesisProblem) -> SynthesisSolution:
    """Solve the cosine constraints for the auxiliary weights.

    Exactly determined for M = N/2; minimum-norm for M > N/2;
    least-squares with a reported residual for M < N/2.  An
    infeasible target shows up as a residual above the problem
    tolerance, never as an exception.
    """
    n = problem.n_modes
    half = n // 2
    b = constraint_matrix(n, problem.n_aux_pairs)
    target = np.full(half, float(problem.strength))
    target[-1] = 0.0
    weights, *_ = np.linalg.lstsq(b, target, rcond=None)
    couplings = b @ weights
    residual = float(np.abs(couplings - target).max())
    return SynthesisSolution(
        weights=tuple(float(a) for a in weights),
        couplings=tuple(float(j) for j in couplings),
        residual=residual,
        tolerance=problem.tolerance,
    )


def physical_parameters(
    solution: SynthesisSolution,
    delta_scale: float,
    dispersive_min: float = 10.0,
) -> SynthesisSolution:
    """Split each weight into (g_k, Delta_k) at a common detuning scale.

    Detunings take the magnitude ``delta_scale`` with the sign of A_k
    and g_k = sqrt(|A_k| delta_scale / 2), so 2 g^2 / Delta rebuilds
    the weight.  Modes with zero weight decouple (g = 0).  Ratios
    |Delta| / g below ``dispersive_min`` are flagged, not rejected,
    since the adiabatic elimination is only trustworthy when the
    detuning dominates.
    """
    if not delta_scale > 0:
        raise ValueError("delta_scale must be positive")
    modes = []
    for a in solution.weights:
        if a == 0.0:
            modes.append(AuxiliaryMode(0.0, delta_scale, math.inf))
            continue
        detuning = math.copysign(delta_scale, a)
        g = math.sqrt(abs(a) * delta_scale / 2.0)
        modes.append(AuxiliaryMode(g, detuning, abs(detuning) / g))
    min_ratio = min(mode.ratio for mode in modes)
    return replace(
        solution,
        physical=tuple(modes),
        min_dispersive_ratio=min_ratio,
        dispersive_ok=bool(min_ratio >= dispersive_min),
    )


def verify_synthesis(solution: SynthesisSolution, n_modes: int) -> PstReport:
    """Run the transfer check on the synthesized profile.

    Builds a custom profile from the couplings J_r and delegates to the
    antipodal transfer check.  Refuses when the stored residual exceeds
    the solution tolerance: such couplings do not realize the target.
    """
    if 2 * len(solution.couplings) != n_modes:
        raise ValueError("coupling count does not match n_modes / 2")
    if solution.residual > solution.tolerance:
        raise ValueError(
            f"synthesis residual {solution.residual:.3e} exceeds tolerance "
            f"{solution.tolerance:.3e}; add auxiliary pairs (M >= N/2) or relax the target"
        )
    spec = NetworkSpec(n_modes, custom_profile(solution.couplings))
    return check_pst(spec, source=0)
