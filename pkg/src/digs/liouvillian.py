"""Steady state of the open five-level system and the numeric susceptibility.

The density matrix obeys, element by element,

    d rho_jk / dt = -i [H, rho]_jk - gamma_jk rho_jk + r_b [j=k=b] + r_cp [j=k=c']

with every level leaking to states outside the manifold, so the trace is
fixed by pump/loss balance rather than normalised to one.  Matrices are
vectorised row-major: ``vec(rho)[5*j + k] = rho[j, k]``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import A, B, BP, C, CP, AtomParams, RelaxationModel

N_LEVELS = 5
DIM = N_LEVELS * N_LEVELS
RESIDUAL_TOL = 1e-10
_EYE = np.eye(N_LEVELS)


class SingularSystem(np.linalg.LinAlgError):
    """The steady-state equations have no unique solution."""


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    rho: np.ndarray

    def __getitem__(self, key):
        return self.rho[key]

    @property
    def populations(self) -> np.ndarray:
        return self.rho.diagonal().real.copy()

    @property
    def trace(self) -> float:
        return float(self.rho.trace().real)

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.rho - self.rho.conj().T)))


@dataclass(frozen=True, eq=False)
class LinearSystem:
    matrix: np.ndarray
    rhs: np.ndarray


def build_hamiltonian(params: AtomParams) -> np.ndarray:
    """Rotating-frame Hamiltonian H / hbar in units of gamma_ab."""
    d = params.delta
    H = np.diag([params.delta_p, 0.0, params.delta_b, d, d + params.delta_c]).astype(complex)
    for j, k, omega in (
        (A, B, params.omega_p),
        (A, C, params.omega_mu),
        (BP, B, params.omega_b),
        (CP, C, params.omega_c),
    ):
        H[j, k] = H[k, j] = -omega / 2
    return H


def commutator_superop(H: np.ndarray) -> np.ndarray:
    """Superoperator of ``rho -> -i [H, rho]`` acting on row-major vec(rho)."""
    return -1j * (np.kron(H, _EYE) - np.kron(_EYE, H.T))


def level_shift_superop(shifts) -> np.ndarray:
    """Diagonal of the superoperator generated by shifting level energies.

    Adding ``s * diag(shifts)`` to H adds ``s * diag(result)`` to the
    equation matrix.
    """
    e = np.asarray(shifts, dtype=float)
    return -1j * (e[:, None] - e[None, :]).ravel()


def pump_vector(relax: RelaxationModel) -> np.ndarray:
    p = np.zeros((N_LEVELS, N_LEVELS), dtype=complex)
    p[B, B] = relax.r_b
    p[CP, CP] = relax.r_cp
    return p.ravel()


def build_equations(params: AtomParams, relax: RelaxationModel) -> LinearSystem:
    """Vectorised steady-state equations ``matrix @ vec(rho) = rhs``."""
    matrix = commutator_superop(build_hamiltonian(params)) - np.diag(relax.gamma.ravel())
    return LinearSystem(matrix=matrix, rhs=-pump_vector(relax))


def _check_residual(matrix, x, rhs) -> None:
    residual = np.abs(np.einsum("...ij,...j->...i", matrix, x) - rhs).max(axis=-1)
    scale = np.maximum(np.abs(rhs).max(axis=-1), 1e-30)
    worst = float(np.max(residual / scale))
    if not worst < RESIDUAL_TOL:
        raise SingularSystem(f"steady-state solve residual {worst:.3e} exceeds {RESIDUAL_TOL:g}")


def solve_steady_state(system: LinearSystem) -> DensityMatrix:
    try:
        x = np.linalg.solve(system.matrix, system.rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from exc
    _check_residual(system.matrix, x, system.rhs)
    return DensityMatrix(x.reshape(N_LEVELS, N_LEVELS))


def steady_state(params: AtomParams, relax: RelaxationModel) -> DensityMatrix:
    return solve_steady_state(build_equations(params, relax))


def chi_from_rho(rho_ab, params: AtomParams, relax: RelaxationModel):
    """Reduced susceptibility 2 gamma_ab rho_ab / Omega_p."""
    return 2.0 * relax.gamma_ab * rho_ab / params.omega_p


def susceptibility_numeric(params: AtomParams, relax: RelaxationModel) -> complex:
    if not params.weak_probe:
        raise ValueError(f"omega_p={params.omega_p} is outside the weak-probe regime")
    rho = steady_state(params, relax)
    return complex(chi_from_rho(rho[A, B], params, relax))


def chi_numeric_grid(params: AtomParams, relax: RelaxationModel, grid) -> np.ndarray:
    """Numeric susceptibility on many probe detunings with one batched solve.

    ``params.delta_p`` is ignored; Delta_mu, Delta_b, Delta_c stay fixed so
    the two-photon detuning moves with the probe.
    """
    if not params.weak_probe:
        raise ValueError(f"omega_p={params.omega_p} is outside the weak-probe regime")
    grid = np.asarray(grid, dtype=float)
    base = build_equations(params.with_(delta_p=0.0), relax)
    # delta_p sits on a, c and c' (c and c' through delta = delta_p - delta_mu)
    probe_axis = level_shift_superop([1, 0, 0, 1, 1])
    matrices = base.matrix[None, :, :] + grid[:, None, None] * np.diag(probe_axis)[None, :, :]
    rhs = np.broadcast_to(base.rhs, (grid.size, DIM))
    try:
        x = np.linalg.solve(matrices, rhs[..., None])[..., 0]
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from exc
    _check_residual(matrices, x, rhs)
    return chi_from_rho(x[:, A * N_LEVELS + B], params, relax)


def excited_population(params: AtomParams, relax: RelaxationModel) -> float:
    return float(steady_state(params, relax)[A, A].real)


def excited_population_estimate(params: AtomParams, relax: RelaxationModel) -> float:
    """Order-of-magnitude estimate of rho_aa for a weak probe and weak Omega_c."""
    g = relax.gamma
    ratio = params.omega_c / params.omega_mu
    probe_part = params.omega_p**2 / (4 * g[A, A] * g[A, B]) * relax.r_b / (2 * g[B, B])
    control_part = (
        params.omega_mu / (4 * g[A, A]) * ratio * relax.r_cp
        / (2 * g[A, CP] * ratio**2 + g[CP, CP])
    )
    return float(probe_part + control_part)
