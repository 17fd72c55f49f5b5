"""Gaussian inhomogeneous averaging of the susceptibility.

Two broadening channels are supported:

* ``sigma_delta`` spreads the two-photon detuning.  Each velocity class
  shifts the ``|c>`` and ``|c'>`` energies by ``s`` at fixed probe detuning.
* ``sigma_probe`` spreads the probe detuning alone.  Each class shifts the
  ``|a>`` energy by ``s`` (probe and control co-shift, delta fixed).

The default ``method="exact"`` writes chi as a rational function of the
shift, ``chi(s) = chi_0 + sum_k R_k / (s + lambda_k)``, and averages each
pole term in closed form with the Faddeeva function.  ``method="hermite"``
is plain Gauss-Hermite quadrature; it only converges when sigma is small
compared with the narrowest spectral feature.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import roots_hermitenorm, wofz

from .liouvillian import (
    DIM,
    N_LEVELS,
    SingularSystem,
    build_equations,
    chi_from_rho,
    level_shift_superop,
)
from .model import A, B, AtomParams, RelaxationModel

METHODS = ("exact", "hermite")
DELTA_SHIFT = (0, 0, 0, 1, 1)
PROBE_SHIFT = (1, 0, 0, 0, 0)
_TARGET = A * N_LEVELS + B


@dataclass(frozen=True)
class DopplerSpec:
    sigma_delta: float = 0.0
    sigma_probe: float = 0.0
    quadrature_order: int = 41
    method: str = "exact"

    def __post_init__(self) -> None:
        if self.sigma_delta < 0 or self.sigma_probe < 0:
            raise ValueError("Doppler widths must be nonnegative")
        if self.quadrature_order < 3 or self.quadrature_order % 2 == 0:
            raise ValueError(f"quadrature_order must be odd and >= 3, got {self.quadrature_order}")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")

    @property
    def active(self) -> bool:
        return self.sigma_delta > 0 or self.sigma_probe > 0


def hermite_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes (in units of sigma) and normalised weights for a unit normal density."""
    nodes, weights = roots_hermitenorm(order)
    return nodes, weights / weights.sum()


def gaussian_mean_inverse(z, sigma: float):
    """E[1 / (s - z)] for s ~ N(0, sigma^2) and z off the real axis."""
    z = np.asarray(z, dtype=complex)
    upper = np.where(z.imag >= 0, z, z.conj())
    scale = sigma * np.sqrt(2.0)
    mean = 1j * np.sqrt(np.pi) / scale * wofz(upper / scale)
    return np.where(z.imag >= 0, mean, mean.conj())


def _base_matrices(params: AtomParams, relax: RelaxationModel, grid: np.ndarray):
    base = build_equations(params.with_(delta_p=0.0), relax)
    probe_axis = np.diag(level_shift_superop([1, 0, 0, 1, 1]))
    matrices = base.matrix[None] + grid[:, None, None] * probe_axis[None]
    return matrices, base.rhs


def _solve(matrices, rhs):
    try:
        return np.linalg.solve(matrices, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from exc


def _exact_average(matrices, rhs, shift, sigma):
    """Gaussian average of vec(rho)[target] over a level shift, one row per grid point."""
    diag = level_shift_superop(shift)
    S = np.flatnonzero(diag)
    Z = np.flatnonzero(diag == 0)
    n = matrices.shape[0]
    M_zz = matrices[:, Z][:, :, Z]
    M_zs = matrices[:, Z][:, :, S]
    M_sz = matrices[:, S][:, :, Z]
    M_ss = matrices[:, S][:, :, S]
    b_z = np.broadcast_to(rhs[Z], (n, Z.size))[..., None]
    sol = _solve(M_zz, np.concatenate([b_z, M_zs], axis=2))
    y0, Y = sol[..., 0], sol[..., 1:]
    d_s = diag[S]
    # shifted system on S reduces to (K + s) x_S = beta
    K = (M_ss - M_sz @ Y) / d_s[None, :, None]
    beta = (rhs[S][None] - np.einsum("nij,nj->ni", M_sz, y0)) / d_s[None]
    lam, V = np.linalg.eig(K)
    coeff = _solve(V, beta[..., None])[..., 0]
    weights = gaussian_mean_inverse(-lam, sigma)
    x_s = np.einsum("nij,nj->ni", V, coeff * weights)
    where = np.flatnonzero(S == _TARGET)
    if where.size:
        return x_s[:, where[0]]
    x_z = y0 - np.einsum("nij,nj->ni", Y, x_s)
    return x_z[:, int(np.flatnonzero(Z == _TARGET)[0])]


def _hermite_average(matrices, rhs, shift, sigma, order):
    nodes, weights = hermite_rule(order)
    diag = level_shift_superop(shift)
    total = np.zeros(matrices.shape[0], dtype=complex)
    for node, weight in zip(nodes, weights):
        shifted = matrices + (sigma * node) * np.diag(diag)[None]
        x = _solve(shifted, np.broadcast_to(rhs, (matrices.shape[0], DIM))[..., None])[..., 0]
        total += weight * x[:, _TARGET]
    return total


def _average_rho_ab(matrices, rhs, spec: DopplerSpec, shift, sigma):
    if spec.method == "exact":
        return _exact_average(matrices, rhs, shift, sigma)
    return _hermite_average(matrices, rhs, shift, sigma, spec.quadrature_order)


def average_chi_grid(params: AtomParams, relax: RelaxationModel, spec: DopplerSpec, grid) -> np.ndarray:
    """Doppler-averaged reduced susceptibility on a probe-detuning grid."""
    if not params.weak_probe:
        raise ValueError(f"omega_p={params.omega_p} is outside the weak-probe regime")
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    matrices, rhs = _base_matrices(params, relax, grid)

    if spec.sigma_delta > 0 and spec.sigma_probe > 0:
        # outer Gauss-Hermite over the probe shift, inner average over delta
        nodes, weights = hermite_rule(spec.quadrature_order)
        probe_diag = np.diag(level_shift_superop(PROBE_SHIFT))
        rho_ab = np.zeros(grid.size, dtype=complex)
        for node, weight in zip(nodes, weights):
            shifted = matrices + (spec.sigma_probe * node) * probe_diag[None]
            rho_ab += weight * _average_rho_ab(shifted, rhs, spec, DELTA_SHIFT, spec.sigma_delta)
    elif spec.sigma_delta > 0:
        rho_ab = _average_rho_ab(matrices, rhs, spec, DELTA_SHIFT, spec.sigma_delta)
    elif spec.sigma_probe > 0:
        rho_ab = _average_rho_ab(matrices, rhs, spec, PROBE_SHIFT, spec.sigma_probe)
    else:
        x = _solve(matrices, np.broadcast_to(rhs, (grid.size, DIM))[..., None])[..., 0]
        rho_ab = x[:, _TARGET]
    return chi_from_rho(rho_ab, params, relax)


def average_chi(params: AtomParams, relax: RelaxationModel, spec: DopplerSpec) -> complex:
    return complex(average_chi_grid(params, relax, spec, [params.delta_p])[0])
