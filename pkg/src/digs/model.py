"""Domain types for the five-level DIGS atom.

All rates and frequencies are dimensionless multiples of the bare a<->b
optical linewidth gamma_ab.  Only :class:`MediumParams` carries physical
units (cm and cm^-3).

Basis order everywhere is ``[a, b, b', c, c']``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

LEVELS = ("a", "b", "bp", "c", "cp")
A, B, BP, C, CP = range(5)
INDEX = {name: i for i, name in enumerate(LEVELS)}

WEAK_PROBE_LIMIT = 1e-3
PROBE_WARN_LIMIT = 1e-2
DEFAULT_PROBE = 1e-4


@dataclass(frozen=True)
class AtomParams:
    """Rabi frequencies and detunings of the four fields."""

    omega_mu: float
    omega_b: float
    omega_c: float
    omega_p: float = DEFAULT_PROBE
    delta_p: float = 0.0
    delta_mu: float = 0.0
    delta_b: float = 0.0
    delta_c: float = 0.0

    @property
    def delta(self) -> float:
        """Two-photon detuning, always derived from the probe and control detunings."""
        return self.delta_p - self.delta_mu

    @property
    def weak_probe(self) -> bool:
        return self.omega_p <= WEAK_PROBE_LIMIT

    def with_(self, **changes: float) -> "AtomParams":
        return replace(self, **changes)


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class RelaxationModel:
    """Element-wise decay matrix and incoherent pump rates.

    ``gamma[j, k]`` damps ``rho[j, k]``; the diagonal holds population
    decay rates.  Pumping feeds ``|b>`` at ``r_b`` and ``|c'>`` at ``r_cp``.
    """

    gamma: np.ndarray
    r_b: float = 0.0
    r_cp: float = 0.0

    def __post_init__(self) -> None:
        gamma = np.asarray(self.gamma, dtype=float)
        if gamma.shape != (5, 5):
            raise ValueError(f"gamma must be 5x5, got shape {gamma.shape}")
        object.__setattr__(self, "gamma", _frozen(gamma))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RelaxationModel):
            return NotImplemented
        return (
            np.array_equal(self.gamma, other.gamma)
            and self.r_b == other.r_b
            and self.r_cp == other.r_cp
        )

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def from_rates(
        cls,
        *,
        gamma_aa: float = 2.0,
        gamma_optical: float = 1.0,
        gamma_ground: float = 1e-4,
        gamma_C: float | None = None,
        gamma_Cp: float | None = None,
        r_b: float = 0.0,
        r_cp: float = 0.0,
    ) -> "RelaxationModel":
        """Build the decay matrix used throughout the figures.

        Optical coherences ``rho_aj`` decay at ``gamma_optical``, the excited
        population at ``gamma_aa``, and every ground-state element at
        ``gamma_ground`` unless the inter-subspace rates ``gamma_C``
        (c<->b, c<->b') or ``gamma_Cp`` (c'<->b, c'<->b') are given.
        """
        g = np.full((5, 5), gamma_ground, dtype=float)
        g[A, :] = gamma_optical
        g[:, A] = gamma_optical
        g[A, A] = gamma_aa
        if gamma_C is not None:
            for j in (B, BP):
                g[C, j] = g[j, C] = gamma_C
        if gamma_Cp is not None:
            for j in (B, BP):
                g[CP, j] = g[j, CP] = gamma_Cp
        return cls(g, r_b=r_b, r_cp=r_cp)

    def rate(self, j: str, k: str) -> float:
        return float(self.gamma[INDEX[j], INDEX[k]])

    @property
    def gamma_ab(self) -> float:
        return float(self.gamma[A, B])

    @property
    def gamma_C(self) -> float:
        g = self.gamma
        if g[C, B] != g[C, BP]:
            raise ValueError(f"gamma_cb={g[C, B]} != gamma_cb'={g[C, BP]}; gamma_C is undefined")
        return float(g[C, B])

    @property
    def gamma_Cp(self) -> float:
        g = self.gamma
        if g[CP, B] != g[CP, BP]:
            raise ValueError(f"gamma_c'b={g[CP, B]} != gamma_c'b'={g[CP, BP]}; gamma_C' is undefined")
        return float(g[CP, B])

    def with_decoherence(self, gamma_C: float, gamma_Cp: float) -> "RelaxationModel":
        g = np.array(self.gamma)
        for j in (B, BP):
            g[C, j] = g[j, C] = gamma_C
            g[CP, j] = g[j, CP] = gamma_Cp
        return RelaxationModel(g, r_b=self.r_b, r_cp=self.r_cp)

    def with_(self, **changes: Any) -> "RelaxationModel":
        return replace(self, **changes)

    def scaled(self, factor: float) -> "RelaxationModel":
        return RelaxationModel(self.gamma * factor, r_b=self.r_b * factor, r_cp=self.r_cp * factor)


@dataclass(frozen=True)
class MediumParams:
    """Atomic number density (cm^-3) and probe vacuum wavelength (cm)."""

    density_N: float
    lambda_p: float

    def __post_init__(self) -> None:
        if not self.density_N > 0:
            raise ValueError(f"density_N must be positive, got {self.density_N}")
        if not self.lambda_p > 0:
            raise ValueError(f"lambda_p must be positive, got {self.lambda_p}")

    @property
    def chi_scale(self) -> float:
        """Factor 3 N lambda^3 / (4 pi^2) converting reduced to full susceptibility."""
        return 3.0 * self.density_N * self.lambda_p**3 / (4.0 * np.pi**2)


BACKENDS = ("analytic", "numeric")


@dataclass(frozen=True, eq=False)
class Spectrum:
    grid: np.ndarray
    chi: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        grid = np.asarray(self.grid, dtype=float)
        chi = np.asarray(self.chi, dtype=complex)
        if grid.ndim != 1 or grid.shape != chi.shape:
            raise ValueError("grid and chi must be 1-d arrays of equal length")
        if grid.size > 1 and not np.all(np.diff(grid) > 0):
            raise ValueError("grid must be strictly increasing")
        if not np.all(np.isfinite(chi)):
            raise ValueError("chi contains non-finite values")
        if self.metadata.get("backend") not in BACKENDS:
            raise ValueError(f"metadata backend must be one of {BACKENDS}")
        object.__setattr__(self, "grid", _frozen(grid))
        chi = np.array(chi, copy=True)
        chi.setflags(write=False)
        object.__setattr__(self, "chi", chi)

    @property
    def backend(self) -> str:
        return self.metadata["backend"]

    def __len__(self) -> int:
        return self.grid.size


@dataclass
class ValidationReport:
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def __bool__(self) -> bool:
        return self.ok

    def raise_for_errors(self) -> None:
        if self.errors:
            raise ValueError("invalid parameters: " + "; ".join(self.errors))


def validate(params: AtomParams, relax: RelaxationModel) -> ValidationReport:
    report = ValidationReport()
    err, warn = report.errors.append, report.warnings.append

    if not params.omega_mu > 0:
        err(f"omega_mu must be > 0 (got {params.omega_mu})")
    if params.omega_b < 0:
        err(f"omega_b must be >= 0 (got {params.omega_b})")
    if params.omega_c < 0:
        err(f"omega_c must be >= 0 (got {params.omega_c})")
    if not params.omega_p > 0:
        err(f"omega_p must be > 0 (got {params.omega_p})")
    values = [getattr(params, f) for f in params.__dataclass_fields__]
    if not all(np.isfinite(values)):
        err("atom parameters must be finite")

    g = relax.gamma
    if not np.all(np.isfinite(g)):
        err("gamma contains non-finite entries")
    if not np.array_equal(g, g.T):
        err("gamma must be symmetric")
    if np.any(g < 0):
        err("gamma entries must be nonnegative")
    for j, name in enumerate(LEVELS):
        if not g[j, j] > 0:
            err(f"gamma_{name}{name} must be > 0 for a unique steady state (got {g[j, j]})")
    if g[A, B] != 1.0:
        err(f"gamma_ab must be 1 in reduced units (got {g[A, B]})")
    if relax.r_b < 0 or relax.r_cp < 0:
        err("pump rates must be nonnegative")

    lower = g[1:, 1:]
    if np.any(g[A, 1:] < lower.max()):
        warn("some optical decay gamma_aj is smaller than a ground-state rate; "
             "excited-state decay is assumed to dominate")
    if params.omega_mu > 0 and params.omega_c >= params.omega_mu:
        warn(f"omega_c={params.omega_c} >= omega_mu={params.omega_mu}: "
             "outside the omega_c << omega_mu regime")
    if params.omega_p >= PROBE_WARN_LIMIT:
        warn(f"omega_p={params.omega_p} is not a weak probe")
    if params.omega_mu > g[A, A]:
        warn(f"omega_mu={params.omega_mu} exceeds gamma_aa={g[A, A]}")
    return report
