"""Spectral sweeps, absorption zeros and conversion to optical constants."""
from __future__ import annotations

import warnings
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from . import analytic, liouvillian
from .doppler import DopplerSpec, average_chi_grid
from .model import AtomParams, MediumParams, RelaxationModel, Spectrum

ROOT_RESIDUAL = 1e-8
ABSORPTION_WARN = 1e-3
DEFAULT_SAMPLES = 4001


class NoSignChange(UserWarning):
    """A search bracket holds no sign change of Im chi."""


class GridResolutionWarning(UserWarning):
    pass


@dataclass(frozen=True)
class AbsorptionZero:
    delta_p_zero: float
    re_chi_at_zero: float
    bracket: tuple[float, float]
    backend: str


@dataclass(frozen=True)
class OpticalPoint:
    n: float
    delta_n: float
    re_chi: float
    im_chi: float
    alpha_reduced: float
    alpha: float

    def as_dict(self) -> dict:
        return asdict(self)


def evaluator(
    params: AtomParams,
    relax: RelaxationModel,
    backend: str = "analytic",
    doppler: DopplerSpec | None = None,
) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorised chi(Delta_p) for one parameter set and backend."""
    if doppler is not None and doppler.active:
        if backend != "numeric":
            raise ValueError("Doppler averaging needs the numeric backend")
        return lambda grid: average_chi_grid(params, relax, doppler, grid)
    if backend == "analytic":
        # raises DomainError now rather than mid-sweep
        analytic.chi_analytic(params, relax, 0.0)
        return lambda grid: np.asarray(analytic.chi_analytic(params, relax, np.asarray(grid, float)), complex)
    if backend == "numeric":
        return lambda grid: liouvillian.chi_numeric_grid(params, relax, grid)
    raise ValueError(f"unknown backend {backend!r}")


def sweep(
    params: AtomParams,
    relax: RelaxationModel,
    grid: Sequence[float],
    backend: str = "analytic",
    doppler: DopplerSpec | None = None,
) -> Spectrum:
    grid = np.asarray(grid, dtype=float)
    if grid.size > 1 and not np.all(np.diff(grid) > 0):
        raise ValueError("grid must be strictly increasing")
    chi = evaluator(params, relax, backend, doppler)(grid)
    metadata = {"backend": backend, "atom": params, "relaxation": relax, "doppler": doppler}
    return Spectrum(grid=grid, chi=chi, metadata=metadata)


def default_brackets(params: AtomParams) -> list[tuple[float, float]]:
    """Regions between the narrow lines at +-Omega_b/2 and the Autler-Townes lines at +-Omega_mu/2."""
    lo, hi = params.omega_b / 2, params.omega_mu / 2
    return [(-hi, -lo), (lo, hi)]


def _check_resolution(y: np.ndarray) -> None:
    jumps = np.abs(np.diff(y))
    if jumps.size < 4:
        return
    floor = 1e-300
    # one jump, or one sampled spike (two jumps), towering over the jumps around it
    steps = jumps[1:-1] > 10 * np.maximum(np.maximum(jumps[:-2], jumps[2:]), floor)
    pair = np.minimum(jumps[1:-2], jumps[2:-1])
    spikes = pair > 10 * np.maximum(np.maximum(jumps[:-3], jumps[3:]), floor)
    count = int(steps.sum() + spikes.sum())
    if count:
        warnings.warn(
            f"{count} isolated jumps in Im chi exceed 10x their neighbours; "
            "refine the grid to resolve narrow lines",
            GridResolutionWarning,
            stacklevel=3,
        )


def find_zeros(
    source: Spectrum | Callable[[np.ndarray], np.ndarray],
    brackets: Sequence[tuple[float, float]],
    *,
    backend: str | None = None,
    samples: int = DEFAULT_SAMPLES,
    xtol: float = 1e-13,
) -> list[AbsorptionZero]:
    """Locate the zeros of Im chi inside each bracket.

    With a live evaluator each bracket is sampled on ``samples`` points and
    every sign change is refined with Brent's method.  With a stored
    :class:`Spectrum` only linear interpolation between grid points is
    possible, so the residual guarantee applies to live evaluators only.
    """
    zeros: list[AbsorptionZero] = []
    if isinstance(source, Spectrum):
        tag = backend or source.backend
        for lo, hi in brackets:
            inside = (source.grid >= lo) & (source.grid <= hi)
            x, y = source.grid[inside], source.chi[inside]
            found = _spectrum_roots(x, y, (lo, hi), tag)
            if not found:
                warnings.warn(f"no sign change of Im chi in [{lo}, {hi}]", NoSignChange, stacklevel=2)
            zeros.extend(found)
        return sorted(zeros, key=lambda z: z.delta_p_zero)

    tag = backend or "numeric"

    def im(x: float) -> float:
        return float(np.imag(source(np.array([x]))[0]))

    for lo, hi in brackets:
        x = np.linspace(lo, hi, samples)
        y = np.asarray(source(x))
        _check_resolution(y.imag)
        s = np.sign(y.imag)
        found = False
        for i in np.flatnonzero(s[:-1] * s[1:] <= 0):
            if s[i] == 0 and i > 0:
                continue  # exact zero already counted from the left
            if s[i] == 0:
                root = float(x[i])
            elif s[i + 1] == 0:
                root = float(x[i + 1])
            else:
                root = brentq(im, x[i], x[i + 1], xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=200)
            chi = complex(source(np.array([root]))[0])
            if abs(chi.imag) >= ROOT_RESIDUAL:
                warnings.warn(f"root at {root} has residual |Im chi|={abs(chi.imag):.2e}", RuntimeWarning)
                continue
            zeros.append(AbsorptionZero(root, chi.real, (lo, hi), tag))
            found = True
        if not found:
            warnings.warn(f"no sign change of Im chi in [{lo}, {hi}]", NoSignChange, stacklevel=2)
    return sorted(zeros, key=lambda z: z.delta_p_zero)


def _spectrum_roots(x, y, bracket, tag):
    out = []
    s = np.sign(y.imag)
    for i in np.flatnonzero(s[:-1] * s[1:] < 0):
        t = y[i].imag / (y[i].imag - y[i + 1].imag)
        root = x[i] + t * (x[i + 1] - x[i])
        re = y[i].real + t * (y[i + 1].real - y[i].real)
        out.append(AbsorptionZero(float(root), float(re), bracket, tag))
    return out


@dataclass(frozen=True)
class TrendRow:
    value: float
    delta_p_zero: float | None
    re_chi: float | None


SCAN_VARIABLES = ("gamma1", "omega_b")


def zero_trend(
    params: AtomParams,
    relax: RelaxationModel,
    scan_variable: str,
    values: Sequence[float],
    *,
    backend: str = "analytic",
    side: str = "negative",
    samples: int = DEFAULT_SAMPLES,
) -> list[TrendRow]:
    """Track one absorption zero while scanning gamma_C = gamma_C' or Omega_b.

    ``side`` picks the bracket: ``negative`` is (-Omega_mu/2, -Omega_b/2).
    When a bracket holds several zeros the one nearest the narrow line wins.
    """
    if scan_variable not in SCAN_VARIABLES:
        raise ValueError(f"scan variable must be one of {SCAN_VARIABLES}")
    rows = []
    for value in values:
        p, r = params, relax
        if scan_variable == "gamma1":
            r = relax.with_decoherence(value, value)
        else:
            p = params.with_(omega_b=value)
        brackets = default_brackets(p)
        bracket = brackets[0] if side == "negative" else brackets[1]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NoSignChange)
            zeros = find_zeros(evaluator(p, r, backend), [bracket], backend=backend, samples=samples)
        if zeros:
            inner = bracket[1] if side == "negative" else bracket[0]
            z = min(zeros, key=lambda z: abs(z.delta_p_zero - inner))
            rows.append(TrendRow(float(value), z.delta_p_zero, z.re_chi_at_zero))
        else:
            rows.append(TrendRow(float(value), None, None))
    return rows


def to_optical(chi_reduced: complex, medium: MediumParams) -> OpticalPoint:
    """Refractive index and absorption from the reduced susceptibility.

    n is only meaningful where absorption is negligible; a warning is
    issued when |Im chi_reduced| exceeds 1e-3.
    """
    chi_reduced = complex(chi_reduced)
    scale = medium.chi_scale
    re_chi = scale * chi_reduced.real
    im_chi = scale * chi_reduced.imag
    n = float(np.sqrt(abs(1.0 + re_chi)))
    if abs(chi_reduced.imag) > ABSORPTION_WARN:
        warnings.warn(
            f"|Im chi_reduced|={abs(chi_reduced.imag):.3g} is not negligible; n is approximate",
            RuntimeWarning,
            stacklevel=2,
        )
    return OpticalPoint(
        n=n,
        delta_n=n - 1.0,
        re_chi=re_chi,
        im_chi=im_chi,
        alpha_reduced=chi_reduced.imag,
        alpha=np.pi / medium.lambda_p * im_chi,
    )


def line_contrast(source: Callable[[np.ndarray], np.ndarray], center: float, half_width: float) -> float:
    """Height of Im chi at ``center`` above the chord through ``center +- half_width``.

    Negative values mark a narrow gain feature on top of a broad background.
    """
    y = np.imag(source(np.array([center - half_width, center, center + half_width])))
    return float(y[1] - 0.5 * (y[0] + y[2]))
