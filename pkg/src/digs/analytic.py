"""Closed-form weak-probe susceptibility for resonant control fields.

Valid only for Delta_mu = Delta_c = 0 and lowest order in Omega_c/Omega_mu.
Probe detuning enters through ``a = (Delta_p - Delta_b/2) / Omega_mu``;
every function accepts a scalar or an array for ``delta_p``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import A, B, BP, C, CP, AtomParams, RelaxationModel


class DomainError(ValueError):
    """Closed form evaluated outside Delta_mu = Delta_c = 0."""


class DegenerateRelaxation(ZeroDivisionError):
    pass


class DegenerateDressing(ValueError):
    """Omega_b = Delta_b = 0 leaves the b/b' dressing angle undefined."""


@dataclass(frozen=True)
class ReducedParams:
    eta: float
    c: float
    b: float
    eps1: float
    eps2: float
    a: np.ndarray | float

    @property
    def a_plus(self):
        return -2 * self.a - self.b

    @property
    def a_minus(self):
        return -2 * self.a + self.b


def reduced_params(params: AtomParams, relax: RelaxationModel, delta_p=None) -> ReducedParams:
    om = params.omega_mu
    if delta_p is None:
        delta_p = params.delta_p
    return ReducedParams(
        eta=2 * relax.gamma_ab / om,
        c=params.omega_c / om,
        b=np.hypot(params.omega_b, params.delta_b) / om,
        eps1=2 * relax.gamma_C / om,
        eps2=2 * relax.gamma_Cp / om,
        a=(np.asarray(delta_p, dtype=float) - params.delta_b / 2) / om,
    )


def population_cpcp(params: AtomParams, relax: RelaxationModel) -> float:
    g = relax.gamma
    den = 2 * g[CP, A] * params.omega_c**2 + g[CP, CP] * params.omega_mu**2
    if den == 0:
        raise DegenerateRelaxation("rho_c'c' denominator vanishes")
    return relax.r_cp * params.omega_mu**2 / den


def _bb_denominator(params: AtomParams, relax: RelaxationModel) -> float:
    g = relax.gamma
    g_bbp = g[B, BP]
    den = (
        2 * g[B, B] * g[BP, BP] * (g_bbp**2 + params.delta_b**2)
        + (g[B, B] + g[BP, BP]) * g_bbp * params.omega_b**2
    )
    if den == 0:
        raise DegenerateRelaxation("rho_bb denominator vanishes")
    return den


def population_bb(params: AtomParams, relax: RelaxationModel) -> float:
    g = relax.gamma
    g_bbp = g[B, BP]
    num = 2 * g[BP, BP] * (g_bbp**2 + params.delta_b**2) + g_bbp * params.omega_b**2
    return relax.r_b * num / _bb_denominator(params, relax)


def coherence_bbp(params: AtomParams, relax: RelaxationModel) -> complex:
    g = relax.gamma
    num = g[BP, BP] * (-1j * g[B, BP] + params.delta_b) * params.omega_b
    return complex(relax.r_b * num / _bb_denominator(params, relax))


@dataclass(frozen=True)
class DressedPopulations:
    theta_b: float
    rho_bb: float
    rho_bbp: complex
    rho_cpcp: float
    p_b_plus: complex
    p_b_minus: complex
    p_c_plus: float
    p_c_minus: float


def dressing_angle(omega_b: float, delta_b: float) -> float:
    """Angle with tan(2 theta) = Omega_b / Delta_b, pi/4 at Delta_b = 0."""
    if omega_b == 0 and delta_b == 0:
        raise DegenerateDressing("dressing angle undefined for Omega_b = Delta_b = 0")
    return 0.5 * float(np.arctan2(omega_b, delta_b))


def dressed_projections(params: AtomParams, relax: RelaxationModel) -> DressedPopulations:
    theta = dressing_angle(params.omega_b, params.delta_b)
    cos2, sin2 = np.cos(theta) ** 2, np.sin(theta) ** 2
    sincos = np.sin(theta) * np.cos(theta)
    rho_bb = population_bb(params, relax)
    rho_bbp = coherence_bbp(params, relax)
    rho_cpcp = population_cpcp(params, relax)
    return DressedPopulations(
        theta_b=theta,
        rho_bb=rho_bb,
        rho_bbp=rho_bbp,
        rho_cpcp=rho_cpcp,
        p_b_plus=-cos2 * rho_bb - sincos * rho_bbp,
        p_b_minus=sin2 * rho_bb - sincos * rho_bbp,
        p_c_plus=-cos2 * rho_cpcp,
        p_c_minus=sin2 * rho_cpcp,
    )


def _branch(p_b, p_c, a_shift, rp: ReducedParams):
    """One of the two dressed-state contributions X_+ or X_-."""
    e1 = 1j * rp.eps1 + a_shift
    e2 = 1j * rp.eps2 + a_shift
    c2 = rp.c**2
    num = p_b * e1 * e2 - c2 * (p_b - p_c)
    den = e2 - (1j * rp.eta + a_shift) * (e1 * e2 - c2)
    return -rp.eta * num / den


def chi_analytic(params: AtomParams, relax: RelaxationModel, delta_p=None):
    """Closed-form reduced susceptibility X_+ - X_-.

    ``delta_p`` overrides ``params.delta_p`` and may be an array.
    """
    if params.delta_mu != 0 or params.delta_c != 0:
        raise DomainError(
            "closed form requires Delta_mu = Delta_c = 0 "
            f"(got Delta_mu={params.delta_mu}, Delta_c={params.delta_c}); use the numeric backend"
        )
    rp = reduced_params(params, relax, delta_p)
    dp = dressed_projections(params, relax)
    chi = _branch(dp.p_b_plus, dp.p_c_plus, rp.a_plus, rp) - _branch(
        dp.p_b_minus, dp.p_c_minus, rp.a_minus, rp
    )
    return complex(chi) if np.ndim(chi) == 0 else chi


def gain_threshold(params: AtomParams, relax: RelaxationModel) -> float:
    """Pump ratio r_c'/r_b above which the narrow lines at +-Omega_b/2 amplify."""
    g = relax.gamma
    den = (g[B, B] + g[BP, BP]) * params.omega_mu**2
    if den == 0:
        raise DegenerateRelaxation("gamma_bb + gamma_b'b' vanishes")
    return (2 * g[CP, A] * params.omega_c**2 + relax.gamma_Cp * params.omega_mu**2) / den


def gain_linewidth(params: AtomParams, relax: RelaxationModel) -> float:
    return relax.gamma_ab * (params.omega_c / params.omega_mu) ** 2 + relax.gamma_Cp
