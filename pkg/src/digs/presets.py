"""Reference parameter sets.

Every figure shares Omega_mu = 2, gamma_aa = 2, optical coherence decay 1
and ground-state rates 1e-4 unless stated otherwise.  Values are in units
of gamma_ab.
"""
from __future__ import annotations

from dataclasses import dataclass

from .model import AtomParams, RelaxationModel


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    atom: AtomParams
    relaxation: RelaxationModel
    grid: tuple[float, float, int] = (-2.0, 2.0, 2001)


def _fig1_atom(**changes) -> AtomParams:
    base = AtomParams(omega_mu=2.0, omega_b=0.65, omega_c=0.15)
    return base.with_(**changes) if changes else base


def _relax(r_b: float, r_cp: float) -> RelaxationModel:
    return RelaxationModel.from_rates(
        gamma_aa=2.0, gamma_optical=1.0, gamma_ground=1e-4, r_b=r_b, r_cp=r_cp
    )


def _build() -> dict[str, Preset]:
    presets = [
        Preset("fig1-red", "all fields resonant, strongest gain pumping", _fig1_atom(), _relax(5e-5, 0.023)),
        Preset("fig1-blue", "all fields resonant, intermediate pumping", _fig1_atom(), _relax(3e-5, 0.03)),
        Preset("fig1-purple", "all fields resonant, weakest r_b", _fig1_atom(), _relax(9e-6, 0.04)),
        Preset("fig2", "baseline for zero trends (scan gamma1 or omega_b)", _fig1_atom(), _relax(5e-5, 0.023)),
        Preset(
            "fig3",
            "narrow gain line at +Omega_b/2 for Doppler studies (add --sigma-delta)",
            _fig1_atom(omega_b=0.2, omega_c=0.1),
            _relax(4e-5, 0.0058),
            grid=(0.0, 0.3, 1201),
        ),
    ]
    fig4 = [
        (0.0058, 8.7e-5, 0.01),
        (0.0046, 7e-5, 0.01),
        (0.004, 9e-5, 0.01),
        (0.0046, 7e-5, -0.01),
        (0.0058, 8.7e-5, -0.01),
        (0.004, 9e-5, -0.01),
    ]
    for i, (r_cp, r_b, delta_b) in enumerate(fig4, start=1):
        text = f"RF detuning Delta_b={delta_b:+g}, pumping near the gain threshold"
        presets.append(Preset(f"fig4-{i}", text, _fig1_atom(delta_b=delta_b), _relax(r_b, r_cp)))
    return {p.name: p for p in presets}


PRESETS: dict[str, Preset] = _build()


def get(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
