"""Run configuration and its INI-style text format.

Example::

    [atom]
    # Rabi frequencies and detunings, units of gamma_ab
    omega_mu = 2.0
    omega_b = 0.65
    omega_c = 0.15
    omega_p = 0.0001
    delta_mu = 0.0
    delta_b = 0.0
    delta_c = 0.0

    [relaxation]
    # pump rates and decay matrix entries gamma_<j>_<k>, units of gamma_ab
    r_b = 5e-05
    r_cp = 0.023
    gamma_a_a = 2.0
    ...

    [medium]
    # density_N in cm^-3, lambda_p in cm
    density_N = 1e+15
    lambda_p = 8e-05

    [doppler]
    # Gaussian widths in units of gamma_ab; 0 disables
    sigma_delta = 0.0
    sigma_probe = 0.0
    quadrature_order = 41
    method = exact

    [sweep]
    min = -2.0
    max = 2.0
    points = 2001
    backend = analytic

    [output]
    path = fig1.csv
    format = csv

``[relaxation]`` also accepts the shorthand keys ``gamma_aa``,
``gamma_optical``, ``gamma_ground``, ``gamma_C`` and ``gamma_Cp`` (see
:meth:`RelaxationModel.from_rates`); explicit ``gamma_<j>_<k>`` entries
override them.  ``[medium]``, ``[doppler]`` and ``[output]`` are optional.
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from .doppler import DopplerSpec
from .model import BACKENDS, LEVELS, AtomParams, MediumParams, RelaxationModel, validate

FORMATS = ("csv", "json")
_SHORTHAND = ("gamma_aa", "gamma_optical", "gamma_ground", "gamma_C", "gamma_Cp")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SweepSpec:
    min: float = -2.0
    max: float = 2.0
    points: int = 2001

    def grid(self) -> np.ndarray:
        return np.linspace(self.min, self.max, self.points)


@dataclass(frozen=True)
class OutputSpec:
    path: str | None = None
    format: str = "csv"


@dataclass(frozen=True)
class RunConfig:
    atom: AtomParams
    relaxation: RelaxationModel
    medium: MediumParams | None = None
    doppler: DopplerSpec | None = None
    sweep: SweepSpec = field(default_factory=SweepSpec)
    backend: str = "analytic"
    output: OutputSpec = field(default_factory=OutputSpec)

    def check(self) -> list[str]:
        """Raise ConfigError on any invalid setting; return validation warnings."""
        report = validate(self.atom, self.relaxation)
        if not report.ok:
            raise ConfigError("; ".join(report.errors))
        if self.sweep.points < 2:
            raise ConfigError("sweep needs at least 2 points")
        if not self.sweep.max > self.sweep.min:
            raise ConfigError("sweep max must exceed min")
        if self.backend not in BACKENDS:
            raise ConfigError(f"backend must be one of {BACKENDS}")
        if self.output.format not in FORMATS:
            raise ConfigError(f"output format must be one of {FORMATS}")
        if self.backend == "analytic":
            if self.atom.delta_mu != 0 or self.atom.delta_c != 0:
                raise ConfigError(
                    "the analytic backend is only valid for Delta_mu = Delta_c = 0 "
                    f"(got Delta_mu={self.atom.delta_mu}, Delta_c={self.atom.delta_c}); "
                    "use backend = numeric"
                )
            if self.doppler is not None and self.doppler.active:
                raise ConfigError("Doppler averaging requires backend = numeric")
        return report.warnings


def _float(section, key, default=None) -> float:
    if key not in section:
        if default is None:
            raise ConfigError(f"missing key {key!r} in [{section.name}]")
        return default
    try:
        return float(section[key])
    except ValueError:
        raise ConfigError(f"[{section.name}] {key} = {section[key]!r} is not a number") from None


def _check_keys(section, allowed) -> None:
    unknown = set(section) - set(allowed)
    if unknown:
        raise ConfigError(f"unknown keys in [{section.name}]: {', '.join(sorted(unknown))}")


def _gamma_keys():
    return [f"gamma_{LEVELS[j]}_{LEVELS[k]}" for j in range(5) for k in range(j, 5)]


def _parse_relaxation(section) -> RelaxationModel:
    _check_keys(section, ["r_b", "r_cp", *_SHORTHAND, *_gamma_keys()])
    shorthand = {k: _float(section, k) for k in _SHORTHAND if k in section}
    base = RelaxationModel.from_rates(**shorthand)
    g = np.array(base.gamma)
    for j in range(5):
        for k in range(j, 5):
            key = f"gamma_{LEVELS[j]}_{LEVELS[k]}"
            if key in section:
                g[j, k] = g[k, j] = _float(section, key)
    return RelaxationModel(g, r_b=_float(section, "r_b", 0.0), r_cp=_float(section, "r_cp", 0.0))


def parse_config(text: str) -> RunConfig:
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc
    known = {"atom", "relaxation", "medium", "doppler", "sweep", "output"}
    unknown = set(parser.sections()) - known
    if unknown:
        raise ConfigError(f"unknown sections: {', '.join(sorted(unknown))}")
    for required in ("atom", "relaxation"):
        if required not in parser:
            raise ConfigError(f"missing section [{required}]")

    atom_section = parser["atom"]
    atom_fields = [f.name for f in fields(AtomParams) if f.name != "delta_p"]
    _check_keys(atom_section, atom_fields)
    defaults = AtomParams(omega_mu=1.0, omega_b=0.0, omega_c=0.0)
    atom = AtomParams(
        **{
            name: _float(atom_section, name, None if name == "omega_mu" else getattr(defaults, name))
            for name in atom_fields
        }
    )
    relaxation = _parse_relaxation(parser["relaxation"])

    medium = None
    if "medium" in parser:
        s = parser["medium"]
        _check_keys(s, ["density_N", "lambda_p"])
        try:
            medium = MediumParams(_float(s, "density_N"), _float(s, "lambda_p"))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    doppler = None
    if "doppler" in parser:
        s = parser["doppler"]
        _check_keys(s, ["sigma_delta", "sigma_probe", "quadrature_order", "method"])
        try:
            doppler = DopplerSpec(
                sigma_delta=_float(s, "sigma_delta", 0.0),
                sigma_probe=_float(s, "sigma_probe", 0.0),
                quadrature_order=int(s.get("quadrature_order", "41")),
                method=s.get("method", "exact").strip(),
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    sweep, backend = SweepSpec(), "analytic"
    if "sweep" in parser:
        s = parser["sweep"]
        _check_keys(s, ["min", "max", "points", "backend"])
        try:
            points = int(s.get("points", str(sweep.points)))
        except ValueError:
            raise ConfigError(f"[sweep] points = {s['points']!r} is not an integer") from None
        sweep = SweepSpec(_float(s, "min", sweep.min), _float(s, "max", sweep.max), points)
        backend = s.get("backend", backend).strip()

    output = OutputSpec()
    if "output" in parser:
        s = parser["output"]
        _check_keys(s, ["path", "format"])
        output = OutputSpec(path=s.get("path"), format=s.get("format", "csv").strip())

    return RunConfig(atom, relaxation, medium, doppler, sweep, backend, output)


def load_config(path: str | Path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)


def dump_config(config: RunConfig) -> str:
    lines = ["[atom]", "# Rabi frequencies and detunings, units of gamma_ab"]
    for f in fields(AtomParams):
        if f.name != "delta_p":
            lines.append(f"{f.name} = {float(getattr(config.atom, f.name))!r}")
    relax = config.relaxation
    lines += [
        "",
        "[relaxation]",
        "# pump rates and decay matrix entries gamma_<j>_<k>, units of gamma_ab",
        f"r_b = {float(relax.r_b)!r}",
        f"r_cp = {float(relax.r_cp)!r}",
    ]
    for j in range(5):
        for k in range(j, 5):
            lines.append(f"gamma_{LEVELS[j]}_{LEVELS[k]} = {float(relax.gamma[j, k])!r}")
    if config.medium is not None:
        lines += [
            "",
            "[medium]",
            "# density_N in cm^-3, lambda_p in cm",
            f"density_N = {config.medium.density_N!r}",
            f"lambda_p = {config.medium.lambda_p!r}",
        ]
    if config.doppler is not None:
        d = config.doppler
        lines += [
            "",
            "[doppler]",
            "# Gaussian widths in units of gamma_ab; 0 disables",
            f"sigma_delta = {d.sigma_delta!r}",
            f"sigma_probe = {d.sigma_probe!r}",
            f"quadrature_order = {d.quadrature_order}",
            f"method = {d.method}",
        ]
    s = config.sweep
    lines += [
        "",
        "[sweep]",
        "# probe detuning grid, units of gamma_ab",
        f"min = {s.min!r}",
        f"max = {s.max!r}",
        f"points = {s.points}",
        f"backend = {config.backend}",
    ]
    if config.output.path is not None or config.output.format != "csv":
        lines += ["", "[output]"]
        if config.output.path is not None:
            lines.append(f"path = {config.output.path}")
        lines.append(f"format = {config.output.format}")
    return "\n".join(lines) + "\n"


def with_overrides(config: RunConfig, **changes) -> RunConfig:
    return replace(config, **changes)
