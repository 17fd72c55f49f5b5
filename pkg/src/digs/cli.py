"""Command-line front end.

    digs presets
    digs sweep  --preset fig1-red --out fig1.csv
    digs sweep  --preset fig1-red --grid=-1:1:401
    digs sweep  --preset fig3 --sigma-delta 0.05 --out fig3.csv
    digs zeros  --preset fig1-red
    digs zeros  --preset fig2 --scan gamma1 0.0001:0.5:50
    digs index  --re-chi 0.3 --density 1e15 --wavelength 8e-5

Exit status: 0 success, 1 configuration error, 2 numerical backend error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import warnings
from dataclasses import replace

import numpy as np

from . import presets as preset_lib
from .analytic import DegenerateDressing, DegenerateRelaxation, DomainError
from .config import ConfigError, OutputSpec, RunConfig, SweepSpec, dump_config, load_config
from .doppler import DopplerSpec
from .liouvillian import SingularSystem
from .model import MediumParams
from .spectra import NoSignChange, default_brackets, evaluator, find_zeros, sweep, to_optical, zero_trend

# reference medium for zero reports when none is configured
DEFAULT_MEDIUM = MediumParams(density_N=1e15, lambda_p=800e-7)


def _num(x: float) -> str:
    return format(float(x), ".17g")


def _range(text: str) -> tuple[float, float, int]:
    try:
        lo, hi, n = text.split(":")
        return float(lo), float(hi), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MIN:MAX:POINTS, got {text!r}") from None


def _config_from_args(args) -> RunConfig:
    if args.config and args.preset:
        raise ConfigError("use either --preset or --config, not both")
    if args.config:
        config = load_config(args.config)
    elif args.preset:
        try:
            p = preset_lib.get(args.preset)
        except KeyError as exc:
            raise ConfigError(exc.args[0]) from None
        config = RunConfig(p.atom, p.relaxation, sweep=SweepSpec(*p.grid))
    else:
        raise ConfigError("one of --preset or --config is required")

    atom = config.atom
    if args.delta_b is not None:
        atom = atom.with_(delta_b=args.delta_b)
    sweep_spec = SweepSpec(*args.grid) if args.grid else config.sweep

    doppler = config.doppler
    if args.sigma_delta is not None or args.sigma_probe is not None:
        base = doppler or DopplerSpec()
        try:
            doppler = replace(
                base,
                sigma_delta=base.sigma_delta if args.sigma_delta is None else args.sigma_delta,
                sigma_probe=base.sigma_probe if args.sigma_probe is None else args.sigma_probe,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    backend = config.backend
    if args.backend:
        backend = args.backend
    elif doppler is not None and doppler.active:
        backend = "numeric"

    medium = config.medium
    if args.density is not None or args.wavelength is not None:
        ref = medium or DEFAULT_MEDIUM
        try:
            medium = MediumParams(
                ref.density_N if args.density is None else args.density,
                ref.lambda_p if args.wavelength is None else args.wavelength,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    output = config.output
    if args.out is not None or args.format is not None:
        output = OutputSpec(
            path=args.out if args.out is not None else output.path,
            format=args.format or output.format,
        )
    config = RunConfig(atom, config.relaxation, medium, doppler, sweep_spec, backend, output)
    for message in config.check():
        print(f"warning: {message}", file=sys.stderr)
    return config


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _sweep_text(config: RunConfig) -> str:
    spectrum = sweep(config.atom, config.relaxation, config.sweep.grid(), config.backend, config.doppler)
    columns = ["delta_p", "re_chi", "im_chi"]
    optical = None
    if config.medium is not None:
        columns += ["n", "delta_n", "alpha"]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            optical = [to_optical(c, config.medium) for c in spectrum.chi]

    rows = []
    for i, (x, c) in enumerate(zip(spectrum.grid, spectrum.chi)):
        row = [x, c.real, c.imag]
        if optical is not None:
            row += [optical[i].n, optical[i].delta_n, optical[i].alpha]
        rows.append(row)

    if config.output.format == "json":
        records = [{k: float(v) for k, v in zip(columns, row)} for row in rows]
        return json.dumps({"backend": config.backend, "points": records}, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_num(v) for v in row])
    return buf.getvalue()


def _optical_fields(re_chi: float, medium: MediumParams) -> dict:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        point = to_optical(complex(re_chi, 0.0), medium)
    return {"n": point.n, "delta_n": point.delta_n}


def cmd_sweep(args) -> int:
    config = _config_from_args(args)
    _emit(_sweep_text(config), config.output.path)
    return 0


def cmd_zeros(args) -> int:
    config = _config_from_args(args)
    medium = config.medium or DEFAULT_MEDIUM
    report: dict = {
        "backend": config.backend,
        "medium": {"density_N": medium.density_N, "lambda_p": medium.lambda_p},
    }
    if args.scan:
        variable, (lo, hi, n) = args.scan[0], _range(args.scan[1])
        rows = zero_trend(
            config.atom, config.relaxation, variable, np.linspace(lo, hi, n), backend=config.backend
        )
        records = []
        for row in rows:
            rec = {"value": row.value, "delta_p_zero": row.delta_p_zero, "re_chi": row.re_chi}
            rec.update(_optical_fields(row.re_chi, medium) if row.re_chi is not None else {"n": None, "delta_n": None})
            records.append(rec)
        report.update(scan=variable, trend=records)
    else:
        source = evaluator(config.atom, config.relaxation, config.backend, config.doppler)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", NoSignChange)
            zeros = find_zeros(source, default_brackets(config.atom), backend=config.backend)
        for w in caught:
            if issubclass(w.category, NoSignChange):
                print(f"note: {w.message}", file=sys.stderr)
        records = []
        for z in zeros:
            rec = {"delta_p_zero": z.delta_p_zero, "re_chi": z.re_chi_at_zero}
            rec.update(_optical_fields(z.re_chi_at_zero, medium))
            records.append(rec)
        report["zeros"] = records
    _emit(json.dumps(report, indent=1, sort_keys=True) + "\n", config.output.path)
    return 0


def cmd_presets(args) -> int:
    for p in preset_lib.PRESETS.values():
        config = RunConfig(p.atom, p.relaxation, sweep=SweepSpec(*p.grid))
        print(f"## {p.name}: {p.description}")
        print(dump_config(config))
    return 0


def cmd_index(args) -> int:
    try:
        medium = MediumParams(args.density, args.wavelength)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", RuntimeWarning)
        point = to_optical(complex(args.re_chi, args.im_chi), medium)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    print(json.dumps(point.as_dict(), indent=1, sort_keys=True))
    return 0


def _add_run_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", help="built-in parameter set (see `presets`)")
    p.add_argument("--config", help="INI-style run configuration file")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--backend", choices=("analytic", "numeric"))
    p.add_argument("--grid", type=_range, metavar="MIN:MAX:POINTS",
                   help="probe-detuning grid; write --grid=-2:2:2001 when MIN is negative")
    p.add_argument("--sigma-delta", type=float, help="Gaussian width of the two-photon detuning")
    p.add_argument("--sigma-probe", type=float, help="Gaussian width of the probe detuning alone")
    p.add_argument("--delta-b", type=float, help="override the b<->b' RF detuning")
    p.add_argument("--density", type=float, help="atomic density, cm^-3")
    p.add_argument("--wavelength", type=float, help="probe vacuum wavelength, cm")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="digs", description="Five-level DIGS probe susceptibility")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="susceptibility spectrum on a probe-detuning grid")
    _add_run_options(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("zeros", help="absorption zeros and their refractive index")
    _add_run_options(p)
    p.add_argument("--scan", nargs=2, metavar=("VAR", "MIN:MAX:POINTS"),
                   help="trend of the negative-detuning zero; VAR is gamma1 or omega_b")
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("presets", help="list built-in parameter sets")
    p.set_defaults(func=cmd_presets)

    p = sub.add_parser("index", help="refractive index and absorption for one reduced susceptibility")
    p.add_argument("--re-chi", type=float, required=True)
    p.add_argument("--im-chi", type=float, default=0.0)
    p.add_argument("--density", type=float, default=DEFAULT_MEDIUM.density_N, help="cm^-3")
    p.add_argument("--wavelength", type=float, default=DEFAULT_MEDIUM.lambda_p, help="cm")
    p.set_defaults(func=cmd_index)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "scan", None):
        if args.scan[0] not in ("gamma1", "omega_b"):
            parser.error(f"--scan variable must be gamma1 or omega_b, got {args.scan[0]!r}")
        try:
            _range(args.scan[1])
        except argparse.ArgumentTypeError as exc:
            parser.error(str(exc))
    try:
        return args.func(args)
    except (ConfigError, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except (SingularSystem, DegenerateRelaxation, DegenerateDressing, np.linalg.LinAlgError) as exc:
        print(f"backend error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # reader went away (e.g. `| head`); silence the flush at exit
        sys.stdout = open(os.devnull, "w")
        return 0


if __name__ == "__main__":
    sys.exit(main())
