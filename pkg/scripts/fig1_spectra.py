"""Resonant spectra for the three pumping sets, both backends, plus their zeros."""
import numpy as np

from _common import outdir, parser, write_csv, write_json
from digs import presets
from digs.model import MediumParams
from digs.spectra import default_brackets, evaluator, find_zeros, sweep, to_optical

MEDIUM = MediumParams(density_N=1e15, lambda_p=800e-7)


def main() -> None:
    args = parser(__doc__).parse_args()
    out = outdir(args.outdir)
    grid = np.linspace(-2, 2, 2001)
    report = {}
    for name in ("fig1-red", "fig1-blue", "fig1-purple"):
        p = presets.get(name)
        a = sweep(p.atom, p.relaxation, grid, "analytic")
        n = sweep(p.atom, p.relaxation, grid, "numeric")
        rows = zip(grid, a.chi.real, a.chi.imag, n.chi.real, n.chi.imag)
        write_csv(out / f"{name}.csv", ["delta_p", "re_analytic", "im_analytic", "re_numeric", "im_numeric"], rows)
        report[name] = {}
        for backend in ("analytic", "numeric"):
            zeros = find_zeros(evaluator(p.atom, p.relaxation, backend), default_brackets(p.atom), backend=backend)
            report[name][backend] = [
                {"delta_p_zero": z.delta_p_zero, "re_chi": z.re_chi_at_zero,
                 "delta_n": to_optical(z.re_chi_at_zero, MEDIUM).delta_n}
                for z in zeros
            ]
    write_json(out / "fig1_zeros.json", report)


if __name__ == "__main__":
    main()
