"""Spectra for the detuned-RF pumping sets and the sign of Re chi at any zeros."""
import warnings

import numpy as np

from _common import outdir, parser, write_csv, write_json
from digs import presets
from digs.spectra import NoSignChange, evaluator, find_zeros, sweep


def main() -> None:
    args = parser(__doc__).parse_args()
    out = outdir(args.outdir)
    grid = np.linspace(-2, 2, 4001)
    header, columns, report = ["delta_p"], [grid], {}
    for i in range(1, 7):
        name = f"fig4-{i}"
        p = presets.get(name)
        chi = sweep(p.atom, p.relaxation, grid, "numeric").chi
        header += [f"re_{name}", f"im_{name}"]
        columns += [chi.real, chi.imag]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NoSignChange)
            zeros = find_zeros(evaluator(p.atom, p.relaxation, "numeric"), [(-2.0, 2.0)], samples=40001)
        report[name] = {
            "delta_b": p.atom.delta_b,
            "min_im_chi": float(chi.imag.min()),
            "zeros": [{"delta_p_zero": z.delta_p_zero, "re_chi": z.re_chi_at_zero} for z in zeros],
        }
    write_csv(out / "fig4.csv", header, zip(*columns))
    write_json(out / "fig4_zeros.json", report)


if __name__ == "__main__":
    main()
