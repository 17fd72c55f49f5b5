"""Gain line under two-photon Doppler broadening, and probe-only broadening of the resonant zero."""
import warnings

import numpy as np

from _common import outdir, parser, write_csv, write_json
from digs import presets
from digs.doppler import DopplerSpec
from digs.spectra import NoSignChange, default_brackets, evaluator, find_zeros, sweep

SIGMAS = (0.001, 0.01, 0.05)
PROBE_SIGMAS = (0.0, 0.5, 1.0, 2.0, 5.0, 10.0)


def main() -> None:
    args = parser(__doc__).parse_args()
    out = outdir(args.outdir)
    p = presets.get("fig3")
    grid = np.linspace(*p.grid)
    header, columns = ["delta_p"], [grid]
    for s in SIGMAS:
        chi = sweep(p.atom, p.relaxation, grid, "numeric", DopplerSpec(sigma_delta=s)).chi
        header += [f"re_sigma_{s:g}", f"im_sigma_{s:g}"]
        columns += [chi.real, chi.imag]
    write_csv(out / "fig3.csv", header, zip(*columns))

    f1 = presets.get("fig1-red")
    bracket = default_brackets(f1.atom)[0]
    probe = []
    for s in PROBE_SIGMAS:
        spec = DopplerSpec(sigma_probe=s) if s else None
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NoSignChange)
            zeros = find_zeros(evaluator(f1.atom, f1.relaxation, "numeric", spec), [bracket])
        probe.append({"sigma_probe": s, "zeros": [{"delta_p_zero": z.delta_p_zero, "re_chi": z.re_chi_at_zero} for z in zeros]})
    write_json(out / "fig3_probe_broadening.json", probe)


if __name__ == "__main__":
    main()
