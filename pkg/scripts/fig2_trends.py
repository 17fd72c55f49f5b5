"""Trend of the negative-detuning zero against ground-state decoherence and RF coupling."""
import numpy as np

from _common import outdir, parser, write_csv
from digs import presets
from digs.spectra import zero_trend


def main() -> None:
    p = parser(__doc__)
    p.add_argument("--points", type=int, default=50)
    args = p.parse_args()
    out = outdir(args.outdir)
    base = presets.get("fig2")
    scans = {
        "gamma1": np.linspace(1e-4, 0.5, args.points),
        "omega_b": np.linspace(0.05, 1.0, args.points),
    }
    for variable, values in scans.items():
        header = [variable]
        columns = []
        for backend in ("analytic", "numeric"):
            rows = zero_trend(base.atom, base.relaxation, variable, values, backend=backend)
            columns.append([(r.delta_p_zero, r.re_chi) for r in rows])
            header += [f"delta_p_zero_{backend}", f"re_chi_{backend}"]
        table = [(v, *columns[0][i], *columns[1][i]) for i, v in enumerate(values)]
        write_csv(out / f"fig2_{variable}.csv", header, table)


if __name__ == "__main__":
    main()
