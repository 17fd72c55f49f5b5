"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run on its own with

    pytest tests/test_acceptance.py -v -s

Tolerances are the ones the criteria state; nothing here is loosened to
make a red criterion pass.
"""
import time
import warnings

import numpy as np
import pytest
from scipy.optimize import brentq

from digs import presets
from digs.analytic import chi_analytic, gain_linewidth, gain_threshold
from digs.cli import main as cli_main
from digs.doppler import DopplerSpec, average_chi_grid, hermite_rule
from digs.liouvillian import chi_numeric_grid, steady_state
from digs.model import MediumParams
from digs.spectra import NoSignChange, default_brackets, evaluator, find_zeros, to_optical, zero_trend

pytestmark = pytest.mark.acceptance

MEDIUM_800 = MediumParams(density_N=1e15, lambda_p=800e-7)


def verdict(capsys, number, ok, details):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({details})"
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def preset(name):
    p = presets.get(name)
    return p.atom, p.relaxation


def quiet_zeros(f, brackets, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NoSignChange)
        return find_zeros(f, brackets, **kw)


def test_criterion_1_index_formula(capsys):
    dn = to_optical(0.3, MEDIUM_800).delta_n
    checks = [abs(dn - 2.6) <= 0.1]
    parts = [f"dn(800nm)={dn:.4f}"]
    for N in (1e12, 1e14, 1e15):
        n = to_optical(0.3, MediumParams(N, 795e-7)).n
        ref = np.sqrt(1 + 1.2e-14 * N)
        checks.append(abs(n - ref) <= 0.05 * ref)
        parts.append(f"N={N:.0e}: n={n:.4f} vs {ref:.4f}")
    verdict(capsys, 1, all(checks), "; ".join(parts))


def test_criterion_2_fig1_structure(capsys):
    atom, relax = preset("fig1-red")
    width = gain_linewidth(atom, relax)
    grid = np.linspace(-2, 2, 2001)
    start = time.perf_counter()
    chi = np.asarray(chi_analytic(atom, relax, grid))
    elapsed = time.perf_counter() - start

    fine = np.linspace(-1.5, 1.5, 300001)
    im = np.imag(chi_analytic(atom, relax, fine))
    dips = [fine[m][np.argmin(im[m])] for m in ((fine > -0.5) & (fine < -0.15), (fine > 0.15) & (fine < 0.5))]
    peaks = [fine[m][np.argmax(im[m])] for m in ((fine < -0.6), (fine > 0.6))]
    ok_dips = all(abs(abs(d) - 0.325) <= width for d in dips) and all(np.min(im[np.abs(fine - d) < 1e-9]) < 0 for d in dips)
    ok_peaks = all(abs(abs(p) - 1.0) <= 0.05 for p in peaks)

    f = evaluator(atom, relax, "analytic")
    neg, pos = default_brackets(atom)
    zn = quiet_zeros(f, [neg])
    zp = quiet_zeros(f, [pos])
    ok_zeros = bool(zn and zp)
    detail_zero = "zeros missing"
    if ok_zeros:
        a = min(zn, key=lambda z: abs(z.delta_p_zero - neg[1]))
        b = min(zp, key=lambda z: abs(z.delta_p_zero - pos[0]))
        sym = abs(a.delta_p_zero + b.delta_p_zero)
        anti = abs(a.re_chi_at_zero + b.re_chi_at_zero)
        mags = [abs(a.re_chi_at_zero), abs(b.re_chi_at_zero)]
        ok_zeros = sym <= 1e-6 and anti <= 1e-6 and all(0.10 <= m <= 0.30 for m in mags)
        detail_zero = (
            f"zeros {a.delta_p_zero:+.4f}/{b.delta_p_zero:+.4f} sym={sym:.1e} "
            f"|Re chi|={mags[0]:.4f} (need [0.10, 0.30])"
        )
    ok = ok_dips and ok_peaks and ok_zeros and elapsed < 1.0 and np.all(np.isfinite(chi))
    verdict(
        capsys, 2, ok,
        f"dips {dips[0]:+.4f}/{dips[1]:+.4f} (Gamma={width:.4f}); peaks {peaks[0]:+.3f}/{peaks[1]:+.3f}; "
        f"{detail_zero}; sweep {elapsed * 1e3:.1f} ms",
    )


def test_criterion_3_backend_cross_validation(capsys):
    names = [n for n in presets.PRESETS if n.startswith(("fig1", "fig3", "fig4"))]
    worst = {}
    start = time.perf_counter()
    for name in names:
        p = presets.get(name)
        grid = np.linspace(*p.grid)
        num = chi_numeric_grid(p.atom, p.relaxation, grid)
        ana = np.asarray(chi_analytic(p.atom, p.relaxation, grid))
        mask = np.abs(num) > 1e-2
        worst[name] = float(np.max(np.abs(ana[mask] - num[mask]) / np.abs(num[mask])))
    elapsed = time.perf_counter() - start
    ok = all(v <= 0.05 for v in worst.values()) and elapsed < 10
    listing = ", ".join(f"{k}={v:.3f}" for k, v in worst.items())
    verdict(capsys, 3, ok, f"max rel err (need <= 0.05): {listing}; {elapsed:.1f} s")


def test_criterion_4_decoherence_robustness(capsys):
    atom, relax = preset("fig2")
    row = zero_trend(atom, relax, "gamma1", [0.5])[0]
    ok_value = row.re_chi is not None and abs(row.re_chi - 0.22) <= 0.15 * 0.22
    values = np.linspace(1e-4, 0.5, 26)
    rows = zero_trend(atom, relax, "gamma1", values)
    centre = -atom.omega_b / 2
    dist = [None if r.delta_p_zero is None else abs(r.delta_p_zero - centre) for r in rows]
    found = [d for d in dist if d is not None]
    ok_trend = None not in dist and bool(np.all(np.diff(found) > 0))
    first_gap = next((v for v, d in zip(values, dist) if d is None), None)
    value_txt = "no zero" if row.re_chi is None else f"{row.re_chi:.4f}"
    verdict(
        capsys, 4, ok_value and ok_trend,
        f"Re chi at gamma1=0.5: {value_txt} (need 0.22 +- 15%); zero found at {len(found)}/{len(values)} "
        f"gamma1 values, first missing at {first_gap}; monotone={ok_trend}",
    )


def test_criterion_5_gain_threshold(capsys):
    atom, relax = preset("fig1-red")
    centre = atom.omega_b / 2

    def im_at_line(r_cp):
        return float(np.imag(chi_analytic(atom, relax.with_(r_cp=r_cp), centre)))

    predicted = relax.r_b * 56.75
    scan = np.linspace(0.0, 4 * predicted, 401)
    signs = np.sign([im_at_line(r) for r in scan])
    flips = np.flatnonzero(signs[:-1] * signs[1:] < 0)
    if flips.size == 0:
        verdict(capsys, 5, False, "no sign flip of Im chi(Omega_b/2) up to 4x predicted")
    i = flips[0]
    flip = brentq(im_at_line, scan[i], scan[i + 1], xtol=1e-14)
    ratio = flip / predicted
    verdict(
        capsys, 5, abs(ratio - 1) <= 0.05,
        f"flip at r_cp={flip:.5g}, predicted {predicted:.5g} (ratio {ratio:.3f}, need within 5%); "
        f"closed-form threshold ratio {gain_threshold(atom, relax):.2f}",
    )


def test_criterion_6_fig4_sign_control(capsys):
    parts, checks = [], []
    for i in range(1, 7):
        atom, relax = preset(f"fig4-{i}")
        positive = atom.delta_b > 0
        zeros = quiet_zeros(evaluator(atom, relax), [(-2.5, 2.5)], samples=40001)
        lo, hi = (0.02, 0.05) if positive else (-0.05, -0.02)
        hits = [z for z in zeros if lo <= z.re_chi_at_zero <= hi]
        checks.append(bool(hits))
        res = ",".join(f"{z.re_chi_at_zero:+.3g}" for z in zeros) or "none"
        parts.append(f"fig4-{i}: Re chi at zeros [{res}]")
    dn_pos = [to_optical(x, MEDIUM_800).delta_n for x in (0.02, 0.05)]
    dn_neg = to_optical(-0.02, MEDIUM_800).delta_n
    mapping = 0.33 <= dn_pos[0] and dn_pos[1] <= 0.73 and abs(dn_neg + 0.53) <= 0.05
    checks.append(mapping)
    parts.append(f"mapping dn(0.02..0.05)={dn_pos[0]:.3f}..{dn_pos[1]:.3f}, dn(-0.02)={dn_neg:.3f}")
    verdict(capsys, 6, all(checks), "; ".join(parts))


def test_criterion_7_doppler(capsys):
    start = time.perf_counter()
    atom, relax = preset("fig3")
    grid = np.linspace(0.0, 0.3, 1201)
    gains = []
    for sigma in (0.001, 0.01, 0.05):
        im = average_chi_grid(atom, relax, DopplerSpec(sigma_delta=sigma), grid).imag
        gains.append(float(max(0.0, -im.min())))
    ok_suppress = gains[0] > gains[1] > gains[2]

    # "near" the line: within two Doppler widths of Omega_b/2
    sigma, line = 0.05, atom.omega_b / 2
    f = evaluator(atom, relax, "numeric", DopplerSpec(sigma_delta=sigma))
    zeros = quiet_zeros(f, [(0.0, 0.3)])
    near = min(zeros, key=lambda z: abs(z.delta_p_zero - line)) if zeros else None
    ok_zero = near is not None and abs(near.delta_p_zero - line) <= 2 * sigma and near.re_chi_at_zero != 0
    zero_txt = "none" if near is None else f"{near.delta_p_zero:.4f} (Re chi {near.re_chi_at_zero:+.4f})"

    # follow the negative-side zero nearest the narrow line as the probe width grows
    atom1, relax1 = preset("fig1-red")
    bracket = default_brackets(atom1)[0]

    def tracked(spec):
        found = quiet_zeros(evaluator(atom1, relax1, "numeric", spec), [bracket])
        return min(found, key=lambda z: abs(z.delta_p_zero - bracket[1])) if found else None

    base = tracked(None)
    changes = {}
    for s in (1.0, 5.0, 10.0):
        z = tracked(DopplerSpec(sigma_probe=s))
        changes[s] = np.inf if z is None else abs(z.re_chi_at_zero - base.re_chi_at_zero) / abs(base.re_chi_at_zero)
    ok_probe = all(c < 0.10 for c in changes.values())
    elapsed = time.perf_counter() - start
    verdict(
        capsys, 7, ok_suppress and ok_zero and ok_probe and elapsed < 60,
        f"peak gain {gains[0]:.3f} > {gains[1]:.3f} > {gains[2]:.3f}: {ok_suppress}; "
        f"zero near 0.1 at sigma=0.05: {zero_txt}; probe-broadening change in Re chi at the fig1 zero "
        + ", ".join(f"sigma={s:g}: {c:.1%}" for s, c in changes.items())
        + f" (need < 10%); {elapsed:.1f} s",
    )


def test_criterion_8_property_suite(capsys, tmp_path):
    failures = []
    for name, p in presets.PRESETS.items():
        for dp in (-1.0, -p.atom.omega_b / 2, 0.0, 0.3):
            rho = steady_state(p.atom.with_(delta_p=dp), p.relaxation)
            scale = np.max(np.abs(rho.rho))
            if rho.hermiticity_error() > 1e-12 * scale or np.any(rho.populations < -1e-15 * scale):
                failures.append(f"steady state {name}@{dp}")
        a = p.atom.with_(delta_p=-p.atom.omega_b / 2)
        c1 = chi_numeric_grid(a, p.relaxation, [a.delta_p])[0]
        c2 = chi_numeric_grid(a.with_(omega_p=a.omega_p / 2), p.relaxation, [a.delta_p])[0]
        if abs(c1) > 0 and abs(c1 - c2) / abs(c1) >= 1e-3:
            failures.append(f"probe linearity {name}")

    for order in (3, 41, 81):
        if abs(hermite_rule(order)[1].sum() - 1) > 1e-12:
            failures.append(f"weights order {order}")

    atom, relax = preset("fig1-red")
    for backend in ("analytic", "numeric"):
        f = evaluator(atom, relax, backend)
        for z in quiet_zeros(f, default_brackets(atom)):
            if abs(f(np.array([z.delta_p_zero]))[0].imag) >= 1e-8:
                failures.append(f"residual {backend}@{z.delta_p_zero}")

    outputs = []
    for k in range(2):
        path = tmp_path / f"run{k}.csv"
        cli_main(["sweep", "--preset", "fig3", "--sigma-delta", "0.01", "--grid=0:0.3:301", "--out", str(path)])
        outputs.append(path.read_bytes())
    if outputs[0] != outputs[1]:
        failures.append("CLI determinism")
    verdict(capsys, 8, not failures, "all properties hold" if not failures else "; ".join(failures))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v", "-s"]))
