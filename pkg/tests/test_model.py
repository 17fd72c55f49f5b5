import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from digs import presets
from digs.config import RunConfig, SweepSpec, dump_config, parse_config
from digs.doppler import DopplerSpec
from digs.model import AtomParams, MediumParams, RelaxationModel, Spectrum, validate

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)
positive = st.floats(min_value=1e-6, max_value=1e3, allow_nan=False, allow_infinity=False)


def test_fig1_set_validates_cleanly(fig1):
    report = validate(*fig1)
    assert report.ok
    assert report.warnings == []


def test_zero_population_decay_fails(fig1):
    atom, relax = fig1
    g = np.array(relax.gamma)
    g[1, 1] = 0.0
    report = validate(atom, RelaxationModel(g, relax.r_b, relax.r_cp))
    assert not report.ok
    assert any("gamma_bb" in e for e in report.errors)


def test_strong_rf_coupling_warns(fig1):
    atom, relax = fig1
    report = validate(atom.with_(omega_c=3.0), relax)
    assert report.ok
    assert any("omega_c" in w for w in report.warnings)


@pytest.mark.parametrize(
    "change",
    [dict(omega_mu=0.0), dict(omega_b=-0.1), dict(omega_c=-1.0), dict(omega_p=0.0)],
)
def test_atom_invariants(fig1, change):
    atom, relax = fig1
    assert not validate(atom.with_(**change), relax).ok


def test_relaxation_invariants(fig1):
    atom, relax = fig1
    g = np.array(relax.gamma)
    g[0, 3] = 0.7  # breaks symmetry
    assert not validate(atom, RelaxationModel(g)).ok
    assert not validate(atom, RelaxationModel(relax.gamma * 2)).ok  # gamma_ab != 1
    assert not validate(atom, relax.with_(r_b=-1.0)).ok


def test_slow_optical_decay_warns(fig1):
    atom, _ = fig1
    relax = RelaxationModel.from_rates(gamma_ground=1e-4, gamma_Cp=5.0)
    report = validate(atom, relax)
    assert report.ok and report.warnings


def test_strong_probe_warns(fig1):
    atom, relax = fig1
    report = validate(atom.with_(omega_p=0.05), relax)
    assert not atom.with_(omega_p=0.05).weak_probe
    assert any("weak probe" in w for w in report.warnings)


def test_named_rate_accessors():
    relax = RelaxationModel.from_rates(gamma_C=0.3, gamma_Cp=0.2)
    assert relax.gamma_C == 0.3 and relax.gamma_Cp == 0.2
    assert relax.rate("c", "bp") == 0.3 and relax.rate("b", "cp") == 0.2
    g = np.array(relax.gamma)
    g[3, 1] = g[1, 3] = 0.4
    with pytest.raises(ValueError):
        RelaxationModel(g).gamma_C


def test_types_are_immutable(fig1):
    atom, relax = fig1
    with pytest.raises(AttributeError):
        atom.omega_b = 1.0
    with pytest.raises(ValueError):
        relax.gamma[0, 0] = 5.0


def test_medium_rejects_nonpositive():
    with pytest.raises(ValueError):
        MediumParams(0.0, 8e-5)
    with pytest.raises(ValueError):
        MediumParams(1e15, -1.0)


def test_spectrum_invariants():
    meta = {"backend": "numeric"}
    Spectrum(np.array([0.0, 1.0]), np.array([0j, 1j]), meta)
    with pytest.raises(ValueError):
        Spectrum(np.array([1.0, 0.0]), np.array([0j, 0j]), meta)
    with pytest.raises(ValueError):
        Spectrum(np.array([0.0, 1.0]), np.array([0j, np.nan]), meta)
    with pytest.raises(ValueError):
        Spectrum(np.array([0.0, 1.0]), np.array([0j, 0j]), {"backend": "doppler"})


@given(finite, finite)
def test_two_photon_detuning_is_derived(delta_p, delta_mu):
    atom = AtomParams(omega_mu=2.0, omega_b=0.5, omega_c=0.1, delta_p=delta_p, delta_mu=delta_mu)
    assert atom.delta == delta_p - delta_mu


@settings(max_examples=50)
@given(
    st.tuples(positive, positive, positive, positive, finite, finite, finite),
    st.lists(positive, min_size=15, max_size=15),
    positive,
    positive,
    st.one_of(st.none(), st.tuples(positive, positive)),
    st.one_of(st.none(), st.tuples(positive, positive, st.sampled_from([3, 41, 81]))),
)
def test_config_round_trip_is_bit_exact(atom_vals, gammas, r_b, r_cp, medium, doppler):
    om_mu, om_b, om_c, om_p, d_mu, d_b, d_c = atom_vals
    atom = AtomParams(om_mu, om_b, om_c, om_p, 0.0, d_mu, d_b, d_c)
    g = np.zeros((5, 5))
    g[np.triu_indices(5)] = gammas
    g = g + np.triu(g, 1).T
    config = RunConfig(
        atom,
        RelaxationModel(g, r_b=r_b, r_cp=r_cp),
        MediumParams(*medium) if medium else None,
        DopplerSpec(doppler[0], doppler[1], doppler[2]) if doppler else None,
        SweepSpec(-1.5, 2.25, 17),
        "numeric",
    )
    loaded = parse_config(dump_config(config))
    assert loaded == config
    assert np.array_equal(loaded.relaxation.gamma, config.relaxation.gamma)


def test_every_preset_round_trips():
    for p in presets.PRESETS.values():
        config = RunConfig(p.atom, p.relaxation, sweep=SweepSpec(*p.grid))
        assert parse_config(dump_config(config)) == config


def test_every_preset_validates():
    for p in presets.PRESETS.values():
        report = validate(p.atom, p.relaxation)
        assert report.ok, p.name
        assert report.warnings == [], p.name
        assert p.atom.weak_probe


def test_config_accepts_inline_comments():
    text = (
        "[atom]\nomega_mu = 2.0   # control\nomega_b = 0.65\n"
        "[relaxation]  # rates\nr_b = 5e-05 ; pump\ngamma_ground = 0.0001\n"
    )
    cfg = parse_config(text)
    assert cfg.atom.omega_mu == 2.0 and cfg.relaxation.r_b == 5e-05
