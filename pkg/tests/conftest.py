import numpy as np
import pytest

from digs import presets
from digs.model import AtomParams, RelaxationModel


@pytest.fixture
def fig1():
    p = presets.get("fig1-red")
    return p.atom, p.relaxation


@pytest.fixture
def fig3():
    p = presets.get("fig3")
    return p.atom, p.relaxation


def bare_two_level(r_b=1e-4, delta_p=0.0, omega_p=1e-6):
    """Probe on a<->b with every other field off."""
    atom = AtomParams(omega_mu=0.0, omega_b=0.0, omega_c=0.0, omega_p=omega_p, delta_p=delta_p)
    relax = RelaxationModel.from_rates(gamma_aa=2.0, gamma_ground=1e-4, r_b=r_b)
    return atom, relax
