"""Weak-probe optical response of the five-level DIGS atom."""
from .analytic import chi_analytic, gain_linewidth, gain_threshold
from .doppler import DopplerSpec, average_chi
from .liouvillian import steady_state, susceptibility_numeric
from .model import AtomParams, MediumParams, RelaxationModel, Spectrum, validate
from .spectra import find_zeros, sweep, to_optical, zero_trend

__all__ = [
    "AtomParams",
    "DopplerSpec",
    "MediumParams",
    "RelaxationModel",
    "Spectrum",
    "average_chi",
    "chi_analytic",
    "find_zeros",
    "gain_linewidth",
    "gain_threshold",
    "steady_state",
    "susceptibility_numeric",
    "sweep",
    "to_optical",
    "validate",
    "zero_trend",
]
