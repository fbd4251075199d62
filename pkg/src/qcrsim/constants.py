"""Physical constants and unit conversions.

All internal computations use SI units: energies in joules, frequencies in
rad/s, voltages in volts, temperatures in kelvin, capacitances in farads.
External interfaces (config files, CLI output) use the lab units customary
for this kind of device: µeV, mK, GHz, mV, fF, dBm.
"""

import numpy as np
from scipy.constants import e as ELEMENTARY_CHARGE
from scipy.constants import h as PLANCK
from scipy.constants import hbar as HBAR
from scipy.constants import k as BOLTZMANN

# von Klitzing constant h/e^2 in ohm
R_K = PLANCK / ELEMENTARY_CHARGE**2

TWO_PI = 2.0 * np.pi


def ueV_to_joule(energy_uev):
    """Convert an energy from µeV to J."""
    return np.asarray(energy_uev) * 1e-6 * ELEMENTARY_CHARGE


def joule_to_ueV(energy_j):
    """Convert an energy from J to µeV."""
    return np.asarray(energy_j) / (1e-6 * ELEMENTARY_CHARGE)


def ghz_to_rad_per_s(frequency_ghz):
    """Convert an ordinary frequency in GHz to an angular frequency in rad/s."""
    return np.asarray(frequency_ghz) * 1e9 * TWO_PI


def rad_per_s_to_ghz(omega):
    """Convert an angular frequency in rad/s to an ordinary frequency in GHz."""
    return np.asarray(omega) / (1e9 * TWO_PI)


def mhz_to_rad_per_s(frequency_mhz):
    """Convert an ordinary frequency in MHz to an angular frequency in rad/s."""
    return np.asarray(frequency_mhz) * 1e6 * TWO_PI


def rad_per_s_to_mhz(omega):
    """Convert an angular frequency in rad/s to an ordinary frequency in MHz."""
    return np.asarray(omega) / (1e6 * TWO_PI)


def mv_to_volt(bias_mv):
    """Convert a bias voltage from mV to V."""
    return np.asarray(bias_mv) * 1e-3


def volt_to_mv(bias_v):
    """Convert a bias voltage from V to mV."""
    return np.asarray(bias_v) * 1e3


def mk_to_kelvin(temperature_mk):
    """Convert a temperature from mK to K."""
    return np.asarray(temperature_mk) * 1e-3


def kelvin_to_mk(temperature_k):
    """Convert a temperature from K to mK."""
    return np.asarray(temperature_k) * 1e3


def ff_to_farad(capacitance_ff):
    """Convert a capacitance from fF to F."""
    return np.asarray(capacitance_ff) * 1e-15


def farad_to_ff(capacitance_f):
    """Convert a capacitance from F to fF."""
    return np.asarray(capacitance_f) * 1e15


def dbm_to_watts(power_dbm):
    """Convert a power from dBm to W."""
    return 10.0 ** ((np.asarray(power_dbm) - 30.0) / 10.0)


def watts_to_dbm(power_watts):
    """Convert a power from W to dBm."""
    return 10.0 * np.log10(np.asarray(power_watts)) + 30.0
