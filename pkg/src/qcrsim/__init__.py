"""Simulation and analysis toolkit for a resonator mode coupled to a
voltage- and rf-controlled NIS-junction environment.

The package computes photon-assisted tunnelling rates, bias- and
photon-number-dependent coupling strengths, effective environment
temperatures, the dynamic effective frequency (Lamb) shift, drive-power to
occupation mappings, and synthetic/fitted microwave reflection spectra.
"""

__version__ = "0.1.0"
