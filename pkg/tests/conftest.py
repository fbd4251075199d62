"""Shared fixtures: device parameters of the reference sample."""

import numpy as np
import pytest

from qcrsim.tunneling import JunctionConfig

# Reference junction: gap 208 ueV, Dynes 4e-4, electron temperature 90 mK.
# The tunnelling resistance only scales rates; 26 kOhm is of the calibrated
# order (tests that depend on the calibrated value run it themselves).
GAP_UEV = 208.0
DYNES = 4e-4
T_N_MK = 90.0
RT_KOHM = 26.0

F_P_GHZ = 8.8241
F_S_GHZ = 17.651
Z_P_OHM = 42.8
ALPHA_P = 0.7817
ALPHA_S = 0.7413


@pytest.fixture(scope="session")
def junction():
    return JunctionConfig.from_lab_units(
        gap_ueV=GAP_UEV,
        dynes=DYNES,
        tunneling_resistance_kohm=RT_KOHM,
        electron_temperature_mK=T_N_MK,
    )


@pytest.fixture()
def rng():
    # function-scoped so draws do not depend on test execution order
    return np.random.default_rng(20260809)
