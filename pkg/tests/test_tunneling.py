"""Junction-level physics: Dynes DOS, Fermi factors, forward rate F(E)."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from qcrsim.constants import BOLTZMANN, PLANCK
from qcrsim.errors import QuadratureNotConverged
from qcrsim.tunneling import (
    JunctionConfig,
    RateTable,
    dynes_dos,
    fermi_occupation,
    forward_rate,
    normal_state_rate,
)


class TestJunctionConfig:
    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            JunctionConfig(gap=-1e-23, dynes=1e-4,
                           tunneling_resistance=1e4, electron_temperature=0.09)
        with pytest.raises(ValueError):
            JunctionConfig(gap=1e-23, dynes=1.5,
                           tunneling_resistance=1e4, electron_temperature=0.09)
        with pytest.raises(ValueError):
            JunctionConfig(gap=1e-23, dynes=1e-4,
                           tunneling_resistance=1e4, electron_temperature=-1.0)

    def test_zero_dynes_clamped_with_warning(self):
        with pytest.warns(UserWarning):
            j = JunctionConfig(gap=1e-23, dynes=0.0,
                               tunneling_resistance=1e4, electron_temperature=0.09)
        assert 0 < j.dynes < 1e-10

    def test_large_charging_energy_warns(self):
        with pytest.warns(UserWarning):
            JunctionConfig(gap=1e-23, dynes=1e-4, tunneling_resistance=1e4,
                           electron_temperature=0.09, charging_energy=0.5e-23)


class TestDynesDos:
    def test_zero_energy(self, junction):
        # direct complex arithmetic at eps = 0: gamma_D / sqrt(1 + gamma_D^2)
        g = junction.dynes
        expected = g / np.sqrt(1.0 + g * g)
        assert_allclose(dynes_dos(0.0, junction), expected, rtol=1e-12)

    def test_above_gap_closed_form(self, junction):
        # eps = 2*gap, gamma_D -> 0: eps/sqrt(eps^2 - gap^2) = 2/sqrt(3)
        tiny = JunctionConfig(gap=junction.gap, dynes=1e-9,
                              tunneling_resistance=1e4, electron_temperature=0.09)
        assert_allclose(dynes_dos(2.0 * tiny.gap, tiny), 2.0 / np.sqrt(3.0),
                        rtol=1e-8)

    def test_even_in_energy(self, junction, rng):
        eps = rng.uniform(-5.0, 5.0, size=1000) * junction.gap
        assert_allclose(dynes_dos(eps, junction), dynes_dos(-eps, junction),
                        rtol=0, atol=1e-15)

    def test_nonnegative(self, junction, rng):
        eps = rng.uniform(-5.0, 5.0, size=1000) * junction.gap
        assert np.all(dynes_dos(eps, junction) >= 0)


class TestFermiOccupation:
    def test_symmetry_point(self):
        assert fermi_occupation(0.0, 0.09) == 0.5

    def test_one_thermal_energy(self):
        kt = BOLTZMANN * 0.09
        assert_allclose(fermi_occupation(kt, 0.09), 1.0 / (np.e + 1.0),
                        rtol=1e-12)

    def test_deep_tail_no_overflow(self):
        kt = BOLTZMANN * 0.09
        # extended-precision value of 1/(exp(100) + 1)
        assert_allclose(fermi_occupation(100.0 * kt, 0.09),
                        3.7200759760208356e-44, rtol=1e-10)
        assert fermi_occupation(1e4 * kt, 0.09) == 0.0
        assert fermi_occupation(-1e4 * kt, 0.09) == 1.0

    def test_particle_hole(self, rng):
        eps = rng.normal(scale=1e-22, size=200)
        f = fermi_occupation(eps, 0.09)
        assert_allclose(f + fermi_occupation(-eps, 0.09), 1.0, atol=1e-15)
        # monotone decreasing
        order = np.argsort(eps)
        assert np.all(np.diff(f[order]) <= 0)


class TestForwardRate:
    def test_normal_state_closed_form(self, junction):
        # gap -> 0 oracle: F(E) = E / [h (1 - exp(-E/kT))]
        kt = junction.thermal_energy
        for energy in np.linspace(-5.0, 5.0, 20) * kt:
            got = forward_rate(energy, junction, dos=lambda e: 1.0)
            want = normal_state_rate(energy, junction)
            assert_allclose(got, want, rtol=1e-6)

    def test_detailed_balance(self, junction):
        kt = junction.thermal_energy
        for energy in (0.5 * junction.gap, junction.gap, 2.0 * junction.gap):
            forward = forward_rate(energy, junction)
            backward = forward_rate(-energy, junction)
            assert_allclose(backward, np.exp(-energy / kt) * forward, rtol=1e-6)

    def test_three_regions(self, junction):
        kt = junction.thermal_energy
        gap = junction.gap
        # (i) gap suppression
        assert forward_rate(0.0, junction) / forward_rate(gap + 10 * kt, junction) < 1e-2
        # (ii) thermally activated exponential rise just below the gap
        # (further out the Dynes floor takes over and flattens the slope)
        e1, e2 = gap - 4.5 * kt, gap - 2.5 * kt
        slope = (np.log(forward_rate(e2, junction)) -
                 np.log(forward_rate(e1, junction))) / (e2 - e1)
        assert_allclose(slope, 1.0 / kt, rtol=0.25)
        # (iii) saturation above the gap: growth is algebraic, not exponential
        assert forward_rate(3 * gap, junction) / forward_rate(2 * gap, junction) < 2.0

    def test_nonnegative_and_monotone(self, junction):
        energies = np.linspace(-2, 4, 41) * junction.gap
        rates = np.array([forward_rate(e, junction) for e in energies])
        assert np.all(rates >= 0)
        assert np.all(np.diff(rates) >= -1e-9 * rates[1:])

    def test_deep_negative_energy_continuation(self, junction):
        # far below the Fermi sea the rate continues through detailed balance
        kt = junction.thermal_energy
        e = -700.0 * kt
        val = forward_rate(e, junction)
        assert val >= 0.0
        assert val < 1e-250 * forward_rate(-e, junction)

    def test_not_converged_raises(self, junction):
        with pytest.raises(QuadratureNotConverged):
            forward_rate(junction.gap, junction, rtol=1e-14, limit=8)


@pytest.fixture(scope="module")
def table(junction):
    return RateTable(junction, e_max=40.0 * junction.gap)


class TestRateTable:

    def test_matches_direct_quadrature(self, table, junction, rng):
        gap = junction.gap
        energies = np.concatenate([
            rng.uniform(-3.0, 30.0, size=60) * gap,
            gap + rng.uniform(-30, 30, size=30) * junction.thermal_energy,
            -gap + rng.uniform(-30, 30, size=30) * junction.thermal_energy,
        ])
        for e in energies:
            assert_allclose(table(e), forward_rate(e, junction), rtol=1e-6,
                            err_msg=f"at E = {e / gap:.3f} gap")

    def test_vectorized_matches_scalar(self, table, junction):
        energies = np.linspace(-2, 20, 57) * junction.gap
        assert_allclose(table(energies),
                        np.array([table(e) for e in energies]), rtol=1e-14)

    def test_kms_branch(self, table, junction):
        kt = junction.thermal_energy
        e = -650.0 * kt
        expected = table(-e) * np.exp(e / kt)
        assert_allclose(table(e), expected, rtol=1e-10)

    def test_beyond_domain_raises(self, table, junction):
        with pytest.raises(ValueError):
            table(41.0 * junction.gap)
