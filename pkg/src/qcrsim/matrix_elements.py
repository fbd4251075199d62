"""Circuit-level charge-shift physics.

Capacitance-network reduction to the charge-shift ratios α_p/s and the
island charging energy, the interaction parameter ρ = πα²Z/R_K, the
Franck-Condon transition matrix elements

    |M_mm'|² = e^{-ρ} ρ^{|l|} (m'!/m!)^{sgn l} [L^{|l|}_{min(m,m')}(ρ)]²,
    l = m - m',

between oscillator Fock states, and Poisson occupation weights for a
classically driven mode.  Matrix elements are evaluated in log space with a
rescaled three-term Laguerre recurrence so occupations up to 1e4 stay inside
double-precision range.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import fsolve
from scipy.special import gammaln
from scipy.stats import poisson

from .constants import ELEMENTARY_CHARGE, R_K, TWO_PI, ff_to_farad, ghz_to_rad_per_s, mhz_to_rad_per_s
from .errors import DegenerateNetwork

_RESCALE = 1e250
_LOG_RESCALE = math.log(_RESCALE)


@dataclass(frozen=True)
class CapacitanceNetwork:
    """Capacitances of the two-mode + island circuit, all in F.

    c_sigma is the total island capacitance (junction plus island-to-ground).
    """

    c_p: float
    c_s: float
    c_cp: float
    c_cs: float
    c_sigma: float

    def __post_init__(self):
        for name in ("c_p", "c_s", "c_cp", "c_cs", "c_sigma"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def from_lab_units(cls, c_p_fF, c_s_fF, c_cp_fF, c_cs_fF, c_sigma_fF):
        return cls(*(float(ff_to_farad(c)) for c in
                     (c_p_fF, c_s_fF, c_cp_fF, c_cs_fF, c_sigma_fF)))


@dataclass(frozen=True)
class CapacitanceReduction:
    """Derived quantities of a CapacitanceNetwork."""

    alpha_p: float
    alpha_s: float
    c_n_prime: float     # renormalized island capacitance (F); may be negative
    charging_energy: float  # e²/(2 C_N'), clamped to 0 if C_N' <= 0 (J)


def capacitance_ratios(net):
    """Reduce a capacitance network to (α_p, α_s, C_N', E_N).

    α_p = C_cp (C_cs + C_s) / [C_cs (C_cp + C_Σ) + C_s (C_cp + C_cs + C_Σ)]
    and α_s by swapping the p/s subscripts.  C_N' is the renormalized island
    capacitance of the diagonal charging term once the mode coordinates are
    shifted by α Q_N; for strongly coupled networks the neglected direct
    mode-mode term can drive C_N' negative, in which case the charging
    energy is clamped to zero with a warning (it is constrained to be the
    smallest energy scale of the model anyway).

    Raises
    ------
    DegenerateNetwork
        If a reduction denominator vanishes.
    """
    c_p, c_s = net.c_p, net.c_s
    c_cp, c_cs, c_sig = net.c_cp, net.c_cs, net.c_sigma

    den_p = c_cs * (c_cp + c_sig) + c_s * (c_cp + c_cs + c_sig)
    den_s = c_cp * (c_cs + c_sig) + c_p * (c_cp + c_cs + c_sig)
    scale = (c_cp + c_cs + c_sig) * (c_p + c_s + c_cp + c_cs)
    if abs(den_p) < 1e-12 * scale or abs(den_s) < 1e-12 * scale:
        raise DegenerateNetwork("capacitance-ratio denominator underflow")
    alpha_p = c_cp * (c_cs + c_s) / den_p
    alpha_s = c_cs * (c_cp + c_p) / den_s

    num = (c_cs * (c_p + c_cp) * c_s
           + (c_p + c_cp) * (c_s + c_cs) * c_sig
           + c_cp * (c_s + c_cs) * c_p)
    den = (-c_cs * (c_p + c_cp) * alpha_s
           + (c_p + c_cp) * (c_s + c_cs)
           - c_cp * (c_s + c_cs) * alpha_p)
    if abs(den) < 1e-12 * (c_p + c_cp) * (c_s + c_cs):
        raise DegenerateNetwork("island-capacitance denominator underflow")
    c_n_prime = num / den
    if c_n_prime > 0:
        charging_energy = ELEMENTARY_CHARGE**2 / (2.0 * c_n_prime)
    else:
        warnings.warn(
            "renormalized island capacitance is negative (strong-coupling "
            "network); charging energy clamped to 0"
        )
        charging_energy = 0.0
    return CapacitanceReduction(alpha_p, alpha_s, c_n_prime, charging_energy)


def solve_network_for_alphas(alpha_p, alpha_s, c_cp, c_cs, c_sigma,
                             guess=(4e-13, 2e-13)):
    """Find (C_p, C_s) reproducing target charge-shift ratios.

    Two-parameter root solve; the network inversion is otherwise
    underdetermined, so the coupling and island capacitances are fixed
    inputs.  All capacitances in F.
    """
    def residual(x):
        net = CapacitanceNetwork(c_p=x[0], c_s=x[1], c_cp=c_cp, c_cs=c_cs,
                                 c_sigma=c_sigma)
        red = capacitance_ratios(net)
        return [red.alpha_p - alpha_p, red.alpha_s - alpha_s]

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        solution, info, ier, msg = fsolve(residual, guess, full_output=True)
    if ier != 1 or np.any(solution <= 0):
        raise DegenerateNetwork(f"no positive (C_p, C_s) solution: {msg}")
    return CapacitanceNetwork(c_p=float(solution[0]), c_s=float(solution[1]),
                              c_cp=c_cp, c_cs=c_cs, c_sigma=c_sigma)


@dataclass(frozen=True)
class ModeConfig:
    """One resonator mode and its couplings.

    Attributes
    ----------
    bare_frequency : float
        Bare mode angular frequency ω⁰ in rad/s.
    impedance : float
        Characteristic impedance Z in Ω (LC identity Z = 1/(ωC)).
    alpha : float
        Charge-shift ratio of this mode.
    rho : float
        Interaction parameter πα²Z/R_K.  Derived from alpha and impedance
        when not supplied; if supplied it must agree with the derived value
        to 1e-9 relative.
    external_coupling : float
        Coupling strength γ_tr to the transmission line, rad/s.
    excess_coupling : float
        Excess damping γ_0, rad/s.
    output_capacitance : float
        Output coupler C_g in F.
    line_impedance : float
        Transmission-line impedance Z_tr in Ω.
    """

    bare_frequency: float
    impedance: float
    alpha: float
    external_coupling: float = 0.0
    excess_coupling: float = 0.0
    output_capacitance: float = 6.4e-15
    line_impedance: float = 50.0
    rho: float = None

    def __post_init__(self):
        if self.bare_frequency <= 0:
            raise ValueError("bare_frequency must be positive")
        if self.impedance <= 0:
            raise ValueError("impedance must be positive")
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")
        if self.external_coupling < 0 or self.excess_coupling < 0:
            raise ValueError("coupling strengths must be non-negative")
        if self.output_capacitance <= 0 or self.line_impedance <= 0:
            raise ValueError("output capacitance and line impedance must be positive")
        derived = math.pi * self.alpha**2 * self.impedance / R_K
        if self.rho is None:
            object.__setattr__(self, "rho", derived)
        elif abs(self.rho - derived) > 1e-9 * derived:
            raise ValueError(
                f"supplied rho {self.rho:.6e} disagrees with "
                f"pi*alpha^2*Z/R_K = {derived:.6e}"
            )

    @classmethod
    def from_lab_units(cls, frequency_GHz, impedance_ohm, alpha,
                       external_coupling_MHz=0.0, excess_coupling_MHz=0.0,
                       output_capacitance_fF=6.4, line_impedance_ohm=50.0,
                       rho=None):
        return cls(
            bare_frequency=float(ghz_to_rad_per_s(frequency_GHz)),
            impedance=float(impedance_ohm),
            alpha=float(alpha),
            external_coupling=float(mhz_to_rad_per_s(external_coupling_MHz)),
            excess_coupling=float(mhz_to_rad_per_s(excess_coupling_MHz)),
            output_capacitance=float(ff_to_farad(output_capacitance_fF)),
            line_impedance=float(line_impedance_ohm),
            rho=rho,
        )

    @property
    def mode_capacitance(self):
        """Lumped C of the mode through the LC identity 1/(ωZ), in F."""
        return 1.0 / (self.bare_frequency * self.impedance)


def laguerre_logs(alpha, n_max, x):
    """log-magnitudes and signs of L_n^alpha(x) for n = 0..n_max.

    Three-term recurrence in n with per-step rescaling; the log-magnitude
    accumulator keeps rows finite far beyond double-precision range.
    """
    signs = np.ones(n_max + 1)
    logs = np.zeros(n_max + 1)
    if n_max == 0:
        return signs, logs
    v_prev, v = 1.0, 1.0 + alpha - x
    scale = 0.0
    logs[1] = math.log(abs(v)) if v != 0.0 else -math.inf
    signs[1] = math.copysign(1.0, v)
    for n in range(1, n_max):
        v_next = ((2.0 * n + 1.0 + alpha - x) * v - (n + alpha) * v_prev) / (n + 1.0)
        v_prev, v = v, v_next
        mag = abs(v)
        if mag > _RESCALE:
            v_prev /= _RESCALE
            v /= _RESCALE
            scale += _LOG_RESCALE
            mag = abs(v)
        elif 0.0 < mag < 1.0 / _RESCALE:
            v_prev *= _RESCALE
            v *= _RESCALE
            scale -= _LOG_RESCALE
            mag = abs(v)
        logs[n + 1] = (math.log(mag) + scale) if mag != 0.0 else -math.inf
        signs[n + 1] = math.copysign(1.0, v)
    return signs, logs


def transition_probability(m, m_prime, rho):
    """Squared transition matrix element |M_mm'|² between Fock states.

    Symmetric in m <-> m'; stable for occupations up to at least 1e4.
    Result clipped to [0, 1].
    """
    if m < 0 or m_prime < 0:
        raise ValueError("Fock indices must be non-negative")
    if rho <= 0:
        raise ValueError("rho must be positive")
    lo, hi = (m, m_prime) if m <= m_prime else (m_prime, m)
    ell = hi - lo
    _, logs = laguerre_logs(ell, lo, rho)
    log_l = logs[lo]
    if log_l == -math.inf:
        return 0.0
    log_m2 = (-rho + ell * math.log(rho) if ell else -rho) \
        + gammaln(lo + 1) - gammaln(hi + 1) + 2.0 * log_l
    if log_m2 < -745.0:
        return 0.0
    return min(math.exp(log_m2), 1.0)


def poisson_weight(k, nbar):
    """Poisson probability of k photons at mean occupation nbar."""
    if nbar < 0 or k < 0:
        raise ValueError("k and nbar must be non-negative")
    if nbar == 0.0:
        return 1.0 if k == 0 else 0.0
    log_p = k * math.log(nbar) - nbar - gammaln(k + 1)
    return math.exp(log_p) if log_p > -745.0 else 0.0


def poisson_window(nbar, tail=1e-12):
    """Index window [k_lo, k_hi] holding all but < tail Poisson mass per side."""
    if nbar == 0.0:
        return 0, 0
    k_lo = int(max(0, poisson.ppf(tail, nbar) - 2))
    k_hi = int(poisson.ppf(1.0 - tail, nbar) + 2)
    return k_lo, k_hi


def traced_mode_weights(nbar, rho, l_max, tail=1e-12):
    """Photon-exchange weights of a Poisson-occupied mode.

    Returns W[l] = Σ_k P_k(nbar) |M_{k, k-l}|² for l = -l_max .. l_max
    (array indexed W[l + l_max]).  l counts photons absorbed from the mode
    by a tunnelling event; negative l is emission into the mode.
bada
    The row sums of |M|² are complete, so Σ_l W[l] -> 1 as l_max grows.
    """
    k_lo, k_hi = poisson_window(nbar, tail)
    ks = np.arange(k_lo, k_hi + 1)
    if nbar == 0.0:
        log_pk = np.array([0.0])
    else:
        log_pk = ks * math.log(nbar) - nbar - gammaln(ks + 1)

    weights = np.zeros(2 * l_max + 1)
    lg_k = gammaln(ks + 1)
    for ell in range(0, l_max + 1):
        _, logs = laguerre_logs(ell, k_hi, rho)
        base = -rho + (ell * math.log(rho) if ell else 0.0)
        # absorption k -> k - ell
        valid = ks >= ell
        if np.any(valid):
            kv = ks[valid]
            log_m2 = base + gammaln(kv - ell + 1) - lg_k[valid] \
                + 2.0 * logs[kv - ell]
            with np.errstate(under="ignore"):
                weights[l_max + ell] = np.sum(np.exp(log_pk[valid] + log_m2))
        # emission k -> k + ell
        if ell > 0:
            log_m2 = base + lg_k - gammaln(ks + ell + 1) + 2.0 * logs[ks]
            with np.errstate(under="ignore"):
                weights[l_max - ell] = np.sum(np.exp(log_pk + log_m2))
    return weights
