"""Two-photon source: polarization Bell state, OAM spectrum, and their product.

Post-selecting one photon per output port of the beam splitter leaves the
polarization Bell state (|H>|V> + |V>|H>)/sqrt(2), while angular momentum
conservation in the down-conversion crystal anti-correlates the OAM of the
pair, sum_m C_m |m>|-m>. The full source state is the product of the two,
entangled independently in spin and in orbit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .hilbert import (
    NORM_TOL,
    PRUNE_EPS,
    BiphotonState,
    SpinOrbitMode,
    biphoton_to_circular_basis,
)


@dataclass(frozen=True)
class OamSpectrum:
    """Pair-OAM coefficients C_m over the window |m| <= m_max, unit norm.

    Coefficients are normalized at construction; asymmetric weights
    (C_m != C_{-m}) are allowed and model degraded fringe visibility,
    which goes beyond the symmetric down-conversion source.
    """

    m_max: int
    coefficients: Mapping[int, complex]

    def __post_init__(self):
        if self.m_max < 0:
            raise ValueError("m_max must be non-negative")
        cleaned: dict[int, complex] = {}
        for m, c in self.coefficients.items():
            m = int(m)
            if abs(m) > self.m_max:
                raise ValueError(f"coefficient at m={m} outside |m| <= {self.m_max}")
            value = complex(c)
            if abs(value) >= PRUNE_EPS:
                cleaned[m] = value
        total = sum(abs(c) ** 2 for c in cleaned.values())
        if total < PRUNE_EPS:
            raise ValueError("spectrum has no nonzero coefficients")
        if abs(total - 1.0) > NORM_TOL:
            scale = 1.0 / math.sqrt(total)
            cleaned = {m: c * scale for m, c in cleaned.items()}
        object.__setattr__(self, "coefficients", MappingProxyType(cleaned))

    def __getitem__(self, m: int) -> complex:
        return self.coefficients.get(int(m), 0j)

    def is_symmetric(self, tol: float = 1e-12) -> bool:
        return all(abs(self[m] - self[-m]) <= tol for m in self.coefficients)


def make_spectrum(shape: str, m_max: int = 8, sigma: float = 2.0) -> OamSpectrum:
    """Build a symmetric spectrum: 'flat' equal weights or 'gaussian' in m.

    Gaussian weights follow exp(-m^2 / (2 sigma^2)) before normalization.
    """
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    if shape == "flat":
        weights = {m: 1.0 for m in range(-m_max, m_max + 1)}
    elif shape == "gaussian":
        if sigma <= 0:
            raise ValueError("sigma must be positive")
        weights = {
            m: math.exp(-(m * m) / (2.0 * sigma * sigma))
            for m in range(-m_max, m_max + 1)
        }
    else:
        raise ValueError(f"unknown spectrum shape {shape!r}")
    return OamSpectrum(m_max, weights)


def spin_bell_state(m_max: int = 8) -> BiphotonState:
    """(|H>_t|V>_r + |V>_t|H>_r)/sqrt(2) on m = 0, stored in the circular basis."""
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    linear = BiphotonState(
        {
            (("H", 0), ("V", 0)): inv_sqrt2,
            (("V", 0), ("H", 0)): inv_sqrt2,
        },
        m_max,
    )
    return biphoton_to_circular_basis(linear)


def hyper_state(spectrum: OamSpectrum) -> BiphotonState:
    """Product of the spin Bell state and the anti-correlated OAM state.

    Every nonzero amplitude sits on a pair with m_t + m_r = 0, and each
    (m, -m) block carries the full spin Bell structure scaled by C_m.
    """
    spin = spin_bell_state(spectrum.m_max)
    amps: dict[tuple[SpinOrbitMode, SpinOrbitMode], complex] = {}
    for (kt, kr), spin_amp in spin.amplitudes.items():
        for m, cm in spectrum.coefficients.items():
            amps[(SpinOrbitMode(kt.spin, m), SpinOrbitMode(kr.spin, -m))] = spin_amp * cm
    return BiphotonState(amps, spectrum.m_max)
