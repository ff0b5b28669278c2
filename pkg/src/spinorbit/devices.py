"""Optical elements as operators on photon states.

The q-plate is the spin-orbit coupler: it swaps circular polarization while
shifting the OAM by its doubled charge 2q, so |L,m> -> |R,m+2q> and
|R,m> -> |L,m-2q>. A half-wave plate with fast axis at alpha advances
circular components by opposite phases, rotating any linear polarization
from angle chi to 2*alpha - chi. An analyzer is the full detection chain
(q-plate, half-wave plate, polarizer, single-mode fiber) and accepts one
two-mode spin-orbit superposition, given here both in closed form and by
back-propagating the fiber mode through the chain.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import TruncationOverflowError
from .hilbert import (
    DEFAULT_M_MAX,
    PhotonState,
    Spin,
    SpinOrbitMode,
    as_circular,
    linear_state,
)

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class QPlate:
    """Spin-orbit coupling plate with doubled topological charge twoQ = 2q."""

    twoQ: int

    def __post_init__(self):
        if self.twoQ == 0:
            raise ValueError("q-plate charge must be nonzero")

    @property
    def q(self) -> float:
        return self.twoQ / 2.0


@dataclass(frozen=True)
class Analyzer:
    """One measurement arm: doubled charge 2q, waveplate angle theta, rotation beta."""

    twoQ: int
    theta: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        if self.twoQ == 0:
            raise ValueError("analyzer charge must be nonzero")


def qplate_apply(plate: QPlate, state: PhotonState) -> PhotonState:
    """Send |L,m> to |R,m+2q> and |R,m> to |L,m-2q>, amplitudes unchanged.

    Unitary on its domain and equal to its own inverse. Raises
    TruncationOverflowError if a shifted m would leave the state's window.
    """
    state = as_circular(state)
    out: dict[SpinOrbitMode, complex] = {}
    for mode, amp in state.amplitudes.items():
        if mode.spin is Spin.L:
            shifted = SpinOrbitMode(Spin.R, mode.m + plate.twoQ)
        else:
            shifted = SpinOrbitMode(Spin.L, mode.m - plate.twoQ)
        if abs(shifted.m) > state.m_max:
            raise TruncationOverflowError(
                f"q-plate shifts m={mode.m} to {shifted.m}, beyond |m| <= {state.m_max}"
            )
        out[shifted] = amp
    return PhotonState(out, state.m_max)


def hwp_apply(alpha: float, state: PhotonState) -> PhotonState:
    """Half-wave plate with fast axis at alpha: |L,m> -> e^{2i alpha}|R,m>
    and |R,m> -> e^{-2i alpha}|L,m> (overall phase dropped), OAM untouched."""
    state = as_circular(state)
    phase = cmath.exp(2j * alpha)
    out: dict[SpinOrbitMode, complex] = {}
    for mode, amp in state.amplitudes.items():
        if mode.spin is Spin.L:
            out[SpinOrbitMode(Spin.R, mode.m)] = phase * amp
        else:
            out[SpinOrbitMode(Spin.L, mode.m)] = amp / phase
    return PhotonState(out, state.m_max)


def polarizer_project(axis_angle: float, state: PhotonState) -> PhotonState:
    """Project the spin part onto the linear polarization at axis_angle.

    Identity on m; the result is unnormalized and may be the zero state.
    """
    state = as_circular(state)
    phase = cmath.exp(1j * axis_angle)
    overlaps: dict[int, complex] = {}
    for mode, amp in state.amplitudes.items():
        coeff = phase if mode.spin is Spin.L else phase.conjugate()
        overlaps[mode.m] = overlaps.get(mode.m, 0j) + coeff * amp * _INV_SQRT2
    out: dict[SpinOrbitMode, complex] = {}
    for m, p in overlaps.items():
        out[SpinOrbitMode(Spin.L, m)] = p * phase.conjugate() * _INV_SQRT2
        out[SpinOrbitMode(Spin.R, m)] = p * phase * _INV_SQRT2
    return PhotonState(out, state.m_max)


def analyzer_state(a: Analyzer, m_max: int = DEFAULT_M_MAX) -> PhotonState:
    """Closed-form detected state of an analyzer rotated by beta.

    (e^{-i(2q*beta + theta)}|R,+2q> + e^{+i(2q*beta + theta)}|L,-2q>)/sqrt(2);
    rotating the apparatus is exactly an effective theta offset of 2q*beta.
    """
    if abs(a.twoQ) > m_max:
        raise TruncationOverflowError(
            f"analyzer charge 2q={a.twoQ} exceeds truncation |m| <= {m_max}"
        )
    phase = cmath.exp(1j * (a.twoQ * a.beta + a.theta))
    return PhotonState(
        {
            SpinOrbitMode(Spin.R, a.twoQ): _INV_SQRT2 / phase,
            SpinOrbitMode(Spin.L, -a.twoQ): _INV_SQRT2 * phase,
        },
        m_max,
    )


def analyzer_state_chain(twoQ: int, theta: float, m_max: int = DEFAULT_M_MAX) -> PhotonState:
    """Detected state built from the physical chain instead of the closed form.

    Back-propagates the fiber mode |H, m=0> through the half-wave plate at
    theta/2 and then the q-plate; serves as the independent oracle for
    analyzer_state(twoQ, theta, beta=0).
    """
    fiber_mode = linear_state(0.0, 0, m_max)
    rotated = hwp_apply(theta / 2.0, fiber_mode)
    return qplate_apply(QPlate(twoQ), rotated)
