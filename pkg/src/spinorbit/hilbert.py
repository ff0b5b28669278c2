"""Sparse state-vector algebra over spin-orbit photon modes.

A single-photon mode is a (spin, m) pair: circular polarization L or R (or
the linear view H, V) together with an integer orbital angular momentum m.
States are finite sparse maps from modes to complex amplitudes, truncated
to |m| <= m_max; two-photon states map (mode_t, mode_r) pairs to amplitudes,
with the transmitted arm t always first.

The circular/linear phase convention is fixed once and used everywhere:
a linear polarization at angle chi is (e^{-i chi}|L> + e^{i chi}|R>)/sqrt(2),
so |H> = (|L> + |R>)/sqrt(2) and |V> = i(|R> - |L>)/sqrt(2).

All states are immutable after construction and every operation is a pure
function, so any value may be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple

from .errors import TruncationOverflowError

DEFAULT_M_MAX = 8
PRUNE_EPS = 1e-14
NORM_TOL = 1e-12

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


class Spin(str, Enum):
    """Polarization label: circular basis L/R or its linear view H/V."""

    L = "L"
    R = "R"
    H = "H"
    V = "V"

    @property
    def is_circular(self) -> bool:
        return self in (Spin.L, Spin.R)


class SpinOrbitMode(NamedTuple):
    """Basis label of one photon: polarization spin and OAM quantum number m."""

    spin: Spin
    m: int


ModeKey = SpinOrbitMode | tuple
PairKey = tuple


def _as_mode(key) -> SpinOrbitMode:
    if isinstance(key, SpinOrbitMode):
        return key
    spin, m = key
    return SpinOrbitMode(Spin(spin), int(m))


def _as_pair(key) -> tuple[SpinOrbitMode, SpinOrbitMode]:
    t, r = key
    return (_as_mode(t), _as_mode(r))


def _basis_family(spins: Iterable[Spin]) -> str | None:
    family = None
    for spin in spins:
        current = "circular" if spin.is_circular else "linear"
        if family is None:
            family = current
        elif family != current:
            raise ValueError("state mixes circular and linear spin labels")
    return family


@dataclass(frozen=True)
class PhotonState:
    """Sparse single-photon state: finite map mode -> complex amplitude.

    Amplitudes below PRUNE_EPS are dropped at construction so supports stay
    canonical; the zero state (empty map) is legal and signals orthogonality.
    """

    amplitudes: Mapping[ModeKey, complex]
    m_max: int = DEFAULT_M_MAX

    def __post_init__(self):
        cleaned: dict[SpinOrbitMode, complex] = {}
        for key, amp in self.amplitudes.items():
            mode = _as_mode(key)
            if abs(mode.m) > self.m_max:
                raise TruncationOverflowError(
                    f"mode m={mode.m} outside truncation |m| <= {self.m_max}"
                )
            value = complex(amp)
            if abs(value) >= PRUNE_EPS:
                cleaned[mode] = cleaned.get(mode, 0j) + value
        family = _basis_family(mode.spin for mode in cleaned)
        object.__setattr__(self, "amplitudes", MappingProxyType(cleaned))
        object.__setattr__(self, "_basis", family or "circular")

    @classmethod
    def basis_state(cls, spin, m: int, m_max: int = DEFAULT_M_MAX) -> "PhotonState":
        return cls({SpinOrbitMode(Spin(spin), m): 1.0 + 0j}, m_max)

    @property
    def basis(self) -> str:
        return self._basis  # type: ignore[attr-defined]

    def __getitem__(self, key) -> complex:
        return self.amplitudes.get(_as_mode(key), 0j)

    def norm_sq(self) -> float:
        return sum(a.real * a.real + a.imag * a.imag for a in self.amplitudes.values())

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    @property
    def normalized(self) -> bool:
        return abs(self.norm_sq() - 1.0) <= NORM_TOL

    def normalize(self) -> "PhotonState":
        n = self.norm()
        if n < PRUNE_EPS:
            raise ValueError("cannot normalize a zero state")
        return PhotonState({k: a / n for k, a in self.amplitudes.items()}, self.m_max)

    def scaled(self, factor: complex) -> "PhotonState":
        return PhotonState({k: a * factor for k, a in self.amplitudes.items()}, self.m_max)

    def __repr__(self) -> str:
        terms = ", ".join(
            f"({mode.spin.value},{mode.m}): {amp:.4g}"
            for mode, amp in sorted(self.amplitudes.items())
        )
        return f"PhotonState({{{terms}}}, m_max={self.m_max})"


@dataclass(frozen=True)
class BiphotonState:
    """Sparse two-photon state over (transmitted, reflected) mode pairs.

    Arm order is positional and never swapped: index 0 of every key is the
    transmitted-arm mode, index 1 the reflected-arm mode.
    """

    amplitudes: Mapping[PairKey, complex]
    m_max: int = DEFAULT_M_MAX

    def __post_init__(self):
        cleaned: dict[tuple[SpinOrbitMode, SpinOrbitMode], complex] = {}
        for key, amp in self.amplitudes.items():
            pair = _as_pair(key)
            for mode in pair:
                if abs(mode.m) > self.m_max:
                    raise TruncationOverflowError(
                        f"mode m={mode.m} outside truncation |m| <= {self.m_max}"
                    )
            value = complex(amp)
            if abs(value) >= PRUNE_EPS:
                cleaned[pair] = cleaned.get(pair, 0j) + value
        family = _basis_family(mode.spin for pair in cleaned for mode in pair)
        object.__setattr__(self, "amplitudes", MappingProxyType(cleaned))
        object.__setattr__(self, "_basis", family or "circular")

    @property
    def basis(self) -> str:
        return self._basis  # type: ignore[attr-defined]

    def __getitem__(self, key) -> complex:
        return self.amplitudes.get(_as_pair(key), 0j)

    def norm_sq(self) -> float:
        return sum(a.real * a.real + a.imag * a.imag for a in self.amplitudes.values())

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    @property
    def normalized(self) -> bool:
        return abs(self.norm_sq() - 1.0) <= NORM_TOL

    def normalize(self) -> "BiphotonState":
        n = self.norm()
        if n < PRUNE_EPS:
            raise ValueError("cannot normalize a zero state")
        return BiphotonState({k: a / n for k, a in self.amplitudes.items()}, self.m_max)

    def __repr__(self) -> str:
        return f"BiphotonState({len(self.amplitudes)} terms, m_max={self.m_max})"


def _require_same_context(a, b) -> None:
    if a.m_max != b.m_max:
        raise ValueError(f"states use different truncations ({a.m_max} vs {b.m_max})")
    if a.amplitudes and b.amplitudes and a.basis != b.basis:
        raise ValueError("states are expressed in different spin bases")


def inner_product(a, b) -> complex:
    """<a|b> for two PhotonState or two BiphotonState values.

    Conjugate-symmetric; disjoint supports give exactly 0.
    """
    _require_same_context(a, b)
    small, large, conj_small = (
        (a, b, True) if len(a.amplitudes) <= len(b.amplitudes) else (b, a, False)
    )
    total = 0j
    for key, amp in small.amplitudes.items():
        other = large.amplitudes.get(key)
        if other is None:
            continue
        total += (amp.conjugate() * other) if conj_small else (other.conjugate() * amp)
    return total


def tensor_product(t: PhotonState, r: PhotonState) -> BiphotonState:
    """Product two-photon state with t in the transmitted arm, r in the reflected."""
    _require_same_context(t, r)
    amps = {
        (kt, kr): at * ar
        for kt, at in t.amplitudes.items()
        for kr, ar in r.amplitudes.items()
    }
    return BiphotonState(amps, t.m_max)


def partial_inner(t_bra: PhotonState, joint: BiphotonState) -> PhotonState:
    """Project the transmitted arm of `joint` onto `t_bra` (unnormalized).

    Returns sum over pairs of conj(t_bra[k_t]) * joint[(k_t, k_r)] |k_r>;
    the zero state is a legal result and signals orthogonality. Antilinear
    in the bra, linear in the joint state.
    """
    _require_same_context(t_bra, joint)
    out: dict[SpinOrbitMode, complex] = {}
    bra = t_bra.amplitudes
    for (kt, kr), amp in joint.amplitudes.items():
        coeff = bra.get(kt)
        if coeff is None:
            continue
        out[kr] = out.get(kr, 0j) + coeff.conjugate() * amp
    return PhotonState(out, joint.m_max)


# Spin-label change of basis, both directions, from the fixed convention.
_LINEAR_FROM_CIRCULAR = {
    Spin.L: ((Spin.H, _INV_SQRT2 + 0j), (Spin.V, 1j * _INV_SQRT2)),
    Spin.R: ((Spin.H, _INV_SQRT2 + 0j), (Spin.V, -1j * _INV_SQRT2)),
}
_CIRCULAR_FROM_LINEAR = {
    Spin.H: ((Spin.L, _INV_SQRT2 + 0j), (Spin.R, _INV_SQRT2 + 0j)),
    Spin.V: ((Spin.L, -1j * _INV_SQRT2), (Spin.R, 1j * _INV_SQRT2)),
}


def _convert_photon(state: PhotonState, table) -> PhotonState:
    out: dict[SpinOrbitMode, complex] = {}
    for mode, amp in state.amplitudes.items():
        for spin, coeff in table[mode.spin]:
            key = SpinOrbitMode(spin, mode.m)
            out[key] = out.get(key, 0j) + coeff * amp
    return PhotonState(out, state.m_max)


def to_linear_basis(state: PhotonState) -> PhotonState:
    """Re-express a circular-basis state over H/V labels (norm preserved)."""
    if state.amplitudes and state.basis != "circular":
        raise ValueError("to_linear_basis expects a circular-basis state")
    return _convert_photon(state, _LINEAR_FROM_CIRCULAR)


def to_circular_basis(state: PhotonState) -> PhotonState:
    """Re-express a linear-basis state over L/R labels (norm preserved)."""
    if state.amplitudes and state.basis != "linear":
        raise ValueError("to_circular_basis expects a linear-basis state")
    return _convert_photon(state, _CIRCULAR_FROM_LINEAR)


def as_circular(state: PhotonState) -> PhotonState:
    return to_circular_basis(state) if state.basis == "linear" else state


def _convert_biphoton(state: BiphotonState, table) -> BiphotonState:
    out: dict[tuple[SpinOrbitMode, SpinOrbitMode], complex] = {}
    for (kt, kr), amp in state.amplitudes.items():
        for spin_t, ct in table[kt.spin]:
            for spin_r, cr in table[kr.spin]:
                key = (SpinOrbitMode(spin_t, kt.m), SpinOrbitMode(spin_r, kr.m))
                out[key] = out.get(key, 0j) + ct * cr * amp
    return BiphotonState(out, state.m_max)


def biphoton_to_linear_basis(state: BiphotonState) -> BiphotonState:
    if state.amplitudes and state.basis != "circular":
        raise ValueError("expected a circular-basis biphoton state")
    return _convert_biphoton(state, _LINEAR_FROM_CIRCULAR)


def biphoton_to_circular_basis(state: BiphotonState) -> BiphotonState:
    if state.amplitudes and state.basis != "linear":
        raise ValueError("expected a linear-basis biphoton state")
    return _convert_biphoton(state, _CIRCULAR_FROM_LINEAR)


def linear_state(angle: float, m: int = 0, m_max: int = DEFAULT_M_MAX) -> PhotonState:
    """Circular-basis state linearly polarized at `angle`, OAM m."""
    phase = complex(math.cos(angle), math.sin(angle))
    return PhotonState(
        {
            SpinOrbitMode(Spin.L, m): phase.conjugate() * _INV_SQRT2,
            SpinOrbitMode(Spin.R, m): phase * _INV_SQRT2,
        },
        m_max,
    )


def fidelity(a: PhotonState, b: PhotonState) -> float:
    """|<a|b>|^2 / (<a|a><b|b>), comparing in the circular basis.

    Global phase blind; returns 0.0 if either state is the zero vector.
    """
    ac, bc = as_circular(a), as_circular(b)
    na, nb = ac.norm_sq(), bc.norm_sq()
    if na < PRUNE_EPS or nb < PRUNE_EPS:
        return 0.0
    return abs(inner_product(ac, bc)) ** 2 / (na * nb)
