"""Cylindrical vector-beam polarization patterns behind a q-plate.

A linearly polarized input at angle theta leaves the plate with a local
linear polarization pointing at angle 2q*phi - theta at azimuth phi, so the
pattern repeats every pi/|q| around the beam axis: radial and azimuthal
beams for q = 1/2, two-fold symmetric patterns for |q| = 1, three-fold for
|q| = 3/2. Only the direction field is sampled; radial intensity profiles
are out of scope, so every sample is a unit vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class FieldSample:
    """Instantaneous field direction (ex, ey) at transverse point (x, y)."""

    x: float
    y: float
    ex: float
    ey: float


def field_at(twoQ: int, theta: float, phi: float) -> tuple[float, float]:
    """Unit polarization direction (cos, sin) of angle 2q*phi - theta."""
    if twoQ == 0:
        raise ValueError("charge must be nonzero")
    angle = twoQ * phi - theta
    return math.cos(angle), math.sin(angle)


def pattern_period(twoQ: int) -> float:
    """Azimuthal period pi/|q| of the polarization pattern."""
    if twoQ == 0:
        raise ValueError("charge must be nonzero")
    return 2.0 * math.pi / abs(twoQ)


def conjugate_fields(twoQ: int, theta: float, phi: float) -> tuple[float, float]:
    """Direction angles at phi for (q, theta) and the conjugate (-q, -theta).

    The two angles are exact negatives, so the pair of fields oscillates
    mirror-opposite at every azimuth.
    """
    if twoQ == 0:
        raise ValueError("charge must be nonzero")
    angle = twoQ * phi - theta
    return angle, -angle


def sample_field(
    twoQ: int,
    theta: float,
    rings: int,
    points_per_ring: int,
) -> list[FieldSample]:
    """Sample the direction field on a polar grid over the unit disk.

    Ring radii are (i+1)/rings, azimuths 2*pi*j/points_per_ring; rows are
    ring-major so a grid of rings x points_per_ring samples comes out in a
    deterministic order.
    """
    if rings < 1:
        raise ValueError("rings must be at least 1")
    if points_per_ring < 4:
        raise ValueError("points_per_ring must be at least 4")
    samples: list[FieldSample] = []
    for i in range(rings):
        radius = (i + 1) / rings
        for j in range(points_per_ring):
            phi = 2.0 * math.pi * j / points_per_ring
            ex, ey = field_at(twoQ, theta, phi)
            samples.append(
                FieldSample(radius * math.cos(phi), radius * math.sin(phi), ex, ey)
            )
    return samples
