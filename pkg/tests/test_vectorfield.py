import math

import pytest

from spinorbit import conjugate_fields, field_at, pattern_period, sample_field


def test_radial_pattern():
    # Half charge, horizontal input: polarization points along the azimuth.
    for phi in [0.0, math.pi / 3, 1.7, 4.4]:
        ex, ey = field_at(1, 0.0, phi)
        assert ex == pytest.approx(math.cos(phi), abs=1e-15)
        assert ey == pytest.approx(math.sin(phi), abs=1e-15)


def test_azimuthal_pattern():
    ex, ey = field_at(1, math.pi / 2, 0.0)
    assert ex == pytest.approx(0.0, abs=1e-15)
    assert ey == pytest.approx(-1.0, abs=1e-15)


def test_unit_charge_full_turn():
    ex, ey = field_at(2, 0.0, math.pi)
    assert (ex, ey) == pytest.approx((1.0, 0.0), abs=1e-12)


def test_unit_direction_everywhere(rng):
    for _ in range(200):
        twoQ = int(rng.choice([1, -1, 2, -3, 4]))
        ex, ey = field_at(twoQ, rng.uniform(0, 6.3), rng.uniform(0, 6.3))
        assert ex * ex + ey * ey == pytest.approx(1.0, abs=1e-12)


def test_pattern_period_values():
    assert pattern_period(2) == pytest.approx(math.pi)
    assert pattern_period(-2) == pytest.approx(math.pi)
    assert pattern_period(3) == pytest.approx(2.0 * math.pi / 3.0)
    assert pattern_period(-3) == pytest.approx(2.0 * math.pi / 3.0)
    assert pattern_period(1) == pytest.approx(2.0 * math.pi)


def test_pattern_periodicity(rng):
    for _ in range(100):
        twoQ = int(rng.choice([1, -1, 2, -2, 3, 4]))
        theta = rng.uniform(0, 2 * math.pi)
        phi = rng.uniform(0, 2 * math.pi)
        period = pattern_period(twoQ)
        assert field_at(twoQ, theta, phi) == pytest.approx(
            field_at(twoQ, theta, phi + period), abs=1e-12
        )


def test_conjugate_pair_mirrors():
    a1, a2 = conjugate_fields(2, 0.0, math.pi / 6)
    assert a1 == pytest.approx(math.pi / 3, abs=1e-15)
    assert a2 == pytest.approx(-math.pi / 3, abs=1e-15)

    a1, a2 = conjugate_fields(3, math.pi / 4, 0.0)
    assert a1 == pytest.approx(-math.pi / 4, abs=1e-15)
    assert a2 == pytest.approx(math.pi / 4, abs=1e-15)

    a1, a2 = conjugate_fields(2, 0.0, 0.0)
    assert a1 == 0.0 and a2 == 0.0


def test_conjugate_sum_vanishes(rng):
    for _ in range(100):
        twoQ = int(rng.choice([1, -2, 3]))
        a1, a2 = conjugate_fields(twoQ, rng.uniform(0, 6.3), rng.uniform(0, 6.3))
        assert math.remainder(a1 + a2, 2 * math.pi) == pytest.approx(0.0, abs=1e-12)


def test_sample_field_single_ring():
    samples = sample_field(1, 0.0, rings=1, points_per_ring=4)
    assert len(samples) == 4
    for sample, phi in zip(samples, [0.0, math.pi / 2, math.pi, 3 * math.pi / 2]):
        assert sample.ex == pytest.approx(math.cos(phi), abs=1e-15)
        assert sample.ey == pytest.approx(math.sin(phi), abs=1e-15)
        # radial: direction parallel to the position vector
        assert sample.x * sample.ey - sample.y * sample.ex == pytest.approx(0.0, abs=1e-12)


def test_sample_field_grid_size():
    assert len(sample_field(1, 0.0, rings=2, points_per_ring=8)) == 16


def test_sample_field_threefold_symmetry():
    # |2q| = 3: the pattern repeats every 2*pi/3 around the axis.
    samples = sample_field(3, math.pi / 4, rings=2, points_per_ring=12)
    per_ring = 12
    shift = per_ring // 3
    for ring in range(2):
        base = ring * per_ring
        for j in range(per_ring):
            a = samples[base + j]
            b = samples[base + (j + shift) % per_ring]
            assert (a.ex, a.ey) == pytest.approx((b.ex, b.ey), abs=1e-12)


def test_sample_field_validation():
    with pytest.raises(ValueError):
        sample_field(1, 0.0, rings=0, points_per_ring=8)
    with pytest.raises(ValueError):
        sample_field(1, 0.0, rings=1, points_per_ring=3)
    with pytest.raises(ValueError):
        field_at(0, 0.0, 0.0)
