import math

import pytest

from spinorbit import (
    OamSpectrum,
    biphoton_to_linear_basis,
    hyper_state,
    make_spectrum,
    spin_bell_state,
)

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def test_spin_bell_linear_amplitudes():
    bell = biphoton_to_linear_basis(spin_bell_state())
    assert bell[(("H", 0), ("V", 0))] == pytest.approx(INV_SQRT2, abs=1e-15)
    assert bell[(("V", 0), ("H", 0))] == pytest.approx(INV_SQRT2, abs=1e-15)
    assert abs(bell[(("H", 0), ("H", 0))]) < 1e-15
    assert abs(bell[(("V", 0), ("V", 0))]) < 1e-15


def test_spin_bell_circular_form():
    # (|H>|V> + |V>|H>)/sqrt(2) expands to i(|RR> - |LL>)/sqrt(2).
    bell = spin_bell_state()
    assert bell[(("R", 0), ("R", 0))] == pytest.approx(1j * INV_SQRT2, abs=1e-15)
    assert bell[(("L", 0), ("L", 0))] == pytest.approx(-1j * INV_SQRT2, abs=1e-15)
    assert len(bell.amplitudes) == 2


def test_flat_spectrum_weights():
    spectrum = make_spectrum("flat", 2)
    for m in range(-2, 3):
        assert spectrum[m] == pytest.approx(1.0 / math.sqrt(5.0), abs=1e-15)


def test_gaussian_spectrum_wide_limit_is_flat():
    spectrum = make_spectrum("gaussian", 2, sigma=1e6)
    flat = make_spectrum("flat", 2)
    for m in range(-2, 3):
        assert spectrum[m] == pytest.approx(flat[m], rel=1e-9)


def test_gaussian_spectrum_weight_ratio():
    spectrum = make_spectrum("gaussian", 4, sigma=2.0)
    assert abs(spectrum[0]) / abs(spectrum[2]) == pytest.approx(math.exp(0.5), rel=1e-12)


def test_spectrum_normalized():
    spectrum = OamSpectrum(3, {0: 2.0, 1: 1.0, -1: 1.0})
    total = sum(abs(spectrum[m]) ** 2 for m in range(-3, 4))
    assert total == pytest.approx(1.0, abs=1e-12)


def test_spectrum_validation():
    with pytest.raises(ValueError):
        make_spectrum("flat", 0)
    with pytest.raises(ValueError):
        make_spectrum("gaussian", 4, sigma=0.0)
    with pytest.raises(ValueError):
        make_spectrum("triangular", 4)
    with pytest.raises(ValueError):
        OamSpectrum(2, {5: 1.0})
    with pytest.raises(ValueError):
        OamSpectrum(2, {})


def test_hyper_state_norm_and_support():
    spectrum = make_spectrum("flat", 8)
    joint = hyper_state(spectrum)
    assert joint.norm() == pytest.approx(1.0, abs=1e-12)
    assert len(joint.amplitudes) == 2 * (2 * 8 + 1)


def test_hyper_state_linear_amplitudes():
    spectrum = make_spectrum("gaussian", 4, sigma=2.0)
    joint = biphoton_to_linear_basis(hyper_state(spectrum))
    for m in range(-4, 5):
        expect = spectrum[m] * INV_SQRT2
        assert joint[(("H", m), ("V", -m))] == pytest.approx(expect, abs=1e-14)
        assert abs(joint[(("H", m), ("H", -m))]) < 1e-14


def test_hyper_state_oam_anticorrelated():
    joint = hyper_state(make_spectrum("flat", 6))
    for (kt, kr), amp in joint.amplitudes.items():
        assert kt.m + kr.m == 0
        assert abs(amp) > 0


def test_hyper_state_blocks_carry_spin_bell():
    spectrum = make_spectrum("gaussian", 5, sigma=1.5)
    joint = hyper_state(spectrum)
    bell = spin_bell_state(5)
    for m in range(-5, 6):
        cm = spectrum[m]
        for spin in ("R", "L"):
            block_amp = joint[((spin, m), (spin, -m))]
            assert block_amp == pytest.approx(cm * bell[((spin, 0), (spin, 0))], abs=1e-14)
