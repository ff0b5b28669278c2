import math

import numpy as np
import pytest

from spinorbit import (
    chsh_S,
    count_table,
    estimate_S,
    hyper_state,
    make_spectrum,
    optimal_settings,
    sample_counts,
    OamSpectrum,
)

TWO_SQRT2 = 2.0 * math.sqrt(2.0)


def flat_joint():
    return hyper_state(make_spectrum("flat", 8))


def test_sample_counts_zero_draws():
    assert sample_counts([0.25, 0.25, 0.25, 0.25], 0, 1) == (0, 0, 0, 0)


def test_sample_counts_certain_outcome():
    assert sample_counts([1.0, 0.0, 0.0, 0.0], 100, 1) == (100, 0, 0, 0)


def test_sample_counts_deterministic():
    p = [0.1, 0.2, 0.3, 0.4]
    first = sample_counts(p, 1000, 42)
    for _ in range(5):
        assert sample_counts(p, 1000, 42) == first
    assert sum(first) == 1000


def test_sample_counts_validation():
    with pytest.raises(ValueError):
        sample_counts([0.5, 0.6], 10, 0)
    with pytest.raises(ValueError):
        sample_counts([-0.1, 1.1], 10, 0)
    with pytest.raises(ValueError):
        sample_counts([0.5, 0.5], -1, 0)


def test_count_table_rows_sum_to_n():
    joint = flat_joint()
    table = count_table(joint, optimal_settings(2), 5000, 11)
    assert len(table.counts) == 4
    for row in table.counts:
        assert sum(row) == 5000
    assert table.pairs_per_setting == 5000
    assert table.seed == 11


def test_count_table_deterministic():
    joint = flat_joint()
    settings = optimal_settings(2)
    assert count_table(joint, settings, 2000, 3) == count_table(joint, settings, 2000, 3)


def test_estimate_concentrates_on_exact_value():
    joint = flat_joint()
    settings = optimal_settings(2)
    s_hat, stderr = estimate_S(joint, settings, 1_000_000, 5)
    assert abs(s_hat - TWO_SQRT2) < 5.0 * stderr
    assert stderr < 0.005


def test_estimate_stderr_scales_with_counts():
    joint = flat_joint()
    settings = optimal_settings(2)
    se_small = estimate_S(joint, settings, 1_000, 9)[1]
    se_large = estimate_S(joint, settings, 100_000, 9)[1]
    assert se_small / se_large == pytest.approx(10.0, rel=0.5)


def test_estimate_tracks_reduced_visibility():
    spectrum = OamSpectrum(4, {2: 1.0, -2: 0.5})  # visibility 0.8
    joint = hyper_state(spectrum)
    settings = optimal_settings(2)
    exact = chsh_S(joint, settings)
    assert exact == pytest.approx(TWO_SQRT2 * 0.8, abs=1e-12)
    s_hat, stderr = estimate_S(joint, settings, 200_000, 21)
    assert abs(s_hat - exact) < 5.0 * stderr


def test_estimate_unbiased_over_seeds():
    joint = flat_joint()
    settings = optimal_settings(2)
    exact = chsh_S(joint, settings)
    n = 10_000
    estimates = []
    errors = []
    for seed in range(200):
        s_hat, stderr = estimate_S(joint, settings, n, seed)
        estimates.append(s_hat)
        errors.append(stderr)
    mean = float(np.mean(estimates))
    combined = float(np.mean(errors)) / math.sqrt(len(estimates))
    assert abs(mean - exact) < 3.0 * combined


def test_estimate_requires_minimum_pairs():
    with pytest.raises(ValueError):
        estimate_S(flat_joint(), optimal_settings(2), 2, 0)
