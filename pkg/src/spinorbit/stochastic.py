"""Finite-statistics Monte Carlo layer emulating a counting experiment.

Each of the four CHSH setting pairs measures a fixed number N of photon
pairs; every pair lands in one of the four analyzer combinations
(beta, beta_bar) x (beta, beta_bar) with probabilities proportional to the
calibrated coincidence rates. The correlator estimate is the count ratio,
which is invariant to the overall rate scale, and its standard error
follows from binomial propagation.

Random streams are derived per setting pair from (seed, pair index), so
results are reproducible regardless of evaluation order or threading.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bell import ChshSettings, calibration_offset, coincidence
from .devices import Analyzer
from .errors import ZeroDenominatorError
from .hilbert import BiphotonState


@dataclass(frozen=True)
class CountTable:
    """Outcome counts for the four CHSH setting pairs.

    counts[i] holds (n_uu, n_bb, n_ub, n_bu) for setting pair i in the
    order (t,r), (t,r'), (t',r), (t',r'): unbarred/unbarred,
    barred/barred, unbarred/barred, barred/unbarred. Each row sums to
    pairs_per_setting exactly.
    """

    counts: tuple[tuple[int, int, int, int], ...]
    pairs_per_setting: int
    seed: int


def sample_counts(probabilities, n: int, seed: int) -> tuple[int, ...]:
    """Multinomial draw of n events over the outcome probabilities.

    Deterministic for a fixed seed; counts always sum to n.
    """
    p = np.asarray(probabilities, dtype=float)
    if n < 0:
        raise ValueError("n must be non-negative")
    if np.any(p < -1e-12):
        raise ValueError("probabilities must be non-negative")
    total = float(p.sum())
    if abs(total - 1.0) > 1e-12:
        raise ValueError(f"probabilities must sum to 1, got {total}")
    p = np.clip(p, 0.0, None)
    p /= p.sum()
    rng = np.random.default_rng(seed)
    return tuple(int(c) for c in rng.multinomial(n, p))


def _setting_pairs(settings: ChshSettings):
    return (
        (settings.beta_t, settings.beta_r),
        (settings.beta_t, settings.beta_r_prime),
        (settings.beta_t_prime, settings.beta_r),
        (settings.beta_t_prime, settings.beta_r_prime),
    )


def _outcome_probabilities(
    joint: BiphotonState,
    settings: ChshSettings,
    beta_t: float,
    beta_r: float,
    offset: float,
) -> np.ndarray:
    twoQ = settings.twoQ
    bar = settings.bar_shift

    def rate(bt: float, br: float) -> float:
        return coincidence(joint, Analyzer(twoQ, 0.0, bt + offset), Analyzer(-twoQ, 0.0, br))

    rates = np.array(
        [
            rate(beta_t, beta_r),
            rate(beta_t + bar, beta_r + bar),
            rate(beta_t, beta_r + bar),
            rate(beta_t + bar, beta_r),
        ]
    )
    total = float(rates.sum())
    if total < 1e-15:
        raise ZeroDenominatorError("setting pair has zero total coincidence probability")
    return rates / total


def count_table(
    joint: BiphotonState, settings: ChshSettings, n: int, seed: int
) -> CountTable:
    """Simulate the four counting runs of a CHSH experiment with N pairs each.

    Rotations are measured from the calibrated fringe origin, matching the
    exact correlator path.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    offset = calibration_offset(joint, settings.twoQ, 0.0)
    streams = np.random.SeedSequence(seed).spawn(4)
    rows = []
    for index, (beta_t, beta_r) in enumerate(_setting_pairs(settings)):
        probabilities = _outcome_probabilities(joint, settings, beta_t, beta_r, offset)
        rng = np.random.default_rng(streams[index])
        rows.append(tuple(int(c) for c in rng.multinomial(n, probabilities)))
    return CountTable(tuple(rows), n, seed)


def estimate_S(
    joint: BiphotonState, settings: ChshSettings, n: int, seed: int
) -> tuple[float, float]:
    """Estimate S and its standard error from simulated counts.

    Each setting pair contributes E_hat = (n_uu + n_bb - n_ub - n_bu)/N
    with variance (1 - E_hat^2)/N; the CHSH sum combines them with the
    usual sign pattern and errors add in quadrature.
    """
    if n < 4:
        raise ValueError("need at least 4 pairs per setting")
    table = count_table(joint, settings, n, seed)
    estimates = []
    variances = []
    for n_uu, n_bb, n_ub, n_bu in table.counts:
        e_hat = (n_uu + n_bb - n_ub - n_bu) / n
        estimates.append(e_hat)
        variances.append(max(1.0 - e_hat * e_hat, 0.0) / n)
    s_hat = estimates[0] - estimates[1] + estimates[2] + estimates[3]
    stderr = math.sqrt(sum(variances))
    return s_hat, stderr
