"""Coincidence fringes, post-selected Bell states, correlators, and CHSH.

Projecting both arms of the two-photon source onto analyzer states with
conjugate configurations (q_r = -q_t, theta_r = -theta_t) yields a
coincidence rate that depends only on the rotation difference
delta = beta_t - beta_r, oscillating as a squared cosine with period
pi/(2|q|). Post-selecting the four surviving composite spin-orbit modes
leaves a two-dimensional entangled state whose correlators violate the
CHSH bound, reaching S = 2*sqrt(2) at evenly spaced analyzer rotations.

Under the phase conventions fixed in `hilbert`, the constructive fringe
carries a fixed angular offset (it peaks at beta_t - beta_r = delta_peak
rather than at zero). All Bell quantities are offset invariant, so the
correlator and the optimizer measure rotations from the calibrated origin
where the fringe peaks at beta_t = beta_r, the same zeroing a physical
experiment performs on its rotation stages. `fringe_fit` reports the raw
offset explicitly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .devices import Analyzer, analyzer_state
from .errors import (
    DegenerateNormalizationError,
    EmptyProjectionError,
    IllConditionedFitError,
    OrthogonalAnalyzerError,
    UnsupportedShapeError,
    ZeroDenominatorError,
)
from .hilbert import (
    BiphotonState,
    PhotonState,
    Spin,
    SpinOrbitMode,
    inner_product,
    partial_inner,
    tensor_product,
)

_PEAK_EPS = 1e-28
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ChshSettings:
    """Four analyzer rotations for a CHSH run, plus the doubled charge.

    The complementary rotation of each angle is beta + pi/(4q); the shift
    is signed, so negative charges shift backwards (equivalent modulo the
    fringe period).
    """

    beta_t: float
    beta_r: float
    beta_t_prime: float
    beta_r_prime: float
    twoQ: int

    def __post_init__(self):
        if self.twoQ == 0:
            raise ValueError("settings require a nonzero charge")

    @property
    def bar_shift(self) -> float:
        return math.pi / (2.0 * self.twoQ)

    def beta_bar(self, beta: float) -> float:
        return beta + self.bar_shift

    @classmethod
    def evenly_spaced(cls, twoQ: int, spacing: float, base: float = 0.0) -> "ChshSettings":
        return cls(base, base + spacing, base + 2 * spacing, base + 3 * spacing, twoQ)


@dataclass(frozen=True)
class FringeFit:
    """Least-squares description of a coincidence fringe.

    visibility is the contrast (max - min)/(max + min) in [0, 1];
    offset_delta0 is the phase inside the squared cosine, folded into
    (-pi/2, pi/2]; period is the delta-period of the pattern.
    """

    visibility: float
    offset_delta0: float
    period: float
    residual: float = 0.0


def optimal_settings(twoQ: int, base: float = 0.0) -> ChshSettings:
    """Evenly spaced rotations with consecutive spacing pi/(8*twoQ).

    This spacing maximizes S for a cosine-law correlator, giving
    S = 2*sqrt(2) at unit visibility.
    """
    return ChshSettings.evenly_spaced(twoQ, math.pi / (8.0 * twoQ), base)


def _fringe_harmonics(joint: BiphotonState, twoQ: int, theta: float) -> tuple[complex, complex]:
    """Coefficients (P, Q) of the conjugate-pair coincidence amplitude.

    With x = twoQ*(beta_t - beta_r), the projection amplitude is exactly
    P e^{ix} + Q e^{-ix}: the analyzers address only four mode pairs, so
    the fringe is a pure second harmonic in x.
    """
    get = joint.amplitudes.get
    j_rr = get((SpinOrbitMode(Spin.R, twoQ), SpinOrbitMode(Spin.R, -twoQ)), 0j)
    j_ll = get((SpinOrbitMode(Spin.L, -twoQ), SpinOrbitMode(Spin.L, twoQ)), 0j)
    j_rl = get((SpinOrbitMode(Spin.R, twoQ), SpinOrbitMode(Spin.L, twoQ)), 0j)
    j_lr = get((SpinOrbitMode(Spin.L, -twoQ), SpinOrbitMode(Spin.R, -twoQ)), 0j)
    rot = cmath.exp(2j * theta)
    p = 0.5 * (j_rr + rot * j_rl)
    q = 0.5 * (j_ll + j_lr / rot)
    return p, q


def fringe_peak(joint: BiphotonState, twoQ: int, theta: float = 0.0) -> float:
    """Analytic maximum (|P| + |Q|)^2 of the raw conjugate-pair fringe."""
    p, q = _fringe_harmonics(joint, twoQ, theta)
    return (abs(p) + abs(q)) ** 2


def fringe_visibility(joint: BiphotonState, twoQ: int, theta: float = 0.0) -> float:
    """Analytic fringe contrast 2|P||Q| / (|P|^2 + |Q|^2)."""
    p, q = _fringe_harmonics(joint, twoQ, theta)
    denom = abs(p) ** 2 + abs(q) ** 2
    if denom < _PEAK_EPS:
        raise DegenerateNormalizationError("fringe has no amplitude at this charge")
    return 2.0 * abs(p) * abs(q) / denom


def calibration_offset(joint: BiphotonState, twoQ: int, theta: float = 0.0) -> float:
    """Rotation offset delta_peak at which the raw fringe peaks.

    Shifting beta_t by this amount moves the peak to beta_t = beta_r,
    zeroing the convention-dependent fringe offset.
    """
    p, q = _fringe_harmonics(joint, twoQ, theta)
    if abs(p) * abs(q) < _PEAK_EPS:
        return 0.0
    return -cmath.phase(p * q.conjugate()) / (2.0 * twoQ)


def coincidence_raw(joint: BiphotonState, a_t: Analyzer, a_r: Analyzer) -> float:
    """Unnormalized joint detection probability of the two analyzers."""
    t_state = analyzer_state(a_t, joint.m_max)
    r_state = analyzer_state(a_r, joint.m_max)
    amp = inner_product(tensor_product(t_state, r_state), joint)
    return abs(amp) ** 2


def coincidence(joint: BiphotonState, a_t: Analyzer, a_r: Analyzer) -> float:
    """Coincidence rate normalized so the conjugate-pair fringe peaks at 1.

    The normalizer is the analytic fringe maximum for the transmitted
    analyzer's charge and waveplate angle; a joint state with no amplitude
    there raises DegenerateNormalizationError.
    """
    peak = fringe_peak(joint, a_t.twoQ, a_t.theta)
    if peak < _PEAK_EPS:
        raise DegenerateNormalizationError(
            f"no fringe amplitude for charge 2q={a_t.twoQ}; cannot normalize"
        )
    value = coincidence_raw(joint, a_t, a_r) / peak
    return min(max(value, 0.0), 1.0)


def collapse_partner(joint: BiphotonState, a_t: Analyzer) -> PhotonState:
    """Normalized reflected-arm state heralded by a transmitted-arm detection."""
    raw = partial_inner(analyzer_state(a_t, joint.m_max), joint)
    if raw.norm_sq() < _PEAK_EPS:
        raise OrthogonalAnalyzerError("analyzer is orthogonal to the joint state")
    return raw.normalize()


def postselect_bell(joint: BiphotonState, twoQ: int) -> BiphotonState:
    """Project onto the four composite spin-orbit modes the analyzers address.

    Transmitted arm span {(R,+2q), (L,-2q)}, reflected arm span
    {(R,-2q), (L,+2q)}; the normalized result is a 2x2-amplitude state,
    maximally entangled when the surviving coefficients have equal weight.
    """
    t_span = {SpinOrbitMode(Spin.R, twoQ), SpinOrbitMode(Spin.L, -twoQ)}
    r_span = {SpinOrbitMode(Spin.R, -twoQ), SpinOrbitMode(Spin.L, twoQ)}
    kept = {
        key: amp
        for key, amp in joint.amplitudes.items()
        if key[0] in t_span and key[1] in r_span
    }
    projected = BiphotonState(kept, joint.m_max)
    if projected.norm_sq() < _PEAK_EPS:
        raise EmptyProjectionError("post-selection removed every amplitude")
    return projected.normalize()


def schmidt_coefficients(b: BiphotonState) -> tuple[float, float]:
    """Singular values of the 2x2 amplitude matrix, descending.

    Squares sum to 1 for a normalized input. States supported on more than
    two modes per arm raise UnsupportedShapeError.
    """
    t_modes = sorted({kt for kt, _ in b.amplitudes}, key=lambda m: (m.spin.value, m.m))
    r_modes = sorted({kr for _, kr in b.amplitudes}, key=lambda m: (m.spin.value, m.m))
    if len(t_modes) > 2 or len(r_modes) > 2:
        raise UnsupportedShapeError(
            f"support is {len(t_modes)}x{len(r_modes)} modes; need at most 2 per arm"
        )
    matrix = np.zeros((max(len(t_modes), 1), max(len(r_modes), 1)), dtype=complex)
    for i, kt in enumerate(t_modes):
        for j, kr in enumerate(r_modes):
            matrix[i, j] = b.amplitudes.get((kt, kr), 0j)
    singular = np.linalg.svd(matrix, compute_uv=False)
    values = sorted((float(s) for s in singular), reverse=True)
    values += [0.0] * (2 - len(values))
    return values[0], values[1]


def correlation_E(
    joint: BiphotonState,
    twoQ: int,
    theta: float,
    beta_t: float,
    beta_r: float,
) -> float:
    """Correlator built from the four coincidences at (beta, beta + pi/4q).

    The reflected arm uses the conjugate configuration (-2q, -theta); both
    rotations are measured from the calibrated fringe origin. The result
    lies in [-1, 1] and equals V*cos[4q(beta_t - beta_r)] for a fringe of
    visibility V.
    """
    offset = calibration_offset(joint, twoQ, theta)
    bar = math.pi / (2.0 * twoQ)

    def rate(bt: float, br: float) -> float:
        return coincidence(
            joint,
            Analyzer(twoQ, theta, bt + offset),
            Analyzer(-twoQ, -theta, br),
        )

    c_uu = rate(beta_t, beta_r)
    c_bb = rate(beta_t + bar, beta_r + bar)
    c_ub = rate(beta_t, beta_r + bar)
    c_bu = rate(beta_t + bar, beta_r)
    denom = c_uu + c_bb + c_ub + c_bu
    if denom < 1e-15:
        raise ZeroDenominatorError("all four coincidence terms vanished")
    return (c_uu + c_bb - c_ub - c_bu) / denom


def chsh_S(joint: BiphotonState, settings: ChshSettings) -> float:
    """CHSH parameter S = E(t,r) - E(t,r') + E(t',r) + E(t',r')."""

    def corr(bt: float, br: float) -> float:
        return correlation_E(joint, settings.twoQ, 0.0, bt, br)

    return (
        corr(settings.beta_t, settings.beta_r)
        - corr(settings.beta_t, settings.beta_r_prime)
        + corr(settings.beta_t_prime, settings.beta_r)
        + corr(settings.beta_t_prime, settings.beta_r_prime)
    )


def _golden_max(f, lo: float, hi: float, tol: float = 1e-10) -> float:
    c = hi - _GOLDEN * (hi - lo)
    d = lo + _GOLDEN * (hi - lo)
    fc, fd = f(c), f(d)
    while (hi - lo) > tol:
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - _GOLDEN * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _GOLDEN * (hi - lo)
            fd = f(d)
    return 0.5 * (lo + hi)


def optimize_chsh(
    joint: BiphotonState,
    twoQ: int,
    resolution: float = 1e-3,
) -> tuple[ChshSettings, float]:
    """Search evenly spaced analyzer rotations for the largest S.

    For a cosine-law correlator the optimum lies on the evenly spaced
    family (base, base+s, base+2s, base+3s), so the search is one
    dimensional: a coarse grid over the fringe phase x = 2*twoQ*s at the
    given beta resolution, followed by golden-section refinement. The grid
    objective uses the exact single-harmonic form of the fringe; the
    returned S is re-evaluated through the full coincidence path at the
    chosen settings.
    """
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    p, q = _fringe_harmonics(joint, twoQ, 0.0)
    norm = abs(p) ** 2 + abs(q) ** 2
    if norm < _PEAK_EPS:
        raise DegenerateNormalizationError("joint state has no fringe at this charge")
    visibility = 2.0 * abs(p) * abs(q) / norm

    def s_of_phase(x: float) -> float:
        # Calibrated correlator is V*cos(x') at phase difference x', so the
        # evenly spaced CHSH combination reduces to V*(3 cos x - cos 3x).
        return visibility * (3.0 * math.cos(x) - math.cos(3.0 * x))

    step = 2.0 * abs(twoQ) * resolution
    grid = np.arange(0.0, 2.0 * math.pi, step)
    values = visibility * (3.0 * np.cos(grid) - np.cos(3.0 * grid))
    best = int(np.argmax(values))
    x_best = _golden_max(s_of_phase, float(grid[best]) - step, float(grid[best]) + step, tol=1e-10)
    if x_best > math.pi:
        # The objective is even in x, so each maximum above pi mirrors one
        # below; return the canonical representative.
        x_best = 2.0 * math.pi - x_best
    spacing = x_best / (2.0 * twoQ)
    settings = ChshSettings.evenly_spaced(twoQ, spacing)
    return settings, chsh_S(joint, settings)


def _harmonic_least_squares(deltas: np.ndarray, values: np.ndarray, omega: float):
    design = np.column_stack(
        [np.ones_like(deltas), np.cos(omega * deltas), np.sin(omega * deltas)]
    )
    gram = design.T @ design
    rhs = design.T @ values
    try:
        coeffs = np.linalg.solve(gram, rhs)
    except np.linalg.LinAlgError:
        coeffs, *_ = np.linalg.lstsq(design, values, rcond=None)
    residual = values - design @ coeffs
    return coeffs, float(np.sqrt(np.mean(residual**2)))


def fringe_fit(samples) -> FringeFit:
    """Least-squares fit of coincidence samples to V*cos^2(w*delta + d0) + (1-V)/2.

    Needs at least 8 (delta, rate) samples spanning one period. The pattern
    frequency is identified by a residual scan refined with golden-section,
    so the period is measured from the data rather than assumed. Constant
    samples are a legal zero-visibility fringe with undefined period.
    """
    points = [(float(d), float(c)) for d, c in samples]
    if len(points) < 8:
        raise ValueError("fringe fit needs at least 8 samples")
    deltas = np.array([d for d, _ in points])
    values = np.array([c for _, c in points])
    span = float(deltas.max() - deltas.min())
    if span <= 0.0:
        raise ValueError("fringe samples must span a range of delta")

    if float(values.max() - values.min()) < 1e-13:
        return FringeFit(0.0, 0.0, math.inf, 0.0)

    gaps = np.diff(np.unique(deltas))
    omega_max = min(math.pi / float(gaps.min()), 100.0)
    step = math.pi / (4.0 * span)
    candidates = np.arange(step, omega_max + step, step)

    def rms(omega: float) -> float:
        return _harmonic_least_squares(deltas, values, omega)[1]

    residuals = [rms(w) for w in candidates]
    best = int(np.argmin(residuals))
    lo = float(candidates[max(best - 1, 0)])
    hi = float(candidates[min(best + 1, len(candidates) - 1)])
    omega = _golden_max(lambda w: -rms(w), lo, hi, tol=1e-13)

    coeffs, residual = _harmonic_least_squares(deltas, values, omega)
    mean, c_cos, c_sin = (float(v) for v in coeffs)
    amplitude = math.hypot(c_cos, c_sin)
    if mean < 1e-12:
        raise IllConditionedFitError("fringe mean is zero; visibility undefined")
    visibility = min(max(amplitude / mean, 0.0), 1.0)
    delta0 = math.remainder(math.atan2(-c_sin, c_cos) / 2.0, math.pi)
    if delta0 <= -math.pi / 2.0:
        delta0 += math.pi
    return FringeFit(visibility, delta0, 2.0 * math.pi / omega, residual)
