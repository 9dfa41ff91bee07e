"""Soft-limiter amplifier model, back-off bookkeeping and Bussgang coefficients.

A single amplifier model is shared by all antennas: the saturation power is
set from the input back-off (IBO) relative to the mean per-antenna sample
power, which under normalized precoding equals
``symbol_power * n_data / (n_antennas * n_fft)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc

from .errors import NumericalError
from .modem import OfdmConfig


def per_antenna_power(symbol_power: float, n_data: int, n_fft: int, n_antennas: int) -> float:
    """Mean time-sample power at one amplifier input under normalized precoding."""
    if n_antennas < 1:
        raise ValueError(f"n_antennas must be >= 1, got {n_antennas}")
    return symbol_power * n_data / (n_antennas * n_fft)


def reference_power(cfg: OfdmConfig, n_antennas: int, symbol_power: float = 1.0) -> float:
    """Per-antenna mean input power for a given OFDM numerology."""
    return per_antenna_power(symbol_power, cfg.n_data, cfg.n_fft, n_antennas)


@dataclass(frozen=True)
class AmplifierModel:
    """Soft limiter operating point: saturation = 10^(ibo/10) * mean input power.

    ``ibo_db=inf`` models a perfectly linear amplifier.
    """

    ibo_db: float
    mean_input_power: float

    def __post_init__(self):
        if self.mean_input_power <= 0:
            raise ValueError(f"mean input power must be positive, got {self.mean_input_power}")

    @property
    def saturation_power(self) -> float:
        return 10.0 ** (self.ibo_db / 10.0) * self.mean_input_power

    @property
    def is_linear(self) -> bool:
        return math.isinf(self.ibo_db) and self.ibo_db > 0

    def scaled(self, factor: float) -> "AmplifierModel":
        """Same IBO applied to a mean input power scaled by ``factor``."""
        return AmplifierModel(self.ibo_db, self.mean_input_power * factor)


def soft_limit(frame, amplifier: AmplifierModel) -> np.ndarray:
    """Clamp sample magnitudes to sqrt(saturation power), preserving phase.

    Idempotent in floating point: clipped samples are nudged at-or-below the
    threshold so a second pass leaves them untouched.
    """
    y = np.array(frame, dtype=complex)
    if amplifier.is_linear:
        return y
    sat = amplifier.saturation_power
    power = y.real**2 + y.imag**2
    mask = power > sat
    if not mask.any():
        return y
    clipped = y[mask] * np.sqrt(sat / power[mask])
    over = clipped.real**2 + clipped.imag**2 > sat
    while over.any():
        clipped[over] *= 1.0 - np.finfo(float).eps
        over = clipped.real**2 + clipped.imag**2 > sat
    y[mask] = clipped
    return y


def alpha_analytic(ibo_db):
    """Bussgang linear gain of the soft limiter for complex-Gaussian input.

    With gamma = 10^(ibo/20):  alpha = 1 - e^{-gamma^2} + (sqrt(pi)*gamma/2) * erfc(gamma).
    Monotone in the back-off and -> 1 as the limiter becomes transparent.
    """
    ibo = np.asarray(ibo_db, dtype=float)
    gamma = 10.0 ** (ibo / 20.0)
    with np.errstate(invalid="ignore", over="ignore"):
        alpha = 1.0 - np.exp(-(gamma**2)) + np.sqrt(np.pi) * gamma / 2.0 * erfc(gamma)
    alpha = np.where(np.isinf(gamma), 1.0, alpha)
    return float(alpha) if np.ndim(ibo_db) == 0 else alpha


def alpha_empirical(input_samples, output_samples) -> float:
    """Least-squares linear gain between amplifier input and output.

    Sample form of the correlation ratio E[out * in^*] / E[|in|^2]; the
    imaginary part vanishes for phase-preserving nonlinearities and is
    discarded.
    """
    x = np.ravel(np.asarray(input_samples, dtype=complex))
    y = np.ravel(np.asarray(output_samples, dtype=complex))
    if x.size == 0 or x.size != y.size:
        raise ValueError(f"need equal, nonzero sample counts, got {x.size} and {y.size}")
    denominator = np.vdot(x, x).real
    if denominator == 0:
        raise NumericalError("Bussgang gain undefined: input power is zero")
    return (np.vdot(x, y) / denominator).real


@dataclass(frozen=True)
class BussgangCoefficients:
    """Per-antenna back-off and linear gain implied by one precoding matrix."""

    alpha: np.ndarray
    ibo_db: np.ndarray


def per_antenna_ibo(
    matrix, amplifier: AmplifierModel, symbol_power: float, cfg: OfdmConfig
) -> BussgangCoefficients:
    """Back-off and Bussgang gain seen by each antenna for a given precoder.

    The per-antenna mean input power is (symbol_power/n_fft) * sum_n |v_{k,n}|^2.
    An antenna with zero precoding power never clips: its gain is 1 and its
    back-off infinite.
    """
    v = np.asarray(matrix, dtype=complex)
    row_power = symbol_power / cfg.n_fft * np.sum(np.abs(v) ** 2, axis=1)
    ibo = np.full(v.shape[0], np.inf)
    active = row_power > 0
    ibo[active] = 10.0 * np.log10(amplifier.saturation_power / row_power[active])
    alpha = alpha_analytic(ibo)
    return BussgangCoefficients(alpha=alpha, ibo_db=ibo)
