"""MISO channel models (LOS, two-path ground reflection, IID Rayleigh),
noiseless propagation, receiver noise and CSI corruption.

All channels are flat per subcarrier: one complex coefficient per
(antenna, data subcarrier), evaluated at the absolute subcarrier frequency.
Geometry uses exact spherical-wave distances from each array element to the
receiver; the two-path model mirrors the transmit element below ground and
applies a -1 reflection coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .modem import OfdmConfig, ofdm_demodulate
from .numerics import complex_gaussian

SPEED_OF_LIGHT = 299_792_458.0


@dataclass(frozen=True)
class ArrayGeometry:
    """Uniform linear array along the x axis at a fixed height.

    Azimuth is measured from the array broadside (the +y direction).
    """

    n_elements: int
    spacing_m: float
    height_m: float = 15.0

    def __post_init__(self):
        if self.n_elements < 1:
            raise ValueError(f"n_elements must be >= 1, got {self.n_elements}")
        if self.spacing_m <= 0:
            raise ValueError(f"spacing must be positive, got {self.spacing_m}")

    @classmethod
    def half_wavelength(cls, n_elements: int, carrier_freq_hz: float, height_m: float = 15.0):
        return cls(n_elements, SPEED_OF_LIGHT / carrier_freq_hz / 2.0, height_m)

    def element_positions(self) -> np.ndarray:
        x = (np.arange(self.n_elements) - (self.n_elements - 1) / 2.0) * self.spacing_m
        pos = np.zeros((self.n_elements, 3))
        pos[:, 0] = x
        pos[:, 2] = self.height_m
        return pos


@dataclass(frozen=True)
class ReceiverPlacement:
    """Receiver location, optionally jittered inside a horizontal square."""

    distance_m: float = 300.0
    azimuth_deg: float = 45.0
    height_m: float = 1.5
    jitter_box_m: float = 0.0

    def __post_init__(self):
        if self.distance_m <= 0:
            raise ValueError(f"distance must be positive, got {self.distance_m}")
        if self.height_m < 0:
            raise ValueError(f"height must be nonnegative, got {self.height_m}")
        if self.jitter_box_m < 0:
            raise ValueError(f"jitter box must be nonnegative, got {self.jitter_box_m}")

    def position(self, rng: np.random.Generator | None = None) -> np.ndarray:
        az = np.deg2rad(self.azimuth_deg)
        pos = np.array(
            [self.distance_m * np.sin(az), self.distance_m * np.cos(az), self.height_m]
        )
        if rng is not None and self.jitter_box_m > 0:
            half = self.jitter_box_m / 2.0
            pos[:2] += rng.uniform(-half, half, size=2)
        return pos


@dataclass(frozen=True)
class ChannelRealization:
    """(n_antennas, n_data) complex gains plus the generating model tag."""

    coefficients: np.ndarray
    model: str

    @property
    def n_antennas(self) -> int:
        return self.coefficients.shape[0]


def _free_space_rays(element_positions: np.ndarray, rx_position: np.ndarray, frequencies: np.ndarray) -> np.ndarray:
    distances = np.linalg.norm(element_positions - rx_position[None, :], axis=1)
    if np.any(distances <= 0):
        raise ValueError("zero propagation distance")
    d = distances[:, None]
    f = frequencies[None, :]
    amplitude = SPEED_OF_LIGHT / (4.0 * np.pi * d * f)
    phase = -2.0 * np.pi * d * f / SPEED_OF_LIGHT
    return amplitude * np.exp(1j * phase)


def los(
    geometry: ArrayGeometry,
    placement: ReceiverPlacement,
    cfg: OfdmConfig,
    rng: np.random.Generator | None = None,
) -> ChannelRealization:
    """Free-space line-of-sight channel from exact element-to-receiver distances."""
    rx = placement.position(rng)
    h = _free_space_rays(geometry.element_positions(), rx, cfg.subcarrier_frequencies)
    return ChannelRealization(h, "los")


def two_path(
    geometry: ArrayGeometry,
    placement: ReceiverPlacement,
    cfg: OfdmConfig,
    rng: np.random.Generator | None = None,
    reflection_coefficient: float = -1.0,
) -> ChannelRealization:
    """Direct ray plus ground reflection via the image method.

    The reflected path length is the distance from the transmit element
    mirrored below ground to the receiver; both rays follow the free-space
    amplitude/phase law.
    """
    rx = placement.position(rng)
    elements = geometry.element_positions()
    direct = _free_space_rays(elements, rx, cfg.subcarrier_frequencies)
    mirrored = elements.copy()
    mirrored[:, 2] *= -1.0
    reflected = _free_space_rays(mirrored, rx, cfg.subcarrier_frequencies)
    return ChannelRealization(direct + reflection_coefficient * reflected, "two-path")


def rayleigh(n_antennas: int, n_data: int, rng: np.random.Generator) -> ChannelRealization:
    """IID unit-variance complex-Gaussian gains per antenna and subcarrier."""
    if n_antennas < 1 or n_data < 1:
        raise ValueError("n_antennas and n_data must be >= 1")
    h = complex_gaussian(rng, 1.0, (n_antennas, n_data))
    return ChannelRealization(h, "rayleigh")


def propagate(frames, channel, cfg: OfdmConfig) -> np.ndarray:
    """Noiseless received spectrum over the data subcarriers.

    Demodulates each antenna's transmitted time frame and sums the
    per-subcarrier products with the channel gains (flat per subcarrier, so
    the multiplication is exact).
    """
    h = np.asarray(getattr(channel, "coefficients", channel), dtype=complex)
    frames = np.asarray(frames, dtype=complex)
    if frames.ndim != 2 or frames.shape[0] != h.shape[0]:
        raise ValueError(
            f"expected {h.shape[0]} antenna frames, got array of shape {frames.shape}"
        )
    spectra = ofdm_demodulate(frames, cfg)
    return np.sum(spectra * h, axis=0)


def add_awgn(spectrum, noise_power: float, rng: np.random.Generator) -> np.ndarray:
    """Add circular complex Gaussian noise of the given per-subcarrier power."""
    r = np.asarray(spectrum, dtype=complex)
    return r + complex_gaussian(rng, noise_power, r.shape)


def corrupt_csi(channel: ChannelRealization, epsilon: float, rng: np.random.Generator) -> ChannelRealization:
    """Mix the true channel with noise scaled to the per-antenna average gain.

    h_hat = sqrt(1 - eps^2) * h + eps * w, where w is complex Gaussian with
    per-antenna power equal to the mean |h|^2 over the data subcarriers, so
    the estimate keeps the channel's average energy for every eps in [0, 1].
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"CSI error must lie in [0, 1], got {epsilon}")
    if epsilon == 0.0:
        return channel
    h = channel.coefficients
    per_antenna_gain = np.sqrt(np.mean(np.abs(h) ** 2, axis=1, keepdims=True))
    w = complex_gaussian(rng, 1.0, h.shape) * per_antenna_gain
    mixed = np.sqrt(1.0 - epsilon**2) * h + epsilon * w
    return ChannelRealization(mixed, channel.model)
