"""QAM constellations, bit mapping, hard detection and OFDM (de)modulation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .numerics import is_power_of_two, unitary_fft, unitary_ifft


def _gray(n: np.ndarray | int):
    return n ^ (n >> 1)


class Constellation:
    """Square Gray-coded QAM with unit mean symbol power.

    Axis convention (fixed here, since it determines every bit-error count):
    the first half of a symbol's bits selects the real (I) level and the
    second half the imaginary (Q) level, most significant bit first.  On each
    axis the all-zeros label maps to the most positive level and adjacent
    levels differ in exactly one bit.  Points exactly on a decision boundary
    slice toward the larger level.
    """

    ORDERS = (4, 16, 64, 256)

    def __init__(self, order: int):
        if order not in self.ORDERS:
            raise ValueError(f"constellation order must be one of {self.ORDERS}, got {order}")
        self.order = order
        self.bits_per_symbol = order.bit_length() - 1
        self.bits_per_axis = self.bits_per_symbol // 2
        self.side = math.isqrt(order)
        # Axis amplitudes in descending order: index l holds (side-1-2l)/norm.
        self._norm = math.sqrt(2.0 * (order - 1) / 3.0)
        self.axis_levels = ((self.side - 1) - 2.0 * np.arange(self.side)) / self._norm
        # Gray labels: level l carries label gray(l), so neighbors differ in one bit.
        levels = np.arange(self.side)
        self._label_for_level = _gray(levels)
        self._level_for_label = np.empty(self.side, dtype=np.intp)
        self._level_for_label[self._label_for_level] = levels

    @cached_property
    def points(self) -> np.ndarray:
        """All constellation points indexed by symbol label (I bits, then Q bits)."""
        i_level = self._level_for_label[np.arange(self.side)]
        re = self.axis_levels[i_level]
        return (re[:, None] + 1j * re[None, :]).reshape(-1)

    def map_bits(self, bits) -> np.ndarray:
        """Gray-map a bit sequence onto QAM symbols.

        ``bits`` must hold a multiple of log2(order) entries in {0, 1}.
        """
        b = np.asarray(bits)
        if b.ndim != 1 or b.size % self.bits_per_symbol != 0:
            raise ValueError(
                f"bit count {b.size} is not a multiple of {self.bits_per_symbol}"
            )
        b = b.reshape(-1, self.bits_per_symbol).astype(np.intp)
        weights = 1 << np.arange(self.bits_per_axis - 1, -1, -1)
        i_label = b[:, : self.bits_per_axis] @ weights
        q_label = b[:, self.bits_per_axis :] @ weights
        re = self.axis_levels[self._level_for_label[i_label]]
        im = self.axis_levels[self._level_for_label[q_label]]
        return re + 1j * im

    def _slice_axis(self, x: np.ndarray) -> np.ndarray:
        # a(l) = (side-1-2l)/norm, so the nearest level index is round of
        # ((side-1) - x*norm)/2; exact midpoints go to the smaller index,
        # i.e. the larger level.
        pos = ((self.side - 1) - x * self._norm) / 2.0
        level = np.ceil(pos - 0.5).astype(np.intp)
        return np.clip(level, 0, self.side - 1)

    def hard_detect(self, g) -> np.ndarray:
        """Nearest constellation point (per-axis level slicing)."""
        g = np.asarray(g, dtype=complex)
        if not np.all(np.isfinite(g)):
            raise ValueError("hard_detect requires finite observations")
        re = self.axis_levels[self._slice_axis(g.real)]
        im = self.axis_levels[self._slice_axis(g.imag)]
        return re + 1j * im

    def detect(self, g) -> tuple[np.ndarray, np.ndarray]:
        """Hard-detect observations; returns (symbols, bits)."""
        g = np.asarray(g, dtype=complex)
        if not np.all(np.isfinite(g)):
            raise ValueError("detect requires finite observations")
        i_level = self._slice_axis(g.real)
        q_level = self._slice_axis(g.imag)
        symbols = self.axis_levels[i_level] + 1j * self.axis_levels[q_level]
        labels = np.stack(
            [self._label_for_level[i_level], self._label_for_level[q_level]], axis=1
        )
        shifts = np.arange(self.bits_per_axis - 1, -1, -1)
        bits = (labels[:, :, None] >> shifts) & 1
        return symbols, bits.reshape(-1).astype(np.uint8)

    def bits_for_symbols(self, symbols) -> np.ndarray:
        """Exact demap of constellation points back to their bit labels."""
        _, bits = self.detect(symbols)
        return bits


@dataclass(frozen=True)
class OfdmConfig:
    """OFDM numerology: FFT size, data subcarrier set, cyclic prefix and frequencies.

    Data subcarriers occupy {-n_data/2, ..., -1, 1, ..., n_data/2}; the DC
    bin stays unused.  ``cp_len=None`` defaults to n_fft//16.
    """

    n_fft: int
    n_data: int
    cp_len: int | None = None
    subcarrier_spacing_hz: float = 15e3
    carrier_freq_hz: float = 3.5e9

    def __post_init__(self):
        if not is_power_of_two(self.n_fft):
            raise ValueError(f"n_fft must be a power of two, got {self.n_fft}")
        if self.n_data < 2 or self.n_data % 2 != 0:
            raise ValueError(f"n_data must be a positive even integer, got {self.n_data}")
        if self.n_data > self.n_fft - 2:
            raise ValueError(
                f"n_data={self.n_data} does not fit in n_fft={self.n_fft} with an unused DC bin"
            )
        if self.cp_len is None:
            object.__setattr__(self, "cp_len", self.n_fft // 16)
        if self.cp_len < 0:
            raise ValueError(f"cp_len must be nonnegative, got {self.cp_len}")
        if self.subcarrier_spacing_hz <= 0 or self.carrier_freq_hz <= 0:
            raise ValueError("subcarrier spacing and carrier frequency must be positive")

    @property
    def frame_len(self) -> int:
        return self.n_fft + self.cp_len

    @cached_property
    def subcarriers(self) -> np.ndarray:
        half = self.n_data // 2
        return np.concatenate([np.arange(-half, 0), np.arange(1, half + 1)])

    @cached_property
    def bin_indices(self) -> np.ndarray:
        return np.mod(self.subcarriers, self.n_fft)

    @cached_property
    def subcarrier_frequencies(self) -> np.ndarray:
        return self.carrier_freq_hz + self.subcarriers * self.subcarrier_spacing_hz


def ofdm_modulate(row, cfg: OfdmConfig) -> np.ndarray:
    """Map data onto the subcarrier set, inverse-transform, prepend the CP.

    ``row`` holds the n_data subcarrier values ordered like
    ``cfg.subcarriers``; leading axes are treated as independent frames
    (e.g. one per antenna).
    """
    row = np.asarray(row, dtype=complex)
    if row.shape[-1] != cfg.n_data:
        raise ValueError(f"expected {cfg.n_data} subcarrier values, got {row.shape[-1]}")
    spectrum = np.zeros(row.shape[:-1] + (cfg.n_fft,), dtype=complex)
    spectrum[..., cfg.bin_indices] = row
    block = unitary_ifft(spectrum)
    if cfg.cp_len == 0:
        return block
    return np.concatenate([block[..., cfg.n_fft - cfg.cp_len :], block], axis=-1)


def ofdm_demodulate(frame, cfg: OfdmConfig) -> np.ndarray:
    """Strip the CP, forward-transform, extract the data subcarriers."""
    frame = np.asarray(frame, dtype=complex)
    if frame.shape[-1] != cfg.frame_len:
        raise ValueError(
            f"expected frame of {cfg.frame_len} samples, got {frame.shape[-1]}"
        )
    spectrum = unitary_fft(frame[..., cfg.cp_len :])
    return spectrum[..., cfg.bin_indices]
