"""Link-quality metrics (SNR, Eb/N0, SDR, BER) and the receiver
operation-count model.

SNR and SDR are defined over the data-carrying subcarriers with the wanted
signal attenuated by the per-antenna Bussgang gains; Eb/N0 divides the
linear SNR by the bits per symbol.  The complexity model is a pure formula
engine (radix-2 transforms, per-axis QAM slicing, CORDIC-based square roots
at 23 iterations); the simulator never instruments actual operation counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import is_power_of_two
from .receiver import coherent_gain


def bit_errors(tx_bits, rx_bits) -> int:
    """Exact Hamming distance between two equal-length bit streams."""
    a = np.asarray(tx_bits)
    b = np.asarray(rx_bits)
    if a.shape != b.shape:
        raise ValueError(f"bit streams differ in shape: {a.shape} vs {b.shape}")
    return int(np.count_nonzero(a != b))


def ber(tx_bits, rx_bits) -> float:
    """Bit error ratio: Hamming distance over stream length."""
    a = np.asarray(tx_bits)
    if a.size == 0:
        raise ValueError("empty bit streams")
    return bit_errors(tx_bits, rx_bits) / a.size


def sdr_db(channel, precoder, alpha, distortion_spectra, symbol_power: float = 1.0) -> float:
    """Signal-to-distortion ratio over the data subcarriers, in dB.

    ``distortion_spectra`` holds the per-antenna distortion components
    d_{k,n} (the clipped spectrum minus alpha_k times the clean spectrum),
    shaped (..., n_antennas, n_data); leading axes are averaged.
    Returns +inf when the distortion power is exactly zero (linear chain).
    """
    h = np.asarray(getattr(channel, "coefficients", channel), dtype=complex)
    d = np.asarray(distortion_spectra, dtype=complex)
    wanted = symbol_power * np.sum(np.abs(coherent_gain(h, precoder, alpha)) ** 2)
    received = np.sum(h * d, axis=-2)
    distortion = float(np.mean(np.sum(np.abs(received) ** 2, axis=-1)))
    if distortion == 0.0:
        return math.inf
    return 10.0 * math.log10(wanted / distortion)


def snr_and_ebn0_db(channel, precoder, alpha, noise_power: float, symbol_power: float, order: int):
    """(SNR, Eb/N0) in dB for a given per-subcarrier noise power."""
    if noise_power <= 0:
        raise ValueError(f"noise power must be positive, got {noise_power}")
    gain = coherent_gain(channel, precoder, alpha)
    snr = symbol_power * np.mean(np.abs(gain) ** 2) / noise_power
    snr_db = 10.0 * math.log10(snr)
    return snr_db, snr_db - 10.0 * math.log10(math.log2(order))


def noise_power_for_ebn0(channel, precoder, alpha, ebn0_db: float, symbol_power: float, order: int) -> float:
    """Per-subcarrier noise power hitting a target Eb/N0; 0 for ebn0_db=inf."""
    if math.isinf(ebn0_db) and ebn0_db > 0:
        return 0.0
    gain = coherent_gain(channel, precoder, alpha)
    snr = 10.0 ** (ebn0_db / 10.0) * math.log2(order)
    return symbol_power * float(np.mean(np.abs(gain) ** 2)) / snr


@dataclass(frozen=True)
class ComplexityParams:
    """Dimensions entering the operation-count formulas."""

    order: int
    n_fft: int
    n_data: int
    n_antennas: int = 1
    iterations: int = 0

    def __post_init__(self):
        if not is_power_of_two(self.n_fft):
            raise ValueError(f"n_fft must be a power of two, got {self.n_fft}")
        if self.n_data < 1 or self.n_data > self.n_fft:
            raise ValueError(f"n_data must lie in [1, n_fft], got {self.n_data}")
        if math.isqrt(self.order) ** 2 != self.order:
            raise ValueError(f"order must be a perfect square, got {self.order}")
        if self.n_antennas < 1 or self.iterations < 0:
            raise ValueError("n_antennas must be >= 1 and iterations >= 0")


@dataclass(frozen=True)
class OperationCount:
    """Real additions/subtractions and multiplications/divisions for one OFDM symbol."""

    additions: int
    multiplications: int
    n_data: int

    @property
    def additions_per_data_subcarrier(self) -> float:
        return self.additions / self.n_data

    @property
    def multiplications_per_data_subcarrier(self) -> float:
        return self.multiplications / self.n_data


RECEIVER_KINDS = ("standard", "cnc", "mcnc")


def complexity(kind: str, params: ComplexityParams) -> OperationCount:
    """Closed-form operation counts for one received OFDM symbol.

    Building blocks: a radix-2 transform costs 3(N/2)log2 N real
    multiplications and 5(N/2)log2 N + 2N log2 N real additions; per-axis QAM
    detection costs 4*Nu*sqrt(M) multiplications and 6*Nu*sqrt(M) additions;
    equalization, single-chain precoding and single-chain propagation cost
    3*Nu multiplications and 5*Nu additions each; one nonlinear front-end
    costs 5N multiplications/divisions and 70N additions (CORDIC square
    roots at 23 iterations).
    """
    if kind not in RECEIVER_KINDS:
        raise ValueError(f"unknown receiver kind {kind!r}; expected one of {RECEIVER_KINDS}")
    n, nu, k, i = params.n_fft, params.n_data, params.n_antennas, params.iterations
    root_m = math.isqrt(params.order)
    log2n = n.bit_length() - 1

    fft_mults = 3 * (n // 2) * log2n
    fft_adds = 5 * (n // 2) * log2n + 2 * n * log2n
    detect_mults = 4 * nu * root_m
    detect_adds = 6 * nu * root_m

    base_adds = 5 * nu + fft_adds + detect_adds
    base_mults = 3 * nu + fft_mults + detect_mults
    if kind == "standard":
        return OperationCount(base_adds, base_mults, nu)

    if kind == "cnc":
        per_iter_adds = 2 * fft_adds + 70 * n + 2 * nu + detect_adds
        per_iter_mults = 2 * fft_mults + 5 * n + 2 * nu + detect_mults
    else:  # mcnc
        per_iter_adds = (
            (k + 1) * fft_adds + 70 * k * n + (2 * k + 1) * 5 * nu + (k - 1) * nu + 2 * nu + detect_adds
        )
        per_iter_mults = (k + 1) * fft_mults + 5 * k * n + (2 * k + 1) * 3 * nu + detect_mults
    return OperationCount(base_adds + i * per_iter_adds, base_mults + i * per_iter_mults, nu)
