"""Deterministic complex-vector primitives: unitary DFT pair and seeded RNG streams.

The transform convention is unitary in both directions (scale 1/sqrt(N)),
with the forward kernel e^{-j2*pi*n*t/N}.  ``dft`` is the radix-2 reference
implementation; the vectorized ``unitary_fft``/``unitary_ifft`` wrappers used
on hot paths are pinned against it by the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


def _bit_reversed_indices(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.intp)
    for b in range(bits):
        rev = (rev << 1) | ((idx >> b) & 1)
    return rev


def dft(values, inverse: bool = False) -> np.ndarray:
    """Unitary DFT of a power-of-two length vector (iterative radix-2).

    Parameters
    ----------
    values : array_like of complex, 1-D
    inverse : bool
        False applies the forward kernel e^{-j2*pi*n*t/N}, True the inverse.

    Returns
    -------
    np.ndarray of complex, same length, scaled by 1/sqrt(N).
    """
    v = np.asarray(values, dtype=complex)
    if v.ndim != 1:
        raise ValueError(f"dft expects a 1-D vector, got shape {v.shape}")
    n = v.shape[0]
    if not is_power_of_two(n):
        raise ValueError(f"dft length must be a power of two, got {n}")

    out = v[_bit_reversed_indices(n)]
    sign = 1.0 if inverse else -1.0
    span = 1
    while span < n:
        twiddle = np.exp(sign * 1j * np.pi * np.arange(span) / span)
        blocks = out.reshape(-1, 2 * span)
        upper = blocks[:, :span].copy()
        lower = blocks[:, span:] * twiddle
        blocks[:, :span] = upper + lower
        blocks[:, span:] = upper - lower
        span *= 2
    return out / np.sqrt(n)


def unitary_fft(x, axis: int = -1) -> np.ndarray:
    """Forward unitary DFT along ``axis`` (vectorized fast path)."""
    return np.fft.fft(x, axis=axis, norm="ortho")


def unitary_ifft(x, axis: int = -1) -> np.ndarray:
    """Inverse unitary DFT along ``axis`` (vectorized fast path)."""
    return np.fft.ifft(x, axis=axis, norm="ortho")


def complex_gaussian(rng: np.random.Generator, variance: float, size=None):
    """Circularly-symmetric complex Gaussian samples with E[|x|^2] = variance.

    Real and imaginary parts are independent N(0, variance/2).  ``size=None``
    returns a single complex scalar.
    """
    if variance < 0:
        raise ValueError(f"variance must be nonnegative, got {variance}")
    if variance == 0:
        return 0j if size is None else np.zeros(size, dtype=complex)
    scale = np.sqrt(variance / 2.0)
    sample = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return sample * scale


@dataclass(frozen=True)
class RngStream:
    """Reproducible, splittable random stream.

    Identical (seed, stream) pairs always reproduce the same sample sequence;
    ``child`` derives statistically independent substreams, so each
    (scenario point, trial) can own one without coordination.  Backed by the
    counter-based Philox generator.
    """

    seed: int
    stream: tuple = ()

    def child(self, *ids: int) -> "RngStream":
        return RngStream(self.seed, self.stream + tuple(int(i) for i in ids))

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=self.stream)
        return np.random.Generator(np.random.Philox(seq))
