"""Per-subcarrier precoding: MRT and the equal-magnitude phase-only precoder.

Every constructor keeps the per-subcarrier normalization
sum_k |v_{k,n}|^2 = 1, so the total transmit power gain is unity regardless
of the number of antennas.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularChannelError


def _coefficients(channel) -> np.ndarray:
    h = getattr(channel, "coefficients", channel)
    return np.asarray(h, dtype=complex)


def mrt(channel) -> np.ndarray:
    """Maximum ratio transmission matrix: conjugate channel, unit column norm.

    ``channel`` is a ChannelRealization or a (n_antennas, n_data) array.
    """
    h = _coefficients(channel)
    column_power = np.sum(np.abs(h) ** 2, axis=0)
    dead = np.flatnonzero(column_power <= 0.0)
    if dead.size:
        raise SingularChannelError(
            f"channel column {dead[0]} has zero power; MRT is undefined"
        )
    return h.conj() / np.sqrt(column_power)


@dataclass(frozen=True)
class PhaseOnlyPrecoder:
    """Per-antenna phase shifts; the induced matrix has |v_{k,n}| = 1/sqrt(K)."""

    phases: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "phases", np.atleast_1d(np.asarray(self.phases, float)))
        if self.phases.ndim != 1 or self.phases.size < 1:
            raise ValueError("phases must be a nonempty 1-D array")

    @property
    def n_antennas(self) -> int:
        return self.phases.size


def beam_steering(channel, reference: int | None = None) -> PhaseOnlyPrecoder:
    """Phase-only precoder co-phasing the antennas at one reference subcarrier."""
    h = _coefficients(channel)
    if reference is None:
        reference = h.shape[1] // 2  # first positive-frequency subcarrier
    column = h[:, reference]
    if not np.all(np.abs(column) > 0):
        raise SingularChannelError(
            f"zero channel coefficient at reference subcarrier {reference}"
        )
    return PhaseOnlyPrecoder(-np.angle(column))


def phase_only_matrix(precoder: PhaseOnlyPrecoder, n_data: int) -> np.ndarray:
    """Expand phase shifts into a (n_antennas, n_data) matrix, constant over subcarriers."""
    column = np.exp(1j * precoder.phases) / np.sqrt(precoder.n_antennas)
    return np.tile(column[:, None], (1, n_data))


def apply_precoding(symbols, matrix) -> np.ndarray:
    """x_{k,n} = s_n * v_{k,n}."""
    s = np.asarray(symbols, dtype=complex)
    v = np.asarray(matrix, dtype=complex)
    if s.ndim != 1 or v.ndim != 2 or v.shape[1] != s.shape[0]:
        raise ValueError(
            f"dimension mismatch: symbols {s.shape} vs precoding matrix {v.shape}"
        )
    return s[None, :] * v
