"""ZF-equalized detection and the iterative clipping-noise-cancellation receivers.

Both iterative receivers share the same loop: hard-detect the current
observation, regenerate the post-equalizer distortion those decisions would
have produced, subtract the estimate from the original observation, repeat.
They differ only in the regeneration path:

* the multi-antenna receiver (``mcnc_receive``) replays the full transmit
  chain - precoding, per-antenna OFDM modulation, clipping, channel - using
  exactly the transmitter code paths, so it needs the channel and precoding
  matrices;
* the simplified receiver (``cnc_receive``) replays a single unprecoded
  chain clipped at the K-antenna-equivalent saturation power and needs only
  the composite equalizer gain and a scalar Bussgang coefficient.

With an equal-magnitude per-antenna precoder the two are algebraically
identical, which the test suite checks bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .channel import propagate
from .errors import DeepFadeError
from .frontend import AmplifierModel, alpha_analytic, soft_limit
from .modem import Constellation, OfdmConfig, ofdm_demodulate, ofdm_modulate
from .precoding import apply_precoding

DEEP_FADE_THRESHOLD = 1e-12


def coherent_gain(channel, precoder, alpha) -> np.ndarray:
    """Composite per-subcarrier gain sum_k alpha_k h_{k,n} v_{k,n}."""
    h = np.asarray(getattr(channel, "coefficients", channel), dtype=complex)
    v = np.asarray(precoder, dtype=complex)
    a = np.atleast_1d(np.asarray(alpha, dtype=float))
    return np.sum(a[:, None] * h * v, axis=0)


@dataclass(frozen=True)
class ReceiverSideInfo:
    """Everything the multi-antenna receiver must know about the link.

    ``channel`` is the receiver's channel estimate; feeding a corrupted
    estimate here (and deriving ``precoder`` from it) models imperfect CSI in
    both the equalizer and the regeneration path.
    """

    channel: np.ndarray
    precoder: np.ndarray
    alpha: np.ndarray
    amplifier: AmplifierModel
    cfg: OfdmConfig
    constellation: Constellation

    @cached_property
    def equalizer_denominator(self) -> np.ndarray:
        return coherent_gain(self.channel, self.precoder, self.alpha)

    @property
    def n_antennas(self) -> int:
        return np.asarray(self.channel).shape[0]


@dataclass(frozen=True)
class CncSideInfo:
    """The simplified receiver's knowledge: composite gain, scalar Bussgang
    coefficient and the single-chain amplifier operating point."""

    equalizer_denominator: np.ndarray
    alpha: float
    amplifier: AmplifierModel
    cfg: OfdmConfig
    constellation: Constellation

    @classmethod
    def from_full(cls, info: ReceiverSideInfo) -> "CncSideInfo":
        """Derive the lite side info from full side info.

        The single-chain clipping power is the per-antenna saturation scaled
        by the antenna count (same IBO, unprecoded mean input power).
        """
        return cls(
            equalizer_denominator=info.equalizer_denominator,
            alpha=alpha_analytic(info.amplifier.ibo_db),
            amplifier=info.amplifier.scaled(info.n_antennas),
            cfg=info.cfg,
            constellation=info.constellation,
        )


@dataclass
class IterationTrace:
    """Per-iteration receiver state: detections, distortion estimates, observations.

    ``symbols``/``bits`` hold one entry per detection event (iterations + 1);
    entry i is the detection the receiver would output after i iterations.
    """

    symbols: list = field(default_factory=list)
    bits: list = field(default_factory=list)
    distortion: list = field(default_factory=list)
    observations: list = field(default_factory=list)


@dataclass
class DetectionResult:
    symbols: np.ndarray
    bits: np.ndarray
    trace: IterationTrace


def equalize(spectrum, info) -> np.ndarray:
    """Divide the received spectrum by the composite coherent gain."""
    r = np.asarray(spectrum, dtype=complex)
    denominator = info.equalizer_denominator
    faded = np.flatnonzero(np.abs(denominator) < DEEP_FADE_THRESHOLD)
    if faded.size:
        raise DeepFadeError(
            f"equalizer gain below {DEEP_FADE_THRESHOLD:g} at subcarrier index {faded[0]}"
        )
    return r / denominator


def mcnc_distortion_estimate(detected_symbols, info: ReceiverSideInfo) -> np.ndarray:
    """Post-equalizer distortion the detected symbols would have produced.

    Replays precoding, OFDM modulation, clipping and noiseless propagation
    through the receiver's channel estimate, re-equalizes, and subtracts the
    detected symbols.
    """
    precoded = apply_precoding(detected_symbols, info.precoder)
    frames = ofdm_modulate(precoded, info.cfg)
    clipped = soft_limit(frames, info.amplifier)
    regenerated = propagate(clipped, info.channel, info.cfg)
    return regenerated / info.equalizer_denominator - detected_symbols


def cnc_distortion_estimate(detected_symbols, info: CncSideInfo) -> np.ndarray:
    """Single-chain variant: modulate without precoding, clip, demodulate, /alpha."""
    frame = ofdm_modulate(np.asarray(detected_symbols, dtype=complex), info.cfg)
    clipped = soft_limit(frame, info.amplifier)
    return ofdm_demodulate(clipped, info.cfg) / info.alpha - detected_symbols


def _iterate(spectrum, info, iterations: int, estimator) -> DetectionResult:
    if iterations < 0:
        raise ValueError(f"iteration count must be nonnegative, got {iterations}")
    g0 = equalize(spectrum, info)
    trace = IterationTrace(observations=[g0])
    g = g0
    for _ in range(iterations):
        symbols, bits = info.constellation.detect(g)
        trace.symbols.append(symbols)
        trace.bits.append(bits)
        q = estimator(symbols, info)
        g = g0 - q
        trace.distortion.append(q)
        trace.observations.append(g)
    symbols, bits = info.constellation.detect(g)
    trace.symbols.append(symbols)
    trace.bits.append(bits)
    return DetectionResult(symbols=symbols, bits=bits, trace=trace)


def standard_receive(spectrum, info) -> DetectionResult:
    """Equalize and hard-detect; identical to either iterative receiver at I=0."""
    g = equalize(spectrum, info)
    symbols, bits = info.constellation.detect(g)
    return DetectionResult(
        symbols=symbols,
        bits=bits,
        trace=IterationTrace(symbols=[symbols], bits=[bits], observations=[g]),
    )


def mcnc_receive(spectrum, info: ReceiverSideInfo, iterations: int) -> DetectionResult:
    """Multi-antenna clipping-noise cancellation over a fixed iteration count."""
    return _iterate(spectrum, info, iterations, mcnc_distortion_estimate)


def cnc_receive(spectrum, info: CncSideInfo, iterations: int) -> DetectionResult:
    """Simplified clipping-noise cancellation over a fixed iteration count."""
    return _iterate(spectrum, info, iterations, cnc_distortion_estimate)
