"""Monte Carlo campaign execution and CSV emission.

One grid point = one combination of (antenna count, IBO, Eb/N0, CSI error).
Every OFDM symbol inside a point owns an independent random stream derived
from (master seed, point index, symbol index), so results are reproducible
bit-for-bit regardless of how trials are scheduled, and error counts are
accumulated as exact integers.
"""

from __future__ import annotations

import csv
import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..analysis import bit_errors
from ..channel import (
    ArrayGeometry,
    ReceiverPlacement,
    add_awgn,
    corrupt_csi,
    los,
    propagate,
    rayleigh,
    two_path,
)
from ..frontend import AmplifierModel, per_antenna_ibo, reference_power, soft_limit
from ..modem import Constellation, ofdm_demodulate, ofdm_modulate
from ..numerics import RngStream
from ..precoding import apply_precoding, beam_steering, mrt, phase_only_matrix
from ..receiver import (
    CncSideInfo,
    ReceiverSideInfo,
    cnc_receive,
    coherent_gain,
    mcnc_receive,
    standard_receive,
)
from .config import ScenarioConfig

BER_KINDS = ("ber-sweep", "berin-berout", "convergence")
SWEEP_KINDS = BER_KINDS + ("sdr-sweep", "alpha-check")

# Stable CSV schema: scenario/coordinate columns first, then the fixed
# measurement tail.  Fields that do not apply to a sweep kind stay empty.
CSV_COLUMNS = (
    "kind",
    "n_fft",
    "n_data",
    "m_order",
    "precoder",
    "csi_error",
    "symbols",
    "seed",
    "antenna",
    "ibo_k_db",
    "alpha_analytic",
    "receiver",
    "iterations",
    "ebn0_db",
    "ibo_db",
    "k",
    "channel",
    "ber",
    "bit_errors",
    "total_bits",
    "sdr_db",
    "alpha_mean",
)


@dataclass
class SweepRecord:
    """One measurement row; self-describing (carries its full coordinates)."""

    kind: str
    n_fft: int
    n_data: int
    m_order: int
    precoder: str
    csi_error: float
    symbols: int
    seed: int
    antenna: int | None
    ibo_k_db: float | None
    alpha_analytic: float | None
    receiver: str
    iterations: int | None
    ebn0_db: float | None
    ibo_db: float
    k: int
    channel: str
    ber: float | None
    bit_errors: int | None
    total_bits: int | None
    sdr_db: float | None
    alpha_mean: float | None
    wall_time_s: float = 0.0  # informational; never written to the CSV


@dataclass(frozen=True)
class GridPoint:
    index: int
    k: int
    ibo_db: float
    ebn0_db: float | None
    csi_error: float


@dataclass
class PointStats:
    errors: dict
    total_bits: int
    wanted_power: float
    distortion_power: float
    alpha_mean_sum: float
    alpha_num: np.ndarray | None
    alpha_den: np.ndarray | None
    saturation_power: float
    samples_per_antenna: int
    n_symbols: int
    wall_time_s: float


def build_grid(scenario: ScenarioConfig, kind: str) -> list[GridPoint]:
    if kind in BER_KINDS:
        combos = itertools.product(
            scenario.n_antennas, scenario.ibo_db, scenario.ebn0_db, scenario.csi_error
        )
        return [GridPoint(i, k, ibo, ebn0, eps) for i, (k, ibo, ebn0, eps) in enumerate(combos)]
    combos = itertools.product(scenario.n_antennas, scenario.ibo_db)
    return [GridPoint(i, k, ibo, None, 0.0) for i, (k, ibo) in enumerate(combos)]


def _draw_channel(scenario, cfg, geometry, placement, k, rng):
    if scenario.channel == "los":
        return los(geometry, placement, cfg, rng)
    if scenario.channel == "two-path":
        return two_path(geometry, placement, cfg, rng)
    return rayleigh(k, cfg.n_data, rng)


def _precoding_matrix(scenario, channel, cfg):
    if scenario.precoder == "mrt":
        return mrt(channel)
    return phase_only_matrix(beam_steering(channel), cfg.n_data)


def run_point(scenario: ScenarioConfig, kind: str, point: GridPoint) -> PointStats:
    """Simulate every OFDM symbol of one grid point and accumulate statistics."""
    start = time.perf_counter()
    cfg = scenario.ofdm
    constellation = Constellation(scenario.order)
    ps = scenario.symbol_power
    k = point.k
    amplifier = AmplifierModel(point.ibo_db, reference_power(cfg, k, ps))
    measure_rx = kind in BER_KINDS

    iterations_needed = {0}
    if measure_rx and any(r != "standard" for r in scenario.receivers):
        iterations_needed.update(scenario.iterations)
    imax = max(iterations_needed)
    errors = {r: np.zeros(imax + 1, dtype=np.int64) for r in scenario.receivers}

    geometry = ArrayGeometry.half_wavelength(k, cfg.carrier_freq_hz, scenario.array_height_m)
    placement = ReceiverPlacement(
        scenario.rx_distance_m, scenario.rx_azimuth_deg, scenario.rx_height_m,
        scenario.jitter_box_m,
    )

    bits_per_symbol = cfg.n_data * constellation.bits_per_symbol
    wanted_power = 0.0
    distortion_power = 0.0
    alpha_mean_sum = 0.0
    track_alpha = kind == "alpha-check"
    alpha_num = np.zeros(k, dtype=complex) if track_alpha else None
    alpha_den = np.zeros(k) if track_alpha else None
    master = RngStream(scenario.seed)
    snr_factor = None
    if measure_rx and point.ebn0_db is not None and not math.isinf(point.ebn0_db):
        snr_factor = 10.0 ** (point.ebn0_db / 10.0) * constellation.bits_per_symbol

    for t in range(scenario.symbols_per_point):
        rng = master.child(point.index, t).generator()
        channel = _draw_channel(scenario, cfg, geometry, placement, k, rng)
        if measure_rx and point.csi_error > 0:
            known = corrupt_csi(channel, point.csi_error, rng)
        else:
            known = channel
        matrix = _precoding_matrix(scenario, known, cfg)
        coeffs = per_antenna_ibo(matrix, amplifier, ps, cfg)

        bits = rng.integers(0, 2, bits_per_symbol, dtype=np.uint8)
        symbols = constellation.map_bits(bits)
        frames = ofdm_modulate(apply_precoding(symbols, matrix), cfg)
        clipped = soft_limit(frames, amplifier)

        gain = coherent_gain(channel, matrix, coeffs.alpha)
        wanted_power += ps * float(np.sum(np.abs(gain) ** 2))
        residual = ofdm_demodulate(clipped - coeffs.alpha[:, None] * frames, cfg)
        beamed = np.sum(channel.coefficients * residual, axis=0)
        distortion_power += float(np.sum(np.abs(beamed) ** 2))
        alpha_mean_sum += float(np.mean(coeffs.alpha))
        if track_alpha:
            alpha_num += np.sum(clipped * frames.conj(), axis=1)
            alpha_den += np.sum(np.abs(frames) ** 2, axis=1)

        if not measure_rx:
            continue

        received = propagate(clipped, channel, cfg)
        if snr_factor is not None:
            noise_power = ps * float(np.mean(np.abs(gain) ** 2)) / snr_factor
            received = add_awgn(received, noise_power, rng)
        info = ReceiverSideInfo(
            channel=known.coefficients,
            precoder=matrix,
            alpha=coeffs.alpha,
            amplifier=amplifier,
            cfg=cfg,
            constellation=constellation,
        )
        if "standard" in errors:
            errors["standard"][0] += bit_errors(bits, standard_receive(received, info).bits)
        if "mcnc" in errors:
            result = mcnc_receive(received, info, imax)
            for i in range(imax + 1):
                errors["mcnc"][i] += bit_errors(bits, result.trace.bits[i])
        if "cnc" in errors:
            result = cnc_receive(received, CncSideInfo.from_full(info), imax)
            for i in range(imax + 1):
                errors["cnc"][i] += bit_errors(bits, result.trace.bits[i])

    return PointStats(
        errors=errors,
        total_bits=scenario.symbols_per_point * bits_per_symbol,
        wanted_power=wanted_power,
        distortion_power=distortion_power,
        alpha_mean_sum=alpha_mean_sum,
        alpha_num=alpha_num,
        alpha_den=alpha_den,
        saturation_power=amplifier.saturation_power,
        samples_per_antenna=scenario.symbols_per_point * cfg.frame_len,
        n_symbols=scenario.symbols_per_point,
        wall_time_s=time.perf_counter() - start,
    )


def _iteration_rows(scenario: ScenarioConfig, kind: str, receiver: str) -> list[int]:
    if receiver == "standard":
        return [0]
    if kind == "convergence":
        return list(range(max(scenario.iterations) + 1))
    if kind == "berin-berout":
        return sorted(set(scenario.iterations) | {0})
    return sorted(set(scenario.iterations))


def _records_for_point(scenario, kind, point, stats) -> list[SweepRecord]:
    common = dict(
        kind=kind,
        n_fft=scenario.ofdm.n_fft,
        n_data=scenario.ofdm.n_data,
        m_order=scenario.order,
        precoder=scenario.precoder,
        csi_error=point.csi_error,
        symbols=scenario.symbols_per_point,
        seed=scenario.seed,
        ibo_db=point.ibo_db,
        k=point.k,
        channel=scenario.channel,
        wall_time_s=stats.wall_time_s,
    )
    if stats.distortion_power > 0:
        sdr = 10.0 * math.log10(stats.wanted_power / stats.distortion_power)
    else:
        sdr = math.inf
    alpha_mean = stats.alpha_mean_sum / stats.n_symbols

    if kind == "sdr-sweep":
        return [
            SweepRecord(
                antenna=None, ibo_k_db=None, alpha_analytic=None, receiver="",
                iterations=None, ebn0_db=None, ber=None, bit_errors=None,
                total_bits=None, sdr_db=sdr, alpha_mean=alpha_mean, **common,
            )
        ]
    if kind == "alpha-check":
        from ..frontend import alpha_analytic as alpha_fn

        records = []
        mean_power = stats.alpha_den / stats.samples_per_antenna
        ibo_k = 10.0 * np.log10(stats.saturation_power / mean_power)
        empirical = (stats.alpha_num / stats.alpha_den).real
        for antenna in range(point.k):
            records.append(
                SweepRecord(
                    antenna=antenna,
                    ibo_k_db=float(ibo_k[antenna]),
                    alpha_analytic=float(alpha_fn(float(ibo_k[antenna]))),
                    receiver="",
                    iterations=None,
                    ebn0_db=None,
                    ber=None,
                    bit_errors=None,
                    total_bits=None,
                    sdr_db=sdr,
                    alpha_mean=float(empirical[antenna]),
                    **common,
                )
            )
        return records

    records = []
    for receiver in scenario.receivers:
        for i in _iteration_rows(scenario, kind, receiver):
            count = int(stats.errors[receiver][i])
            records.append(
                SweepRecord(
                    antenna=None,
                    ibo_k_db=None,
                    alpha_analytic=None,
                    receiver=receiver,
                    iterations=i,
                    ebn0_db=point.ebn0_db,
                    ber=count / stats.total_bits,
                    bit_errors=count,
                    total_bits=stats.total_bits,
                    sdr_db=sdr,
                    alpha_mean=alpha_mean,
                    **common,
                )
            )
    return records


def _point_task(args):
    scenario, kind, point = args
    return run_point(scenario, kind, point)


def run_sweep(scenario: ScenarioConfig, kind: str, threads: int = 1) -> list[SweepRecord]:
    """Run a full campaign; record order is the deterministic grid order."""
    if kind not in SWEEP_KINDS:
        raise ValueError(f"unknown sweep kind {kind!r}; expected one of {SWEEP_KINDS}")
    points = build_grid(scenario, kind)
    if threads > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            stats = list(pool.map(_point_task, [(scenario, kind, p) for p in points]))
    else:
        stats = [run_point(scenario, kind, p) for p in points]
    records = []
    for point, stat in zip(points, stats):
        records.extend(_records_for_point(scenario, kind, point, stat))
    return records


def run_ber_sweep(scenario: ScenarioConfig, threads: int = 1) -> list[SweepRecord]:
    return run_sweep(scenario, "ber-sweep", threads)


def run_sdr_sweep(scenario: ScenarioConfig, threads: int = 1) -> list[SweepRecord]:
    return run_sweep(scenario, "sdr-sweep", threads)


def run_alpha_check(scenario: ScenarioConfig, threads: int = 1) -> list[SweepRecord]:
    return run_sweep(scenario, "alpha-check", threads)


def run_berin_berout(scenario: ScenarioConfig, threads: int = 1) -> list[SweepRecord]:
    return run_sweep(scenario, "berin-berout", threads)


def run_convergence(scenario: ScenarioConfig, threads: int = 1) -> list[SweepRecord]:
    return run_sweep(scenario, "convergence", threads)


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    return str(value)


def write_csv(records, path):
    """Write records with the stable column order; identical inputs yield
    byte-identical files."""
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        for record in records:
            writer.writerow([_format_cell(getattr(record, column)) for column in CSV_COLUMNS])
