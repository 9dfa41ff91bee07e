"""Scenario configuration: a sectioned key=value file parsed into dataclasses.

Grammar (INI dialect, all sections and keys optional unless noted)::

    [ofdm]
    n_fft = 256                  ; power of two
    n_data = 128                 ; even, <= n_fft - 2
    cp_len = 16                  ; default n_fft // 16
    subcarrier_spacing_hz = 15e3
    carrier_freq_hz = 3.5e9

    [modulation]
    order = 64                   ; 4 | 16 | 64 | 256

    [link]
    channel = los                ; los | two-path | rayleigh
    precoder = mrt               ; mrt | phase-only
    n_antennas = 64              ; comma-separated list allowed
    ibo_db = 0                   ; list; "inf" = linear amplifier
    ebn0_db = 10, 15, 20         ; list; "inf" = noiseless
    csi_error = 0.0              ; list, each in [0, 1]

    [geometry]
    array_height_m = 15
    rx_distance_m = 300
    rx_azimuth_deg = 45
    rx_height_m = 1.5
    jitter_box_m = 10

    [run]
    receivers = standard, cnc, mcnc
    iterations = 0, 1, 2, 3, 5, 8
    symbols_per_point = 300
    seed = 1234
    symbol_power = 1.0

    [complexity]                 ; used by the `complexity` subcommand only
    order = 64
    n_fft = 4096
    n_data = 2048
    n_antennas = 64
    iterations = 0, 1, 3, 8
    kinds = cnc, mcnc

Validation failures are collected per field and raised together as a
ConfigError, one message per offending ``section.key``.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass

from ..errors import ConfigError
from ..modem import Constellation, OfdmConfig

CHANNEL_MODELS = ("los", "two-path", "rayleigh")
PRECODERS = ("mrt", "phase-only")
RECEIVERS = ("standard", "cnc", "mcnc")


@dataclass(frozen=True)
class ScenarioConfig:
    """Full description of one Monte Carlo campaign."""

    ofdm: OfdmConfig
    order: int = 64
    channel: str = "los"
    precoder: str = "mrt"
    n_antennas: tuple = (64,)
    ibo_db: tuple = (0.0,)
    ebn0_db: tuple = (15.0,)
    csi_error: tuple = (0.0,)
    receivers: tuple = ("standard", "cnc", "mcnc")
    iterations: tuple = (0, 1, 3, 8)
    symbols_per_point: int = 200
    seed: int = 1
    symbol_power: float = 1.0
    array_height_m: float = 15.0
    rx_distance_m: float = 300.0
    rx_azimuth_deg: float = 45.0
    rx_height_m: float = 1.5
    jitter_box_m: float = 10.0

    def replace_seed(self, seed: int) -> "ScenarioConfig":
        from dataclasses import replace

        return replace(self, seed=seed)


@dataclass(frozen=True)
class ComplexityRequest:
    """Grid for the operation-count report."""

    order: int = 64
    n_fft: int = 4096
    n_data: int = 2048
    n_antennas: int = 64
    iterations: tuple = (0, 1, 3, 8)
    kinds: tuple = ("cnc", "mcnc")


class _Reader:
    """Typed access to a ConfigParser with per-field error collection."""

    def __init__(self, parser: configparser.ConfigParser):
        self.parser = parser
        self.problems: list[str] = []

    def error(self, path: str, message: str):
        self.problems.append(f"{path}: {message}")

    def get(self, section: str, key: str, default, convert):
        if not self.parser.has_option(section, key):
            return default
        raw = self.parser.get(section, key).strip()
        try:
            return convert(raw)
        except (ValueError, TypeError) as exc:
            self.error(f"{section}.{key}", str(exc) or f"cannot parse {raw!r}")
            return default


def _parse_int(raw: str) -> int:
    return int(raw, 0)


def _parse_float(raw: str) -> float:
    value = float(raw)
    if math.isnan(value):
        raise ValueError("nan is not allowed")
    return value


def _parse_list(raw: str, item) :
    parts = [p.strip() for p in raw.split(",") if p.strip()]
    if not parts:
        raise ValueError("list must not be empty")
    return tuple(item(p) for p in parts)


def _parse_choice(raw: str, choices) -> str:
    value = raw.strip().lower()
    if value not in choices:
        raise ValueError(f"must be one of {', '.join(choices)}; got {raw!r}")
    return value


def load_scenario(path: str) -> ScenarioConfig:
    """Parse and validate a scenario file; raises ConfigError on any problem."""
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    read = parser.read(path)
    if not read:
        raise ConfigError([f"config file not found or unreadable: {path}"])
    r = _Reader(parser)

    n_fft = r.get("ofdm", "n_fft", 256, _parse_int)
    n_data = r.get("ofdm", "n_data", 128, _parse_int)
    cp_len = r.get("ofdm", "cp_len", None, _parse_int)
    spacing = r.get("ofdm", "subcarrier_spacing_hz", 15e3, _parse_float)
    carrier = r.get("ofdm", "carrier_freq_hz", 3.5e9, _parse_float)
    try:
        ofdm = OfdmConfig(n_fft, n_data, cp_len, spacing, carrier)
    except ValueError as exc:
        r.error("ofdm", str(exc))
        ofdm = OfdmConfig(256, 128)

    order = r.get("modulation", "order", 64, _parse_int)
    if order not in Constellation.ORDERS:
        r.error("modulation.order", f"must be one of {Constellation.ORDERS}, got {order}")
        order = 64

    channel = r.get("link", "channel", "los", lambda s: _parse_choice(s, CHANNEL_MODELS))
    precoder = r.get("link", "precoder", "mrt", lambda s: _parse_choice(s, PRECODERS))
    n_antennas = r.get("link", "n_antennas", (64,), lambda s: _parse_list(s, _parse_int))
    ibo_db = r.get("link", "ibo_db", (0.0,), lambda s: _parse_list(s, _parse_float))
    ebn0_db = r.get("link", "ebn0_db", (15.0,), lambda s: _parse_list(s, _parse_float))
    csi_error = r.get("link", "csi_error", (0.0,), lambda s: _parse_list(s, _parse_float))

    receivers = r.get(
        "run", "receivers", ("standard", "cnc", "mcnc"),
        lambda s: _parse_list(s, lambda p: _parse_choice(p, RECEIVERS)),
    )
    iterations = r.get("run", "iterations", (0, 1, 3, 8), lambda s: _parse_list(s, _parse_int))
    symbols = r.get("run", "symbols_per_point", 200, _parse_int)
    seed = r.get("run", "seed", 1, _parse_int)
    symbol_power = r.get("run", "symbol_power", 1.0, _parse_float)

    array_height = r.get("geometry", "array_height_m", 15.0, _parse_float)
    rx_distance = r.get("geometry", "rx_distance_m", 300.0, _parse_float)
    rx_azimuth = r.get("geometry", "rx_azimuth_deg", 45.0, _parse_float)
    rx_height = r.get("geometry", "rx_height_m", 1.5, _parse_float)
    jitter = r.get("geometry", "jitter_box_m", 10.0, _parse_float)

    if any(k < 1 for k in n_antennas):
        r.error("link.n_antennas", f"antenna counts must be >= 1, got {n_antennas}")
    if any(not (0.0 <= e <= 1.0) for e in csi_error):
        r.error("link.csi_error", f"values must lie in [0, 1], got {csi_error}")
    if any(i < 0 for i in iterations):
        r.error("run.iterations", f"iteration counts must be >= 0, got {iterations}")
    if symbols < 1:
        r.error("run.symbols_per_point", f"must be >= 1, got {symbols}")
    if not (0 <= seed < 2**64):
        r.error("run.seed", f"must be an unsigned 64-bit integer, got {seed}")
    if symbol_power <= 0:
        r.error("run.symbol_power", f"must be positive, got {symbol_power}")
    if rx_distance <= 0:
        r.error("geometry.rx_distance_m", f"must be positive, got {rx_distance}")
    if rx_height < 0:
        r.error("geometry.rx_height_m", f"must be nonnegative, got {rx_height}")
    if jitter < 0:
        r.error("geometry.jitter_box_m", f"must be nonnegative, got {jitter}")

    if r.problems:
        raise ConfigError(r.problems)

    return ScenarioConfig(
        ofdm=ofdm,
        order=order,
        channel=channel,
        precoder=precoder,
        n_antennas=n_antennas,
        ibo_db=ibo_db,
        ebn0_db=ebn0_db,
        csi_error=csi_error,
        receivers=receivers,
        iterations=iterations,
        symbols_per_point=symbols,
        seed=seed,
        symbol_power=symbol_power,
        array_height_m=array_height,
        rx_distance_m=rx_distance,
        rx_azimuth_deg=rx_azimuth,
        rx_height_m=rx_height,
        jitter_box_m=jitter,
    )


def load_complexity(path: str) -> ComplexityRequest:
    """Parse the [complexity] section; raises ConfigError on any problem."""
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    read = parser.read(path)
    if not read:
        raise ConfigError([f"config file not found or unreadable: {path}"])
    r = _Reader(parser)

    order = r.get("complexity", "order", 64, _parse_int)
    n_fft = r.get("complexity", "n_fft", 4096, _parse_int)
    n_data = r.get("complexity", "n_data", 2048, _parse_int)
    n_antennas = r.get("complexity", "n_antennas", 64, _parse_int)
    iterations = r.get("complexity", "iterations", (0, 1, 3, 8), lambda s: _parse_list(s, _parse_int))
    kinds = r.get(
        "complexity", "kinds", ("cnc", "mcnc"),
        lambda s: _parse_list(s, lambda p: _parse_choice(p, RECEIVERS)),
    )
    if any(i < 0 for i in iterations):
        r.error("complexity.iterations", f"iteration counts must be >= 0, got {iterations}")
    if r.problems:
        raise ConfigError(r.problems)
    return ComplexityRequest(order, n_fft, n_data, n_antennas, iterations, kinds)
