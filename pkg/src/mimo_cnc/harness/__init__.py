"""Scenario configuration, Monte Carlo campaign execution and the CLI."""

from .config import ComplexityRequest, ScenarioConfig, load_complexity, load_scenario
from .engine import (
    CSV_COLUMNS,
    SWEEP_KINDS,
    SweepRecord,
    run_alpha_check,
    run_ber_sweep,
    run_berin_berout,
    run_convergence,
    run_point,
    run_sdr_sweep,
    run_sweep,
    write_csv,
)
