"""Link-level simulator for a single-user massive-MIMO OFDM downlink with
nonlinear per-antenna amplifiers and iterative clipping-noise-cancellation
receivers."""

from .analysis import (
    ComplexityParams,
    OperationCount,
    ber,
    bit_errors,
    complexity,
    noise_power_for_ebn0,
    sdr_db,
    snr_and_ebn0_db,
)
from .channel import (
    ArrayGeometry,
    ChannelRealization,
    ReceiverPlacement,
    add_awgn,
    corrupt_csi,
    los,
    propagate,
    rayleigh,
    two_path,
)
from .errors import (
    ConfigError,
    DeepFadeError,
    NumericalError,
    SimulationError,
    SingularChannelError,
)
from .frontend import (
    AmplifierModel,
    BussgangCoefficients,
    alpha_analytic,
    alpha_empirical,
    per_antenna_ibo,
    reference_power,
    soft_limit,
)
from .modem import Constellation, OfdmConfig, ofdm_demodulate, ofdm_modulate
from .numerics import RngStream, complex_gaussian, dft, unitary_fft, unitary_ifft
from .precoding import (
    PhaseOnlyPrecoder,
    apply_precoding,
    beam_steering,
    mrt,
    phase_only_matrix,
)
from .receiver import (
    CncSideInfo,
    DetectionResult,
    IterationTrace,
    ReceiverSideInfo,
    cnc_receive,
    coherent_gain,
    equalize,
    mcnc_receive,
    standard_receive,
)

__version__ = "0.1.0"
