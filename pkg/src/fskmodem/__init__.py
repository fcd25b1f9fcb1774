"""Binary FSK modem toolkit: modulation, channel simulation, demodulation,
timing recovery, slicing, convolutional FEC and BER sweeps."""

from .channel import ChannelConfig, apply_channel
from .core import (
    BitString,
    DemodKind,
    FskError,
    FskParams,
    IqBuffer,
    SymbolStatistics,
    random_bits,
    validate_params,
)
from .demod import (
    CoherentConfig,
    DifferentialConfig,
    NoncoherentConfig,
    NoncoherentVariant,
    appendix_fft_pipeline,
    coherent_demod,
    demodulate,
    differential_demod,
    noncoherent_demod,
)
from .fec import ConvCodeSpec, conv_encode, viterbi_decode
from .metrics import BerReport, bit_error_rate, run_ber_sweep, theoretical_ber
from .modulator import ModulatorConfig, OutputMode, modulate
from .sync import SlicerConfig, SlicerMode, TimingEstimate, estimate_timing, slice_bits

__version__ = "0.1.0"
