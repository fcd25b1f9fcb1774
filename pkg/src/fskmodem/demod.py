"""FSK demodulators producing per-symbol soft statistics.

All three receivers integrate over whole symbol windows starting at a given
timing offset; a trailing partial symbol is dropped. The coherent receiver
is a correlator bank: for rectangular symbols, correlating against each tone
and taking the real part equals mixing with a local oscillator and
integrating (an ideal low-pass filter matched to the symbol), so the two
descriptions give the same decision variable.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import signal

from ._correlate import check_window, symbol_windows, tone_correlations
from .core import BitString, DemodKind, EmptyInput, FskParams, IqBuffer, SymbolStatistics, validate_params
from .modulator import ModulatorConfig, OutputMode, modulate
from .sync import threshold_bits


@dataclass(frozen=True)
class CoherentConfig:
    params: FskParams
    pll_enabled: bool = True
    pll_loop_bandwidth_norm: float = 0.02
    pll_damping: float = 0.707

    def __post_init__(self):
        validate_params(self.params)
        if not 0 < self.pll_loop_bandwidth_norm < 0.5:
            raise ValueError("pll_loop_bandwidth_norm must lie in (0, 0.5)")
        if not self.pll_damping > 0:
            raise ValueError("pll_damping must be positive")


class NoncoherentVariant(str, enum.Enum):
    CORRELATOR_MAGNITUDE = "correlator_magnitude"
    SQUARE_LAW = "square_law"


def default_lpf_cutoff(params: FskParams) -> float:
    """Twice the symbol rate, capped at half the tone spacing.

    Above half the spacing the other tone leaks through the filter and the
    square-law contrast collapses (h = 1 and h = 2 are the common cases).
    """
    return min(2.0 * params.symbol_rate_hz, 0.5 * abs(params.tone1_hz - params.tone0_hz))


@dataclass(frozen=True)
class NoncoherentConfig:
    params: FskParams
    variant: NoncoherentVariant = NoncoherentVariant.CORRELATOR_MAGNITUDE
    lpf_cutoff_hz: Optional[float] = None  # None -> default_lpf_cutoff(params)

    def __post_init__(self):
        validate_params(self.params)
        object.__setattr__(self, "variant", NoncoherentVariant(self.variant))
        if self.lpf_cutoff_hz is None:
            object.__setattr__(self, "lpf_cutoff_hz", default_lpf_cutoff(self.params))
        if not 0 < self.lpf_cutoff_hz < self.params.sample_rate_hz / 2:
            raise ValueError("lpf_cutoff_hz must lie in (0, sample_rate_hz / 2)")


@dataclass(frozen=True)
class DifferentialConfig:
    params: FskParams

    def __post_init__(self):
        validate_params(self.params)


def pll_gains(bandwidth_norm: float, damping: float) -> tuple[float, float]:
    """Proportional and integral gains of a second-order PI loop.

    Standard discrete design for unit detector and NCO gain, one update per
    symbol: with ``theta = BnT / (zeta + 1/(4 zeta))``,
    ``kp = 4 zeta theta / D`` and ``ki = 4 theta**2 / D`` where
    ``D = 1 + 2 zeta theta + theta**2``.
    """
    theta = bandwidth_norm / (damping + 1.0 / (4.0 * damping))
    d = 1.0 + 2.0 * damping * theta + theta**2
    return 4.0 * damping * theta / d, 4.0 * theta**2 / d


def coherent_demod(iq: IqBuffer, cfg: CoherentConfig,
                   timing_offset_samples: int = 0) -> SymbolStatistics:
    """Correlator-bank coherent receiver with a symbol-rate decision-directed PLL.

    The statistic is ``Re(C1) - Re(C0)`` after derotating both correlators by
    the current phase estimate. The loop's phase error is the angle of the
    correlator with the larger magnitude.
    """
    p = cfg.params
    x = iq.samples
    count = check_window(x, timing_offset_samples, p.samples_per_symbol)
    c0, c1 = tone_correlations(x, p, timing_offset_samples, count)
    if not cfg.pll_enabled:
        return SymbolStatistics(c1.real - c0.real, DemodKind.COHERENT)

    kp, ki = pll_gains(cfg.pll_loop_bandwidth_norm, cfg.pll_damping)
    stats = np.empty(count)
    theta = 0.0
    integ = 0.0
    for k, (a0, a1) in enumerate(zip(c0.tolist(), c1.tolist())):
        rot = complex(math.cos(theta), -math.sin(theta))
        a0 *= rot
        a1 *= rot
        stats[k] = a1.real - a0.real
        win = a1 if abs(a1) >= abs(a0) else a0
        err = math.atan2(win.imag, win.real)
        integ += ki * err
        theta += kp * err + integ
    return SymbolStatistics(stats, DemodKind.COHERENT)


def lowpass_taps(params: FskParams, cutoff_hz: float) -> np.ndarray:
    """Hamming-windowed sinc, ``4 * samples_per_symbol + 1`` taps, unit DC gain."""
    n = 4 * params.samples_per_symbol + 1
    return signal.firwin(n, cutoff_hz, window="hamming", fs=params.sample_rate_hz)


def _square_law(x: np.ndarray, cfg: NoncoherentConfig, offset: int, count: int) -> np.ndarray:
    p = cfg.params
    fs = p.sample_rate_hz
    taps = lowpass_taps(p, cfg.lpf_cutoff_hz)
    n = np.arange(x.size)
    energy = []
    for f in (p.tone0_hz, p.tone1_hz):
        mixed = x * np.exp(-2j * np.pi * np.mod(f / fs * n, 1.0))
        # 'same' keeps the odd-length filter centred, i.e. delay compensated.
        env = signal.oaconvolve(mixed, taps, mode="same")
        power = np.abs(env) ** 2
        energy.append(symbol_windows(power, offset, p.samples_per_symbol, count).sum(axis=1))
    return energy[1] - energy[0]


def noncoherent_demod(iq: IqBuffer, cfg: NoncoherentConfig,
                      timing_offset_samples: int = 0) -> SymbolStatistics:
    """Envelope (phase-blind) receiver.

    ``correlator_magnitude`` compares ``|C1|`` against ``|C0|``. ``square_law``
    downconverts each tone to 0 Hz, low-pass filters, squares to
    instantaneous power and compares the per-symbol tone energies; it only
    separates the tones when ``lpf_cutoff_hz`` is well below the tone spacing,
    which the default cutoff guarantees.
    """
    p = cfg.params
    x = iq.samples
    count = check_window(x, timing_offset_samples, p.samples_per_symbol)
    if cfg.variant is NoncoherentVariant.SQUARE_LAW:
        return SymbolStatistics(_square_law(x, cfg, timing_offset_samples, count),
                                DemodKind.NONCOHERENT_SQUARELAW)
    c0, c1 = tone_correlations(x, p, timing_offset_samples, count)
    return SymbolStatistics(np.abs(c1) - np.abs(c0), DemodKind.NONCOHERENT)


def differential_demod(iq: IqBuffer, cfg: DifferentialConfig,
                       timing_offset_samples: int = 0) -> SymbolStatistics:
    """Frequency-discriminator receiver.

    ``d[n] = arg(r[n] * conj(r[n-1]))`` is averaged over the sample pairs
    inside each symbol window (the first sample's predecessor belongs to the
    previous symbol and is skipped), then the midpoint frequency is removed.
    """
    p = cfg.params
    sps = p.samples_per_symbol
    fs = p.sample_rate_hz
    x = iq.samples
    if np.isrealobj(x):
        x = x.astype(np.complex128)
    count = check_window(x, timing_offset_samples, sps)
    seg = symbol_windows(x, timing_offset_samples, sps, count)
    d = np.angle(seg[:, 1:] * np.conj(seg[:, :-1]))
    mid = np.pi * (p.tone0_hz + p.tone1_hz) / fs
    sign = 1.0 if p.tone1_hz > p.tone0_hz else -1.0
    return SymbolStatistics(sign * (d.mean(axis=1) - mid), DemodKind.DIFFERENTIAL)


def appendix_spectrum(bits, params: FskParams) -> np.ndarray:
    """Magnitude DFT of the phase-reset real tone sequence for ``bits``."""
    cfg = ModulatorConfig(params, continuous_phase=False,
                          output_mode=OutputMode.REAL_PASSBAND)
    return np.abs(np.fft.fft(modulate(bits, cfg).samples))


def appendix_fft_pipeline(bits, params: FskParams) -> BitString:
    """Reference FFT pipeline: one bit per DFT bin, mean threshold.

    The output has one entry per sample of the generated signal, not one
    per input bit.

    Raises:
        EmptyInput: if ``bits`` is empty.
    """
    if len(bits) == 0:
        raise EmptyInput("appendix pipeline needs at least one bit")
    spectrum = appendix_spectrum(bits, params)
    return threshold_bits(spectrum, float(np.mean(spectrum)))


def demodulate(iq: IqBuffer, kind: DemodKind, params: FskParams,
               timing_offset_samples: int = 0, **options) -> SymbolStatistics:
    """Run the demodulator named by ``kind``; ``options`` go to its config."""
    kind = DemodKind(kind)
    if kind is DemodKind.COHERENT:
        return coherent_demod(iq, CoherentConfig(params, **options), timing_offset_samples)
    if kind is DemodKind.NONCOHERENT:
        return noncoherent_demod(iq, NoncoherentConfig(params, **options), timing_offset_samples)
    if kind is DemodKind.NONCOHERENT_SQUARELAW:
        cfg = NoncoherentConfig(params, variant=NoncoherentVariant.SQUARE_LAW, **options)
        return noncoherent_demod(iq, cfg, timing_offset_samples)
    return differential_demod(iq, DifferentialConfig(params, **options), timing_offset_samples)
