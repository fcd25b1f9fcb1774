"""Binary FSK modulator (continuous-phase complex baseband by default)."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import EmptyInput, FskParams, IqBuffer, as_bits, validate_params


class OutputMode(str, enum.Enum):
    COMPLEX_BASEBAND = "complex_baseband"
    REAL_PASSBAND = "real_passband"


@dataclass(frozen=True)
class ModulatorConfig:
    params: FskParams
    continuous_phase: bool = True
    output_mode: OutputMode = OutputMode.COMPLEX_BASEBAND

    def __post_init__(self):
        validate_params(self.params)
        object.__setattr__(self, "output_mode", OutputMode(self.output_mode))


def phase_trajectory(bits, cfg: ModulatorConfig) -> np.ndarray:
    """Phase in radians of every output sample.

    Continuous phase: ``phi[0] = 0`` and ``phi[n+1] = phi[n] + 2*pi*f(n)/fs``
    where ``f(n)`` is the tone of the symbol holding sample ``n``. Otherwise
    each symbol restarts from zero phase.
    """
    p = cfg.params
    sps = p.samples_per_symbol
    fs = p.sample_rate_hz
    tones = np.where(as_bits(bits) == 1, p.tone1_hz, p.tone0_hz)

    if not cfg.continuous_phase:
        k = np.arange(sps)
        return (2 * np.pi * np.outer(tones, k) / fs).ravel()

    step = np.repeat(2 * np.pi * tones / fs, sps)
    phase = np.empty_like(step)
    phase[0] = 0.0
    np.cumsum(step[:-1], out=phase[1:])
    return phase


def modulate(bits, cfg: ModulatorConfig) -> IqBuffer:
    """Map ``bits`` to FSK samples, ``samples_per_symbol`` per bit.

    Raises:
        EmptyInput: if ``bits`` is empty.
    """
    bits = as_bits(bits)
    if bits.size == 0:
        raise EmptyInput("cannot modulate an empty bit string")
    phase = phase_trajectory(bits, cfg)
    if cfg.output_mode is OutputMode.REAL_PASSBAND:
        samples = np.sin(phase)
    else:
        samples = np.exp(1j * phase)
    return IqBuffer(samples, cfg.params.sample_rate_hz)
