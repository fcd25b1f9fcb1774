"""Channel impairments: delay, gain, carrier offset, phase and AWGN."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (
    ConflictingNoiseSpec,
    EmptyInput,
    FskParams,
    IqBuffer,
    derive_seed,
    standard_normal,
)


@dataclass(frozen=True)
class ChannelConfig:
    ebn0_db: Optional[float] = None
    snr_db: Optional[float] = None
    cfo_hz: float = 0.0
    phase_rad: float = 0.0
    gain: float = 1.0
    delay_samples: int = 0
    noise_seed: int = 0

    def __post_init__(self):
        if self.ebn0_db is not None and self.snr_db is not None:
            raise ConflictingNoiseSpec("set at most one of ebn0_db and snr_db")
        if not self.gain > 0:
            raise ValueError(f"gain must be positive, got {self.gain}")
        if int(self.delay_samples) != self.delay_samples or self.delay_samples < 0:
            raise ValueError("delay_samples must be a nonnegative integer")

    @property
    def noise_enabled(self) -> bool:
        return self.ebn0_db is not None or self.snr_db is not None


def ebn0_to_snr_db(ebn0_db: float, samples_per_symbol: int, code_rate: float = 1.0) -> float:
    """Per-sample SNR for a given Eb/N0 at one symbol per ``samples_per_symbol``.

    ``code_rate`` < 1 accounts for coded bits carrying less than one
    information bit each.
    """
    return ebn0_db + 10 * math.log10(code_rate / samples_per_symbol)


def apply_channel(iq: IqBuffer, cfg: ChannelConfig, params: FskParams) -> IqBuffer:
    """Impair ``iq`` in the order delay, gain, rotation, noise.

    Noise power is referenced to the mean power of the input scaled by
    ``gain**2``. Real buffers stay real when no rotation is requested and
    then receive real noise of variance ``sigma2 / 2``.

    Raises:
        EmptyInput: for an empty buffer.
    """
    x = iq.samples
    if x.size == 0:
        raise EmptyInput("cannot apply a channel to an empty buffer")
    fs = iq.sample_rate_hz
    signal_power = float(np.mean(np.abs(x) ** 2)) * cfg.gain**2

    d = int(cfg.delay_samples)
    y = np.concatenate([np.zeros(d, dtype=x.dtype), x]) if d else x.copy()
    if cfg.gain != 1.0:
        y = y * cfg.gain

    if cfg.cfo_hz != 0.0 or cfg.phase_rad != 0.0:
        n = np.arange(y.size)
        cycles = np.mod(cfg.cfo_hz / fs * n, 1.0)
        y = y * np.exp(1j * (2 * np.pi * cycles + cfg.phase_rad))

    if cfg.noise_enabled:
        if cfg.snr_db is not None:
            snr_db = cfg.snr_db
        else:
            snr_db = ebn0_to_snr_db(cfg.ebn0_db, params.samples_per_symbol)
        sigma2 = signal_power / 10 ** (snr_db / 10)
        seed = derive_seed(cfg.noise_seed, 0)
        if np.iscomplexobj(y):
            w = standard_normal(seed, 2 * y.size) * math.sqrt(sigma2 / 2)
            y = y + (w[0::2] + 1j * w[1::2])
        else:
            y = y + standard_normal(seed, y.size) * math.sqrt(sigma2 / 2)

    return IqBuffer(y, fs)
