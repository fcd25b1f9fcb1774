"""Per-symbol tone correlators shared by the demodulators and timing search."""

from __future__ import annotations

import numpy as np

from .core import FskParams, TooShort


def symbol_count(n_samples: int, offset: int, sps: int) -> int:
    return max(0, (n_samples - offset) // sps)


def check_window(x: np.ndarray, offset: int, sps: int) -> int:
    if int(offset) != offset or offset < 0:
        raise ValueError(f"timing offset must be a nonnegative integer, got {offset!r}")
    if x.size < offset + sps:
        raise TooShort(
            f"need at least {offset + sps} samples for one symbol at offset "
            f"{offset}, got {x.size}")
    return symbol_count(x.size, offset, sps)


def symbol_windows(x: np.ndarray, offset: int, sps: int, count: int) -> np.ndarray:
    return x[offset:offset + count * sps].reshape(count, sps)


def tone_correlations(x: np.ndarray, params: FskParams, offset: int,
                      count: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Correlator outputs ``(C0, C1)`` for each whole symbol from ``offset``.

    ``C_i[k] = sum_n x[n] * exp(-j*2*pi*f_i*n/fs)`` over window ``k``, where
    ``n`` counts samples from ``offset`` and keeps running across windows, so
    the references line up with a continuous-phase transmitter whose first
    symbol starts at ``offset``.
    """
    sps = params.samples_per_symbol
    fs = params.sample_rate_hz
    if count is None:
        count = symbol_count(x.size, offset, sps)
    w = symbol_windows(x, offset, sps, count)
    m = np.arange(sps)
    k = np.arange(count)
    out = []
    for f in (params.tone0_hz, params.tone1_hz):
        ref = np.exp(-2j * np.pi * np.mod(f / fs * m, 1.0))
        # Phase of the reference at the start of each window.
        start = np.exp(-2j * np.pi * np.mod(f / fs * sps * k, 1.0))
        out.append((w @ ref) * start)
    return out[0], out[1]


def magnitude_contrast(x: np.ndarray, params: FskParams, offset: int,
                       count: int | None = None) -> np.ndarray:
    c0, c1 = tone_correlations(x, params, offset, count)
    return np.abs(c1) - np.abs(c0)
