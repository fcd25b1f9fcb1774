"""BER measurement, closed-form references and Monte-Carlo sweeps."""

from __future__ import annotations

import enum
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .channel import ChannelConfig, apply_channel
from .core import DemodKind, EmptyInput, FskParams, LengthMismatch, as_bits, derive_seed, random_bits
from .demod import demodulate
from .fec import conv_encode, viterbi_decode
from .modulator import ModulatorConfig, modulate
from .sync import estimate_timing, slice_bits

MIN_BITS_PER_POINT = 1000


class BerScheme(str, enum.Enum):
    COHERENT_ORTHOGONAL_FSK = "coherent_orthogonal_fsk"
    NONCOHERENT_ORTHOGONAL_FSK = "noncoherent_orthogonal_fsk"


@dataclass(frozen=True)
class BerReport:
    ebn0_db: float
    demod_kind: DemodKind
    fec_enabled: bool
    n_bits: int
    n_errors: int
    seed: int
    # Machine-dependent; never part of equality or CSV output.
    throughput_bps: float = field(default=float("nan"), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "demod_kind", DemodKind(self.demod_kind))
        if self.n_bits <= 0:
            raise ValueError("n_bits must be positive")
        if not 0 <= self.n_errors <= self.n_bits:
            raise ValueError("n_errors must lie in [0, n_bits]")

    @property
    def ber(self) -> float:
        return self.n_errors / self.n_bits


def bit_error_rate(reference, received) -> tuple[int, float]:
    """Hamming distance between two bit strings and its ratio to their length."""
    a = as_bits(reference)
    b = as_bits(received)
    if a.size != b.size:
        raise LengthMismatch(f"bit strings differ in length: {a.size} vs {b.size}")
    if a.size == 0:
        raise EmptyInput("cannot compute BER of empty bit strings")
    n = int(np.count_nonzero(a != b))
    return n, n / a.size


def q_function(x: float) -> float:
    return 0.5 * math.erfc(x / math.sqrt(2.0))


def theoretical_ber(ebn0_db: float, scheme: BerScheme) -> float:
    """Textbook binary orthogonal FSK error probability in AWGN."""
    g = 10 ** (ebn0_db / 10)
    if BerScheme(scheme) is BerScheme.COHERENT_ORTHOGONAL_FSK:
        return q_function(math.sqrt(g))
    return 0.5 * math.exp(-g / 2)


def binomial_sigma(p: float, n: int) -> float:
    return math.sqrt(p * (1 - p) / n)


@dataclass(frozen=True)
class PointResult:
    """Everything one pipeline run produced; handy for tests and debugging."""

    report: BerReport
    timing_offset: int
    raw_errors: int  # channel bit errors before decoding (coded bits when FEC is on)
    raw_bits: int


def run_point(ebn0_db: float, demod_kind: DemodKind, fec_enabled: bool,
              n_bits: int, seed: int, params: FskParams) -> PointResult:
    """One end-to-end Monte-Carlo run.

    The seed feeds two child streams: index 0 for the message, 1 for noise.
    With FEC the channel's Eb/N0 is lowered by 10*log10(2) so that energy is
    still counted per information bit.
    """
    t0 = time.perf_counter()
    demod_kind = DemodKind(demod_kind)
    message = random_bits(n_bits, derive_seed(seed, 0))
    tx_bits = conv_encode(message) if fec_enabled else message
    channel_ebn0 = ebn0_db + (10 * math.log10(0.5) if fec_enabled else 0.0)

    iq = modulate(tx_bits, ModulatorConfig(params))
    rx = apply_channel(iq, ChannelConfig(ebn0_db=channel_ebn0,
                                         noise_seed=derive_seed(seed, 1)), params)
    timing = estimate_timing(rx, params, demod_kind)
    stats = demodulate(rx, demod_kind, params, timing.offset_samples)
    hard = slice_bits(stats)
    if hard.size < tx_bits.size:
        # Symbols cut off by a late timing estimate are scored as zeros.
        hard = np.concatenate([hard, np.zeros(tx_bits.size - hard.size, dtype=np.uint8)])

    raw_n = tx_bits.size
    raw_errors, _ = bit_error_rate(tx_bits, hard[:raw_n])
    if fec_enabled:
        hard = viterbi_decode(hard[:tx_bits.size])
    n_errors, _ = bit_error_rate(message, hard[:message.size])
    elapsed = time.perf_counter() - t0
    report = BerReport(ebn0_db, demod_kind, fec_enabled, n_bits, n_errors, seed,
                       throughput_bps=n_bits / elapsed if elapsed > 0 else float("inf"))
    return PointResult(report, timing.offset_samples, raw_errors, raw_n)


def _run_point_args(args) -> BerReport:
    return run_point(*args).report


def run_ber_sweep(grid: Sequence[tuple[float, DemodKind, bool]], n_bits_per_point: int,
                  base_seed: int, params: FskParams, jobs: int = 1) -> list[BerReport]:
    """Measure BER at every ``(ebn0_db, demod_kind, fec_enabled)`` grid point.

    Point ``i`` uses seed ``derive_seed(base_seed, i)`` so results do not
    depend on ``jobs`` or scheduling order.
    """
    grid = list(grid)
    if not grid:
        raise EmptyInput("sweep grid is empty")
    if n_bits_per_point < MIN_BITS_PER_POINT:
        raise ValueError(f"n_bits_per_point must be >= {MIN_BITS_PER_POINT}")
    tasks = [(float(e), DemodKind(k), bool(f), n_bits_per_point,
              derive_seed(base_seed, i), params)
             for i, (e, k, f) in enumerate(grid)]
    if jobs <= 1 or len(tasks) == 1:
        return [_run_point_args(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
        return list(pool.map(_run_point_args, tasks))


def make_grid(ebn0_dbs: Iterable[float], kinds: Iterable[DemodKind],
              fec: Iterable[bool]) -> list[tuple[float, DemodKind, bool]]:
    """Cartesian grid, Eb/N0 outermost, FEC innermost."""
    kinds = [DemodKind(k) for k in kinds]
    fec = list(fec)
    return [(float(e), k, f) for e in ebn0_dbs for k in kinds for f in fec]
